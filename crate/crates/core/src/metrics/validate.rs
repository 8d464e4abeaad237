use serde::Serialize;

use crate::decomposition::StarDecomposition;
use crate::graph::{
    induced_subgraph, partition_boundary, radius_of_distances, shortest_paths_masked, UnionFind,
    WeightedMultigraph,
};
use crate::tree::SpanningTree;

/// Relative slack for real-valued inequalities.
const SLACK: f64 = 1e-9;

fn le(a: f64, b: f64) -> bool {
    a <= b + SLACK * b.abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of every predicate, in evaluation order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks a star decomposition of `g`. Later checks that need an earlier one
/// (for example radii need a partition) are skipped when it fails.
pub fn validate_star_decomposition(
    g: &WeightedMultigraph,
    sd: &StarDecomposition,
    delta: f64,
    epsilon: f64,
) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = g.vertex_count();

    let mut label = vec![usize::MAX; n];
    let mut partition_ok = !sd.parts.is_empty() && sd.parts.iter().all(|p| !p.is_empty());
    let mut detail = String::new();
    'outer: for (i, part) in sd.parts.iter().enumerate() {
        for &v in part {
            if v >= n || label[v] != usize::MAX {
                partition_ok = false;
                detail = format!("vertex {v} is out of range or repeated");
                break 'outer;
            }
            label[v] = i;
        }
    }
    if partition_ok {
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            partition_ok = false;
            detail = format!("vertex {v} is in no part");
        }
    }
    rep.push("partition", partition_ok, detail);
    if !partition_ok {
        return rep;
    }

    let disconnected = sd.parts.iter().position(|part| {
        induced_subgraph(g, part).map_or(true, |sub| !sub.graph.is_connected())
    });
    rep.push(
        "part connectivity",
        disconnected.is_none(),
        disconnected.map_or(String::new(), |i| format!("part {i} is not connected")),
    );

    let k = sd.parts.len() - 1;
    let mut anchors_ok = sd.center < n && label[sd.center] == 0 && sd.anchors.len() == k;
    let mut detail = String::new();
    if anchors_ok {
        for (i, &x) in sd.anchors.iter().enumerate() {
            if x >= n || label[x] != i + 1 {
                anchors_ok = false;
                detail = format!("anchor {x} is not in part {}", i + 1);
                break;
            }
        }
    } else {
        detail = "center not in part 0 or anchor count mismatch".into();
    }
    rep.push("anchors", anchors_ok, detail);

    let mut bridges_ok = sd.bridges.len() == k;
    let mut detail = String::new();
    if bridges_ok {
        for (i, b) in sd.bridges.iter().enumerate() {
            let joins = b.edge < g.edge_count() && {
                let e = g.edge(b.edge);
                (e.u == b.anchor && e.v == b.attach) || (e.v == b.anchor && e.u == b.attach)
            };
            let ok = sd.anchors.get(i) == Some(&b.anchor) && b.attach < n && label[b.attach] == 0 && joins;
            if !ok {
                bridges_ok = false;
                detail = format!("bridge {i} does not join anchor {} to the center part", b.anchor);
                break;
            }
        }
    } else {
        detail = "bridge count mismatch".into();
    }
    rep.push("bridges", bridges_ok, detail);

    let dist = shortest_paths_masked(g, &[sd.center.min(n - 1)], None);
    let Ok(rho) = radius_of_distances(&dist) else {
        rep.push("ball radius", false, "graph is disconnected");
        return rep;
    };
    let ball_ok = le(delta * rho, sd.r0) && le(sd.r0, (1.0 - delta) * rho);
    rep.push(
        "ball radius",
        ball_ok,
        format!("r0 = {}, rho = {rho}, window [{}, {}]", sd.r0, delta * rho, (1.0 - delta) * rho),
    );
    let ball_matches = (0..n).all(|v| (dist[v] <= sd.r0) == (label[v] == 0));
    rep.push("ball", ball_matches, "center part must equal B(r0, center)");

    if anchors_ok && bridges_ok {
        let limit = (1.0 + epsilon) * rho;
        let mut worst = (f64::NEG_INFINITY, 0);
        let mut worst_path = (f64::NEG_INFINITY, 0);
        for (i, b) in sd.bridges.iter().enumerate() {
            let sub = induced_subgraph(g, &sd.parts[i + 1]).expect("nonempty part");
            let local = sub.from_parent[b.anchor].expect("anchor in part");
            let ri = radius_of_distances(&shortest_paths_masked(&sub.graph, &[local], None))
                .unwrap_or(f64::INFINITY);
            let d = g.length(b.edge);
            let excess = sd.r0 + d + ri - limit;
            if excess > worst.0 {
                worst = (excess, i + 1);
            }
            let excess = dist[b.attach] + d + ri - limit;
            if excess > worst_path.0 {
                worst_path = (excess, i + 1);
            }
        }
        rep.push(
            "satellite radius",
            k == 0 || le(worst.0 + limit, limit),
            format!(
                "largest r0 + d(x, y) + r_i exceeds (1 + eps) rho by {} at part {}",
                worst.0, worst.1
            ),
        );
        // The same bound measured from the bridge endpoint instead of the ball radius.
        rep.push(
            "satellite path radius",
            k == 0 || le(worst_path.0 + limit, limit),
            format!(
                "largest dist(x0, y) + d(x, y) + r_i exceeds (1 + eps) rho by {} at part {}",
                worst_path.0, worst_path.1
            ),
        );
    }

    let m = g.non_loop_edge_count() as f64;
    let cost: f64 = partition_boundary(g, &label).iter().map(|&e| g.weight(e)).sum();
    let bound = 6.0 * m * (m + 1.0).log2() / (epsilon * rho);
    rep.push("boundary cost", le(cost, bound), format!("cost {cost}, bound {bound}"));
    rep
}

/// Checks that `tree` is a spanning tree of `g` with consistent parents and depths.
pub fn validate_tree(g: &WeightedMultigraph, tree: &SpanningTree) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = g.vertex_count();
    let bad = tree
        .edge_ids
        .iter()
        .find(|&&e| e >= g.edge_count() || g.edge(e).is_loop());
    rep.push(
        "edge ids",
        bad.is_none() && tree.root < n,
        bad.map_or(String::new(), |e| format!("edge {e} is missing from the graph or a self-loop")),
    );
    if bad.is_some() || tree.root >= n {
        return rep;
    }

    let mut uf = UnionFind::new(n);
    let mut cycle = None;
    let mut components = n;
    for &e in &tree.edge_ids {
        let edge = g.edge(e);
        if uf.union(edge.u, edge.v) {
            components -= 1;
        } else if cycle.is_none() {
            cycle = Some(e);
        }
    }
    rep.push("spanning", components == 1, format!("{components} components"));
    rep.push(
        "acyclic",
        cycle.is_none(),
        cycle.map_or(String::new(), |e| format!("edge {e} closes a cycle")),
    );
    rep.push(
        "edge count",
        tree.edge_ids.len() + 1 == n,
        format!("{} edges for {n} vertices", tree.edge_ids.len()),
    );

    let mut consistent = tree.parent.len() == n && tree.depth_len.len() == n;
    if consistent {
        let in_tree = |e: usize| tree.edge_ids.binary_search(&e).is_ok();
        for v in 0..n {
            consistent &= match tree.parent[v] {
                None => v == tree.root && tree.depth_len[v] == 0.0,
                Some((p, e)) => {
                    in_tree(e)
                        && g.edge(e).other(v) == p
                        && tree.depth_len[v] == tree.depth_len[p] + g.length(e)
                }
            };
        }
    }
    rep.push("rooting", consistent, "parents and depths must follow tree edges");
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::star_decomp;
    use crate::graph::build_graph;

    fn c4() -> WeightedMultigraph {
        build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap()
    }

    #[test]
    fn c4_decomposition_passes() {
        let g = c4();
        let sd = star_decomp(&g, 0, 1.0 / 3.0, 0.5).unwrap();
        let rep = validate_star_decomposition(&g, &sd, 1.0 / 3.0, 0.5);
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }

    #[test]
    fn c4_satellite_radius_fails_for_small_epsilon() {
        // r0 + 1 + r_1 = 8/3 against (1 + 1/8) * 2 = 2.25.
        let g = c4();
        let sd = star_decomp(&g, 0, 1.0 / 3.0, 0.125).unwrap();
        let rep = validate_star_decomposition(&g, &sd, 1.0 / 3.0, 0.125);
        assert_eq!(rep.first_failure().map(|c| c.name), Some("satellite radius"));
    }

    #[test]
    fn disconnected_part_is_reported() {
        let g = c4();
        let mut sd = star_decomp(&g, 0, 1.0 / 3.0, 0.5).unwrap();
        // {1, 3} is not connected in C4.
        sd.parts = vec![vec![0], vec![1, 3], vec![2]];
        let rep = validate_star_decomposition(&g, &sd, 1.0 / 3.0, 0.5);
        assert_eq!(rep.first_failure().map(|c| c.name), Some("part connectivity"));
    }

    #[test]
    fn broken_partition_is_reported() {
        let g = c4();
        let mut sd = star_decomp(&g, 0, 1.0 / 3.0, 0.5).unwrap();
        sd.parts[1].push(3);
        let rep = validate_star_decomposition(&g, &sd, 1.0 / 3.0, 0.5);
        assert_eq!(rep.first_failure().map(|c| c.name), Some("partition"));
    }

    #[test]
    fn tree_checks() {
        let g = c4();
        let t = SpanningTree::from_edges(&g, 0, &[0, 1, 2]).unwrap();
        assert!(validate_tree(&g, &t).passed());

        let mut missing = t.clone();
        missing.edge_ids.pop();
        let rep = validate_tree(&g, &missing);
        assert_eq!(rep.first_failure().map(|c| c.name), Some("spanning"));

        let mut cyclic = t.clone();
        cyclic.edge_ids.push(3);
        let rep = validate_tree(&g, &cyclic);
        assert_eq!(rep.first_failure().map(|c| c.name), Some("acyclic"));

        let mut bad = t;
        bad.edge_ids[0] = 9;
        assert_eq!(validate_tree(&g, &bad).first_failure().map(|c| c.name), Some("edge ids"));
    }
}
