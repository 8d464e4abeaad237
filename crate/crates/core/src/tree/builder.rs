use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SpanningTree;
use crate::decomposition::{star_decomp_with, ConeStrategy, FieldMode};
use crate::error::{Error, Result};
use crate::graph::{
    contract_short_edges, radius_of_distances, shortest_paths_masked, split_parts,
    ContractionResult, WeightedMultigraph,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Unit lengths only, no contraction, `epsilon = alpha`.
    Unweighted,
    /// Contracts short edges, `epsilon = beta`.
    Weighted,
    /// As `Weighted` with the volume-tiered cone decomposition.
    Improved,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Unweighted => "unweighted",
            Algorithm::Weighted => "weighted",
            Algorithm::Improved => "improved",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Tier count for `Improved`; defaults to [`default_t`].
    pub t: Option<usize>,
    /// Defaults to the edge count of the input.
    pub m_hat: Option<usize>,
    /// Run independent subproblems on the rayon pool. Output is identical.
    pub parallel: bool,
}

/// Constants fixed at the top-level call and shared by every recursive call.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BuilderParams {
    pub alpha: f64,
    pub beta: f64,
    pub t: usize,
    pub n_hat: usize,
    pub m_hat: usize,
}

fn log43(x: f64) -> f64 {
    x.ln() / (4.0f64 / 3.0).ln()
}

impl BuilderParams {
    pub fn new(n_hat: usize, m_hat: usize, t: usize) -> Result<Self> {
        if n_hat == 0 {
            return Err(Error::EmptyGraph);
        }
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        let alpha = 1.0 / (2.0 * log43(n_hat as f64 + 6.0));
        let beta = 1.0 / (2.0 * log43(n_hat as f64 + 32.0));
        if alpha > 1.0 / 12.0 || beta > 1.0 / 24.0 {
            return Err(Error::Invariant(format!("alpha = {alpha}, beta = {beta} out of range")));
        }
        Ok(Self { alpha, beta, t, n_hat, m_hat })
    }

    /// Most recursion levels any edge may survive uncontracted and uncut.
    pub fn lifetime_bound(&self) -> f64 {
        log43(2.0 * self.n_hat as f64 / self.beta + 1.0)
    }
}

/// `max(1, ceil(log2 log2 n))`.
pub fn default_t(n_hat: usize) -> usize {
    let ll = (n_hat as f64).log2().log2();
    if ll.is_finite() && ll > 1.0 {
        ll.ceil() as usize
    } else {
        1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildStats {
    pub algorithm: Algorithm,
    pub params: BuilderParams,
    /// Depth of the recursion, counting base cases.
    pub levels: usize,
    pub star_decompositions: usize,
    /// Ball and cone cuts run, and how many broke their cost or window guarantee.
    pub cuts: usize,
    pub cut_violations: usize,
    /// Per original edge: recursion levels where it was present and not contracted.
    pub edge_lifetime: Vec<u32>,
    pub max_edge_lifetime: u32,
}

#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub tree: SpanningTree,
    pub stats: BuildStats,
}

pub fn unweighted_low_stretch_tree(g: &WeightedMultigraph, x0: usize) -> Result<SpanningTree> {
    build_tree(g, x0, Algorithm::Unweighted, BuildOptions::default()).map(|o| o.tree)
}

pub fn low_stretch_tree(g: &WeightedMultigraph, x0: usize) -> Result<SpanningTree> {
    build_tree(g, x0, Algorithm::Weighted, BuildOptions::default()).map(|o| o.tree)
}

pub fn imp_low_stretch_tree(
    g: &WeightedMultigraph,
    x0: usize,
    t: usize,
    m_hat: usize,
) -> Result<SpanningTree> {
    let opts = BuildOptions { t: Some(t), m_hat: Some(m_hat), parallel: false };
    build_tree(g, x0, Algorithm::Improved, opts).map(|o| o.tree)
}

/// One pending recursive call: an induced subgraph of the input.
struct Task {
    graph: WeightedMultigraph,
    vertex_origin: Vec<usize>,
    edge_origin: Vec<usize>,
    root: usize,
}

#[derive(Default)]
struct TaskOutput {
    tree_edges: Vec<usize>,
    present: Vec<usize>,
    children: Vec<Task>,
    star: bool,
    cuts: usize,
    cut_violations: usize,
}

pub fn build_tree(
    g: &WeightedMultigraph,
    x0: usize,
    algorithm: Algorithm,
    opts: BuildOptions,
) -> Result<BuildOutput> {
    g.check_vertex(x0)?;
    g.require_connected()?;
    if algorithm == Algorithm::Unweighted {
        if let Some((edge, e)) = g.edges().iter().enumerate().find(|(_, e)| e.length != 1.0) {
            return Err(Error::NonUnitLength { edge, length: e.length });
        }
    }
    let n = g.vertex_count();
    let m = g.non_loop_edge_count();
    let m_hat = opts.m_hat.unwrap_or(m);
    if m_hat < m {
        return Err(Error::InvalidParameter(format!("m_hat = {m_hat} is below the edge count {m}")));
    }
    let t = match algorithm {
        Algorithm::Improved => opts.t.unwrap_or_else(|| default_t(n)),
        _ => 1,
    };
    let params = BuilderParams::new(n, m_hat, t)?;

    let mut stats = BuildStats {
        algorithm,
        params,
        levels: 0,
        star_decompositions: 0,
        cuts: 0,
        cut_violations: 0,
        edge_lifetime: vec![0; g.edge_count()],
        max_edge_lifetime: 0,
    };
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut tasks = if n > 1 {
        vec![Task {
            graph: g.clone(),
            vertex_origin: (0..n).collect(),
            edge_origin: (0..g.edge_count()).collect(),
            root: x0,
        }]
    } else {
        Vec::new()
    };

    while !tasks.is_empty() {
        stats.levels += 1;
        let outputs: Vec<Result<TaskOutput>> = if opts.parallel {
            tasks.into_par_iter().map(|task| process(task, &params, algorithm)).collect()
        } else {
            tasks.into_iter().map(|task| process(task, &params, algorithm)).collect()
        };
        let mut next = Vec::new();
        for out in outputs {
            let out = out?;
            tree_edges.extend(out.tree_edges);
            for e in out.present {
                stats.edge_lifetime[e] += 1;
            }
            stats.star_decompositions += usize::from(out.star);
            stats.cuts += out.cuts;
            stats.cut_violations += out.cut_violations;
            next.extend(out.children);
        }
        tasks = next;
    }
    stats.max_edge_lifetime = stats.edge_lifetime.iter().copied().max().unwrap_or(0);
    let tree = SpanningTree::from_edges(g, x0, &tree_edges)?;
    Ok(BuildOutput { tree, stats })
}

fn process(task: Task, params: &BuilderParams, algorithm: Algorithm) -> Result<TaskOutput> {
    let g = &task.graph;
    let n = g.vertex_count();
    let mut out = TaskOutput::default();
    if n == 1 {
        return Ok(out);
    }
    out.present = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_loop())
        .map(|(id, _)| task.edge_origin[id])
        .collect();
    if n == 2 {
        let best = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_loop())
            .min_by(|a, b| a.1.length.total_cmp(&b.1.length).then(a.0.cmp(&b.0)))
            .ok_or(Error::Disconnected)?;
        out.tree_edges.push(task.edge_origin[best.0]);
        return Ok(out);
    }

    let dist = shortest_paths_masked(g, &[task.root], None);
    let rho = radius_of_distances(&dist)?;
    let contraction: Option<ContractionResult> = match algorithm {
        Algorithm::Unweighted => None,
        _ => Some(contract_short_edges(g, params.beta * rho / params.n_hat as f64)),
    };
    let (q, vmap): (&WeightedMultigraph, Option<&[usize]>) = match &contraction {
        Some(c) => (&c.quotient, Some(&c.vertex_map)),
        None => (g, None),
    };
    let map = |v: usize| vmap.map_or(v, |m| m[v]);
    if let Some(c) = &contraction {
        out.present = c.edge_origin.iter().map(|&e| task.edge_origin[e]).collect();
    }

    let (epsilon, strategy) = match algorithm {
        Algorithm::Unweighted => (params.alpha, ConeStrategy::Plain),
        Algorithm::Weighted => (params.beta, ConeStrategy::Plain),
        Algorithm::Improved => {
            (params.beta, ConeStrategy::Improved { t: params.t, m_hat: params.m_hat })
        }
    };
    let sd = star_decomp_with(q, map(task.root), 1.0 / 3.0, epsilon, strategy, FieldMode::Reuse)?;
    out.star = true;
    out.cuts = sd.cuts.len();
    out.cut_violations = sd.cuts.iter().filter(|c| !c.holds()).count();

    let parts = sd.parts.len();
    let qlabel = sd.labels(q.vertex_count());
    let label: Vec<usize> = (0..n).map(|v| qlabel[map(v)]).collect();
    let mut anchor_part = vec![usize::MAX; q.vertex_count()];
    for (i, b) in sd.bridges.iter().enumerate() {
        anchor_part[b.anchor] = i;
    }
    // Shortest edge between the preimages of each quotient bridge, ties by id.
    let mut chosen: Vec<Option<(f64, usize, usize)>> = vec![None; sd.bridges.len()];
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (map(e.u), map(e.v));
        if a == b {
            continue;
        }
        for (qa, qb, x) in [(a, b, e.u), (b, a, e.v)] {
            let i = anchor_part[qa];
            if i != usize::MAX && sd.bridges[i].attach == qb {
                let better = chosen[i].is_none_or(|(len, _, _)| e.length < len);
                if better {
                    chosen[i] = Some((e.length, id, x));
                }
            }
        }
    }

    let mut roots = vec![task.root; parts];
    for (i, c) in chosen.iter().enumerate() {
        let (_, id, x) = c.ok_or_else(|| Error::Invariant("bridge has no preimage edge".into()))?;
        out.tree_edges.push(task.edge_origin[id]);
        roots[i + 1] = x;
    }

    for (pg, root) in split_parts(g, &label, parts).into_iter().zip(roots) {
        if pg.to_parent.len() == 1 {
            continue;
        }
        let local_root = pg
            .to_parent
            .binary_search(&root)
            .map_err(|_| Error::Invariant("part root is outside its part".into()))?;
        out.children.push(Task {
            vertex_origin: pg.to_parent.iter().map(|&v| task.vertex_origin[v]).collect(),
            edge_origin: pg.edge_origin.iter().map(|&e| task.edge_origin[e]).collect(),
            graph: pg.graph,
            root: local_root,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn grid(w: usize, h: usize) -> WeightedMultigraph {
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    edges.push((v, v + 1, 1.0));
                }
                if y + 1 < h {
                    edges.push((v, v + w, 1.0));
                }
            }
        }
        build_graph(w * h, edges).unwrap()
    }

    fn all_algorithms() -> [Algorithm; 3] {
        [Algorithm::Unweighted, Algorithm::Weighted, Algorithm::Improved]
    }

    #[test]
    fn params_are_in_range() {
        for n in [1, 2, 10, 1000, 1 << 20] {
            let p = BuilderParams::new(n, n, 1).unwrap();
            assert!(p.alpha <= 1.0 / 12.0 && p.beta <= 1.0 / 24.0);
        }
        assert_eq!(default_t(1), 1);
        assert_eq!(default_t(4), 1);
        assert_eq!(default_t(16), 2);
        assert_eq!(default_t(17), 3);
        assert_eq!(default_t(1 << 16), 4);
    }

    #[test]
    fn c4_gives_a_path() {
        let g = build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
        for algo in all_algorithms() {
            let out = build_tree(&g, 0, algo, BuildOptions::default()).unwrap();
            assert_eq!(out.tree.edge_ids.len(), 3);
            assert_eq!(out.stats.cut_violations, 0);
        }
    }

    #[test]
    fn trees_return_themselves() {
        let g = build_graph(6, [(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0)])
            .unwrap();
        for algo in all_algorithms() {
            let t = build_tree(&g, 2, algo, BuildOptions::default()).unwrap().tree;
            assert_eq!(t.edge_ids, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn base_case_takes_shortest_copy() {
        let g = build_graph(2, [(0, 1, 2.0), (0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        assert_eq!(low_stretch_tree(&g, 0).unwrap().edge_ids, vec![1]);
        let g = build_graph(2, [(0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        assert_eq!(unweighted_low_stretch_tree(&g, 1).unwrap().edge_ids, vec![0]);
    }

    #[test]
    fn contraction_still_yields_the_path() {
        let g = build_graph(3, [(0, 1, 1e-6), (1, 2, 1.0)]).unwrap();
        for x0 in 0..3 {
            assert_eq!(low_stretch_tree(&g, x0).unwrap().edge_ids, vec![0, 1]);
            assert_eq!(imp_low_stretch_tree(&g, x0, 2, 2).unwrap().edge_ids, vec![0, 1]);
        }
    }

    #[test]
    fn single_vertex_and_loops() {
        let g = build_graph(1, [(0, 0, 1.0)]).unwrap();
        for algo in all_algorithms() {
            let t = build_tree(&g, 0, algo, BuildOptions::default()).unwrap().tree;
            assert!(t.edge_ids.is_empty());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = build_graph(3, [(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        assert!(matches!(unweighted_low_stretch_tree(&g, 0), Err(Error::NonUnitLength { edge: 0, .. })));
        let g = build_graph(3, [(0, 1, 1.0)]).unwrap();
        assert!(matches!(low_stretch_tree(&g, 0), Err(Error::Disconnected)));
        assert!(low_stretch_tree(&g, 7).is_err());
    }

    #[test]
    fn grid_radius_and_parallel_determinism() {
        let g = grid(8, 8);
        let rho = 14.0;
        let root_e = 1f64.exp().sqrt();
        for algo in all_algorithms() {
            let seq = build_tree(&g, 0, algo, BuildOptions::default()).unwrap();
            let par = build_tree(&g, 0, algo, BuildOptions { parallel: true, ..Default::default() })
                .unwrap();
            assert_eq!(seq.tree, par.tree);
            let limit = if algo == Algorithm::Unweighted { root_e * rho } else { 2.0 * root_e * rho };
            assert!(seq.tree.radius() <= limit, "{algo:?}: {}", seq.tree.radius());
            assert_eq!(seq.stats.cut_violations, 0);
        }
    }

    #[test]
    fn improved_with_one_tier_matches_weighted() {
        let g = build_graph(
            7,
            [(0, 1, 1.5), (1, 2, 0.2), (2, 3, 3.0), (3, 4, 1.0), (4, 5, 2.0), (5, 6, 0.7), (6, 0, 1.1), (1, 4, 2.2), (2, 5, 1.9)],
        )
        .unwrap();
        for x0 in 0..7 {
            let w = low_stretch_tree(&g, x0).unwrap();
            let i = imp_low_stretch_tree(&g, x0, 1, g.edge_count()).unwrap();
            assert_eq!(w, i);
        }
    }
}
