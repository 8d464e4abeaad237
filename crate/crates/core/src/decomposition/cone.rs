//! Cones `C_S(l, v)`: vertices reachable from `v` when forward arcs of the
//! distance field to `S` are free and every other arc costs its length.
//!
//! All growth runs over an `alive` mask of a fixed graph, so deleting a cone is
//! just clearing its vertices from the mask.

use serde::{Deserialize, Serialize};

use super::{CutKind, CutRecord};
use crate::error::{Error, Result};
use crate::graph::{
    multi_source_distances, shortest_paths_masked, DistanceField, MinHeap, WeightedMultigraph,
};

/// How the distance field to the remaining sources is obtained between cones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldMode {
    /// Compute once and keep using it after cones are removed.
    #[default]
    Reuse,
    /// Recompute on the remaining graph before every cone (slow; for cross-checking).
    Recompute,
}

/// Plain cone decomposition, or the volume-tiered variant with `t` windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeStrategy {
    Plain,
    Improved { t: usize, m_hat: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeCut {
    pub radius: f64,
    /// `C_S(radius, v)`, sorted.
    pub members: Vec<usize>,
    pub record: CutRecord,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConePartition {
    pub parts: Vec<Vec<usize>>,
    pub anchors: Vec<usize>,
    pub radii: Vec<f64>,
    /// The window tier each part was cut at (improved strategy only).
    pub index_mapping: Option<Vec<usize>>,
    /// Every cone-cut invocation, in call order.
    #[serde(skip)]
    pub cuts: Vec<CutRecord>,
}

fn forward_from(g: &WeightedMultigraph, forward: &[[bool; 2]], e: usize, from: usize) -> bool {
    if g.edge(e).u == from {
        forward[e][0]
    } else {
        forward[e][1]
    }
}

/// Reusable scratch space for growing cones in cone-cost order.
struct Grower<'g> {
    g: &'g WeightedMultigraph,
    cdist: Vec<f64>,
    in_cone: Vec<bool>,
    touched: Vec<usize>,
    heap: MinHeap,
    members: Vec<usize>,
    volume: usize,
    internal: usize,
    cost: f64,
}

impl<'g> Grower<'g> {
    fn new(g: &'g WeightedMultigraph) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            cdist: vec![f64::INFINITY; n],
            in_cone: vec![false; n],
            touched: Vec::new(),
            heap: MinHeap::new(),
            members: Vec::new(),
            volume: 0,
            internal: 0,
            cost: 0.0,
        }
    }

    fn start(&mut self, v: usize) {
        for &u in &self.touched {
            self.cdist[u] = f64::INFINITY;
            self.in_cone[u] = false;
        }
        self.touched.clear();
        self.heap.clear();
        self.members.clear();
        self.volume = 0;
        self.internal = 0;
        self.cost = 0.0;
        self.cdist[v] = 0.0;
        self.touched.push(v);
        self.heap.push(0.0, v);
    }

    fn is_stale(&self, key: f64, u: usize) -> bool {
        self.in_cone[u] || key > self.cdist[u]
    }

    /// Smallest cone distance not yet in the cone.
    fn next_key(&mut self) -> Option<f64> {
        while let Some((key, u)) = self.heap.peek() {
            if self.is_stale(key, u) {
                self.heap.pop();
            } else {
                return Some(key);
            }
        }
        None
    }

    /// Adds every vertex with cone distance `<= limit`.
    fn settle_upto(&mut self, limit: f64, forward: &[[bool; 2]], alive: &[bool]) {
        let g = self.g;
        while let Some((key, u)) = self.heap.peek() {
            if key > limit {
                break;
            }
            self.heap.pop();
            if self.is_stale(key, u) {
                continue;
            }
            self.in_cone[u] = true;
            self.members.push(u);
            for inc in g.neighbors(u) {
                let w = inc.neighbor;
                if !alive[w] {
                    continue;
                }
                if self.in_cone[w] {
                    self.internal += 1;
                    self.cost -= g.weight(inc.edge);
                    continue;
                }
                self.volume += 1;
                self.cost += g.weight(inc.edge);
                let step = if forward_from(g, forward, inc.edge, u) {
                    0.0
                } else {
                    g.length(inc.edge)
                };
                let nd = key + step;
                if nd < self.cdist[w] {
                    if self.cdist[w].is_infinite() {
                        self.touched.push(w);
                    }
                    self.cdist[w] = nd;
                    self.heap.push(nd, w);
                }
            }
        }
    }

    /// Cone cutting on the alive graph with `edge_count` edges: returns the first
    /// `r` in `[lambda, lambda')` (starting at `lambda`, then stepping through
    /// cone distances) whose cone boundary meets the cutting bound.
    fn cut(
        &mut self,
        v: usize,
        lambda: f64,
        lambda_prime: f64,
        forward: &[[bool; 2]],
        alive: &[bool],
        edge_count: usize,
    ) -> Result<CutRecord> {
        self.start(v);
        self.settle_upto(lambda, forward, alive);
        let inner = self.internal;
        let mut record = CutRecord {
            kind: CutKind::Cone,
            lambda,
            lambda_prime,
            radius: lambda,
            edge_count,
            volume: self.volume,
            inner_edges: inner,
            boundary_cost: 0.0,
        };
        loop {
            record.volume = self.volume;
            record.boundary_cost = self.cost.max(0.0);
            if record.boundary_cost <= record.bound() {
                return Ok(record);
            }
            let next = self.next_key().ok_or_else(|| {
                Error::Invariant("cone boundary is nonempty but nothing is left to grow".into())
            })?;
            if next >= lambda_prime {
                return Err(Error::Invariant(format!(
                    "cone cut left the window [{lambda}, {lambda_prime}) at r = {next}"
                )));
            }
            record.radius = next;
            self.settle_upto(next, forward, alive);
        }
    }

    fn sorted_members(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }
}

/// `C_S(l, v)` for the source set behind `field`, sorted.
pub fn cone(g: &WeightedMultigraph, field: &DistanceField, v: usize, l: f64) -> Result<Vec<usize>> {
    g.check_vertex(v)?;
    if !(l >= 0.0) {
        return Err(Error::InvalidParameter(format!("cone width {l} must be nonnegative")));
    }
    let alive = vec![true; g.vertex_count()];
    let mut grower = Grower::new(g);
    grower.start(v);
    grower.settle_upto(l, &field.forward, &alive);
    Ok(grower.sorted_members())
}

/// Cuts a cone around `v` induced by `sources` with radius in `[lambda, lambda')`.
pub fn cone_cut(
    g: &WeightedMultigraph,
    v: usize,
    lambda: f64,
    lambda_prime: f64,
    sources: &[usize],
) -> Result<ConeCut> {
    g.check_vertex(v)?;
    if !(lambda >= 0.0 && lambda < lambda_prime && lambda_prime.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cone cut window [{lambda}, {lambda_prime}) is empty or invalid"
        )));
    }
    let field = multi_source_distances(g, sources)?;
    let alive = vec![true; g.vertex_count()];
    let mut grower = Grower::new(g);
    let record = grower.cut(v, lambda, lambda_prime, &field.forward, &alive, g.non_loop_edge_count())?;
    Ok(ConeCut { radius: record.radius, members: grower.sorted_members(), record })
}

pub fn cone_decomp(g: &WeightedMultigraph, sources: &[usize], delta: f64) -> Result<ConePartition> {
    cone_decomp_with(g, sources, delta, ConeStrategy::Plain, FieldMode::Reuse)
}

pub fn imp_cone_decomp(
    g: &WeightedMultigraph,
    sources: &[usize],
    delta: f64,
    t: usize,
    m_hat: usize,
) -> Result<ConePartition> {
    cone_decomp_with(g, sources, delta, ConeStrategy::Improved { t, m_hat }, FieldMode::Reuse)
}

pub fn cone_decomp_with(
    g: &WeightedMultigraph,
    sources: &[usize],
    delta: f64,
    strategy: ConeStrategy,
    mode: FieldMode,
) -> Result<ConePartition> {
    for &s in sources {
        g.check_vertex(s)?;
    }
    let alive = vec![true; g.vertex_count()];
    partition_alive(g, &alive, sources, delta, strategy, mode)
}

fn count_alive_edges(g: &WeightedMultigraph, alive: &[bool]) -> usize {
    g.edges()
        .iter()
        .filter(|e| !e.is_loop() && alive[e.u] && alive[e.v])
        .count()
}

fn field_on(g: &WeightedMultigraph, sources: &[usize], alive: &[bool]) -> DistanceField {
    let dist = shortest_paths_masked(g, sources, Some(alive));
    DistanceField::from_distances(g, sources.to_vec(), dist, Some(alive))
}

/// Cone decomposition of the subgraph induced by `alive`.
pub(crate) fn partition_alive(
    g: &WeightedMultigraph,
    alive0: &[bool],
    sources: &[usize],
    delta: f64,
    strategy: ConeStrategy,
    mode: FieldMode,
) -> Result<ConePartition> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("cone width {delta} must be positive")));
    }
    if let ConeStrategy::Improved { t, .. } = strategy {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
    }
    let mut alive = alive0.to_vec();
    let mut srcs: Vec<usize> = sources.to_vec();
    srcs.sort_unstable();
    srcs.dedup();
    if let Some(&s) = srcs.iter().find(|&&s| !alive[s]) {
        return Err(Error::InvalidParameter(format!("source {s} is not in the graph")));
    }
    if srcs.is_empty() {
        if alive.iter().any(|&a| a) {
            return Err(Error::EmptySourceSet);
        }
        return Ok(ConePartition::default());
    }

    let mut field = field_on(g, &srcs, &alive);
    if let Some(v) = (0..g.vertex_count()).find(|&v| alive[v] && !field.dist[v].is_finite()) {
        return Err(Error::InvalidParameter(format!("vertex {v} cannot reach the source set")));
    }

    let input_edges = count_alive_edges(g, &alive);
    let mut remaining_edges = input_edges;
    let mut grower = Grower::new(g);
    let mut out = ConePartition::default();
    let mut tiers = Vec::new();
    let mut next_source = 0usize;

    loop {
        while next_source < srcs.len() && !alive[srcs[next_source]] {
            next_source += 1;
        }
        let Some(&x) = srcs.get(next_source) else { break };
        if mode == FieldMode::Recompute && !out.parts.is_empty() {
            let left: Vec<usize> = srcs[next_source..].iter().copied().filter(|&s| alive[s]).collect();
            field = field_on(g, &left, &alive);
        }

        let record = match strategy {
            ConeStrategy::Plain => {
                let rec = grower.cut(x, 0.0, delta, &field.forward, &alive, remaining_edges)?;
                out.cuts.push(rec.clone());
                rec
            }
            ConeStrategy::Improved { t, m_hat } => {
                let tf = t as f64;
                let log_m_hat = if m_hat > 0 { (m_hat as f64).log2() } else { 0.0 };
                let mut chosen = None;
                for p in (1..t).rev() {
                    let lo = (t - p - 1) as f64 * delta / tf;
                    let hi = (t - p) as f64 * delta / tf;
                    let rec = grower.cut(x, lo, hi, &field.forward, &alive, remaining_edges)?;
                    out.cuts.push(rec.clone());
                    let threshold = input_edges as f64 / log_m_hat.powf(p as f64 / tf).exp2();
                    if grower.internal as f64 <= threshold {
                        chosen = Some((rec, p));
                        break;
                    }
                }
                let (rec, p) = match chosen {
                    Some(found) => found,
                    None => {
                        let lo = (t - 1) as f64 * delta / tf;
                        let rec = grower.cut(x, lo, delta, &field.forward, &alive, remaining_edges)?;
                        out.cuts.push(rec.clone());
                        (rec, 0)
                    }
                };
                tiers.push(p);
                rec
            }
        };

        let part = grower.sorted_members();
        for &u in &part {
            alive[u] = false;
        }
        remaining_edges -= record.volume;
        out.parts.push(part);
        out.anchors.push(x);
        out.radii.push(record.radius);
    }
    if matches!(strategy, ConeStrategy::Improved { .. }) {
        out.index_mapping = Some(tiers);
    }
    Ok(out)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::graph::induced_subgraph;
    use crate::testing::connected_graph;
    use proptest::prelude::*;

    fn pick_sources(n: usize, picks: &[prop::sample::Index]) -> Vec<usize> {
        let mut s: Vec<usize> = picks.iter().map(|i| i.index(n)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn cones_are_concentric(
            g in connected_graph(30, 40),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
            vi in any::<prop::sample::Index>(),
            l in 0.0f64..10.0,
            extra in 0.0f64..10.0,
        ) {
            let s = pick_sources(g.vertex_count(), &picks);
            let field = multi_source_distances(&g, &s).unwrap();
            let v = vi.index(g.vertex_count());
            let small = cone(&g, &field, v, l).unwrap();
            let big = cone(&g, &field, v, l + extra).unwrap();
            prop_assert!(small.iter().all(|u| big.binary_search(u).is_ok()));
            for &u in &small {
                for inc in g.neighbors(u) {
                    let grown = cone(&g, &field, v, l + g.length(inc.edge)).unwrap();
                    prop_assert!(grown.binary_search(&inc.neighbor).is_ok());
                }
            }
        }

        #[test]
        fn cone_radius_and_deletion(
            g in connected_graph(30, 40),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
            xi in any::<prop::sample::Index>(),
            l in 0.0f64..10.0,
        ) {
            let n = g.vertex_count();
            let s = pick_sources(n, &picks);
            let x = s[xi.index(s.len())];
            let field = multi_source_distances(&g, &s).unwrap();
            let psi = field.max_distance();
            let c = cone(&g, &field, x, l).unwrap();

            let sub = induced_subgraph(&g, &c).unwrap();
            let local = sub.from_parent[x].unwrap();
            let dist = shortest_paths_masked(&sub.graph, &[local], None);
            let radius = crate::graph::radius_of_distances(&dist).unwrap();
            prop_assert!(radius <= psi + 2.0 * l + 1e-9 * (psi + 2.0 * l).max(1.0));

            let mut alive = vec![true; n];
            for &u in &c {
                alive[u] = false;
            }
            let rest: Vec<usize> = s.iter().copied().filter(|&u| alive[u]).collect();
            if rest.is_empty() {
                prop_assert!(alive.iter().all(|&a| !a));
            } else {
                let after = shortest_paths_masked(&g, &rest, Some(&alive));
                for v in (0..n).filter(|&v| alive[v]) {
                    let d = field.dist[v];
                    prop_assert!((after[v] - d).abs() <= 1e-9 * d.max(1.0), "v {} {} vs {}", v, after[v], d);
                }
            }
        }

        #[test]
        fn cone_cut_meets_its_guarantee(
            g in connected_graph(30, 60),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
            xi in any::<prop::sample::Index>(),
            lambda in 0.0f64..5.0,
            width in 0.01f64..5.0,
        ) {
            let s = pick_sources(g.vertex_count(), &picks);
            let x = s[xi.index(s.len())];
            let cut = cone_cut(&g, x, lambda, lambda + width, &s).unwrap();
            prop_assert!(cut.record.holds(), "{:?}", cut.record);
            let field = multi_source_distances(&g, &s).unwrap();
            prop_assert_eq!(cut.members, cone(&g, &field, x, cut.radius).unwrap());
        }

        #[test]
        fn decompositions_partition_into_connected_parts(
            g in connected_graph(40, 60),
            picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6),
            delta in 0.05f64..5.0,
            t in 1usize..4,
        ) {
            let s = pick_sources(g.vertex_count(), &picks);
            let m_hat = g.non_loop_edge_count().max(1);
            for strategy in [ConeStrategy::Plain, ConeStrategy::Improved { t, m_hat }] {
                let reuse = cone_decomp_with(&g, &s, delta, strategy, FieldMode::Reuse).unwrap();
                let fresh = cone_decomp_with(&g, &s, delta, strategy, FieldMode::Recompute).unwrap();
                prop_assert_eq!(&reuse.parts, &fresh.parts);
                let mut seen = vec![false; g.vertex_count()];
                for (part, &x) in reuse.parts.iter().zip(&reuse.anchors) {
                    prop_assert!(part.binary_search(&x).is_ok());
                    prop_assert!(s.contains(&x));
                    prop_assert!(induced_subgraph(&g, part).unwrap().graph.is_connected());
                    for &v in part {
                        prop_assert!(!seen[v]);
                        seen[v] = true;
                    }
                }
                prop_assert!(seen.iter().all(|&b| b));
                prop_assert!(reuse.cuts.iter().all(CutRecord::holds));
                for (r, rec) in reuse.radii.iter().zip(&reuse.cuts) {
                    prop_assert!(*r < delta && rec.radius_in_window());
                }
            }
            let one = cone_decomp_with(&g, &s, delta, ConeStrategy::Improved { t: 1, m_hat }, FieldMode::Reuse).unwrap();
            let plain = cone_decomp(&g, &s, delta).unwrap();
            prop_assert_eq!(one.parts, plain.parts);
        }
    }
}
