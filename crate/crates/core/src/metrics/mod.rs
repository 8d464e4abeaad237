//! Stretch, radius and the validators that re-check decomposition and tree guarantees.

mod validate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{shortest_path_distances, WeightedMultigraph};
use crate::tree::SpanningTree;

pub use validate::{validate_star_decomposition, validate_tree, Check, ValidationReport};

/// Lowest-common-ancestor queries on a rooted spanning tree by binary lifting.
pub struct TreeLca<'t> {
    tree: &'t SpanningTree,
    hops: Vec<usize>,
    up: Vec<Vec<usize>>,
}

impl<'t> TreeLca<'t> {
    pub fn new(tree: &'t SpanningTree) -> Self {
        let n = tree.vertex_count();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut first = vec![tree.root; n];
        for (v, p) in tree.parent.iter().enumerate() {
            if let Some((u, _)) = *p {
                children[u].push(v);
                first[v] = u;
            }
        }
        let mut hops = vec![0usize; n];
        let mut stack = vec![tree.root];
        while let Some(u) = stack.pop() {
            for &c in &children[u] {
                hops[c] = hops[u] + 1;
                stack.push(c);
            }
        }
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        let mut up = vec![first];
        for k in 1..levels.max(1) {
            let prev = &up[k - 1];
            let next: Vec<usize> = (0..n).map(|v| prev[prev[v]]).collect();
            up.push(next);
        }
        Self { tree, hops, up }
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        if self.hops[a] < self.hops[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let mut diff = self.hops[a] - self.hops[b];
        let mut k = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                a = self.up[k][a];
            }
            diff >>= 1;
            k += 1;
        }
        if a == b {
            return a;
        }
        for k in (0..self.up.len()).rev() {
            if self.up[k][a] != self.up[k][b] {
                a = self.up[k][a];
                b = self.up[k][b];
            }
        }
        self.up[0][a]
    }

    /// Length of the tree path between `a` and `b`. A parent-child pair gets
    /// the exact length of the tree edge joining them.
    pub fn distance(&self, g: &WeightedMultigraph, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        for (child, parent) in [(a, b), (b, a)] {
            if let Some((p, e)) = self.tree.parent[child] {
                if p == parent {
                    return g.length(e);
                }
            }
        }
        let c = self.lca(a, b);
        let d = &self.tree.depth_len;
        d[a] + d[b] - 2.0 * d[c]
    }
}

fn check_spans(g: &WeightedMultigraph, tree: &SpanningTree) -> Result<()> {
    if tree.vertex_count() != g.vertex_count() || tree.edge_ids.len() + 1 != g.vertex_count() {
        return Err(Error::InvalidParameter("tree does not span the graph".into()));
    }
    if tree.edge_ids.iter().any(|&e| e >= g.edge_count()) {
        return Err(Error::InvalidParameter("tree uses an edge that is not in the graph".into()));
    }
    Ok(())
}

/// `dist_T(u, v)` for every edge `(u, v)` of `g`.
pub fn tree_distances_for_edges(g: &WeightedMultigraph, tree: &SpanningTree) -> Result<Vec<f64>> {
    check_spans(g, tree)?;
    let lca = TreeLca::new(tree);
    Ok(g.edges().iter().map(|e| lca.distance(g, e.u, e.v)).collect())
}

/// `dist_G(u, v)` for every edge `(u, v)`, one shortest-path run per distinct tail.
pub fn graph_distances_for_edges(g: &WeightedMultigraph) -> Result<Vec<f64>> {
    let mut by_tail: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (id, e) in g.edges().iter().enumerate() {
        by_tail[e.u].push(id);
    }
    let mut out = vec![0.0; g.edge_count()];
    for (u, ids) in by_tail.iter().enumerate() {
        if ids.is_empty() {
            continue;
        }
        let dist = shortest_path_distances(g, u)?;
        for &id in ids {
            let d = dist[g.edge(id).v];
            if !d.is_finite() {
                return Err(Error::Disconnected);
            }
            out[id] = d;
        }
    }
    Ok(out)
}

/// The graph with weight `1 / dist_G(u, v)` on every edge, and the distance table.
/// Self-loops keep their weight.
pub fn reweight_for_metric_stretch(g: &WeightedMultigraph) -> Result<(WeightedMultigraph, Vec<f64>)> {
    let dist = graph_distances_for_edges(g)?;
    let weights = dist
        .iter()
        .enumerate()
        .map(|(id, &d)| if d > 0.0 { 1.0 / d } else { g.weight(id) })
        .collect();
    Ok((g.with_weights(weights)?, dist))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StretchMode {
    /// `dist_T / d(e)`.
    Standard,
    /// `dist_T / dist_G`.
    Akpw,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeStretch {
    pub edge_id: usize,
    pub u: usize,
    pub v: usize,
    pub length: f64,
    pub tree_dist: f64,
    pub stretch: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub mode: StretchMode,
    pub per_edge: Vec<EdgeStretch>,
    /// `total / m`, counting every parallel copy and self-loop.
    pub average: f64,
    pub total: f64,
    pub max: f64,
}

impl StretchReport {
    /// Columns `edge_id,u,v,length,tree_dist,stretch`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for s in &self.per_edge {
            w.serialize(s)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn build_report(
    g: &WeightedMultigraph,
    tree_dist: Vec<f64>,
    denominators: &[f64],
    mode: StretchMode,
) -> StretchReport {
    let per_edge: Vec<EdgeStretch> = g
        .edges()
        .iter()
        .zip(tree_dist)
        .enumerate()
        .map(|(id, (e, td))| EdgeStretch {
            edge_id: id,
            u: e.u,
            v: e.v,
            length: e.length,
            tree_dist: td,
            stretch: if e.is_loop() { 0.0 } else { td / denominators[id] },
        })
        .collect();
    let total: f64 = per_edge.iter().map(|s| s.stretch).sum();
    let max = per_edge.iter().map(|s| s.stretch).fold(0.0, f64::max);
    let average = if per_edge.is_empty() { 0.0 } else { total / per_edge.len() as f64 };
    StretchReport { mode, per_edge, average, total, max }
}

pub fn stretch_report(g: &WeightedMultigraph, tree: &SpanningTree) -> Result<StretchReport> {
    let td = tree_distances_for_edges(g, tree)?;
    let lengths: Vec<f64> = g.edges().iter().map(|e| e.length).collect();
    Ok(build_report(g, td, &lengths, StretchMode::Standard))
}

/// Stretch against `dist_G`, as returned by [`graph_distances_for_edges`].
pub fn stretch_report_akpw(
    g: &WeightedMultigraph,
    tree: &SpanningTree,
    graph_dist: &[f64],
) -> Result<StretchReport> {
    if graph_dist.len() != g.edge_count() {
        return Err(Error::InvalidParameter("distance table does not match the edge count".into()));
    }
    let td = tree_distances_for_edges(g, tree)?;
    Ok(build_report(g, td, graph_dist, StretchMode::Akpw))
}

fn log43(x: f64) -> f64 {
    x.ln() / (4.0f64 / 3.0).ln()
}

/// `24 sqrt(e) log2(m + 1) log_{4/3}(n) log_{4/3}(n + 6)`.
pub fn average_stretch_envelope(n_hat: usize, m_hat: usize) -> f64 {
    let n = n_hat as f64;
    24.0 * 1f64.exp().sqrt() * (m_hat as f64 + 1.0).log2() * log43(n) * log43(n + 6.0)
}
