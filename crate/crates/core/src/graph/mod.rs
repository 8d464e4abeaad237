//! Weighted multigraphs and the basic measurements used by the decompositions.
//!
//! Edge lengths are the primary data; the weight of an edge defaults to the
//! reciprocal of its length. Costs sum weights, distances sum lengths.
//! Self-loops are stored (so edge ids stay positional) but are left out of the
//! adjacency lists, which makes every traversal ignore them.

mod contract;
mod edgelist;
mod paths;
mod subgraph;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use contract::{contract_short_edges, ContractionResult, UnionFind};
pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use paths::{
    ball, ball_shell, multi_source_distances, radius_from, shortest_path_distances, tolerance_for,
    DistanceField,
};
pub(crate) use paths::{
    radius_of_distances, shell_members, shortest_paths_masked, MinHeap,
};
pub use subgraph::{induced_subgraph, InducedSubgraph};
pub(crate) use subgraph::split_parts;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: usize,
    pub edge: usize,
}

/// An immutable weighted multigraph with positional edge ids.
#[derive(Clone, Debug)]
pub struct WeightedMultigraph {
    n: usize,
    edges: Vec<Edge>,
    weights: Vec<f64>,
    offsets: Vec<usize>,
    adjacency: Vec<Incidence>,
    loops: usize,
    uniform_length: Option<f64>,
}

impl PartialEq for WeightedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.weights == other.weights
    }
}

/// Builds a graph from `(u, v, length)` triples; edge ids are positions in the list.
pub fn build_graph(
    n: usize,
    edge_list: impl IntoIterator<Item = (usize, usize, f64)>,
) -> Result<WeightedMultigraph> {
    WeightedMultigraph::new(n, edge_list)
}

impl WeightedMultigraph {
    pub fn new(
        n: usize,
        edge_list: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let edges = edge_list
            .into_iter()
            .map(|(u, v, length)| Edge { u, v, length })
            .collect();
        Self::from_edges(n, edges)
    }

    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (i, e) in edges.iter().enumerate() {
            if !(e.length > 0.0 && e.length.is_finite()) {
                return Err(Error::InvalidLength { edge: i, length: e.length });
            }
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::EndpointOutOfRange { edge: i, vertex: x, n });
                }
            }
        }
        let weights = edges.iter().map(|e| 1.0 / e.length).collect();
        Ok(Self::assemble(n, edges, weights))
    }

    /// Internal constructor for graphs derived from an already validated graph.
    pub(crate) fn assemble(n: usize, edges: Vec<Edge>, weights: Vec<f64>) -> Self {
        debug_assert_eq!(edges.len(), weights.len());
        let mut degree = vec![0usize; n + 1];
        let mut loops = 0;
        let mut uniform: Option<Option<f64>> = None;
        for e in &edges {
            if e.is_loop() {
                loops += 1;
                continue;
            }
            degree[e.u] += 1;
            degree[e.v] += 1;
            uniform = match uniform {
                None => Some(Some(e.length)),
                Some(Some(l)) if l == e.length => Some(Some(l)),
                _ => Some(None),
            };
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut cursor = offsets.clone();
        let mut adjacency = vec![Incidence { neighbor: 0, edge: 0 }; offsets[n]];
        for (id, e) in edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            adjacency[cursor[e.u]] = Incidence { neighbor: e.v, edge: id };
            cursor[e.u] += 1;
            adjacency[cursor[e.v]] = Incidence { neighbor: e.u, edge: id };
            cursor[e.v] += 1;
        }
        Self {
            n,
            edges,
            weights,
            offsets,
            adjacency,
            loops,
            uniform_length: uniform.flatten(),
        }
    }

    /// Same topology and lengths, with per-edge weights replaced.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} weights, got {}",
                self.edges.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !(*w > 0.0)) {
            return Err(Error::InvalidParameter(format!("weight of edge {i} must be positive")));
        }
        let mut g = self.clone();
        g.weights = weights;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edge instances, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn non_loop_edge_count(&self) -> usize {
        self.edges.len() - self.loops
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn length(&self, e: usize) -> f64 {
        self.edges[e].length
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Non-loop incidences of `v`, one entry per parallel copy.
    pub fn neighbors(&self, v: usize) -> &[Incidence] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// The common length of every non-loop edge, when there is one.
    pub fn uniform_length(&self) -> Option<f64> {
        self.uniform_length
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for inc in self.neighbors(v) {
                if !seen[inc.neighbor] {
                    seen[inc.neighbor] = true;
                    count += 1;
                    stack.push(inc.neighbor);
                }
            }
        }
        count == self.n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }
}

/// A vertex subset of a graph, with membership lookups.
#[derive(Clone, Debug)]
pub struct VertexSetView<'g> {
    graph: &'g WeightedMultigraph,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl<'g> VertexSetView<'g> {
    pub fn new(graph: &'g WeightedMultigraph, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; graph.vertex_count()];
        let mut list = Vec::with_capacity(members.len());
        for &v in members {
            graph.check_vertex(v)?;
            if !mask[v] {
                mask[v] = true;
                list.push(v);
            }
        }
        list.sort_unstable();
        Ok(Self { graph, members: list, mask })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask[v]
    }

    /// Number of (non-loop) edges with at least one endpoint in the set.
    pub fn volume(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|e| !e.is_loop() && (self.mask[e.u] || self.mask[e.v]))
            .count()
    }

    /// Number of (non-loop) edges with both endpoints in the set.
    pub fn internal_edge_count(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|e| !e.is_loop() && self.mask[e.u] && self.mask[e.v])
            .count()
    }

    pub fn boundary(&self) -> Vec<usize> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.mask[e.u] != self.mask[e.v])
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn volume_of(g: &WeightedMultigraph, set: &[usize]) -> Result<usize> {
    Ok(VertexSetView::new(g, set)?.volume())
}

pub fn volume_of_internal(g: &WeightedMultigraph, set: &[usize]) -> Result<usize> {
    Ok(VertexSetView::new(g, set)?.internal_edge_count())
}

pub fn boundary_of(g: &WeightedMultigraph, set: &[usize]) -> Result<Vec<usize>> {
    Ok(VertexSetView::new(g, set)?.boundary())
}

/// Sum of weights over an explicit edge-id set. Self-loops count if listed.
pub fn cost_of(g: &WeightedMultigraph, edges: &[usize]) -> f64 {
    edges.iter().map(|&e| g.weight(e)).sum()
}

/// Edges whose endpoints fall in different parts of a labelling.
pub fn partition_boundary(g: &WeightedMultigraph, label: &[usize]) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| label[e.u] != label[e.v])
        .map(|(i, _)| i)
        .collect()
}
