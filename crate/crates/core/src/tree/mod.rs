//! Spanning trees and the recursive builders that produce them.

mod builder;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedMultigraph};

pub use builder::{
    build_tree, default_t, imp_low_stretch_tree, low_stretch_tree, unweighted_low_stretch_tree,
    Algorithm, BuildOptions, BuildOutput, BuildStats, BuilderParams,
};

/// A spanning tree given by original edge ids, rooted for distance queries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanningTree {
    pub root: usize,
    /// Sorted original edge ids.
    pub edge_ids: Vec<usize>,
    /// `(parent vertex, edge id)`; `None` at the root.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Tree distance to the root.
    pub depth_len: Vec<f64>,
}

/// The persisted form of a tree: a root and its edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub root: usize,
    pub edge_ids: Vec<usize>,
}

impl SpanningTree {
    /// Roots the edge set at `root`; fails unless it is a spanning tree of `g`.
    pub fn from_edges(g: &WeightedMultigraph, root: usize, edge_ids: &[usize]) -> Result<Self> {
        g.check_vertex(root)?;
        let n = g.vertex_count();
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant("tree lists an edge twice".into()));
        }
        if ids.len() + 1 != n {
            return Err(Error::Invariant(format!(
                "a spanning tree on {n} vertices needs {} edges, got {}",
                n - 1,
                ids.len()
            )));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &id in &ids {
            if id >= g.edge_count() {
                return Err(Error::Invariant(format!("edge {id} is not in the graph")));
            }
            let Edge { u, v, .. } = g.edge(id);
            if u == v {
                return Err(Error::Invariant(format!("edge {id} is a self-loop")));
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        let mut parent = vec![None; n];
        let mut depth_len = vec![f64::NAN; n];
        depth_len[root] = 0.0;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(w, id) in &adj[u] {
                if depth_len[w].is_nan() {
                    depth_len[w] = depth_len[u] + g.length(id);
                    parent[w] = Some((u, id));
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return Err(Error::Invariant("tree edges do not connect every vertex".into()));
        }
        Ok(Self { root, edge_ids: ids, parent, depth_len })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// `Γ_T(root)`.
    pub fn radius(&self) -> f64 {
        self.depth_len.iter().copied().fold(0.0, f64::max)
    }

    pub fn record(&self) -> TreeRecord {
        TreeRecord { root: self.root, edge_ids: self.edge_ids.clone() }
    }

    /// The tree as a graph on the same vertices; edge `i` is `edge_ids[i]`.
    pub fn as_graph(&self, g: &WeightedMultigraph) -> WeightedMultigraph {
        let edges = self.edge_ids.iter().map(|&id| g.edge(id)).collect();
        let weights = self.edge_ids.iter().map(|&id| g.weight(id)).collect();
        WeightedMultigraph::assemble(self.vertex_count(), edges, weights)
    }
}
