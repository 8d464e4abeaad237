use super::{Edge, WeightedMultigraph};

/// Disjoint-set forest with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns false if the two were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// A quotient multigraph and its bookkeeping back to the original vertices and edges.
#[derive(Clone, Debug)]
pub struct ContractionResult {
    pub quotient: WeightedMultigraph,
    /// Super-vertex -> original vertices (sorted).
    pub preimage: Vec<Vec<usize>>,
    /// Original vertex -> super-vertex.
    pub vertex_map: Vec<usize>,
    /// Quotient edge -> original edge.
    pub edge_origin: Vec<usize>,
}

/// Merges the endpoints of every edge shorter than `threshold` and drops the
/// self-loops this creates. Super-vertices are numbered by their smallest
/// original vertex; surviving edges keep their relative order.
pub fn contract_short_edges(g: &WeightedMultigraph, threshold: f64) -> ContractionResult {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        if e.length < threshold {
            uf.union(e.u, e.v);
        }
    }
    let mut root_id = vec![usize::MAX; n];
    let mut vertex_map = vec![0usize; n];
    let mut preimage: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if root_id[r] == usize::MAX {
            root_id[r] = preimage.len();
            preimage.push(Vec::new());
        }
        vertex_map[v] = root_id[r];
        preimage[root_id[r]].push(v);
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
        if a != b {
            edges.push(Edge { u: a, v: b, length: e.length });
            weights.push(g.weight(id));
            edge_origin.push(id);
        }
    }
    ContractionResult {
        quotient: WeightedMultigraph::assemble(preimage.len(), edges, weights),
        preimage,
        vertex_map,
        edge_origin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn merges_short_prefix_of_path() {
        let g = build_graph(3, [(0, 1, 0.1), (1, 2, 1.0)]).unwrap();
        let c = contract_short_edges(&g, 0.5);
        assert_eq!(c.quotient.vertex_count(), 2);
        assert_eq!(c.quotient.edge_count(), 1);
        assert_eq!(c.quotient.length(0), 1.0);
        assert_eq!(c.preimage, vec![vec![0, 1], vec![2]]);
        assert_eq!(c.vertex_map, vec![0, 0, 1]);
        assert_eq!(c.edge_origin, vec![1]);
    }

    #[test]
    fn zero_threshold_is_identity() {
        let g = build_graph(3, [(0, 1, 0.1), (1, 2, 1.0), (2, 0, 3.0)]).unwrap();
        let c = contract_short_edges(&g, 0.0);
        assert_eq!(c.quotient, g);
        assert_eq!(c.edge_origin, vec![0, 1, 2]);
    }

    #[test]
    fn short_triangle_collapses_to_a_point() {
        let g = build_graph(3, [(0, 1, 0.1), (1, 2, 0.1), (2, 0, 0.1)]).unwrap();
        let c = contract_short_edges(&g, 0.5);
        assert_eq!(c.quotient.vertex_count(), 1);
        assert_eq!(c.quotient.edge_count(), 0);
    }

    #[test]
    fn parallel_edges_survive_and_existing_loops_drop() {
        let g = build_graph(3, [(0, 1, 0.1), (1, 2, 1.0), (0, 2, 2.0), (2, 2, 4.0)]).unwrap();
        let c = contract_short_edges(&g, 0.5);
        assert_eq!(c.quotient.edge_count(), 2);
        assert_eq!(c.edge_origin, vec![1, 2]);
    }
}
