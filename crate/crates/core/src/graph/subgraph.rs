use super::{Edge, WeightedMultigraph};
use crate::error::{Error, Result};

/// `G(S)` with relabelled vertices and maps back to the parent graph.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: WeightedMultigraph,
    /// Local vertex id -> parent vertex id (increasing).
    pub to_parent: Vec<usize>,
    /// Parent vertex id -> local vertex id.
    pub from_parent: Vec<Option<usize>>,
    /// Local edge id -> parent edge id.
    pub edge_origin: Vec<usize>,
}

/// The subgraph induced by `members`. The result may be disconnected.
pub fn induced_subgraph(g: &WeightedMultigraph, members: &[usize]) -> Result<InducedSubgraph> {
    if members.is_empty() {
        return Err(Error::InvalidParameter("induced subgraph of an empty set".into()));
    }
    let mut from_parent = vec![None; g.vertex_count()];
    for &v in members {
        g.check_vertex(v)?;
        from_parent[v] = Some(0);
    }
    let mut to_parent = Vec::with_capacity(members.len());
    for (v, slot) in from_parent.iter_mut().enumerate() {
        if slot.is_some() {
            *slot = Some(to_parent.len());
            to_parent.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if let (Some(u), Some(v)) = (from_parent[e.u], from_parent[e.v]) {
            edges.push(Edge { u, v, length: e.length });
            weights.push(g.weight(id));
            edge_origin.push(id);
        }
    }
    Ok(InducedSubgraph {
        graph: WeightedMultigraph::assemble(to_parent.len(), edges, weights),
        to_parent,
        from_parent,
        edge_origin,
    })
}

/// One part of a labelled split, without the parent-sized reverse map.
#[derive(Clone, Debug)]
pub(crate) struct PartGraph {
    pub graph: WeightedMultigraph,
    pub to_parent: Vec<usize>,
    pub edge_origin: Vec<usize>,
}

/// Splits `g` into the induced subgraphs of each label class in one pass.
/// Every label must be `< parts` and every class nonempty.
pub(crate) fn split_parts(g: &WeightedMultigraph, label: &[usize], parts: usize) -> Vec<PartGraph> {
    let mut local = vec![0usize; g.vertex_count()];
    let mut to_parent: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for v in 0..g.vertex_count() {
        let p = label[v];
        local[v] = to_parent[p].len();
        to_parent[p].push(v);
    }
    let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); parts];
    let mut weights: Vec<Vec<f64>> = vec![Vec::new(); parts];
    let mut origin: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for (id, e) in g.edges().iter().enumerate() {
        let p = label[e.u];
        if p == label[e.v] {
            edges[p].push(Edge { u: local[e.u], v: local[e.v], length: e.length });
            weights[p].push(g.weight(id));
            origin[p].push(id);
        }
    }
    to_parent
        .into_iter()
        .zip(edges)
        .zip(weights)
        .zip(origin)
        .map(|(((tp, es), ws), og)| PartGraph {
            graph: WeightedMultigraph::assemble(tp.len(), es, ws),
            to_parent: tp,
            edge_origin: og,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn c4() -> WeightedMultigraph {
        build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap()
    }

    #[test]
    fn c4_minus_a_vertex_is_a_path() {
        let sub = induced_subgraph(&c4(), &[1, 2, 3]).unwrap();
        assert_eq!(sub.to_parent, vec![1, 2, 3]);
        assert_eq!(sub.graph.edge_count(), 2);
        assert_eq!(sub.edge_origin, vec![1, 2]);
        assert_eq!(sub.from_parent, vec![None, Some(0), Some(1), Some(2)]);
        assert!(sub.graph.is_connected());
    }

    #[test]
    fn whole_vertex_set_is_identity() {
        let g = c4();
        let sub = induced_subgraph(&g, &[3, 2, 1, 0]).unwrap();
        assert_eq!(sub.graph, g);
        assert_eq!(sub.to_parent, vec![0, 1, 2, 3]);
        assert_eq!(sub.edge_origin, vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_vertex_of_triangle() {
        let k3 = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let sub = induced_subgraph(&k3, &[0]).unwrap();
        assert_eq!(sub.graph.vertex_count(), 1);
        assert_eq!(sub.graph.edge_count(), 0);
    }

    #[test]
    fn split_matches_individual_inductions() {
        let g = c4();
        let parts = split_parts(&g, &[0, 1, 1, 0], 2);
        assert_eq!(parts[0].to_parent, vec![0, 3]);
        assert_eq!(parts[0].edge_origin, vec![3]);
        assert_eq!(parts[1].to_parent, vec![1, 2]);
        assert_eq!(parts[1].edge_origin, vec![1]);
        let direct = induced_subgraph(&g, &[1, 2]).unwrap();
        assert_eq!(parts[1].graph, direct.graph);
    }
}
