//! Shared proptest strategies.

use proptest::prelude::*;

use crate::graph::{build_graph, WeightedMultigraph};

/// Connected multigraph: a random tree plus extra edges (parallel edges and
/// self-loops allowed). Lengths come from a small set so ties are common, or
/// from a continuous range.
pub fn connected_graph(max_n: usize, max_extra: usize) -> impl Strategy<Value = WeightedMultigraph> {
    let lengths = prop_oneof![
        prop::sample::select(vec![1.0, 2.0, 3.0]),
        0.05f64..20.0,
    ];
    (2..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec((any::<prop::sample::Index>(), lengths.clone()), n - 1),
                prop::collection::vec((0..n, 0..n, lengths.clone()), 0..=max_extra),
            )
        })
        .prop_map(|(n, tree, extra)| {
            let mut edges: Vec<(usize, usize, f64)> = tree
                .into_iter()
                .enumerate()
                .map(|(i, (parent, len))| (parent.index(i + 1), i + 1, len))
                .collect();
            edges.extend(extra);
            build_graph(n, edges).unwrap()
        })
}
