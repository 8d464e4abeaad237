use serde::{Deserialize, Serialize};

use super::ball::ball_cut_on;
use super::cone::partition_alive;
use super::{ConeStrategy, CutRecord, FieldMode};
use crate::error::{Error, Result};
use crate::graph::{
    radius_of_distances, shell_members, shortest_paths_masked, tolerance_for, WeightedMultigraph,
};

/// Edge joining a cone part to the central ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    /// `x_i`, in the cone part.
    pub anchor: usize,
    /// `y_i`, in the central ball.
    pub attach: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarDecomposition {
    pub center: usize,
    /// `Γ_G(center)`.
    pub radius: f64,
    /// Radius of the central ball.
    pub r0: f64,
    /// `parts[0]` is the central ball, each part sorted.
    pub parts: Vec<Vec<usize>>,
    /// `anchors[i - 1]` belongs to `parts[i]`.
    pub anchors: Vec<usize>,
    pub bridges: Vec<Bridge>,
    pub cone_radii: Vec<f64>,
    pub index_mapping: Option<Vec<usize>>,
    /// Ball cut first, then every cone cut.
    #[serde(skip)]
    pub cuts: Vec<CutRecord>,
}

impl StarDecomposition {
    /// Part index of every vertex.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut label = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                label[v] = i;
            }
        }
        label
    }
}

pub fn star_decomp(g: &WeightedMultigraph, x0: usize, delta: f64, epsilon: f64) -> Result<StarDecomposition> {
    star_decomp_with(g, x0, delta, epsilon, ConeStrategy::Plain, FieldMode::Reuse)
}

pub fn imp_star_decomp(
    g: &WeightedMultigraph,
    x0: usize,
    delta: f64,
    epsilon: f64,
    t: usize,
    m_hat: usize,
) -> Result<StarDecomposition> {
    star_decomp_with(g, x0, delta, epsilon, ConeStrategy::Improved { t, m_hat }, FieldMode::Reuse)
}

pub fn star_decomp_with(
    g: &WeightedMultigraph,
    x0: usize,
    delta: f64,
    epsilon: f64,
    strategy: ConeStrategy,
    mode: FieldMode,
) -> Result<StarDecomposition> {
    g.check_vertex(x0)?;
    if g.vertex_count() < 2 {
        return Err(Error::InvalidParameter("star decomposition needs at least two vertices".into()));
    }
    if (delta - 1.0 / 3.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("delta must be 1/3, got {delta}")));
    }
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1/2]")));
    }
    if let ConeStrategy::Improved { t, m_hat } = strategy {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        if m_hat < g.non_loop_edge_count() {
            return Err(Error::InvalidParameter(format!(
                "m_hat = {m_hat} is below the edge count {}",
                g.non_loop_edge_count()
            )));
        }
    }

    let dist = shortest_paths_masked(g, &[x0], None);
    let rho = radius_of_distances(&dist)?;
    let ball = ball_cut_on(g, &dist, rho, delta)?;
    let mut inside = vec![false; g.vertex_count()];
    for &v in &ball.members {
        inside[v] = true;
    }
    let tol = tolerance_for(&dist);
    let shell = shell_members(g, &dist, &inside, tol);
    let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
    let cones = partition_alive(g, &outside, &shell, epsilon * rho / 2.0, strategy, mode)?;

    let mut bridges = Vec::with_capacity(cones.anchors.len());
    for &x in &cones.anchors {
        // Lowest-id tight neighbour in the ball, then its shortest tight edge.
        let mut best: Option<(usize, f64, usize)> = None;
        for inc in g.neighbors(x) {
            let y = inc.neighbor;
            let len = g.length(inc.edge);
            if !inside[y] || (dist[y] + len - dist[x]).abs() > tol {
                continue;
            }
            let key = (y, len, inc.edge);
            let better = match best {
                None => true,
                Some(b) => key.0 < b.0 || (key.0 == b.0 && (key.1 < b.1 || (key.1 == b.1 && key.2 < b.2))),
            };
            if better {
                best = Some(key);
            }
        }
        let (attach, _, edge) = best.ok_or_else(|| {
            Error::Invariant(format!("anchor {x} has no tight edge into the central ball"))
        })?;
        bridges.push(Bridge { anchor: x, attach, edge });
    }

    let mut parts = Vec::with_capacity(cones.parts.len() + 1);
    parts.push(ball.members);
    parts.extend(cones.parts);
    let mut cuts = vec![ball.record];
    cuts.extend(cones.cuts);
    Ok(StarDecomposition {
        center: x0,
        radius: rho,
        r0: ball.radius,
        parts,
        anchors: cones.anchors,
        bridges,
        cone_radii: cones.radii,
        index_mapping: cones.index_mapping,
        cuts,
    })
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::metrics::validate_star_decomposition;
    use crate::testing::connected_graph;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn star_decompositions_are_valid(
            g in connected_graph(40, 80),
            xi in any::<prop::sample::Index>(),
            eps in prop::sample::select(vec![0.125, 0.25, 0.5]),
            t in 1usize..4,
        ) {
            let x0 = xi.index(g.vertex_count());
            let m_hat = g.non_loop_edge_count();
            for strategy in [ConeStrategy::Plain, ConeStrategy::Improved { t, m_hat }] {
                let sd = star_decomp_with(&g, x0, 1.0 / 3.0, eps, strategy, FieldMode::Reuse).unwrap();
                let rep = validate_star_decomposition(&g, &sd, 1.0 / 3.0, eps);
                // "satellite radius" and "satellite path radius" are measured, not guaranteed.
                for name in ["partition", "part connectivity", "anchors", "bridges", "ball radius", "ball", "boundary cost"] {
                    let check = rep.get(name).unwrap();
                    prop_assert!(check.passed, "{}: {}", name, check.detail);
                }
                prop_assert!(sd.cuts.iter().all(CutRecord::holds));
                prop_assert!(sd.r0 < (2.0 / 3.0) * sd.radius);
            }
        }
    }
}
