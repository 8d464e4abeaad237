use serde::Serialize;

use super::{CutKind, CutRecord};
use crate::error::{Error, Result};
use crate::graph::{shortest_path_distances, WeightedMultigraph};

/// Result of growing a ball around a center until its boundary is cheap.
#[derive(Clone, Debug, Serialize)]
pub struct BallCut {
    pub radius: f64,
    /// `B(radius, x0)`, sorted.
    pub members: Vec<usize>,
    pub record: CutRecord,
}

/// Grows `B(r, x0)` from `r = delta * rho`, stepping `r` through successive
/// vertex distances, until
/// `cost(bd B) <= (vol(B) + 1) log2(m + 1) / ((1 - 2 delta) rho)`.
///
/// `rho` must be the radius of `g` around `x0`.
pub fn ball_cut(g: &WeightedMultigraph, x0: usize, rho: f64, delta: f64) -> Result<BallCut> {
    let dist = shortest_path_distances(g, x0)?;
    if dist.iter().any(|d| !d.is_finite()) {
        return Err(Error::Disconnected);
    }
    ball_cut_on(g, &dist, rho, delta)
}

pub(crate) fn ball_cut_on(
    g: &WeightedMultigraph,
    dist: &[f64],
    rho: f64,
    delta: f64,
) -> Result<BallCut> {
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in (0, 1/2]")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("ball cut needs a positive radius, got {rho}")));
    }
    let n = g.vertex_count();
    let m = g.non_loop_edge_count();
    let log = ((m + 1) as f64).log2();
    let lambda = delta * rho;
    let lambda_prime = (1.0 - delta) * rho;
    let width = lambda_prime - lambda;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));

    let mut inside = vec![false; n];
    let mut volume = 0usize;
    let mut cost = 0.0f64;
    let mut next = 0usize;
    let mut grow_to = |r: f64, next: &mut usize, volume: &mut usize, cost: &mut f64| {
        while *next < n && dist[order[*next]] <= r {
            let u = order[*next];
            inside[u] = true;
            for inc in g.neighbors(u) {
                if inside[inc.neighbor] {
                    *cost -= g.weight(inc.edge);
                } else {
                    *volume += 1;
                    *cost += g.weight(inc.edge);
                }
            }
            *next += 1;
        }
    };

    let mut r = lambda;
    grow_to(r, &mut next, &mut volume, &mut cost);
    loop {
        let bound = if width > 0.0 {
            (volume as f64 + 1.0) * log / width
        } else {
            f64::INFINITY
        };
        if cost <= bound {
            break;
        }
        if next == n {
            return Err(Error::Invariant("ball covers the graph but boundary is nonempty".into()));
        }
        r = dist[order[next]];
        if r >= lambda_prime {
            return Err(Error::Invariant(format!(
                "ball cut reached radius {r} >= {lambda_prime} without a cheap boundary"
            )));
        }
        grow_to(r, &mut next, &mut volume, &mut cost);
    }

    let mut members: Vec<usize> = order[..next].to_vec();
    members.sort_unstable();
    Ok(BallCut {
        radius: r,
        members,
        record: CutRecord {
            kind: CutKind::Ball,
            lambda,
            lambda_prime,
            radius: r,
            edge_count: m,
            volume,
            inner_edges: 0,
            boundary_cost: cost.max(0.0),
        },
    })
}
