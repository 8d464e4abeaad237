//! Ball and cone growing, and the star decompositions built from them.

mod ball;
mod cone;
mod star;

use serde::{Deserialize, Serialize};

pub use ball::{ball_cut, BallCut};
pub use cone::{
    cone, cone_cut, cone_decomp, cone_decomp_with, imp_cone_decomp, ConeCut, ConePartition,
    ConeStrategy, FieldMode,
};
pub use star::{imp_star_decomp, star_decomp, star_decomp_with, Bridge, StarDecomposition};

/// Relative slack used when re-checking a cut inequality in floating point.
pub const CUT_CHECK_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutKind {
    Ball,
    Cone,
}

/// The numbers behind one ball-cut or cone-cut invocation, enough to re-evaluate
/// its guarantee after the fact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutRecord {
    pub kind: CutKind,
    pub lambda: f64,
    pub lambda_prime: f64,
    pub radius: f64,
    /// Edge count of the graph the cut ran on.
    pub edge_count: usize,
    /// Volume of the returned set.
    pub volume: usize,
    /// Edges inside the set grown to `lambda`.
    pub inner_edges: usize,
    pub boundary_cost: f64,
}

impl CutRecord {
    /// Right-hand side of the cut guarantee.
    ///
    /// Ball: `(vol + 1) log2(m + 1) / (lambda' - lambda)`.
    /// Cone: `(vol + tau) / (lambda' - lambda) * max[1, log2((m + tau) / (|E(C_lambda)| + tau))]`
    /// with `tau = 1` iff `|E(C_lambda)| = 0`.
    pub fn bound(&self) -> f64 {
        let width = self.lambda_prime - self.lambda;
        if width <= 0.0 {
            return f64::INFINITY;
        }
        let m = self.edge_count as f64;
        match self.kind {
            CutKind::Ball => (self.volume as f64 + 1.0) * (m + 1.0).log2() / width,
            CutKind::Cone => {
                let tau = if self.inner_edges == 0 { 1.0 } else { 0.0 };
                let log = ((m + tau) / (self.inner_edges as f64 + tau)).log2().max(1.0);
                (self.volume as f64 + tau) / width * log
            }
        }
    }

    pub fn radius_in_window(&self) -> bool {
        self.lambda <= self.radius && self.radius < self.lambda_prime
    }

    pub fn cost_within_bound(&self) -> bool {
        let bound = self.bound();
        self.boundary_cost <= bound + CUT_CHECK_SLACK * bound.abs().max(1.0)
    }

    pub fn holds(&self) -> bool {
        self.radius_in_window() && self.cost_within_bound()
    }
}
