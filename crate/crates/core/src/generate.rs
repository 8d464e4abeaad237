//! Seeded graph generators.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, so a kind and a
//! seed determine the graph exactly.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedMultigraph};

/// Recorded in output headers next to the seed.
pub const RNG_ALGORITHM: &str = "chacha8-rand_chacha-0.3-seed_from_u64";

const GNP_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphKind {
    Path { n: usize },
    Cycle { n: usize },
    Grid { width: usize, height: usize },
    Torus { width: usize, height: usize },
    Complete { n: usize },
    GnpConnected { n: usize, p: f64 },
    /// A uniformly attached random tree plus `m - n + 1` extra edges; parallel edges allowed.
    RandomConnected { n: usize, m: usize },
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphKind::Path { n } => write!(f, "path:{n}"),
            GraphKind::Cycle { n } => write!(f, "cycle:{n}"),
            GraphKind::Grid { width, height } => write!(f, "grid:{width}x{height}"),
            GraphKind::Torus { width, height } => write!(f, "torus:{width}x{height}"),
            GraphKind::Complete { n } => write!(f, "complete:{n}"),
            GraphKind::GnpConnected { n, p } => write!(f, "gnp:{n}:{p}"),
            GraphKind::RandomConnected { n, m } => write!(f, "random:{n}:{m}"),
        }
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    /// `path:N`, `cycle:N`, `grid:WxH`, `torus:WxH`, `complete:N`, `gnp:N:P`, `random:N:M`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse graph kind `{s}`"));
        let (name, rest) = s.split_once(':').ok_or_else(bad)?;
        let int = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let dims = |x: &str| -> Result<(usize, usize)> {
            let (w, h) = x.split_once('x').ok_or_else(bad)?;
            Ok((int(w)?, int(h)?))
        };
        Ok(match name {
            "path" => GraphKind::Path { n: int(rest)? },
            "cycle" => GraphKind::Cycle { n: int(rest)? },
            "complete" => GraphKind::Complete { n: int(rest)? },
            "grid" => {
                let (width, height) = dims(rest)?;
                GraphKind::Grid { width, height }
            }
            "torus" => {
                let (width, height) = dims(rest)?;
                GraphKind::Torus { width, height }
            }
            "gnp" => {
                let (n, p) = rest.split_once(':').ok_or_else(bad)?;
                GraphKind::GnpConnected { n: int(n)?, p: p.parse().map_err(|_| bad())? }
            }
            "random" => {
                let (n, m) = rest.split_once(':').ok_or_else(bad)?;
                GraphKind::RandomConnected { n: int(n)?, m: int(m)? }
            }
            _ => return Err(bad()),
        })
    }
}

fn unit(n: usize, pairs: Vec<(usize, usize)>) -> Result<WeightedMultigraph> {
    WeightedMultigraph::from_edges(n, pairs.into_iter().map(|(u, v)| Edge { u, v, length: 1.0 }).collect())
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn grid_pairs(width: usize, height: usize, wrap: bool) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                pairs.push((v, v + 1));
            } else if wrap {
                pairs.push((v, y * width));
            }
            if y + 1 < height {
                pairs.push((v, v + width));
            } else if wrap {
                pairs.push((v, x));
            }
        }
    }
    pairs
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut uf = crate::graph::UnionFind::new(n);
    let mut parts = n;
    for &(u, v) in pairs {
        if uf.union(u, v) {
            parts -= 1;
        }
    }
    parts == 1
}

/// Unit-length graph of the given kind.
pub fn generate(kind: GraphKind, seed: u64) -> Result<WeightedMultigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GraphKind::Path { n } => unit(n, (1..n).map(|v| (v - 1, v)).collect()),
        GraphKind::Cycle { n } => {
            if n < 3 {
                return Err(invalid("a cycle needs at least 3 vertices"));
            }
            unit(n, (0..n).map(|v| (v, (v + 1) % n)).collect())
        }
        GraphKind::Grid { width, height } => {
            if width == 0 || height == 0 {
                return Err(invalid("grid dimensions must be positive"));
            }
            unit(width * height, grid_pairs(width, height, false))
        }
        GraphKind::Torus { width, height } => {
            if width < 3 || height < 3 {
                return Err(invalid("torus dimensions must be at least 3"));
            }
            unit(width * height, grid_pairs(width, height, true))
        }
        GraphKind::Complete { n } => {
            unit(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect())
        }
        GraphKind::GnpConnected { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("edge probability {p} must lie in [0, 1]")));
            }
            for _ in 0..GNP_ATTEMPTS {
                let mut pairs = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            pairs.push((u, v));
                        }
                    }
                }
                if n > 0 && connected(n, &pairs) {
                    return unit(n, pairs);
                }
            }
            Err(invalid(format!(
                "G({n}, {p}) was disconnected in {GNP_ATTEMPTS} attempts; raise p"
            )))
        }
        GraphKind::RandomConnected { n, m } => {
            if n == 0 || m + 1 < n {
                return Err(invalid(format!("{m} edges cannot connect {n} vertices")));
            }
            if n == 1 && m > 0 {
                return Err(invalid("extra edges need at least two vertices"));
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut pairs: Vec<(usize, usize)> =
                (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect();
            while pairs.len() < m {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n - 1);
                pairs.push((u, if v >= u { v + 1 } else { v }));
            }
            pairs.shuffle(&mut rng);
            unit(n, pairs)
        }
    }
}

/// Replaces every length by an independent log-uniform draw from `[1, max_length]`.
pub fn random_weights(g: &WeightedMultigraph, max_length: f64, seed: u64) -> Result<WeightedMultigraph> {
    if !(max_length >= 1.0 && max_length.is_finite()) {
        return Err(invalid(format!("maximum length {max_length} must be at least 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = max_length.ln();
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let length = if span > 0.0 { rng.gen_range(0.0..=span).exp() } else { 1.0 };
            Edge { length: length.clamp(1.0, max_length), ..*e }
        })
        .collect();
    WeightedMultigraph::from_edges(g.vertex_count(), edges)
}
