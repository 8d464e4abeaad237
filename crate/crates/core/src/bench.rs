//! Benchmark records and suites. Every bound check is recomputed from the raw
//! measurements stored in the record.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{generate, random_weights, GraphKind, RNG_ALGORITHM};
use crate::graph::{radius_from, WeightedMultigraph};
use crate::metrics::{average_stretch_envelope, stretch_report, validate_tree};
use crate::tree::{build_tree, Algorithm, BuildOptions, BuilderParams};

pub const CSV_VERSION: u32 = 1;

/// One builder run on one generated graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub generator: String,
    pub max_length: f64,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub algorithm: Algorithm,
    pub t: usize,
    pub wall_ms: f64,
    pub avg_stretch: f64,
    pub max_stretch: f64,
    pub tree_radius: f64,
    pub graph_radius: f64,
    pub tree_valid: bool,
    pub cut_violations: usize,
    pub max_edge_lifetime: u32,
}

/// Bound checks derived from a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundChecks {
    pub tree_ok: bool,
    pub radius_ok: bool,
    pub stretch_ok: bool,
    pub cuts_ok: bool,
    pub lifetime_ok: bool,
}

impl BoundChecks {
    pub fn all(&self) -> bool {
        self.tree_ok && self.radius_ok && self.stretch_ok && self.cuts_ok && self.lifetime_ok
    }
}

impl BenchRecord {
    /// `sqrt(e)` for the unweighted builder, `2 sqrt(e)` otherwise.
    pub fn radius_factor(&self) -> f64 {
        let root_e = 1f64.exp().sqrt();
        match self.algorithm {
            Algorithm::Unweighted => root_e,
            _ => 2.0 * root_e,
        }
    }

    pub fn stretch_bound(&self) -> f64 {
        average_stretch_envelope(self.n, self.m)
    }

    pub fn lifetime_bound(&self) -> f64 {
        BuilderParams::new(self.n.max(1), self.m, self.t.max(1))
            .map_or(f64::INFINITY, |p| p.lifetime_bound())
    }

    pub fn checks(&self) -> BoundChecks {
        let lifetime_applies = self.algorithm != Algorithm::Unweighted;
        BoundChecks {
            tree_ok: self.tree_valid,
            radius_ok: self.tree_radius <= self.radius_factor() * self.graph_radius * (1.0 + 1e-12),
            stretch_ok: self.avg_stretch <= self.stretch_bound(),
            cuts_ok: self.cut_violations == 0,
            lifetime_ok: !lifetime_applies || self.max_edge_lifetime as f64 <= self.lifetime_bound(),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    generator: &'a str,
    max_length: f64,
    seed: u64,
    n: usize,
    m: usize,
    algorithm: &'a str,
    t: usize,
    wall_ms: f64,
    avg_stretch: f64,
    max_stretch: f64,
    tree_radius: f64,
    graph_radius: f64,
    max_edge_lifetime: u32,
    stretch_bound: f64,
    radius_bound: f64,
    lifetime_bound: f64,
    tree_ok: bool,
    radius_ok: bool,
    stretch_ok: bool,
    cuts_ok: bool,
    lifetime_ok: bool,
}

/// CSV with `#` header lines naming the format version and generator RNG.
pub fn to_csv(records: &[BenchRecord]) -> Result<String> {
    let mut out = format!("# lowstretch bench csv v{CSV_VERSION}\n# rng {RNG_ALGORITHM}\n");
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        let c = r.checks();
        w.serialize(CsvRow {
            generator: &r.generator,
            max_length: r.max_length,
            seed: r.seed,
            n: r.n,
            m: r.m,
            algorithm: r.algorithm.name(),
            t: r.t,
            wall_ms: r.wall_ms,
            avg_stretch: r.avg_stretch,
            max_stretch: r.max_stretch,
            tree_radius: r.tree_radius,
            graph_radius: r.graph_radius,
            max_edge_lifetime: r.max_edge_lifetime,
            stretch_bound: r.stretch_bound(),
            radius_bound: r.radius_factor() * r.graph_radius,
            lifetime_bound: r.lifetime_bound(),
            tree_ok: c.tree_ok,
            radius_ok: c.radius_ok,
            stretch_ok: c.stretch_ok,
            cuts_ok: c.cuts_ok,
            lifetime_ok: c.lifetime_ok,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    out.push_str(std::str::from_utf8(&bytes).expect("csv output is utf-8"));
    Ok(out)
}

/// A generated graph: a kind, an optional log-uniform length range, and a seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Instance {
    pub kind: GraphKind,
    /// Lengths are drawn from `[1, max_length]`; `1` keeps unit lengths.
    pub max_length: f64,
    pub seed: u64,
}

impl Instance {
    pub fn unit(kind: GraphKind) -> Self {
        Self { kind, max_length: 1.0, seed: 0 }
    }

    pub fn graph(&self) -> Result<WeightedMultigraph> {
        let g = generate(self.kind, self.seed)?;
        if self.max_length > 1.0 {
            random_weights(&g, self.max_length, self.seed)
        } else {
            Ok(g)
        }
    }
}

/// Builds a tree rooted at vertex 0 and measures it.
pub fn run_instance(
    inst: &Instance,
    g: &WeightedMultigraph,
    algorithm: Algorithm,
    opts: BuildOptions,
) -> Result<BenchRecord> {
    let start = Instant::now();
    let out = build_tree(g, 0, algorithm, opts)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = stretch_report(g, &out.tree)?;
    Ok(BenchRecord {
        generator: inst.kind.to_string(),
        max_length: inst.max_length,
        seed: inst.seed,
        n: g.vertex_count(),
        m: g.non_loop_edge_count(),
        algorithm,
        t: out.stats.params.t,
        wall_ms,
        avg_stretch: report.average,
        max_stretch: report.max,
        tree_radius: out.tree.radius(),
        graph_radius: radius_from(g, 0)?,
        tree_valid: validate_tree(g, &out.tree).passed(),
        cut_violations: out.stats.cut_violations,
        max_edge_lifetime: out.stats.max_edge_lifetime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Unit grids 16x16, 32x32 and 64x64 with every builder.
    Paper,
    /// A few small graphs, for quick checks.
    Smoke,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Suite::Paper),
            "smoke" => Ok(Suite::Smoke),
            _ => Err(Error::InvalidParameter(format!("unknown suite `{s}`"))),
        }
    }
}

/// Instances paired with the builders to run on them.
pub fn suite_plan(suite: Suite) -> Vec<(Instance, Vec<Algorithm>)> {
    let all = vec![Algorithm::Unweighted, Algorithm::Weighted, Algorithm::Improved];
    let weighted = vec![Algorithm::Weighted, Algorithm::Improved];
    match suite {
        Suite::Paper => [16, 32, 64]
            .into_iter()
            .map(|s| (Instance::unit(GraphKind::Grid { width: s, height: s }), all.clone()))
            .collect(),
        Suite::Smoke => vec![
            (Instance::unit(GraphKind::Grid { width: 8, height: 8 }), all.clone()),
            (Instance::unit(GraphKind::Cycle { n: 10 }), all),
            (
                Instance { kind: GraphKind::GnpConnected { n: 30, p: 0.2 }, max_length: 100.0, seed: 1 },
                weighted,
            ),
        ],
    }
}

/// Runs a suite; rows are sorted by generator, seed and builder.
pub fn run_suite(suite: Suite, parallel: bool) -> Result<Vec<BenchRecord>> {
    let mut jobs = Vec::new();
    for (inst, algos) in suite_plan(suite) {
        for a in algos {
            jobs.push((inst, a));
        }
    }
    let run = |(inst, algo): &(Instance, Algorithm)| -> Result<BenchRecord> {
        let g = inst.graph()?;
        run_instance(inst, &g, *algo, BuildOptions::default())
    };
    let results: Vec<Result<BenchRecord>> = if parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    };
    let mut records = results.into_iter().collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| {
        (a.n, &a.generator, a.seed, a.algorithm.name())
            .partial_cmp(&(b.n, &b.generator, b.seed, b.algorithm.name()))
            .expect("keys are totally ordered")
    });
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> BenchRecord {
        BenchRecord {
            generator: "cycle:4".into(),
            max_length: 1.0,
            seed: 0,
            n: 4,
            m: 4,
            algorithm: Algorithm::Unweighted,
            t: 1,
            wall_ms: 0.1,
            avg_stretch: 1.5,
            max_stretch: 3.0,
            tree_radius: 2.0,
            graph_radius: 2.0,
            tree_valid: true,
            cut_violations: 0,
            max_edge_lifetime: 2,
        }
    }

    #[test]
    fn checks_come_from_raw_numbers() {
        let mut r = record();
        assert!(r.checks().all());
        r.tree_radius = 2.0 * 1.65;
        assert!(!r.checks().radius_ok);
        r.algorithm = Algorithm::Weighted;
        assert!(r.checks().radius_ok);
        r.avg_stretch = 1e9;
        assert!(!r.checks().stretch_ok);
        r.max_edge_lifetime = 10_000;
        assert!(!r.checks().lifetime_ok);
    }

    #[test]
    fn csv_has_versioned_header() {
        let csv = to_csv(&[record()]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# lowstretch bench csv v1"));
        assert!(lines.next().unwrap().starts_with("# rng chacha8"));
        assert!(lines.next().unwrap().starts_with("generator,max_length,seed,n,m,algorithm,t,"));
        assert!(lines.next().unwrap().ends_with("true,true,true,true,true"));
    }

    #[test]
    fn smoke_suite_passes_and_is_sorted() {
        let rows = run_suite(Suite::Smoke, false).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.checks().all()), "{rows:#?}");
        let par = run_suite(Suite::Smoke, true).unwrap();
        let key = |r: &BenchRecord| (r.generator.clone(), r.algorithm, r.avg_stretch.to_bits());
        assert_eq!(rows.iter().map(key).collect::<Vec<_>>(), par.iter().map(key).collect::<Vec<_>>());
    }
}
