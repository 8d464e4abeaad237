use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lowstretch::bench::{run_suite, to_csv, Suite};
use lowstretch::decomposition::{star_decomp_with, ConeStrategy, FieldMode};
use lowstretch::generate::{generate, random_weights, GraphKind, RNG_ALGORITHM};
use lowstretch::graph::{read_edge_list, write_edge_list, WeightedMultigraph};
use lowstretch::metrics::{graph_distances_for_edges, stretch_report, stretch_report_akpw};
use lowstretch::tree::{build_tree, Algorithm, BuildOptions, SpanningTree, TreeRecord};
use serde_json::json;

#[derive(Parser)]
#[command(name = "lowstretch", version, about = "Low-stretch spanning trees for weighted multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Unweighted,
    Weighted,
    Improved,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Unweighted => Algorithm::Unweighted,
            Algo::Weighted => Algorithm::Weighted,
            Algo::Improved => Algorithm::Improved,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph as an edge list.
    Gen {
        /// path:N, cycle:N, grid:WxH, torus:WxH, complete:N, gnp:N:P or random:N:M
        #[arg(long)]
        kind: GraphKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw log-uniform lengths from [1, L]; 1 keeps unit lengths.
        #[arg(long, default_value_t = 1.0)]
        max_length: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a spanning tree.
    Tree {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "improved")]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Tier count for the improved builder.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute one star decomposition.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Use the improved cone decomposition with this many tiers.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Measure the stretch of a tree.
    Stretch {
        graph: PathBuf,
        /// Tree JSON as written by `tree`.
        tree: PathBuf,
        /// Divide by dist_G(u, v) instead of the edge length.
        #[arg(long)]
        akpw: bool,
        /// Per-edge CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite; exits nonzero if any bound check fails.
    Bench {
        #[arg(long, default_value = "smoke")]
        suite: Suite,
        #[arg(long)]
        parallel: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<WeightedMultigraph> {
    let g = read_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
    if !g.is_connected() {
        bail!("{}: graph is disconnected", path.display());
    }
    Ok(g)
}

fn load_tree(g: &WeightedMultigraph, path: &Path) -> Result<SpanningTree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rec: TreeRecord =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    SpanningTree::from_edges(g, rec.root, &rec.edge_ids)
        .with_context(|| format!("{} is not a spanning tree of the graph", path.display()))
}

fn json_line(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind, seed, max_length, output } => {
            let mut g = generate(kind, seed)?;
            if max_length != 1.0 {
                g = random_weights(&g, max_length, seed)?;
            }
            let comments = vec![
                format!("kind {kind}"),
                format!("seed {seed}"),
                format!("max_length {max_length}"),
                format!("rng {RNG_ALGORITHM}"),
            ];
            emit(output.as_deref(), &write_edge_list(&g, &comments))?;
        }
        Command::Tree { graph, algo, root, t, parallel, format, output } => {
            let g = load_graph(&graph)?;
            let out = build_tree(&g, root, algo.into(), BuildOptions { t, m_hat: None, parallel })?;
            let text = match format {
                TreeFormat::Json => json_line(&json!({
                    "root": out.tree.root,
                    "edge_ids": out.tree.edge_ids,
                    "algorithm": out.stats.algorithm,
                    "params": out.stats.params,
                    "levels": out.stats.levels,
                    "star_decompositions": out.stats.star_decompositions,
                    "cut_violations": out.stats.cut_violations,
                    "max_edge_lifetime": out.stats.max_edge_lifetime,
                    "radius": out.tree.radius(),
                }))?,
                TreeFormat::Edgelist => {
                    let ids: Vec<String> = out.tree.edge_ids.iter().map(ToString::to_string).collect();
                    let comments =
                        vec![format!("root {}", out.tree.root), format!("edge_ids {}", ids.join(" "))];
                    write_edge_list(&out.tree.as_graph(&g), &comments)
                }
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Decompose { graph, epsilon, t, root, output } => {
            let g = load_graph(&graph)?;
            let strategy = match t {
                Some(t) => ConeStrategy::Improved { t, m_hat: g.non_loop_edge_count() },
                None => ConeStrategy::Plain,
            };
            let sd = star_decomp_with(&g, root, 1.0 / 3.0, epsilon, strategy, FieldMode::Reuse)?;
            emit(output.as_deref(), &json_line(&sd)?)?;
        }
        Command::Stretch { graph, tree, akpw, csv, output } => {
            let g = load_graph(&graph)?;
            let t = load_tree(&g, &tree)?;
            let report = if akpw {
                stretch_report_akpw(&g, &t, &graph_distances_for_edges(&g)?)?
            } else {
                stretch_report(&g, &t)?
            };
            let text = if csv { report.to_csv()? } else { json_line(&report)? };
            emit(output.as_deref(), &text)?;
        }
        Command::Bench { suite, parallel, output } => {
            let rows = run_suite(suite, parallel)?;
            emit(output.as_deref(), &to_csv(&rows)?)?;
            let failed: Vec<String> = rows
                .iter()
                .filter(|r| !r.checks().all())
                .map(|r| format!("{} {}: {:?}", r.generator, r.algorithm.name(), r.checks()))
                .collect();
            if !failed.is_empty() {
                for f in &failed {
                    eprintln!("bound check failed: {f}");
                }
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
