//! Command-line driver: generate embeddings, analyze them, audit the ν
//! conditions, run invariance and flip-consistency sweeps, anneal for
//! few-knot embeddings, and fingerprint Gauss codes.
//!
//! Exit code 0 means no violations were observed; 1 means an error or at
//! least one violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use hamknot::diagram::{GaussCode, ProjectedEmbedding};
use hamknot::geometry::Embedding;
use hamknot::graph::{complete_graph, hamiltonian_cycles, nu_audit, CycleFamily, FamilyTag};
use hamknot::harness::{
    anneal_min_knotted, flip_consistency_run, invariance_run, random_embedding, ExperimentConfig,
    Schedule,
};
use hamknot::invariant::analyze;
use hamknot::knot::fingerprint;

#[derive(Parser)]
#[command(
    name = "hamknot",
    about = "Knot invariants of Hamiltonian cycles in spatial graph embeddings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random integer-coordinate embedding of K_n.
    Gen {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Coordinates are uniform in [-range, range]^3.
        #[arg(long, default_value_t = 10_000)]
        range: i64,
        /// Output path for the embedding JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze an embedding: per-cycle invariants, mu residues, census,
    /// and the trichotomy case for K8.
    Analyze {
        /// Embedding JSON file.
        #[arg(long)]
        emb: PathBuf,
        /// Cycle family: "hamiltonian" or a path to a JSON list of
        /// vertex sequences.
        #[arg(long, default_value = "hamiltonian")]
        cycles: String,
        /// Extra moduli for mu, comma separated (2, 3, 6 are always on).
        #[arg(long, value_delimiter = ',')]
        mods: Vec<u32>,
        /// Output path for the report JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output path for the knotted-cycle census CSV.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Audit the nu_1 / nu_2 congruences of a cycle family.
    Nu {
        /// Graph, e.g. "k8".
        #[arg(long, default_value = "k8")]
        graph: String,
        #[arg(long, default_value = "hamiltonian")]
        cycles: String,
        /// The modulus n of the hypotheses (nu_1 mod n, nu_2 mod 2n).
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Output path for the residue CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch invariance run over random embeddings.
    Invariance {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        range: i64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Diagram-level crossing-flip consistency checks.
    Flipcheck {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        range: i64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Simulated annealing minimizing the knotted-cycle count of K8.
    Anneal {
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        range: i64,
        #[arg(long, default_value_t = 10.0)]
        t0: f64,
        #[arg(long, default_value_t = 0.05)]
        t1: f64,
        /// Output path for the best embedding JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants of a single Gauss code.
    Knot {
        /// Signed Gauss code, e.g. "O1+U2+O3+U1+O2+U3+".
        #[arg(long)]
        gauss: String,
    },
}

fn parse_graph(arg: &str) -> Result<usize> {
    let lower = arg.to_ascii_lowercase();
    let Some(n) = lower
        .strip_prefix('k')
        .and_then(|s| s.parse::<usize>().ok())
    else {
        bail!("unsupported graph {arg:?}; expected \"kN\" for a complete graph");
    };
    Ok(n)
}

fn load_family(arg: &str, fallback_graph: &hamknot::graph::Graph) -> Result<CycleFamily> {
    if arg.eq_ignore_ascii_case("hamiltonian") {
        Ok(hamiltonian_cycles(fallback_graph))
    } else {
        let text =
            fs::read_to_string(arg).with_context(|| format!("reading cycle family from {arg}"))?;
        Ok(CycleFamily::from_json_str(&text, FamilyTag::Custom)?)
    }
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen {
            n,
            seed,
            range,
            out,
        } => {
            let sampled = random_embedding(n, seed, range)?;
            fs::write(&out, sampled.embedding.to_json_string())?;
            println!(
                "wrote K{n} embedding (seed {seed}, range {range}, {} attempt(s)) to {}",
                sampled.attempts,
                out.display()
            );
            Ok(true)
        }
        Command::Analyze {
            emb,
            cycles,
            mods,
            out,
            census,
        } => {
            let text = fs::read_to_string(&emb)
                .with_context(|| format!("reading embedding from {}", emb.display()))?;
            let embedding = Embedding::from_json_str(&text)?;
            let family = load_family(&cycles, embedding.graph())?;
            let pe = ProjectedEmbedding::new(embedding)?;
            let analysis = analyze(&pe, &family, &mods)?;
            println!(
                "cycles: {}  knotted: {}  mu: {}  case: {}",
                family.len(),
                analysis.knotted_count,
                analysis
                    .mu
                    .iter()
                    .map(|(m, r)| format!("{r} (mod {m})"))
                    .collect::<Vec<_>>()
                    .join(", "),
                analysis
                    .trichotomy
                    .map(|c| c.number().to_string())
                    .unwrap_or_else(|| "n/a".into()),
            );
            for v in &analysis.violations {
                println!("violation: {v}");
            }
            if let Some(path) = out {
                fs::write(&path, analysis.to_json_string())?;
                println!("report: {}", path.display());
            }
            if let Some(path) = census {
                let mut buf = Vec::new();
                analysis.write_census_csv(&family, &mut buf)?;
                fs::write(&path, buf)?;
                println!("census: {}", path.display());
            }
            Ok(!analysis.has_violations())
        }
        Command::Nu {
            graph,
            cycles,
            n,
            out,
        } => {
            let size = parse_graph(&graph)?;
            let g = complete_graph(size)?;
            let family = load_family(&cycles, &g)?;
            let report = nu_audit(&g, &family, n)?;
            println!(
                "nu_1: {} admissible tuples, {} touched; nu_2: {} admissible, {} touched",
                report.nu1_admissible,
                report.nu1.len(),
                report.nu2_admissible,
                report.nu2.len()
            );
            println!(
                "hypotheses (nu_1 = 0 mod {}, nu_2 = 0 mod {}): {}",
                n,
                2 * n,
                if report.hypotheses_hold() {
                    "hold"
                } else {
                    "FAIL"
                }
            );
            for v in report.violations.iter().take(20) {
                println!(
                    "violation: {:?} edges {:?} value {} residue {} (mod {})",
                    v.kind, v.edges, v.value, v.residue, v.modulus
                );
            }
            if let Some(path) = out {
                let mut buf = Vec::new();
                report.write_csv(&g, &mut buf)?;
                fs::write(&path, buf)?;
                println!("csv: {}", path.display());
            }
            Ok(report.hypotheses_hold())
        }
        Command::Invariance {
            count,
            seed,
            n,
            range,
            csv,
            json,
        } => {
            let mut config = ExperimentConfig::new(n, seed);
            config.n_embeddings = count;
            config.coord_range = range;
            config.csv_out = csv;
            config.json_out = json;
            let report = invariance_run(&config)?;
            println!(
                "embeddings: {}  cases 1/2/3/none: {}/{}/{}/{}  knotted range: [{}, {}]  violations: {}",
                report.rows.len(),
                report.case_counts[0],
                report.case_counts[1],
                report.case_counts[2],
                report.case_counts[3],
                report.knotted_min,
                report.knotted_max,
                report.violation_total
            );
            Ok(!report.has_violations())
        }
        Command::Flipcheck {
            count,
            seed,
            n,
            range,
            json,
        } => {
            let mut config = ExperimentConfig::new(n, seed);
            config.coord_range = range;
            config.json_out = json;
            let report = flip_consistency_run(&config, count)?;
            println!(
                "flips: {}  violations: {}",
                report.samples.len(),
                report.violation_total
            );
            Ok(!report.has_violations())
        }
        Command::Anneal {
            iters,
            seed,
            range,
            t0,
            t1,
            out,
        } => {
            let mut config = ExperimentConfig::new(8, seed);
            config.coord_range = range;
            let schedule = Schedule {
                t_initial: t0,
                t_final: t1,
            };
            let state = anneal_min_knotted(&config, iters, &schedule)?;
            println!(
                "iterations: {}  accepted: {}  invalid: {}  best knotted count: {}",
                state.iteration, state.accepted_moves, state.invalid_moves, state.best_objective
            );
            if let Some(path) = out {
                fs::write(&path, state.best.to_json_string())?;
                println!("best embedding: {}", path.display());
            }
            Ok(true)
        }
        Command::Knot { gauss } => {
            let code = GaussCode::from_text(&gauss)?;
            let fp = fingerprint(&code)?;
            let json = serde_json::json!({
                "a2": fp.a2,
                "arf": fp.arf,
                "conway": fp.conway,
                "label": fp.label,
            });
            println!("{json}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
