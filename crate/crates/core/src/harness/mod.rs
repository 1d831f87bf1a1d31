//! Experiment orchestration: deterministic random embeddings, batch
//! invariance sweeps, crossing-flip consistency checks, and the
//! annealing search.
//!
//! All randomness flows from a single 64-bit seed through SplitMix64
//! (Steele–Lea–Flood; the shift-xor-multiply generator of Vigna's
//! splitmix64.c, v1.0). The generator is fixed here rather than taken
//! from a platform default so that identical configurations reproduce
//! identical experiments everywhere.

mod anneal;

pub use anneal::{anneal_min_knotted, Schedule, SearchState};

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::diagram::{linking_number, ProjectedEmbedding};
use crate::geometry::{rat, Embedding, Point3};
use crate::graph::{complete_graph, hamiltonian_cycles};
use crate::invariant::{analyze, EmbeddingAnalysis};
use crate::knot::{a2, flip_crossing, smooth_crossing};
use crate::{Error, Result};

/// SplitMix64. state advances by the golden-gamma constant; outputs are
/// finalized with two xor-shift-multiply rounds.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Unbiased uniform draw from 0..n by rejection.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let rem = (u64::MAX % n + 1) % n; // 2^64 mod n
        loop {
            let x = self.next_u64();
            if rem == 0 || x < u64::MAX - rem + 1 {
                return x % n;
            }
        }
    }

    /// Uniform integer in the closed interval [lo, hi].
    pub fn next_int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.next_below(span) as i64
    }

    /// Uniform in [0, 1) with 53 significant bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// A fully deterministic experiment description: identical configs give
/// bit-identical reports.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Graph size; the graph is always K_n.
    pub n: usize,
    pub n_embeddings: usize,
    /// Coordinates are sampled uniformly from [−coord_range, coord_range]³.
    pub coord_range: i64,
    pub moduli: Vec<u32>,
    pub json_out: Option<PathBuf>,
    pub csv_out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        ExperimentConfig {
            seed,
            n,
            n_embeddings: 100,
            coord_range: 10_000,
            moduli: vec![2, 3, 6],
            json_out: None,
            csv_out: None,
        }
    }
}

/// A sampled embedding together with how many attempts it took.
#[derive(Debug, Clone)]
pub struct SampledEmbedding {
    pub embedding: Embedding,
    pub attempts: u32,
}

const MAX_REJECTIONS: u32 = 1000;

/// Integer-coordinate random embedding of K_n, resampled until the
/// general-position check passes. Deterministic in (n, seed,
/// coord_range). The floor coord_range ≥ n² keeps the rejection rate
/// low; more than 1000 consecutive rejections abort.
pub fn random_embedding(n: usize, seed: u64, coord_range: i64) -> Result<SampledEmbedding> {
    let floor = (n * n) as i64;
    if coord_range < floor {
        return Err(Error::RangeTooSmall {
            got: coord_range,
            min: floor,
            n,
        });
    }
    let graph = complete_graph(n)?;
    let mut rng = SplitMix64::new(seed);
    let mut rejections = 0u32;
    loop {
        let points: Vec<Point3> = (0..n)
            .map(|_| {
                Point3::new(
                    rat(rng.next_int_in(-coord_range, coord_range)),
                    rat(rng.next_int_in(-coord_range, coord_range)),
                    rat(rng.next_int_in(-coord_range, coord_range)),
                )
            })
            .collect();
        let embedding = Embedding::new(graph.clone(), points)?;
        if embedding.validate().is_ok() {
            return Ok(SampledEmbedding {
                embedding,
                attempts: rejections + 1,
            });
        }
        rejections += 1;
        if rejections > MAX_REJECTIONS {
            return Err(Error::RejectionLimit(rejections));
        }
    }
}

/// One row of an invariance run.
#[derive(Debug, Clone)]
pub struct InvarianceRow {
    pub index: usize,
    pub seed: u64,
    pub attempts: u32,
    pub mu: BTreeMap<u32, u64>,
    pub knotted_count: usize,
    pub case: Option<u8>,
    pub arf_witness: Option<usize>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub rows: Vec<InvarianceRow>,
    /// Histogram over trichotomy cases 1, 2, 3 and unclassified.
    pub case_counts: [usize; 4],
    pub knotted_min: usize,
    pub knotted_max: usize,
    pub violation_total: usize,
}

impl InvarianceReport {
    pub fn has_violations(&self) -> bool {
        self.violation_total > 0
    }

    pub fn to_json_string(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "index": r.index,
                    "seed": r.seed,
                    "attempts": r.attempts,
                    "mu": r.mu.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
                    "knotted_count": r.knotted_count,
                    "case": r.case,
                    "arf_witness": r.arf_witness,
                    "violations": r.violations,
                })
            })
            .collect();
        serde_json::json!({
            "rows": rows,
            "case_counts": self.case_counts,
            "knotted_min": self.knotted_min,
            "knotted_max": self.knotted_max,
            "violation_total": self.violation_total,
        })
        .to_string()
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        let moduli: Vec<u32> = self
            .rows
            .first()
            .map(|r| r.mu.keys().copied().collect())
            .unwrap_or_default();
        let mu_cols: Vec<String> = moduli.iter().map(|m| format!("mu{m}")).collect();
        writeln!(
            w,
            "index,seed,attempts,{},knotted_count,case,arf_witness,violations",
            mu_cols.join(",")
        )?;
        for r in &self.rows {
            let mu_vals: Vec<String> = moduli.iter().map(|m| r.mu[m].to_string()).collect();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.index,
                r.seed,
                r.attempts,
                mu_vals.join(","),
                r.knotted_count,
                r.case.map(|c| c.to_string()).unwrap_or_default(),
                r.arf_witness.map(|c| c.to_string()).unwrap_or_default(),
                r.violations.join(";")
            )?;
        }
        Ok(())
    }
}

/// Samples `n_embeddings` embeddings of K_n and runs the full analysis
/// on each. For K₈ with the Hamiltonian family the run additionally
/// asserts μ mod 3 = 0 per embedding; violations are collected, not
/// fatal. Rows are ordered by embedding index; per-embedding seeds are
/// drawn sequentially from the master seed, so the report is a pure
/// function of the config.
pub fn invariance_run(config: &ExperimentConfig) -> Result<InvarianceReport> {
    let mut master = SplitMix64::new(config.seed);
    let seeds: Vec<u64> = (0..config.n_embeddings)
        .map(|_| master.next_u64())
        .collect();
    let graph = complete_graph(config.n)?;
    let family = hamiltonian_cycles(&graph);
    let extra: Vec<u32> = config.moduli.clone();

    let rows: Vec<InvarianceRow> = seeds
        .par_iter()
        .enumerate()
        .map(|(index, &seed)| -> Result<InvarianceRow> {
            let sampled = random_embedding(config.n, seed, config.coord_range)?;
            let pe = ProjectedEmbedding::new(sampled.embedding)?;
            let analysis = analyze(&pe, &family, &extra)?;
            let mut violations: Vec<String> =
                analysis.violations.iter().map(|v| v.to_string()).collect();
            if analysis.trichotomy_scope && analysis.mu[&3] != 0 {
                violations.push(format!(
                    "INVARIANCE-VIOLATION: mu mod 3 = {} != 0",
                    analysis.mu[&3]
                ));
            }
            Ok(InvarianceRow {
                index,
                seed,
                attempts: sampled.attempts,
                mu: analysis.mu.clone(),
                knotted_count: analysis.knotted_count,
                case: analysis.trichotomy.map(|c| c.number()),
                arf_witness: analysis.arf_witness(),
                violations,
            })
        })
        .collect::<Result<_>>()?;

    let mut case_counts = [0usize; 4];
    let mut knotted_min = usize::MAX;
    let mut knotted_max = 0usize;
    let mut violation_total = 0usize;
    for r in &rows {
        match r.case {
            Some(1) => case_counts[0] += 1,
            Some(2) => case_counts[1] += 1,
            Some(3) => case_counts[2] += 1,
            _ => case_counts[3] += 1,
        }
        knotted_min = knotted_min.min(r.knotted_count);
        knotted_max = knotted_max.max(r.knotted_count);
        violation_total += r.violations.len();
    }
    if rows.is_empty() {
        knotted_min = 0;
    }
    let report = InvarianceReport {
        rows,
        case_counts,
        knotted_min,
        knotted_max,
        violation_total,
    };
    if let Some(path) = &config.json_out {
        std::fs::write(path, report.to_json_string())?;
    }
    if let Some(path) = &config.csv_out {
        let mut buf = Vec::new();
        report.write_csv(&mut buf)?;
        std::fs::write(path, buf)?;
    }
    Ok(report)
}

/// One diagram-level crossing flip applied across every cycle diagram
/// containing that crossing.
#[derive(Debug, Clone)]
pub struct FlipSample {
    pub embedding_index: usize,
    pub crossing_index: usize,
    pub edge_a: usize,
    pub edge_b: usize,
    pub affected_cycles: usize,
    pub total_delta: i64,
    pub delta_mod3_ok: bool,
    pub per_cycle_ok: bool,
}

#[derive(Debug, Clone)]
pub struct FlipReport {
    pub samples: Vec<FlipSample>,
    pub violation_total: usize,
}

impl FlipReport {
    pub fn has_violations(&self) -> bool {
        self.violation_total > 0
    }

    pub fn to_json_string(&self) -> String {
        let samples: Vec<serde_json::Value> = self
            .samples
            .iter()
            .map(|s| {
                serde_json::json!({
                    "embedding_index": s.embedding_index,
                    "crossing_index": s.crossing_index,
                    "edge_a": s.edge_a,
                    "edge_b": s.edge_b,
                    "affected_cycles": s.affected_cycles,
                    "total_delta": s.total_delta,
                    "delta_mod3_ok": s.delta_mod3_ok,
                    "per_cycle_ok": s.per_cycle_ok,
                })
            })
            .collect();
        serde_json::json!({
            "samples": samples,
            "violation_total": self.violation_total,
        })
        .to_string()
    }
}

const FLIPS_PER_EMBEDDING: usize = 20;

/// Samples crossings of full-graph diagrams and flips each of them in
/// every Hamiltonian-cycle diagram that contains it. Per cycle the a₂
/// change must equal −ε·lk of the smoothed link (the skein identity);
/// for K₈ the total change of Σ a₂ must vanish mod 3. A diagram-level
/// flip compares two embeddings across a crossing change without moving
/// any points.
pub fn flip_consistency_run(config: &ExperimentConfig, flips: usize) -> Result<FlipReport> {
    let mut master = SplitMix64::new(config.seed);
    let graph = complete_graph(config.n)?;
    let family = hamiltonian_cycles(&graph);
    // Edge-membership masks per cycle; edge ids fit u128 for any K_n
    // this tool targets.
    let masks: Vec<u128> = family
        .cycles()
        .iter()
        .map(|c| {
            c.edge_ids(&graph)
                .map(|ids| ids.iter().fold(0u128, |m, &e| m | (1u128 << e)))
        })
        .collect::<Result<_>>()?;

    let mut samples = Vec::with_capacity(flips);
    let mut violation_total = 0usize;
    let mut embedding_index = 0usize;
    while samples.len() < flips {
        let seed = master.next_u64();
        let sampled = random_embedding(config.n, seed, config.coord_range)?;
        let pe = ProjectedEmbedding::new(sampled.embedding)?;
        let crossing_count = pe.crossings().len();
        if crossing_count == 0 {
            embedding_index += 1;
            continue;
        }
        let this_round = FLIPS_PER_EMBEDDING.min(flips - samples.len());
        for _ in 0..this_round {
            let crossing_index = master.next_below(crossing_count as u64) as usize;
            let c = &pe.crossings()[crossing_index];
            let (edge_a, edge_b) = (c.edge_lo, c.edge_hi);
            let needed: u128 = (1u128 << edge_a) | (1u128 << edge_b);
            let affected: Vec<usize> = masks
                .iter()
                .enumerate()
                .filter(|(_, m)| *m & needed == needed)
                .map(|(i, _)| i)
                .collect();

            let deltas: Vec<(i64, bool)> = affected
                .par_iter()
                .map(|&ci| -> Result<(i64, bool)> {
                    let cycle = family.get(ci).expect("index from enumeration");
                    let (code, globals) = pe.knot_diagram_indexed(cycle)?;
                    let local = globals
                        .iter()
                        .position(|&g| g == crossing_index)
                        .expect("crossing present in affected cycle");
                    let before = a2(&code)?;
                    let flipped = flip_crossing(&code, local)?;
                    let after = a2(&flipped)?;
                    let smoothed = smooth_crossing(&code, local)?;
                    let lk = linking_number(&smoothed)?;
                    let eps = i64::from(code.sign(local)?);
                    let ok = after - before == -eps * lk;
                    Ok((after - before, ok))
                })
                .collect::<Result<_>>()?;

            let total_delta: i64 = deltas.iter().map(|(d, _)| d).sum();
            let per_cycle_ok = deltas.iter().all(|(_, ok)| *ok);
            let delta_mod3_ok = if config.n == 8 {
                total_delta.rem_euclid(3) == 0
            } else {
                true
            };
            if !per_cycle_ok || !delta_mod3_ok {
                violation_total += 1;
            }
            samples.push(FlipSample {
                embedding_index,
                crossing_index,
                edge_a,
                edge_b,
                affected_cycles: affected.len(),
                total_delta,
                delta_mod3_ok,
                per_cycle_ok,
            });
        }
        embedding_index += 1;
    }
    let report = FlipReport {
        samples,
        violation_total,
    };
    if let Some(path) = &config.json_out {
        std::fs::write(path, report.to_json_string())?;
    }
    Ok(report)
}

/// Shared by the harness drivers: project and fully analyze one
/// embedding of K_n against its Hamiltonian family.
pub fn analyze_embedding(embedding: Embedding, moduli: &[u32]) -> Result<EmbeddingAnalysis> {
    let family = hamiltonian_cycles(embedding.graph());
    let pe = ProjectedEmbedding::new(embedding)?;
    analyze(&pe, &family, moduli)
}
