//! The headline quantities of an embedding: μ, the knotted-cycle census,
//! and the trichotomy classification of K₈ embeddings.
//!
//! A cycle counts as knotted iff its Conway polynomial differs from 1
//! (the "∇-knotted" proxy). That can undercount — knots with trivial ∇
//! exist — but never overcounts, and a₂-based arithmetic is exactly what
//! μ uses. Classification runs only for complete graphs on 8 vertices
//! with the full Hamiltonian family; everything else gets a census-only
//! analysis. Violations of the expected case conditions are reported
//! loudly, never suppressed.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::diagram::ProjectedEmbedding;
use crate::graph::{CycleFamily, FamilyTag};
use crate::knot::{a2_fast, fingerprint, KnotLabel};
use crate::{Error, Result};

/// μ(f, Γ; n): the sum of a₂ over all cycle diagrams of Γ, reduced into
/// 0..n−1. Uses the fast two-chord a₂.
pub fn mu(pe: &ProjectedEmbedding, family: &CycleFamily, n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::BadModulus(n));
    }
    let total = sum_a2_fast(pe, family)?;
    Ok(total.rem_euclid(i64::from(n)) as u64)
}

fn sum_a2_fast(pe: &ProjectedEmbedding, family: &CycleFamily) -> Result<i64> {
    family
        .cycles()
        .par_iter()
        .map(|cycle| a2_fast(&pe.knot_diagram(cycle)?))
        .try_reduce(|| 0i64, |a, b| Ok(a + b))
}

/// Knotted-cycle count with the cheap path: a₂ ≠ 0 already implies
/// ∇ ≠ 1, and only cycles with a₂ = 0 fall back to the skein engine.
pub fn knotted_census_count(pe: &ProjectedEmbedding, family: &CycleFamily) -> Result<usize> {
    family
        .cycles()
        .par_iter()
        .map(|cycle| {
            let code = pe.knot_diagram(cycle)?;
            if a2_fast(&code)? != 0 {
                return Ok(1usize);
            }
            Ok(usize::from(!crate::knot::conway(&code)?.is_one()))
        })
        .try_reduce(|| 0usize, |a, b| Ok(a + b))
}

/// Trichotomy case labels for K₈ embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrichotomyCase {
    /// At least three knotted Hamiltonian cycles.
    AtLeastThree,
    /// Exactly two, with paired a₂ residues mod 3 and an Arf-1 member.
    ExactlyTwo,
    /// Exactly one, with a₂ ≡ 3 (mod 6).
    ExactlyOne,
}

impl TrichotomyCase {
    pub fn number(&self) -> u8 {
        match self {
            TrichotomyCase::AtLeastThree => 1,
            TrichotomyCase::ExactlyTwo => 2,
            TrichotomyCase::ExactlyOne => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisViolation {
    NoKnottedCycle,
    CaseTwoResidues {
        a2_first: i64,
        a2_second: i64,
    },
    CaseTwoArf,
    CaseThreeResidue {
        a2: i64,
    },
    ArfWitnessMissing,
    MuMismatch {
        modulus: u32,
        fast: u64,
        records: u64,
    },
}

impl fmt::Display for AnalysisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisViolation::NoKnottedCycle => {
                write!(f, "TRICHOTOMY-VIOLATION: no ∇-knotted Hamiltonian cycle")
            }
            AnalysisViolation::CaseTwoResidues {
                a2_first,
                a2_second,
            } => write!(
                f,
                "TRICHOTOMY-VIOLATION: two knotted cycles with a2 = {a2_first}, {a2_second}; \
                 residues mod 3 are not {{1,2}} or {{0,0}}"
            ),
            AnalysisViolation::CaseTwoArf => write!(
                f,
                "TRICHOTOMY-VIOLATION: two knotted cycles but both Arf invariants are 0"
            ),
            AnalysisViolation::CaseThreeResidue { a2 } => write!(
                f,
                "TRICHOTOMY-VIOLATION: single knotted cycle with a2 = {a2} ≢ 3 (mod 6)"
            ),
            AnalysisViolation::ArfWitnessMissing => {
                write!(
                    f,
                    "TRICHOTOMY-VIOLATION: no knotted cycle with Arf invariant 1"
                )
            }
            AnalysisViolation::MuMismatch {
                modulus,
                fast,
                records,
            } => write!(
                f,
                "INTERNAL: fast mu = {fast} but per-cycle records give {records} (mod {modulus})"
            ),
        }
    }
}

/// Per-cycle invariants; `index` points into the analyzed family.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CycleRecord {
    pub index: usize,
    pub a2: i64,
    pub arf: u8,
    pub label: KnotLabel,
}

impl CycleRecord {
    pub fn is_knotted(&self) -> bool {
        self.label != KnotLabel::UnknotLike
    }
}

/// Full per-cycle sweep of one embedding.
#[derive(Debug, Clone)]
pub struct EmbeddingAnalysis {
    pub embedding_hash: String,
    pub graph_n: usize,
    pub family_tag: FamilyTag,
    pub per_cycle: Vec<CycleRecord>,
    pub mu: BTreeMap<u32, u64>,
    pub knotted_count: usize,
    /// Whether the trichotomy applies: complete graph on 8 vertices with
    /// the full Hamiltonian family. Other inputs get census-only output.
    pub trichotomy_scope: bool,
    pub trichotomy: Option<TrichotomyCase>,
    pub violations: Vec<AnalysisViolation>,
}

impl EmbeddingAnalysis {
    /// Some knotted cycle with Arf invariant 1, if any (lowest index).
    pub fn arf_witness(&self) -> Option<usize> {
        self.per_cycle
            .iter()
            .find(|r| r.is_knotted() && r.arf == 1)
            .map(|r| r.index)
    }

    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    pub fn to_json_string(&self) -> String {
        let violations: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        let mu: BTreeMap<String, u64> = self.mu.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        serde_json::json!({
            "embedding_hash": self.embedding_hash,
            "graph_n": self.graph_n,
            "family": self.family_tag.to_string(),
            "per_cycle": self.per_cycle,
            "mu": mu,
            "knotted_count": self.knotted_count,
            "case": self.trichotomy.map(|c| c.number()),
            "violations": violations,
        })
        .to_string()
    }

    /// CSV census of the knotted cycles with their residues.
    pub fn write_census_csv<W: Write>(&self, family: &CycleFamily, w: &mut W) -> Result<()> {
        writeln!(w, "cycle,vertices,a2,arf,label,a2_mod2,a2_mod3,a2_mod6")?;
        for r in self.per_cycle.iter().filter(|r| r.is_knotted()) {
            let vertices = family
                .get(r.index)
                .map(|c| {
                    c.vertices()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("-")
                })
                .unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.index,
                vertices,
                r.a2,
                r.arf,
                r.label,
                r.a2.rem_euclid(2),
                r.a2.rem_euclid(3),
                r.a2.rem_euclid(6)
            )?;
        }
        Ok(())
    }
}

/// Full invariant sweep: fingerprints every cycle diagram with the skein
/// engine, records μ for n ∈ {2, 3, 6} plus `extra_moduli`, counts
/// ∇-knotted cycles, and classifies K₈/Hamiltonian inputs by the
/// trichotomy. The μ residues recompute exactly from the per-cycle a₂
/// records.
pub fn analyze(
    pe: &ProjectedEmbedding,
    family: &CycleFamily,
    extra_moduli: &[u32],
) -> Result<EmbeddingAnalysis> {
    let mut moduli: Vec<u32> = vec![2, 3, 6];
    moduli.extend_from_slice(extra_moduli);
    moduli.sort_unstable();
    moduli.dedup();
    if let Some(&bad) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::BadModulus(bad));
    }

    let per_cycle: Vec<CycleRecord> = family
        .cycles()
        .par_iter()
        .enumerate()
        .map(|(index, cycle)| {
            let code = pe.knot_diagram(cycle)?;
            let fp = fingerprint(&code)?;
            Ok(CycleRecord {
                index,
                a2: fp.a2,
                arf: fp.arf,
                label: fp.label,
            })
        })
        .collect::<Result<_>>()?;

    let sum_a2: i64 = per_cycle.iter().map(|r| r.a2).sum();
    let mut mu_map = BTreeMap::new();
    for &m in &moduli {
        mu_map.insert(m, sum_a2.rem_euclid(i64::from(m)) as u64);
    }
    let knotted: Vec<&CycleRecord> = per_cycle.iter().filter(|r| r.is_knotted()).collect();
    let knotted_count = knotted.len();

    let graph = pe.embedding().graph();
    let trichotomy_scope =
        graph.is_complete() && graph.n() == 8 && family.tag() == FamilyTag::Hamiltonian;

    let (trichotomy, violations) = if trichotomy_scope {
        let pairs: Vec<(i64, u8)> = knotted.iter().map(|r| (r.a2, r.arf)).collect();
        classify_trichotomy(&pairs)
    } else {
        (None, Vec::new())
    };

    let mut analysis = EmbeddingAnalysis {
        embedding_hash: embedding_hash(pe),
        graph_n: graph.n(),
        family_tag: family.tag(),
        per_cycle,
        mu: mu_map,
        knotted_count,
        trichotomy_scope,
        trichotomy,
        violations,
    };
    // Cross-route consistency: the fast two-chord a₂ sum must agree with
    // the skein-engine records on every reported modulus.
    let fast_sum = sum_a2_fast(pe, family)?;
    for (&m, &records) in &analysis.mu {
        let fast = fast_sum.rem_euclid(i64::from(m)) as u64;
        if fast != records {
            analysis.violations.push(AnalysisViolation::MuMismatch {
                modulus: m,
                fast,
                records,
            });
        }
    }
    Ok(analysis)
}

/// Case label and violation flags from the (a₂, arf) pairs of the
/// knotted cycles of a K₈/Hamiltonian analysis. Every input gets a case
/// label or an explicit violation — never silence.
fn classify_trichotomy(knotted: &[(i64, u8)]) -> (Option<TrichotomyCase>, Vec<AnalysisViolation>) {
    let mut violations = Vec::new();
    let case = match knotted.len() {
        0 => {
            violations.push(AnalysisViolation::NoKnottedCycle);
            None
        }
        1 => {
            let a2 = knotted[0].0;
            if !(a2.rem_euclid(2) == 1 && a2.rem_euclid(3) == 0) {
                violations.push(AnalysisViolation::CaseThreeResidue { a2 });
            }
            Some(TrichotomyCase::ExactlyOne)
        }
        2 => {
            let (x, y) = (knotted[0].0, knotted[1].0);
            let mut residues = [x.rem_euclid(3), y.rem_euclid(3)];
            residues.sort_unstable();
            if !(residues == [1, 2] || residues == [0, 0]) {
                violations.push(AnalysisViolation::CaseTwoResidues {
                    a2_first: x,
                    a2_second: y,
                });
            }
            if knotted[0].1 == 0 && knotted[1].1 == 0 {
                violations.push(AnalysisViolation::CaseTwoArf);
            }
            Some(TrichotomyCase::ExactlyTwo)
        }
        _ => Some(TrichotomyCase::AtLeastThree),
    };
    if !knotted.is_empty() && !knotted.iter().any(|&(_, arf)| arf == 1) {
        violations.push(AnalysisViolation::ArfWitnessMissing);
    }
    (case, violations)
}

fn embedding_hash(pe: &ProjectedEmbedding) -> String {
    let mut hasher = Sha256::new();
    hasher.update(pe.embedding().to_json_string().as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
