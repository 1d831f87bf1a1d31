//! The cycle counters ν₁ and ν₂ and their modular audit.
//!
//! Both counters are purely combinatorial: they depend on the cycle
//! family Γ alone, never on geometry.
//!
//! ν₁(Γ; A, B, E): A and B share a vertex v. Every cycle γ ∈ Γ that
//! contains A, B and E has A and B as its two cycle edges at v, so the
//! requirement "enter v along A, leave along B" orients γ uniquely; the
//! cycle contributes σ_E(γ) = ±1 according to whether it traverses E
//! along E's reference orientation.
//!
//! ν₂(Γ; A, B; E, F): A, B are vertex-disjoint, as are E, F, and all four
//! edges are distinct. A cycle γ containing all four qualifies when E and
//! F lie in different arcs of γ − (interior of A ∪ interior of B); it
//! contributes σ_E(γ)·σ_F(γ), which does not depend on the orientation
//! of γ. With n₃/n₄ the number of +1/−1 contributions, ν₂ = n₃ − n₄.

use std::collections::BTreeMap;
use std::io::Write;

use super::{CycleFamily, EdgeId, Graph};
use crate::{Error, Result};

/// ν₁(Γ; A, B, E). Errors when A and B do not share a vertex or the edge
/// arguments are not distinct. E may be adjacent to A or B.
pub fn nu1(g: &Graph, family: &CycleFamily, a: EdgeId, b: EdgeId, e: EdgeId) -> Result<i64> {
    if a == b || e == a || e == b {
        return Err(Error::EdgesNotDistinct);
    }
    if g.shared_vertex(a, b)?.is_none() {
        return Err(Error::NotAdjacent(a, b));
    }
    g.endpoints(e)?;
    let mut total = 0i64;
    for cycle in family.cycles() {
        let de = cycle.directed_edges(g)?;
        let m = de.len();
        let pos = |id: EdgeId| de.iter().position(|&(x, _)| x == id);
        let (Some(pa), Some(pb), Some(pe)) = (pos(a), pos(b), pos(e)) else {
            continue;
        };
        // Both present and sharing a vertex forces them to be consecutive.
        let orient: i64 = if (pa + 1) % m == pb {
            1 // canonical traversal already enters the shared vertex along A
        } else if (pb + 1) % m == pa {
            -1
        } else {
            unreachable!("edges sharing a vertex must be consecutive in a simple cycle");
        };
        total += orient * i64::from(de[pe].1);
    }
    Ok(total)
}

/// ν₂(Γ; A, B; E, F) = n₃ − n₄ over qualifying cycles.
pub fn nu2(
    g: &Graph,
    family: &CycleFamily,
    a: EdgeId,
    b: EdgeId,
    e: EdgeId,
    f: EdgeId,
) -> Result<i64> {
    let ids = [a, b, e, f];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if ids[i] == ids[j] {
                return Err(Error::EdgesNotDistinct);
            }
        }
    }
    if g.edges_adjacent(a, b)? {
        return Err(Error::NotDisjoint(a, b));
    }
    if g.edges_adjacent(e, f)? {
        return Err(Error::NotDisjoint(e, f));
    }
    let mut total = 0i64;
    for cycle in family.cycles() {
        let de = cycle.directed_edges(g)?;
        let m = de.len();
        let pos = |id: EdgeId| de.iter().position(|&(x, _)| x == id);
        let (Some(pa), Some(pb), Some(pe), Some(pf)) = (pos(a), pos(b), pos(e), pos(f)) else {
            continue;
        };
        // E lies in the arc (A..B) iff walking forward from A we meet it
        // before B; F must lie in the other arc.
        let rel = |q: usize| (q + m - pa - 1) % m;
        let in_first = |q: usize| rel(q) < rel(pb);
        if in_first(pe) != in_first(pf) {
            total += i64::from(de[pe].1) * i64::from(de[pf].1);
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NuKind {
    Nu1,
    Nu2,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NuViolation {
    pub kind: NuKind,
    pub edges: Vec<EdgeId>,
    pub value: i64,
    pub modulus: u32,
    pub residue: u32,
}

/// Outcome of the ν audit over all admissible edge tuples.
///
/// The maps hold every tuple touched by at least one cycle; admissible
/// tuples absent from the maps have value 0 and trivially satisfy their
/// congruence. ν₁ keys are ordered as (min(A,B), max(A,B), E) — swapping
/// A and B only flips the sign, which no congruence test can see. ν₂
/// keys sort within both pairs, which leaves the value unchanged.
#[derive(Debug, Clone)]
pub struct NuReport {
    pub modulus: u32,
    pub nu1: BTreeMap<(EdgeId, EdgeId, EdgeId), i64>,
    pub nu2: BTreeMap<(EdgeId, EdgeId, EdgeId, EdgeId), i64>,
    pub nu1_admissible: u64,
    pub nu2_admissible: u64,
    pub violations: Vec<NuViolation>,
}

impl NuReport {
    /// True when both hypotheses hold: every ν₁ ≡ 0 (mod n) and every
    /// ν₂ ≡ 0 (mod 2n).
    pub fn hypotheses_hold(&self) -> bool {
        self.violations.is_empty()
    }

    /// CSV rows for the full admissible tuple space, zeros included.
    /// Columns: kind, edge_a, edge_b, edge_e, edge_f, value, modulus,
    /// residue, ok. edge_f is empty on ν₁ rows.
    pub fn write_csv<W: Write>(&self, g: &Graph, w: &mut W) -> Result<()> {
        writeln!(
            w,
            "kind,edge_a,edge_b,edge_e,edge_f,value,modulus,residue,ok"
        )?;
        let n1 = self.modulus as i64;
        for (a, b) in adjacent_pairs(g) {
            for e in 0..g.edge_count() {
                if e == a || e == b {
                    continue;
                }
                let v = self.nu1.get(&(a, b, e)).copied().unwrap_or(0);
                let r = v.rem_euclid(n1);
                writeln!(w, "nu1,{a},{b},{e},,{v},{n1},{r},{}", r == 0)?;
            }
        }
        let n2 = 2 * self.modulus as i64;
        for &(a, b) in &disjoint_pairs(g) {
            for &(e, f) in &disjoint_pairs(g) {
                if e == a || e == b || f == a || f == b {
                    continue;
                }
                let v = self.nu2.get(&(a, b, e, f)).copied().unwrap_or(0);
                let r = v.rem_euclid(n2);
                writeln!(w, "nu2,{a},{b},{e},{f},{v},{n2},{r},{}", r == 0)?;
            }
        }
        Ok(())
    }
}

fn adjacent_pairs(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident_edges(v);
        for i in 0..inc.len() {
            for j in (i + 1)..inc.len() {
                let (a, b) = (inc[i].min(inc[j]), inc[i].max(inc[j]));
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn disjoint_pairs(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for a in 0..g.edge_count() {
        for b in (a + 1)..g.edge_count() {
            if !g.edges_adjacent(a, b).unwrap() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Evaluates ν₁ over all (adjacent A, B; E) tuples and ν₂ over all
/// (disjoint {A,B}; disjoint {E,F}, all distinct) tuples, checking
/// ν₁ ≡ 0 (mod n) and ν₂ ≡ 0 (mod 2n).
///
/// Enumeration is cycle-major: each cycle is scanned once and its
/// contributions pushed to every tuple it meets, so the cost is
/// O(|Γ| · m³) for m-cycles rather than O(tuples · |Γ|).
pub fn nu_audit(g: &Graph, family: &CycleFamily, n: u32) -> Result<NuReport> {
    if n < 2 {
        return Err(Error::BadModulus(n));
    }
    let mut nu1_map: BTreeMap<(EdgeId, EdgeId, EdgeId), i64> = BTreeMap::new();
    let mut nu2_map: BTreeMap<(EdgeId, EdgeId, EdgeId, EdgeId), i64> = BTreeMap::new();

    for cycle in family.cycles() {
        let de = cycle.directed_edges(g)?;
        let m = de.len();
        // ν₁: consecutive pairs (A, B) around the cycle, every other edge E.
        for t in 0..m {
            let (a, _) = de[t];
            let (b, _) = de[(t + 1) % m];
            for (s, &(e, dir)) in de.iter().enumerate() {
                if s == t || s == (t + 1) % m {
                    continue;
                }
                // Entering the shared vertex along A and leaving along B is
                // the canonical traversal when A comes first; the reversed
                // orientation flips every σ_E.
                let (key, contrib) = if a < b {
                    ((a, b, e), i64::from(dir))
                } else {
                    ((b, a, e), -i64::from(dir))
                };
                *nu1_map.entry(key).or_insert(0) += contrib;
            }
        }
        // ν₂: non-consecutive position pairs (t, u) split the cycle into
        // two arcs; (E, F) ranges over cross-arc edge pairs. Edges in
        // different arcs never share a vertex, so the disjointness
        // requirement on (E, F) is automatic.
        for t in 0..m {
            for u in (t + 1)..m {
                if u == t + 1 || (t == 0 && u == m - 1) {
                    continue;
                }
                let (a, _) = de[t];
                let (b, _) = de[u];
                let pair_ab = (a.min(b), a.max(b));
                for p in (t + 1)..u {
                    for q in 0..m {
                        if q > u || q < t {
                            let (e, dir_e) = de[p];
                            let (f, dir_f) = de[q];
                            let pair_ef = (e.min(f), e.max(f));
                            let key = (pair_ab.0, pair_ab.1, pair_ef.0, pair_ef.1);
                            *nu2_map.entry(key).or_insert(0) += i64::from(dir_e) * i64::from(dir_f);
                        }
                    }
                }
            }
        }
    }

    let mut violations = Vec::new();
    let n1 = n as i64;
    for (&(a, b, e), &v) in &nu1_map {
        if v.rem_euclid(n1) != 0 {
            violations.push(NuViolation {
                kind: NuKind::Nu1,
                edges: vec![a, b, e],
                value: v,
                modulus: n,
                residue: v.rem_euclid(n1) as u32,
            });
        }
    }
    let n2 = 2 * n as i64;
    for (&(a, b, e, f), &v) in &nu2_map {
        if v.rem_euclid(n2) != 0 {
            violations.push(NuViolation {
                kind: NuKind::Nu2,
                edges: vec![a, b, e, f],
                value: v,
                modulus: 2 * n,
                residue: v.rem_euclid(n2) as u32,
            });
        }
    }

    let adj = adjacent_pairs(g);
    let dis = disjoint_pairs(g);
    let nu1_admissible = adj.len() as u64 * (g.edge_count() as u64 - 2);
    let mut nu2_admissible = 0u64;
    for &(a, b) in &dis {
        nu2_admissible += dis
            .iter()
            .filter(|&&(e, f)| e != a && e != b && f != a && f != b)
            .count() as u64;
    }

    Ok(NuReport {
        modulus: n,
        nu1: nu1_map,
        nu2: nu2_map,
        nu1_admissible,
        nu2_admissible,
        violations,
    })
}
