//! Shared test oracles, written independently of the library's own
//! algorithms: a brute-force skein resolver with a different code
//! representation, branch order and no memoization or simplification,
//! and an orientation-predicate crossing counter that never solves for
//! intersection parameters.
#![allow(dead_code)] // each test binary uses its own subset

use num::Signed;

use hamknot::diagram::{GaussCode, ProjectedEmbedding};
use hamknot::geometry::{Point3, ProjectionDirection, Rational};
use hamknot::graph::hamiltonian_cycles;
use hamknot::harness::random_embedding;

/// Brute-force Conway polynomial straight from the skein relation:
/// recursive, no memo, no reduction, branching at the LAST violating
/// crossing of the scan, carrying sparse crossing ids in per-pass tuples.
/// Exponential, for small codes only.
#[derive(Clone)]
pub struct OracleCode {
    comps: Vec<Vec<(usize, bool)>>,
    signs: std::collections::HashMap<usize, i8>,
}

impl OracleCode {
    pub fn from_code(code: &GaussCode) -> Self {
        let comps = code
            .components()
            .iter()
            .map(|c| c.iter().map(|p| (p.crossing, p.over)).collect())
            .collect();
        let signs = code
            .signs()
            .iter()
            .enumerate()
            .map(|(i, &s)| (i, s))
            .collect();
        OracleCode { comps, signs }
    }

    fn last_violation(&self) -> Option<usize> {
        let mut seen = std::collections::HashSet::new();
        let mut last = None;
        for comp in &self.comps {
            for &(id, over) in comp {
                if seen.insert(id) && !over {
                    last = Some(id);
                }
            }
        }
        last
    }

    fn flipped(&self, id: usize) -> Self {
        let mut out = self.clone();
        for comp in &mut out.comps {
            for pass in comp.iter_mut() {
                if pass.0 == id {
                    pass.1 = !pass.1;
                }
            }
        }
        out.signs.insert(id, -self.signs[&id]);
        out
    }

    fn smoothed(&self, id: usize) -> Self {
        let mut locations = Vec::new();
        for (ci, comp) in self.comps.iter().enumerate() {
            for (pi, &(c, _)) in comp.iter().enumerate() {
                if c == id {
                    locations.push((ci, pi));
                }
            }
        }
        let [(c1, p1), (c2, p2)] = [locations[0], locations[1]];
        let mut comps = Vec::new();
        if c1 == c2 {
            let comp = &self.comps[c1];
            let (lo, hi) = (p1.min(p2), p1.max(p2));
            for (ci, other) in self.comps.iter().enumerate() {
                if ci == c1 {
                    comps.push(comp[lo + 1..hi].to_vec());
                    let mut wrap = comp[hi + 1..].to_vec();
                    wrap.extend_from_slice(&comp[..lo]);
                    comps.push(wrap);
                } else {
                    comps.push(other.clone());
                }
            }
        } else {
            let mut merged = self.comps[c1][p1 + 1..].to_vec();
            merged.extend_from_slice(&self.comps[c1][..p1]);
            merged.extend_from_slice(&self.comps[c2][p2 + 1..]);
            merged.extend_from_slice(&self.comps[c2][..p2]);
            for (ci, other) in self.comps.iter().enumerate() {
                if ci == c1 {
                    comps.push(merged.clone());
                } else if ci != c2 {
                    comps.push(other.clone());
                }
            }
        }
        let mut signs = self.signs.clone();
        signs.remove(&id);
        OracleCode { comps, signs }
    }

    /// Conway coefficients c0.. with trailing zeros trimmed.
    pub fn conway(&self) -> Vec<i64> {
        match self.last_violation() {
            None => {
                if self.comps.len() == 1 {
                    vec![1]
                } else {
                    Vec::new()
                }
            }
            Some(id) => {
                // ∇(D) = ∇(switched D) ± z·∇(smoothed D).
                let switched = self.flipped(id).conway();
                let smoothed = self.smoothed(id).conway();
                let sign = i64::from(self.signs[&id]);
                let mut out = switched;
                if out.len() < smoothed.len() + 1 {
                    out.resize(smoothed.len() + 1, 0);
                }
                for (k, &c) in smoothed.iter().enumerate() {
                    out[k + 1] += sign * c;
                }
                while out.last() == Some(&0) {
                    out.pop();
                }
                out
            }
        }
    }
}

pub fn brute_conway(code: &GaussCode) -> Vec<i64> {
    OracleCode::from_code(code).conway()
}

fn orient2(a: &[Rational; 2], b: &[Rational; 2], c: &[Rational; 2]) -> i8 {
    let v = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Counts proper crossings between images of non-adjacent edges using
/// only orientation predicates (both segments strictly straddle each
/// other's supporting line) — no parameter solving anywhere.
pub fn brute_projected_crossing_count(
    points: &[Point3],
    edges: &[(usize, usize)],
    dir: &ProjectionDirection,
) -> usize {
    let d = dir.components();
    let screen = |p: &Point3| -> [Rational; 2] {
        [&p.y * &d[0] - &p.x * &d[1], &p.z * &d[0] - &p.x * &d[2]]
    };
    let screens: Vec<[Rational; 2]> = points.iter().map(screen).collect();
    let mut count = 0;
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, e) = edges[j];
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let (pa, pb, pc, pe) = (&screens[a], &screens[b], &screens[c], &screens[e]);
            let s1 = orient2(pa, pb, pc);
            let s2 = orient2(pa, pb, pe);
            let s3 = orient2(pc, pe, pa);
            let s4 = orient2(pc, pe, pb);
            if s1 * s2 < 0 && s3 * s4 < 0 {
                count += 1;
            }
        }
    }
    count
}

/// Deterministic corpus of realizable single-component codes: the cycle
/// diagrams of seeded random K₈ embeddings.
pub fn embedded_cycle_codes(seeds: &[u64], stride: usize) -> Vec<GaussCode> {
    let mut out = Vec::new();
    for &seed in seeds {
        let sampled = random_embedding(8, seed, 10_000).expect("seeded embedding");
        let pe = ProjectedEmbedding::new(sampled.embedding).expect("projectable");
        let fam = hamiltonian_cycles(pe.embedding().graph());
        for cycle in fam.cycles().iter().step_by(stride.max(1)) {
            out.push(pe.knot_diagram(cycle).expect("diagram"));
        }
    }
    out
}

/// Classical small-knot battery, every code at most 8 crossings: torus
/// knots T(2,n) and mirrors, the figure-eight and mirror, and connected
/// sums built by concatenating pass lists with disjoint ids.
pub fn small_knot_battery() -> Vec<(&'static str, GaussCode)> {
    fn torus(n: usize) -> String {
        let mut s = String::new();
        for k in 0..2 * n {
            s.push(if k % 2 == 0 { 'O' } else { 'U' });
            s.push_str(&format!("{}+", (k % n) + 1));
        }
        s
    }
    fn mirror(code: &str) -> String {
        code.chars()
            .map(|c| match c {
                'O' => 'U',
                'U' => 'O',
                '+' => '-',
                '-' => '+',
                other => other,
            })
            .collect()
    }
    fn shift_ids(code: &str, by: usize) -> String {
        let mut out = String::new();
        let mut chars = code.chars().peekable();
        while let Some(c) = chars.next() {
            out.push(c);
            if c == 'O' || c == 'U' {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let id: usize = digits.parse().unwrap();
                out.push_str(&(id + by).to_string());
            }
        }
        out
    }
    let fig8 = "O1+U2+O3-U4-O2+U1+O4-U3-";
    let trefoil = torus(3);
    let mut battery: Vec<(&'static str, String)> = vec![
        ("unknot", String::new()),
        ("trefoil", trefoil.clone()),
        ("trefoil-mirror", mirror(&trefoil)),
        ("cinquefoil", torus(5)),
        ("cinquefoil-mirror", mirror(&torus(5))),
        ("septafoil", torus(7)),
        ("figure8", fig8.to_string()),
        ("figure8-mirror", mirror(fig8)),
        ("granny", format!("{}{}", trefoil, shift_ids(&trefoil, 3))),
        (
            "square",
            format!("{}{}", trefoil, shift_ids(&mirror(&trefoil), 3)),
        ),
        (
            "trefoil-figure8-sum",
            format!("{}{}", trefoil, shift_ids(fig8, 3)),
        ),
        (
            "figure8-figure8-sum",
            format!("{}{}", fig8, shift_ids(fig8, 4)),
        ),
    ];
    battery
        .drain(..)
        .map(|(name, text)| (name, GaussCode::from_text(&text).expect(name)))
        .collect()
}
