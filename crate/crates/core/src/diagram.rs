//! Diagram combinatorics: signed Gauss codes assembled from projected
//! crossings, ζ′ values, and linking numbers.
//!
//! Text format, bidirectional: per component a token string like
//! `O1+U2+O3+U1+O2+U3+` (O/U = over/under pass, integer = crossing id,
//! +/− = crossing sign), components separated by `|`. Imported codes are
//! validated structurally (pairing, one over and one under pass per
//! crossing, consistent signs) but not for planar realizability.

use std::collections::HashMap;
use std::fmt;

use crate::geometry::{
    project_crossings, try_project, Embedding, PlanarCrossing, ProjectionDirection,
    ProjectionOutcome, Rational, DEFAULT_LADDER_LIMIT,
};
use crate::graph::{Cycle, EdgeId};
use crate::{Error, Result};

/// One pass through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: usize,
    pub over: bool,
}

/// A signed Gauss code with one or more closed components.
///
/// Crossing ids are dense indices into the sign table; every id occurs
/// exactly twice, once over and once under.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    components: Vec<Vec<Pass>>,
    signs: Vec<i8>,
}

impl GaussCode {
    pub fn new(components: Vec<Vec<Pass>>, signs: Vec<i8>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidCode("no components".into()));
        }
        let n = signs.len();
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::InvalidCode(format!("sign {s} is not ±1")));
        }
        let mut over_seen = vec![0usize; n];
        let mut under_seen = vec![0usize; n];
        for pass in components.iter().flatten() {
            if pass.crossing >= n {
                return Err(Error::InvalidCode(format!(
                    "pass references crossing {} but only {n} signs are given",
                    pass.crossing
                )));
            }
            if pass.over {
                over_seen[pass.crossing] += 1;
            } else {
                under_seen[pass.crossing] += 1;
            }
        }
        for id in 0..n {
            if over_seen[id] != 1 || under_seen[id] != 1 {
                return Err(Error::InvalidCode(format!(
                    "crossing {id} has {} over and {} under passes",
                    over_seen[id], under_seen[id]
                )));
            }
        }
        Ok(GaussCode { components, signs })
    }

    /// The empty diagram of the unknot: one component, no crossings.
    pub fn unknot() -> Self {
        GaussCode {
            components: vec![Vec::new()],
            signs: Vec::new(),
        }
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, crossing: usize) -> Result<i8> {
        self.signs
            .get(crossing)
            .copied()
            .ok_or(Error::UnknownCrossing(crossing))
    }

    /// The two passes of a crossing as (component, position), in scan
    /// order. This is the crossing table of the code.
    pub fn passes_of(&self, crossing: usize) -> Result<[(usize, usize); 2]> {
        if crossing >= self.signs.len() {
            return Err(Error::UnknownCrossing(crossing));
        }
        let mut found = Vec::with_capacity(2);
        for (ci, comp) in self.components.iter().enumerate() {
            for (pi, pass) in comp.iter().enumerate() {
                if pass.crossing == crossing {
                    found.push((ci, pi));
                }
            }
        }
        Ok([found[0], found[1]])
    }

    pub fn is_inter_component(&self, crossing: usize) -> Result<bool> {
        let [a, b] = self.passes_of(crossing)?;
        Ok(a.0 != b.0)
    }

    pub fn to_text(&self) -> String {
        self.components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| {
                        format!(
                            "{}{}{}",
                            if p.over { 'O' } else { 'U' },
                            p.crossing + 1,
                            if self.signs[p.crossing] > 0 { '+' } else { '-' }
                        )
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Parses the text format. Crossing ids may be arbitrary positive
    /// integers; they are renumbered densely by first occurrence.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut remap: HashMap<u64, usize> = HashMap::new();
        let mut signs: Vec<i8> = Vec::new();
        let mut components = Vec::new();
        for part in s.trim().split('|') {
            let mut passes = Vec::new();
            let mut chars = part.trim().chars().peekable();
            while let Some(c) = chars.next() {
                let over = match c {
                    'O' | 'o' => true,
                    'U' | 'u' => false,
                    other => {
                        return Err(Error::InvalidCode(format!(
                            "expected O or U, got {other:?}"
                        )))
                    }
                };
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if digits.is_empty() {
                    return Err(Error::InvalidCode("missing crossing id".into()));
                }
                let id: u64 = digits
                    .parse()
                    .map_err(|_| Error::InvalidCode(format!("bad crossing id {digits}")))?;
                let sign = match chars.next() {
                    Some('+') => 1i8,
                    Some('-') => -1i8,
                    other => {
                        return Err(Error::InvalidCode(format!(
                            "expected + or -, got {other:?}"
                        )))
                    }
                };
                let dense = *remap.entry(id).or_insert_with(|| {
                    signs.push(sign);
                    signs.len() - 1
                });
                if signs[dense] != sign {
                    return Err(Error::InvalidCode(format!(
                        "crossing {id} appears with both signs"
                    )));
                }
                passes.push(Pass {
                    crossing: dense,
                    over,
                });
            }
            components.push(passes);
        }
        GaussCode::new(components, signs)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl std::str::FromStr for GaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaussCode::from_text(s)
    }
}

/// An exact half-integer, the value domain of ζ′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZetaValue {
    half_units: i64,
}

impl ZetaValue {
    pub fn from_half_units(half_units: i64) -> Self {
        ZetaValue { half_units }
    }

    /// Twice the value, always an integer.
    pub fn half_units(&self) -> i64 {
        self.half_units
    }

    pub fn is_integer(&self) -> bool {
        self.half_units % 2 == 0
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.half_units.into(), 2.into())
    }
}

impl fmt::Display for ZetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_units % 2 == 0 {
            write!(f, "{}", self.half_units / 2)
        } else {
            write!(f, "{}/2", self.half_units)
        }
    }
}

/// Linking number of a two-component code: half the signed sum over
/// inter-component crossings.
pub fn linking_number(code: &GaussCode) -> Result<i64> {
    if code.component_count() != 2 {
        return Err(Error::NotATwoComponentLink(code.component_count()));
    }
    let mut sum = 0i64;
    for id in 0..code.crossing_count() {
        if code.is_inter_component(id)? {
            sum += i64::from(code.sign(id)?);
        }
    }
    if sum % 2 != 0 {
        return Err(Error::NonIntegralLinking(sum));
    }
    Ok(sum / 2)
}

/// A validated embedding together with its reference projection and the
/// full crossing table, shared read-only by all diagram builders.
#[derive(Debug, Clone)]
pub struct ProjectedEmbedding {
    embedding: Embedding,
    dir: ProjectionDirection,
    crossings: Vec<PlanarCrossing>,
    on_edge: Vec<Vec<(usize, Rational)>>,
}

impl ProjectedEmbedding {
    /// Validates general position and picks the first generic ladder
    /// direction, reusing the crossings extracted by the winning rung.
    pub fn new(embedding: Embedding) -> Result<Self> {
        embedding.validate()?;
        for k in 0..=DEFAULT_LADDER_LIMIT {
            let dir = ProjectionDirection::ladder(k);
            if let ProjectionOutcome::Generic(crossings) =
                try_project(embedding.points(), embedding.graph().edges(), &dir)?
            {
                return Ok(Self::from_parts(embedding, dir, crossings));
            }
        }
        Err(Error::NoGenericDirection(DEFAULT_LADDER_LIMIT))
    }

    /// Same, but with a caller-supplied direction (checked).
    pub fn with_direction(embedding: Embedding, dir: ProjectionDirection) -> Result<Self> {
        embedding.validate()?;
        let crossings = project_crossings(embedding.points(), embedding.graph().edges(), &dir)?;
        Ok(Self::from_parts(embedding, dir, crossings))
    }

    fn from_parts(
        embedding: Embedding,
        dir: ProjectionDirection,
        crossings: Vec<PlanarCrossing>,
    ) -> Self {
        let mut on_edge = vec![Vec::new(); embedding.graph().edge_count()];
        for (i, c) in crossings.iter().enumerate() {
            on_edge[c.edge_lo].push((i, c.param_lo.clone()));
            on_edge[c.edge_hi].push((i, c.param_hi.clone()));
        }
        for list in &mut on_edge {
            list.sort_by(|a, b| a.1.cmp(&b.1));
        }
        ProjectedEmbedding {
            embedding,
            dir,
            crossings,
            on_edge,
        }
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn direction(&self) -> &ProjectionDirection {
        &self.dir
    }

    pub fn crossings(&self) -> &[PlanarCrossing] {
        &self.crossings
    }

    /// Single-component Gauss code of a cycle, using only crossings
    /// between non-adjacent edges of the cycle, ordered by traversal of
    /// the canonical cycle form.
    pub fn knot_diagram(&self, cycle: &Cycle) -> Result<GaussCode> {
        Ok(self.assemble(&[cycle])?.0)
    }

    /// Like [`Self::knot_diagram`], also returning, for each local
    /// crossing id, the index of the crossing in `crossings()`.
    pub fn knot_diagram_indexed(&self, cycle: &Cycle) -> Result<(GaussCode, Vec<usize>)> {
        self.assemble(&[cycle])
    }

    /// Two-component code of a pair of vertex-disjoint cycles.
    pub fn link_diagram(&self, c1: &Cycle, c2: &Cycle) -> Result<GaussCode> {
        if !c1.vertex_disjoint(c2) {
            return Err(Error::CyclesNotDisjoint);
        }
        Ok(self.assemble(&[c1, c2])?.0)
    }

    fn assemble(&self, cycles: &[&Cycle]) -> Result<(GaussCode, Vec<usize>)> {
        let g = self.embedding.graph();
        let mut edge_dir: HashMap<EdgeId, i8> = HashMap::new();
        let mut in_diagram = vec![false; g.edge_count()];
        let mut traversals = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            let de = cycle.directed_edges(g)?;
            for &(e, d) in &de {
                edge_dir.insert(e, d);
                in_diagram[e] = true;
            }
            traversals.push(de);
        }
        let mut local_of: HashMap<usize, usize> = HashMap::new();
        let mut globals: Vec<usize> = Vec::new();
        let mut signs: Vec<i8> = Vec::new();
        let mut components = Vec::with_capacity(cycles.len());
        for de in &traversals {
            let mut passes = Vec::new();
            for &(e, d) in de {
                let mut hits: Vec<(usize, &Rational)> = self.on_edge[e]
                    .iter()
                    .filter(|(i, _)| {
                        let c = &self.crossings[*i];
                        let partner = if c.edge_lo == e { c.edge_hi } else { c.edge_lo };
                        in_diagram[partner]
                    })
                    .map(|(i, p)| (*i, p))
                    .collect();
                if d < 0 {
                    hits.reverse();
                }
                for (global, _) in hits {
                    let c = &self.crossings[global];
                    let local = *local_of.entry(global).or_insert_with(|| {
                        let partner_dir = edge_dir[&c.edge_lo] * edge_dir[&c.edge_hi];
                        signs.push(c.sign * partner_dir);
                        globals.push(global);
                        signs.len() - 1
                    });
                    passes.push(Pass {
                        crossing: local,
                        over: c.over_edge == e,
                    });
                }
            }
            components.push(passes);
        }
        Ok((GaussCode::new(components, signs)?, globals))
    }

    /// ζ′ of two non-adjacent edges in their reference orientations:
    /// half the signed crossing sum, in {−½, 0, +½} for straight
    /// segments. Adjacent edges are rejected — the arcs would not be
    /// disjoint, and a silent zero could mask misuse.
    pub fn zeta_prime(&self, e: EdgeId, f: EdgeId) -> Result<ZetaValue> {
        let g = self.embedding.graph();
        if e == f {
            return Err(Error::EdgesNotDistinct);
        }
        if g.edges_adjacent(e, f)? {
            return Err(Error::NotDisjoint(e, f));
        }
        let mut sum = 0i64;
        for &(i, _) in &self.on_edge[e] {
            let c = &self.crossings[i];
            if c.edge_lo == f || c.edge_hi == f {
                sum += i64::from(c.sign);
            }
        }
        Ok(ZetaValue::from_half_units(sum))
    }

    /// ζ′ of two vertex-disjoint cycles carrying their canonical
    /// traversal orientations; equals their linking number. Computed
    /// straight from the crossing table, independently of Gauss-code
    /// assembly.
    pub fn zeta_prime_cycles(&self, c1: &Cycle, c2: &Cycle) -> Result<ZetaValue> {
        if !c1.vertex_disjoint(c2) {
            return Err(Error::CyclesNotDisjoint);
        }
        let g = self.embedding.graph();
        let d1: HashMap<EdgeId, i8> = c1.directed_edges(g)?.into_iter().collect();
        let d2: HashMap<EdgeId, i8> = c2.directed_edges(g)?.into_iter().collect();
        let mut sum = 0i64;
        for c in &self.crossings {
            let (lo, hi) = (c.edge_lo, c.edge_hi);
            let pair = if d1.contains_key(&lo) && d2.contains_key(&hi) {
                Some((d1[&lo], d2[&hi]))
            } else if d2.contains_key(&lo) && d1.contains_key(&hi) {
                Some((d2[&lo], d1[&hi]))
            } else {
                None
            };
            if let Some((da, db)) = pair {
                sum += i64::from(c.sign) * i64::from(da) * i64::from(db);
            }
        }
        Ok(ZetaValue::from_half_units(sum))
    }
}
