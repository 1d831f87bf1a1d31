//! Exact rational 3D geometry for straight-line embeddings.
//!
//! Every predicate here is an exact comparison of `BigRational` values;
//! there are no tolerances anywhere. Projection directions come from the
//! deterministic ladder d_k = (1, k, k²), so identical inputs always get
//! identical diagrams, on every platform.
//!
//! Conventions:
//! * the reference orientation of an edge runs from its lower vertex id
//!   to its higher vertex id;
//! * the viewer sits at +∞ along the projection direction, so the strand
//!   with the larger depth coordinate is the over strand;
//! * a crossing is positive when the under strand runs from right to left
//!   as seen along the over strand, i.e. the frame (over direction,
//!   under direction) is positively oriented in the projection plane.

mod embedding;

pub use embedding::Embedding;

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed, Zero};

use crate::graph::EdgeId;
use crate::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A point of 3-space with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(rat(x), rat(y), rat(z))
    }

    fn coord(&self, i: usize) -> &Rational {
        match i {
            0 => &self.x,
            1 => &self.y,
            _ => &self.z,
        }
    }
}

/// A straight segment realizing a graph edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point3,
    pub b: Point3,
    pub edge: EdgeId,
}

impl Segment {
    pub fn new(a: Point3, b: Point3, edge: EdgeId) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGraph(format!("edge {edge} is degenerate")));
        }
        Ok(Segment { a, b, edge })
    }
}

/// A nonzero projection direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionDirection {
    d: [Rational; 3],
}

impl ProjectionDirection {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(ProjectionDirection { d: [x, y, z] })
    }

    /// The k-th rung of the deterministic direction ladder, (1, k, k²).
    pub fn ladder(k: u64) -> Self {
        let kk = BigInt::from(k);
        ProjectionDirection {
            d: [
                Rational::from_integer(BigInt::from(1)),
                Rational::from_integer(kk.clone()),
                Rational::from_integer(&kk * &kk),
            ],
        }
    }

    pub fn components(&self) -> &[Rational; 3] {
        &self.d
    }
}

/// A transversal crossing between the images of two non-adjacent edges.
///
/// `param_lo`/`param_hi` are the intersection parameters along the
/// reference orientation of `edge_lo`/`edge_hi`; both lie strictly in
/// (0, 1). `sign` is the crossing sign once both strands carry their
/// reference orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarCrossing {
    pub edge_lo: EdgeId,
    pub edge_hi: EdgeId,
    pub point: [Rational; 2],
    pub over_edge: EdgeId,
    pub sign: i8,
    pub param_lo: Rational,
    pub param_hi: Rational,
}

/// Why a point set fails general position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PositionViolation {
    #[error("vertices {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("vertex {vertex} lies in the interior of edge {edge}")]
    VertexOnSegment { vertex: usize, edge: usize },
    #[error("edges {0} and {1} intersect in 3-space")]
    SegmentsIntersect(usize, usize),
    #[error("endpoints of edge {edge} are collinear with vertex {vertex}")]
    CollinearTriple { edge: usize, vertex: usize },
}

fn sub3(a: &Point3, b: &Point3) -> [Rational; 3] {
    [&a.x - &b.x, &a.y - &b.y, &a.z - &b.z]
}

fn cross3(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot3(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn is_zero3(v: &[Rational; 3]) -> bool {
    v[0].is_zero() && v[1].is_zero() && v[2].is_zero()
}

fn sub2(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

fn cross2(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot2(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Checks that straight segments on `points` realize an embedding:
/// (i) no vertex in the relative interior of any segment, (ii) no two
/// vertex-disjoint segments meet in 3-space, (iii) no segment's endpoints
/// are collinear with another segment endpoint. Scans run in that order
/// and report the first violating tuple.
pub fn validate_general_position(
    points: &[Point3],
    edges: &[(usize, usize)],
) -> std::result::Result<(), PositionViolation> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(PositionViolation::DuplicatePoints(i, j));
            }
        }
    }
    for (k, &(u, v)) in edges.iter().enumerate() {
        let (a, b) = (&points[u], &points[v]);
        let r = sub3(b, a);
        let rr = dot3(&r, &r);
        for (p, point) in points.iter().enumerate() {
            if p == u || p == v {
                continue;
            }
            let w = sub3(point, a);
            if is_zero3(&cross3(&w, &r)) {
                let t = dot3(&w, &r);
                if t.is_positive() && t < rr {
                    return Err(PositionViolation::VertexOnSegment { vertex: p, edge: k });
                }
            }
        }
    }
    for k in 0..edges.len() {
        for l in (k + 1)..edges.len() {
            let (u1, v1) = edges[k];
            let (u2, v2) = edges[l];
            if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                continue;
            }
            if segments_meet_3d(&points[u1], &points[v1], &points[u2], &points[v2]) {
                return Err(PositionViolation::SegmentsIntersect(k, l));
            }
        }
    }
    let mut active = vec![false; points.len()];
    for &(u, v) in edges {
        active[u] = true;
        active[v] = true;
    }
    for (k, &(u, v)) in edges.iter().enumerate() {
        let r = sub3(&points[v], &points[u]);
        for (x, is_active) in active.iter().enumerate() {
            if !is_active || x == u || x == v {
                continue;
            }
            let w = sub3(&points[x], &points[u]);
            if is_zero3(&cross3(&w, &r)) {
                return Err(PositionViolation::CollinearTriple { edge: k, vertex: x });
            }
        }
    }
    Ok(())
}

/// Exact test for intersection of two closed segments with pairwise
/// distinct endpoints in 3-space.
fn segments_meet_3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> bool {
    let r = sub3(b, a);
    let s = sub3(d, c);
    let w = sub3(c, a);
    let n = cross3(&r, &s);
    if !is_zero3(&n) {
        if !dot3(&w, &n).is_zero() {
            return false; // skew lines
        }
        // Coplanar, non-parallel: a + t·r = c + u·s with t·|n|² and u·|n|²
        // given by triple products; |n|² > 0 so the bounds transfer.
        let den = dot3(&n, &n);
        let tn = dot3(&cross3(&w, &s), &n);
        let un = dot3(&cross3(&w, &r), &n);
        !tn.is_negative() && tn <= den && !un.is_negative() && un <= den
    } else {
        if !is_zero3(&cross3(&w, &r)) {
            return false; // parallel, different lines
        }
        // Collinear: compare parameter intervals along r.
        let rr = dot3(&r, &r);
        let tc = dot3(&w, &r);
        let td = dot3(&sub3(d, a), &r);
        let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
        !hi.is_negative() && lo <= rr
    }
}

/// Linear screen/depth coordinates for projecting along a direction.
///
/// The two screen functionals vanish on the direction and the depth
/// functional grows along it, so two points share a screen position iff
/// they differ by a multiple of the direction, and the deeper of two such
/// points (larger depth) is the one nearer the viewer.
pub(crate) struct ScreenMap {
    axis: usize,
    others: [usize; 2],
    negate_depth: bool,
    d: [Rational; 3],
}

impl ScreenMap {
    pub(crate) fn new(dir: &ProjectionDirection) -> Self {
        let axis = (0..3).find(|&i| !dir.d[i].is_zero()).expect("nonzero dir");
        let others = match axis {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        ScreenMap {
            axis,
            others,
            negate_depth: dir.d[axis].is_negative(),
            d: dir.d.clone(),
        }
    }

    pub(crate) fn screen(&self, p: &Point3) -> [Rational; 2] {
        let pa = p.coord(self.axis);
        let da = &self.d[self.axis];
        [
            p.coord(self.others[0]) * da - pa * &self.d[self.others[0]],
            p.coord(self.others[1]) * da - pa * &self.d[self.others[1]],
        ]
    }

    pub(crate) fn depth(&self, p: &Point3) -> Rational {
        let v = p.coord(self.axis).clone();
        if self.negate_depth {
            -v
        } else {
            v
        }
    }
}

/// True when `p` lies on the closed 2D segment [a, b].
fn on_closed_segment_2d(p: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> bool {
    let r = sub2(b, a);
    let w = sub2(p, a);
    if !cross2(&w, &r).is_zero() {
        return false;
    }
    let t = dot2(&w, &r);
    !t.is_negative() && t <= dot2(&r, &r)
}

/// Outcome of projecting along one direction: the full crossing list, or
/// the reason the direction is not generic.
pub(crate) enum ProjectionOutcome {
    Generic(Vec<PlanarCrossing>),
    NotGeneric(String),
}

/// One fused pass over the input: rejects non-generic directions (a
/// degenerate segment image, coincident vertex images, a vertex image on
/// a non-incident segment image, collinear overlapping images, or a
/// triple point) and otherwise returns every transversal crossing of
/// non-adjacent edge pairs with exact point, over/under and sign data.
/// Hard errors are reserved for inputs that violate general position in
/// 3-space (equal depths at a crossing).
pub(crate) fn try_project(
    points: &[Point3],
    edges: &[(usize, usize)],
    dir: &ProjectionDirection,
) -> Result<ProjectionOutcome> {
    let map = ScreenMap::new(dir);
    let mut active = vec![false; points.len()];
    for &(u, v) in edges {
        active[u] = true;
        active[v] = true;
    }
    let screens: Vec<[Rational; 2]> = points.iter().map(|p| map.screen(p)).collect();

    for (k, &(u, v)) in edges.iter().enumerate() {
        if screens[u] == screens[v] {
            return Ok(ProjectionOutcome::NotGeneric(format!(
                "edge {k} projects to a point"
            )));
        }
    }
    for i in 0..points.len() {
        if !active[i] {
            continue;
        }
        for j in (i + 1)..points.len() {
            if active[j] && screens[i] == screens[j] {
                return Ok(ProjectionOutcome::NotGeneric(format!(
                    "vertices {i} and {j} project together"
                )));
            }
        }
    }
    for (k, &(u, v)) in edges.iter().enumerate() {
        for (x, is_active) in active.iter().enumerate() {
            if !is_active || x == u || x == v {
                continue;
            }
            if on_closed_segment_2d(&screens[x], &screens[u], &screens[v]) {
                return Ok(ProjectionOutcome::NotGeneric(format!(
                    "vertex {x} projects onto edge {k}"
                )));
            }
        }
    }
    let mut seen: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    let mut crossings = Vec::new();
    for k in 0..edges.len() {
        for l in (k + 1)..edges.len() {
            let e1 = ref_oriented(edges[k]);
            let e2 = ref_oriented(edges[l]);
            let r = sub2(&screens[e1.1], &screens[e1.0]);
            let s = sub2(&screens[e2.1], &screens[e2.0]);
            if cross2(&r, &s).is_zero() {
                let w = sub2(&screens[e2.0], &screens[e1.0]);
                if !cross2(&w, &r).is_zero() {
                    continue;
                }
                // Collinear images: reject when the closed overlap has
                // positive length; a shared vertex image alone was
                // already caught above.
                let rr = dot2(&r, &r);
                let tc = dot2(&w, &r);
                let td = dot2(&sub2(&screens[e2.1], &screens[e1.0]), &r);
                let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
                let start = if lo.is_negative() {
                    Rational::zero()
                } else {
                    lo
                };
                let end = if hi > rr { rr } else { hi };
                if start < end {
                    return Ok(ProjectionOutcome::NotGeneric(format!(
                        "edges {k} and {l} overlap in projection"
                    )));
                }
                continue;
            }
            let shares_vertex = e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1;
            if shares_vertex {
                continue;
            }
            if let Some(crossing) = crossing_between(points, &map, &screens, e1, e2, (k, l))? {
                if !seen.insert((crossing.0[0].clone(), crossing.0[1].clone())) {
                    return Ok(ProjectionOutcome::NotGeneric(format!(
                        "edges {k} and {l} cross at a point shared with another crossing"
                    )));
                }
                crossings.push(PlanarCrossing {
                    edge_lo: k,
                    edge_hi: l,
                    point: crossing.0,
                    over_edge: if crossing.1 { k } else { l },
                    sign: crossing.2,
                    param_lo: crossing.3,
                    param_hi: crossing.4,
                });
            }
        }
    }
    Ok(ProjectionOutcome::Generic(crossings))
}

/// Transversal interior intersection of two 2D segments; returns the
/// crossing point and both parameters when 0 < t, u < 1.
fn images_cross(
    a0: &[Rational; 2],
    a1: &[Rational; 2],
    b0: &[Rational; 2],
    b1: &[Rational; 2],
) -> Option<([Rational; 2], Rational, Rational)> {
    let r = sub2(a1, a0);
    let s = sub2(b1, b0);
    let den = cross2(&r, &s);
    if den.is_zero() {
        return None;
    }
    let w = sub2(b0, a0);
    let t = cross2(&w, &s) / &den;
    let u = cross2(&w, &r) / &den;
    let one = rat(1);
    if t.is_positive() && t < one && u.is_positive() && u < one {
        let point = [&a0[0] + &t * &r[0], &a0[1] + &t * &r[1]];
        Some((point, t, u))
    } else {
        None
    }
}

pub const DEFAULT_LADDER_LIMIT: u64 = 1_000_000;

/// First direction of the ladder d_k = (1, k, k²) that is generic for
/// the input, scanning k = 0, 1, 2, … up to `DEFAULT_LADDER_LIMIT`.
pub fn choose_generic_projection(
    points: &[Point3],
    edges: &[(usize, usize)],
) -> Result<ProjectionDirection> {
    choose_generic_projection_with(points, edges, DEFAULT_LADDER_LIMIT)
}

pub fn choose_generic_projection_with(
    points: &[Point3],
    edges: &[(usize, usize)],
    k_max: u64,
) -> Result<ProjectionDirection> {
    for k in 0..=k_max {
        let dir = ProjectionDirection::ladder(k);
        if let ProjectionOutcome::Generic(_) = try_project(points, edges, &dir)? {
            return Ok(dir);
        }
    }
    Err(Error::NoGenericDirection(k_max))
}

/// All transversal crossings between images of non-adjacent edges under
/// a generic direction; non-generic directions are rejected by the fused
/// check. Edges are taken in their reference orientation; the list is
/// ordered by (edge_lo, edge_hi), and two straight segments cross at
/// most once, so that order is total.
pub fn project_crossings(
    points: &[Point3],
    edges: &[(usize, usize)],
    dir: &ProjectionDirection,
) -> Result<Vec<PlanarCrossing>> {
    match try_project(points, edges, dir)? {
        ProjectionOutcome::Generic(crossings) => Ok(crossings),
        ProjectionOutcome::NotGeneric(reason) => Err(Error::NonGenericDirection(reason)),
    }
}

fn ref_oriented((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

type CrossingData = ([Rational; 2], bool, i8, Rational, Rational);

fn crossing_between(
    points: &[Point3],
    map: &ScreenMap,
    screens: &[[Rational; 2]],
    (u1, v1): (usize, usize),
    (u2, v2): (usize, usize),
    (e1, e2): (usize, usize),
) -> Result<Option<CrossingData>> {
    let (a0, a1) = (&screens[u1], &screens[v1]);
    let (b0, b1) = (&screens[u2], &screens[v2]);
    let Some((point, t, u)) = images_cross(a0, a1, b0, b1) else {
        return Ok(None);
    };
    let da = {
        let d0 = map.depth(&points[u1]);
        let d1 = map.depth(&points[v1]);
        &d0 + &t * (&d1 - &d0)
    };
    let db = {
        let d0 = map.depth(&points[u2]);
        let d1 = map.depth(&points[v2]);
        &d0 + &u * (&d1 - &d0)
    };
    let first_over = match da.cmp(&db) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        // Equal depth at equal screen position means the segments meet in
        // 3-space, which general position excludes.
        std::cmp::Ordering::Equal => {
            return Err(Error::Position(PositionViolation::SegmentsIntersect(
                e1, e2,
            )))
        }
    };
    let ra = sub2(a1, a0);
    let rb = sub2(b1, b0);
    let orient = if first_over {
        cross2(&ra, &rb)
    } else {
        cross2(&rb, &ra)
    };
    let sign = if orient.is_positive() { 1 } else { -1 };
    Ok(Some((point, first_over, sign, t, u)))
}

/// Crossing between two explicitly directed segments (a → b each);
/// exposed for tests of the orientation conventions. Returns the screen
/// point, whether the first segment is the over strand, and the
/// crossing sign for the given directions.
pub fn directed_crossing(
    first: &Segment,
    second: &Segment,
    dir: &ProjectionDirection,
) -> Result<Option<([Rational; 2], bool, i8)>> {
    let map = ScreenMap::new(dir);
    let points = [
        first.a.clone(),
        first.b.clone(),
        second.a.clone(),
        second.b.clone(),
    ];
    let screens: Vec<[Rational; 2]> = points.iter().map(|p| map.screen(p)).collect();
    Ok(crossing_between(
        &points,
        &map,
        &screens,
        (0, 1),
        (2, 3),
        (first.edge, second.edge),
    )?
    .map(|(point, over, sign, _, _)| (point, over, sign)))
}
