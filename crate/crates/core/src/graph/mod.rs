//! Combinatorial layer: graphs, cycles, cycle families, and the cycle
//! counters ν₁ and ν₂.
//!
//! Edge ids are a bijection onto `0..edge_count()` in lexicographic order
//! of the (lo, hi) endpoint pairs. The reference orientation of every edge
//! is lower vertex id → higher vertex id; all signed quantities in the
//! crate are stated relative to that convention.

mod nu;

pub use nu::{nu1, nu2, nu_audit, NuKind, NuReport, NuViolation};

use std::collections::HashMap;

use crate::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Simple undirected graph with stable lexicographic edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    ids: HashMap<(VertexId, VertexId), EdgeId>,
    incident: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Loops and multi-edges
    /// are rejected; edges are normalized to (lo, hi) and sorted, so ids
    /// do not depend on input order.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { min: 3, got: n });
        }
        let mut norm: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has an endpoint >= n = {n}"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        let mut ids = HashMap::with_capacity(norm.len());
        let mut incident = vec![Vec::new(); n];
        for (id, &(u, v)) in norm.iter().enumerate() {
            ids.insert((u, v), id);
            incident[u].push(id);
            incident[v].push(id);
        }
        Ok(Graph {
            n,
            edges: norm,
            ids,
            incident,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Endpoints of an edge as (lo, hi); this is also the reference
    /// orientation lo → hi.
    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.ids.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// True when the two edges share a vertex (and are distinct).
    pub fn edges_adjacent(&self, e: EdgeId, f: EdgeId) -> Result<bool> {
        let (a, b) = self.endpoints(e)?;
        let (c, d) = self.endpoints(f)?;
        Ok(e != f && (a == c || a == d || b == c || b == d))
    }

    /// The vertex shared by two adjacent edges.
    pub fn shared_vertex(&self, e: EdgeId, f: EdgeId) -> Result<Option<VertexId>> {
        let (a, b) = self.endpoints(e)?;
        let (c, d) = self.endpoints(f)?;
        if e == f {
            return Ok(None);
        }
        Ok(if a == c || a == d {
            Some(a)
        } else if b == c || b == d {
            Some(b)
        } else {
            None
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }
}

/// The complete graph K_n with edges in lexicographic id order.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooFewVertices { min: 3, got: n });
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// A simple cycle in canonical form: the minimal vertex comes first and
/// the second vertex is smaller than the last, which makes the form
/// unique per rotation/reflection class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn new(seq: &[VertexId]) -> Result<Self> {
        if seq.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "cycle needs at least 3 vertices, got {}",
                seq.len()
            )));
        }
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle("repeated vertex".into()));
        }
        let mut v = seq.to_vec();
        let min_pos = (0..v.len()).min_by_key(|&i| v[i]).unwrap();
        v.rotate_left(min_pos);
        if v[1] > v[v.len() - 1] {
            v[1..].reverse();
        }
        Ok(Cycle { vertices: v })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Edge ids in traversal order; fails if the cycle uses an edge the
    /// graph does not have.
    pub fn edge_ids(&self, g: &Graph) -> Result<Vec<EdgeId>> {
        let m = self.vertices.len();
        let mut out = Vec::with_capacity(m);
        for t in 0..m {
            let u = self.vertices[t];
            let v = self.vertices[(t + 1) % m];
            let id = g
                .edge_id(u, v)
                .ok_or_else(|| Error::InvalidCycle(format!("edge ({u},{v}) not in graph")))?;
            out.push(id);
        }
        Ok(out)
    }

    /// Edges in traversal order paired with the traversal direction
    /// relative to the reference orientation: +1 when the canonical
    /// traversal runs lo → hi, −1 otherwise.
    pub fn directed_edges(&self, g: &Graph) -> Result<Vec<(EdgeId, i8)>> {
        let m = self.vertices.len();
        let mut out = Vec::with_capacity(m);
        for t in 0..m {
            let u = self.vertices[t];
            let v = self.vertices[(t + 1) % m];
            let id = g
                .edge_id(u, v)
                .ok_or_else(|| Error::InvalidCycle(format!("edge ({u},{v}) not in graph")))?;
            out.push((id, if u < v { 1 } else { -1 }));
        }
        Ok(out)
    }

    /// True when the two cycles share no vertex.
    pub fn vertex_disjoint(&self, other: &Cycle) -> bool {
        self.vertices.iter().all(|v| !other.contains_vertex(*v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    Hamiltonian,
    AllCycles,
    Custom,
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyTag::Hamiltonian => write!(f, "hamiltonian"),
            FamilyTag::AllCycles => write!(f, "all-cycles"),
            FamilyTag::Custom => write!(f, "custom"),
        }
    }
}

/// A duplicate-free, sorted list of canonical cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFamily {
    cycles: Vec<Cycle>,
    tag: FamilyTag,
}

impl CycleFamily {
    pub fn new(mut cycles: Vec<Cycle>, tag: FamilyTag) -> Self {
        cycles.sort();
        cycles.dedup();
        CycleFamily { cycles, tag }
    }

    pub fn empty(tag: FamilyTag) -> Self {
        CycleFamily {
            cycles: Vec::new(),
            tag,
        }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn get(&self, i: usize) -> Option<&Cycle> {
        self.cycles.get(i)
    }

    /// JSON list of vertex sequences, e.g. `[[0,1,2,3],[0,1,3,2]]`.
    pub fn to_json_string(&self) -> String {
        let seqs: Vec<&[VertexId]> = self.cycles.iter().map(|c| c.vertices()).collect();
        serde_json::to_string(&seqs).expect("vertex lists serialize")
    }

    pub fn from_json_str(s: &str, tag: FamilyTag) -> Result<Self> {
        let seqs: Vec<Vec<VertexId>> =
            serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        let mut cycles = Vec::with_capacity(seqs.len());
        for seq in &seqs {
            cycles.push(Cycle::new(seq)?);
        }
        Ok(CycleFamily::new(cycles, tag))
    }
}

/// All Hamiltonian cycles of `g` up to rotation and reflection, by
/// backtracking from vertex 0. For K_n this yields (n−1)!/2 cycles, each
/// already in canonical form, in sorted order.
pub fn hamiltonian_cycles(g: &Graph) -> CycleFamily {
    let n = g.n();
    let mut cycles = Vec::new();
    let mut path = Vec::with_capacity(n);
    let mut used = vec![false; n];
    path.push(0);
    used[0] = true;
    extend_hamiltonian(g, &mut path, &mut used, &mut cycles);
    CycleFamily {
        cycles,
        tag: FamilyTag::Hamiltonian,
    }
}

fn extend_hamiltonian(
    g: &Graph,
    path: &mut Vec<VertexId>,
    used: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let n = g.n();
    if path.len() == n {
        // Close the cycle; keep one representative per reflection class.
        if path[1] < path[n - 1] && g.edge_id(path[n - 1], path[0]).is_some() {
            out.push(Cycle {
                vertices: path.clone(),
            });
        }
        return;
    }
    let last = *path.last().unwrap();
    for v in 1..n {
        if !used[v] && g.edge_id(last, v).is_some() {
            used[v] = true;
            path.push(v);
            extend_hamiltonian(g, path, used, out);
            path.pop();
            used[v] = false;
        }
    }
}
