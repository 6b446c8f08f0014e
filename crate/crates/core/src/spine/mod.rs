//! Oriented special spines in a slot-based encoding.
//!
//! A true vertex sees four balls `B0..B3`. Its six sheets are named by ball
//! pairs (`01`, `12`, `23`, `02`, `03`, `13`) and its four triple-line ends by
//! the ball they miss (`e0..e3`). Reading the sheets `01`, `12`, `23` gives the
//! local colours `a`, `b`, `c`; the other three must then carry `ab`, `abc`
//! and `bc`.
//!
//! Equivalently, a vertex is an ordered tetrahedron of a one-vertex
//! triangulation, a sheet `ij` is the tetrahedron edge `i -> j`, and the end
//! `e_j` is the face opposite `j`. [`gluing`] implements that dual view; the
//! catalog and the moves are built on it.

mod catalog;
pub(crate) mod gluing;
mod json;
mod ops;

use std::collections::{BTreeMap, HashMap, HashSet};

pub use catalog::{catalog, cyclic_pi1_order, CATALOG, WITH_BOUNDARY};
pub use gluing::Gluing;

use crate::error::{Error, Result};

/// Sheet slot names in storage order.
pub const CELL_SLOTS: [&str; 6] = ["01", "12", "23", "02", "03", "13"];
/// Ball pairs of [`CELL_SLOTS`].
pub const SLOT_PAIRS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)];
/// Triple-line slot names.
pub const EDGE_SLOTS: [&str; 4] = ["e0", "e1", "e2", "e3"];

/// Storage index of the sheet between balls `i` and `j`.
pub fn slot_of(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    SLOT_PAIRS.iter().position(|&p| p == (i, j)).expect("distinct balls")
}

/// Whether the triple line at slot `e_j` of a vertex with this parity points
/// into the vertex under the local orientation.
#[inline]
pub fn locally_incoming(parity: i8, j: usize) -> bool {
    (parity > 0) == (j % 2 == 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub cell: String,
    pub exp: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    /// Signed cells around the triple line, in cyclic order.
    pub incidences: Vec<Incidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSlot {
    pub cell: String,
    pub exp: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSlot {
    pub edge: String,
    pub dir: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: String,
    pub parity: i8,
    pub cell_slots: BTreeMap<String, CellSlot>,
    pub edge_slots: BTreeMap<String, EdgeSlot>,
}

impl VertexRecord {
    /// Sheet at storage index `s` (see [`CELL_SLOTS`]). Panics on an
    /// incomplete vertex; validated spines are always complete.
    pub fn cell_slot(&self, s: usize) -> &CellSlot {
        &self.cell_slots[CELL_SLOTS[s]]
    }

    pub fn edge_slot(&self, j: usize) -> &EdgeSlot {
        &self.edge_slots[EDGE_SLOTS[j]]
    }
}

/// An encoded special spine. May be malformed until [`Spine::validate`] says
/// otherwise; [`Spine::load`] only ever returns valid spines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub name: String,
    pub cells: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub vertices: Vec<VertexRecord>,
}

/// Findings of [`Spine::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.cells as i64
    }
}

/// Integer-indexed view of a valid spine for the hot loops.
#[derive(Clone, Debug)]
pub struct Topology {
    pub num_cells: usize,
    /// `(cell, exp)` triples per edge.
    pub incidences: Vec<[(usize, i8); 3]>,
    /// The two `(vertex, slot)` ends of each edge: the tail end first.
    pub ends: Vec<[(usize, usize); 2]>,
    pub parity: Vec<i8>,
    pub cell_slots: Vec<[(usize, i8); 6]>,
    pub edge_slots: Vec<[(usize, i8); 4]>,
}

impl Spine {
    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Checks every structural invariant of the encoding.
    pub fn validate(&self) -> ValidationReport {
        let mut errors = vec![];
        let mut err = |s: String| errors.push(s);
        let sign_ok = |x: i8| x == 1 || x == -1;

        let mut seen = HashSet::new();
        for c in &self.cells {
            if !seen.insert(c) {
                err(format!("duplicate cell id {c}"));
            }
        }
        let cells: HashSet<&str> = self.cells.iter().map(String::as_str).collect();
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(&e.id) {
                err(format!("duplicate edge id {}", e.id));
            }
        }
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(&v.id) {
                err(format!("duplicate vertex id {}", v.id));
            }
        }

        let mut incidence_count: HashMap<&str, usize> = HashMap::new();
        for e in &self.edges {
            if e.incidences.len() != 3 {
                err(format!(
                    "edge {} must have 3 incidences, found {}",
                    e.id,
                    e.incidences.len()
                ));
            }
            for inc in &e.incidences {
                if !cells.contains(inc.cell.as_str()) {
                    err(format!("edge {} references unknown cell {}", e.id, inc.cell));
                }
                if !sign_ok(inc.exp) {
                    err(format!("edge {}: exponent {} is not 1 or -1", e.id, inc.exp));
                }
                *incidence_count.entry(inc.cell.as_str()).or_default() += 1;
            }
        }
        for c in &self.cells {
            if !incidence_count.contains_key(c.as_str()) {
                err(format!("cell {c} has no edge incidence"));
            }
        }

        let edge_ids: HashSet<&str> = self.edges.iter().map(|e| e.id.as_str()).collect();
        let mut edge_refs: HashMap<&str, usize> = HashMap::new();
        let mut slot_count: HashMap<&str, usize> = HashMap::new();
        for v in &self.vertices {
            if !sign_ok(v.parity) {
                err(format!("vertex {}: parity {} is not 1 or -1", v.id, v.parity));
            }
            for key in v.cell_slots.keys() {
                if !CELL_SLOTS.contains(&key.as_str()) {
                    err(format!("vertex {}: unknown cell slot {key}", v.id));
                }
            }
            for key in CELL_SLOTS {
                match v.cell_slots.get(key) {
                    None => err(format!("vertex {}: missing cell slot {key}", v.id)),
                    Some(s) => {
                        if !cells.contains(s.cell.as_str()) {
                            err(format!("vertex {}: slot {key} references unknown cell {}", v.id, s.cell));
                        }
                        if !sign_ok(s.exp) {
                            err(format!("vertex {}: slot {key} exponent {} is not 1 or -1", v.id, s.exp));
                        }
                        *slot_count.entry(s.cell.as_str()).or_default() += 1;
                    }
                }
            }
            for key in v.edge_slots.keys() {
                if !EDGE_SLOTS.contains(&key.as_str()) {
                    err(format!("vertex {}: unknown edge slot {key}", v.id));
                }
            }
            for key in EDGE_SLOTS {
                match v.edge_slots.get(key) {
                    None => err(format!("vertex {}: missing edge slot {key}", v.id)),
                    Some(s) => {
                        if !edge_ids.contains(s.edge.as_str()) {
                            err(format!("vertex {}: slot {key} references unknown edge {}", v.id, s.edge));
                        }
                        if !sign_ok(s.dir) {
                            err(format!("vertex {}: slot {key} direction {} is not 1 or -1", v.id, s.dir));
                        }
                        *edge_refs.entry(s.edge.as_str()).or_default() += 1;
                    }
                }
            }
        }
        for e in &self.edges {
            let n = edge_refs.get(e.id.as_str()).copied().unwrap_or(0);
            if n != 2 {
                err(format!("edge {} is referenced by {n} vertex slots, expected 2", e.id));
            }
        }
        for c in &self.cells {
            let (s, i) = (
                slot_count.get(c.as_str()).copied().unwrap_or(0),
                incidence_count.get(c.as_str()).copied().unwrap_or(0),
            );
            if s != i {
                err(format!("cell {c} fills {s} vertex sheets but has {i} edge incidences"));
            }
        }
        // Both ends of an edge must disagree about which one is the tail.
        if errors.is_empty() {
            if let Err(e) = self.edge_ends() {
                errors.push(e.to_string());
            }
        }
        ValidationReport {
            errors,
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            cells: self.cells.len(),
        }
    }

    /// `(vertex, slot)` pairs referencing each edge, tail end first.
    fn edge_ends(&self) -> Result<Vec<[(usize, usize); 2]>> {
        let mut ends: Vec<Vec<(usize, usize, bool)>> = vec![vec![]; self.edges.len()];
        let index: HashMap<&str, usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        for (vi, v) in self.vertices.iter().enumerate() {
            for j in 0..4 {
                let s = v.edge_slot(j);
                // An end is the head when the global direction points into the vertex.
                let head = locally_incoming(v.parity, j) == (s.dir > 0);
                ends[index[s.edge.as_str()]].push((vi, j, head));
            }
        }
        ends.into_iter()
            .enumerate()
            .map(|(ei, e)| match e[..] {
                [(v1, j1, false), (v2, j2, true)] => Ok([(v1, j1), (v2, j2)]),
                [(v1, j1, true), (v2, j2, false)] => Ok([(v2, j2), (v1, j1)]),
                _ => Err(Error::Validation(format!(
                    "edge {}: direction flags do not give one tail and one head",
                    self.edges[ei].id
                ))),
            })
            .collect()
    }

    /// The integer view. Fails if the spine is invalid.
    pub fn topology(&self) -> Result<Topology> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.errors.join("; ")));
        }
        let cell: HashMap<&str, usize> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        let edge: HashMap<&str, usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.as_str(), i))
            .collect();
        let incidences = self
            .edges
            .iter()
            .map(|e| {
                let f = |i: usize| (cell[e.incidences[i].cell.as_str()], e.incidences[i].exp);
                [f(0), f(1), f(2)]
            })
            .collect();
        let cell_slots = self
            .vertices
            .iter()
            .map(|v| {
                let mut out = [(0, 1); 6];
                for (s, o) in out.iter_mut().enumerate() {
                    let cs = v.cell_slot(s);
                    *o = (cell[cs.cell.as_str()], cs.exp);
                }
                out
            })
            .collect();
        let edge_slots = self
            .vertices
            .iter()
            .map(|v| {
                let mut out = [(0, 1); 4];
                for (j, o) in out.iter_mut().enumerate() {
                    let es = v.edge_slot(j);
                    *o = (edge[es.edge.as_str()], es.dir);
                }
                out
            })
            .collect();
        Ok(Topology {
            num_cells: self.cells.len(),
            incidences,
            ends: self.edge_ends()?,
            parity: self.vertices.iter().map(|v| v.parity).collect(),
            cell_slots,
            edge_slots,
        })
    }
}
