//! Relabelling operations that describe the same polyhedron differently.

use std::collections::BTreeMap;

use super::gluing::perm_sign;
use super::{locally_incoming, slot_of, Spine, CELL_SLOTS, EDGE_SLOTS, SLOT_PAIRS};
use crate::error::{Error, Result};

impl Spine {
    /// Reverses the global orientation of one cell.
    pub fn reverse_cell(&self, cell: &str) -> Result<Spine> {
        if self.cell_index(cell).is_none() {
            return Err(Error::Argument(format!("unknown cell {cell}")));
        }
        let mut s = self.clone();
        for e in &mut s.edges {
            for i in e.incidences.iter_mut().filter(|i| i.cell == cell) {
                i.exp = -i.exp;
            }
        }
        for v in &mut s.vertices {
            for cs in v.cell_slots.values_mut().filter(|cs| cs.cell == cell) {
                cs.exp = -cs.exp;
            }
        }
        Ok(s)
    }

    /// Reverses the global orientation of one triple line.
    pub fn reverse_edge(&self, edge: &str) -> Result<Spine> {
        let k = self
            .edge_index(edge)
            .ok_or_else(|| Error::Argument(format!("unknown edge {edge}")))?;
        let mut s = self.clone();
        let inc = &mut s.edges[k].incidences;
        inc.reverse();
        for i in inc.iter_mut() {
            i.exp = -i.exp;
        }
        for v in &mut s.vertices {
            for es in v.edge_slots.values_mut().filter(|es| es.edge == edge) {
                es.dir = -es.dir;
            }
        }
        Ok(s)
    }

    /// Renumbers the balls at one vertex: new ball `i` is old ball `tau[i]`.
    pub fn reorder_vertex(&self, vertex: &str, tau: [usize; 4]) -> Result<Spine> {
        let k = self
            .vertex_index(vertex)
            .ok_or_else(|| Error::Argument(format!("unknown vertex {vertex}")))?;
        let mut seen = [false; 4];
        for &t in &tau {
            if t > 3 || seen[t] {
                return Err(Error::Argument(format!("{tau:?} is not a permutation of 0..4")));
            }
            seen[t] = true;
        }
        let mut s = self.clone();
        let old = &self.vertices[k];
        let v = &mut s.vertices[k];
        v.parity = old.parity * perm_sign(&tau);
        let mut cell_slots = BTreeMap::new();
        for (n, &(i, j)) in SLOT_PAIRS.iter().enumerate() {
            let (oi, oj) = (tau[i], tau[j]);
            let mut cs = old.cell_slot(slot_of(oi, oj)).clone();
            if oi > oj {
                cs.exp = -cs.exp;
            }
            cell_slots.insert(CELL_SLOTS[n].to_string(), cs);
        }
        let mut edge_slots = BTreeMap::new();
        for (i, name) in EDGE_SLOTS.iter().enumerate() {
            let mut es = old.edge_slot(tau[i]).clone();
            if locally_incoming(old.parity, tau[i]) != locally_incoming(v.parity, i) {
                es.dir = -es.dir;
            }
            edge_slots.insert(name.to_string(), es);
        }
        v.cell_slots = cell_slots;
        v.edge_slots = edge_slots;
        Ok(s)
    }
}
