//! The dual triangulation view of a spine.
//!
//! Each true vertex is an ordered tetrahedron, each triple line a pair of
//! glued faces and each 2-cell a class of tetrahedron edges. Moves rewrite
//! the gluing and rebuild the encoding from it; labels carry cell and edge
//! ids (and orientations) across the rewrite.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{
    locally_incoming, slot_of, CellSlot, EdgeRecord, EdgeSlot, Incidence, Spine, VertexRecord, CELL_SLOTS,
    EDGE_SLOTS, SLOT_PAIRS,
};
use crate::error::{Error, Result};

/// All permutations of three items.
const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn perm_sign(p: &[usize]) -> i8 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn invert(p: &[usize; 4]) -> [usize; 4] {
    let mut q = [0; 4];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// The three vertices of face `f`, ascending.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Glue {
    pub tet: usize,
    pub face: usize,
    /// Local vertex `i` of this tetrahedron is local vertex `perm[i]` of the other.
    pub perm: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLabel {
    pub edge: String,
    pub head: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tet {
    pub id: Option<String>,
    pub parity: i8,
    pub faces: [Option<Glue>; 4],
    /// `(cell id, exp)` per sheet slot, relative to the slot's low-to-high direction.
    pub cell_labels: [Option<(String, i8)>; 6],
    pub face_labels: [Option<FaceLabel>; 4],
}

impl Tet {
    pub fn new(parity: i8) -> Self {
        Tet {
            id: None,
            parity,
            faces: [None; 4],
            cell_labels: Default::default(),
            face_labels: Default::default(),
        }
    }
}

/// Where each output cell came from when a gluing is turned into a spine.
#[derive(Clone, Debug)]
pub struct Built {
    pub spine: Spine,
    /// Per output cell: the label it inherited, with the relative orientation.
    pub origin: Vec<Option<(String, i8)>>,
    /// Per output cell: `(tet, slot, exp)` of one representative corner.
    pub corners: Vec<Vec<(usize, usize, i8)>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gluing {
    pub tets: Vec<Tet>,
}

// Signed union-find over corners (tet, slot).
struct SignedUf {
    parent: Vec<usize>,
    rel: Vec<i8>,
}

impl SignedUf {
    fn new(n: usize) -> Self {
        SignedUf {
            parent: (0..n).collect(),
            rel: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let p = self.parent[x];
        let (r, s) = self.find(p);
        self.parent[x] = r;
        self.rel[x] *= s;
        (r, self.rel[x])
    }

    // orient(x) = rel * orient(y); returns false on a contradiction.
    fn union(&mut self, x: usize, y: usize, rel: i8) -> bool {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            return sx == rel * sy;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.rel[hi] = sx * rel * sy;
        true
    }
}

fn fresh(prefix: &str, used: &mut HashSet<String>) -> String {
    let mut n = 1;
    loop {
        let id = format!("{prefix}{n}");
        if used.insert(id.clone()) {
            return id;
        }
        n += 1;
    }
}

impl Gluing {
    /// Glues face `f` of `t` to face `f2` of `t2`, in both directions.
    pub fn glue(&mut self, t: usize, f: usize, t2: usize, f2: usize, perm: [usize; 4]) {
        self.tets[t].faces[f] = Some(Glue { tet: t2, face: f2, perm });
        self.tets[t2].faces[f2] = Some(Glue {
            tet: t,
            face: f,
            perm: invert(&perm),
        });
    }

    /// A closed, consistently oriented gluing built from face pairs.
    pub fn from_pairs(parities: &[i8], pairs: &[((usize, usize), (usize, usize), [usize; 4])]) -> Result<Self> {
        let mut g = Gluing {
            tets: parities.iter().map(|&p| Tet::new(p)).collect(),
        };
        for &((t, f), (t2, f2), perm) in pairs {
            g.glue(t, f, t2, f2, perm);
        }
        g.check()?;
        Ok(g)
    }

    /// Every face glued, gluings mutually inverse and orientation-reversing.
    pub fn check(&self) -> Result<()> {
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let g = tet.faces[f]
                    .ok_or_else(|| Error::Encoding(format!("face {f} of tetrahedron {t} is not glued")))?;
                if g.perm[f] != g.face || (g.tet, g.face) == (t, f) {
                    return Err(Error::Encoding(format!("bad gluing at face {f} of tetrahedron {t}")));
                }
                let back = self.tets[g.tet].faces[g.face]
                    .ok_or_else(|| Error::Encoding(format!("one-sided gluing at tetrahedron {t}")))?;
                if (back.tet, back.face, back.perm) != (t, f, invert(&g.perm)) {
                    return Err(Error::Encoding(format!("asymmetric gluing at face {f} of tetrahedron {t}")));
                }
                if perm_sign(&g.perm) != -tet.parity * self.tets[g.tet].parity {
                    return Err(Error::Encoding(format!(
                        "gluing at face {f} of tetrahedron {t} does not respect orientations"
                    )));
                }
            }
        }
        Ok(())
    }

    fn corner_classes(&self) -> Result<SignedUf> {
        let mut uf = SignedUf::new(6 * self.tets.len());
        for (t, tet) in self.tets.iter().enumerate() {
            for (f, g) in tet.faces.iter().enumerate() {
                let g = g.expect("checked");
                let fv = face_vertices(f);
                for (a, b) in [(fv[0], fv[1]), (fv[1], fv[2]), (fv[0], fv[2])] {
                    let (x, y) = (g.perm[a], g.perm[b]);
                    let rel = if x < y { 1 } else { -1 };
                    if !uf.union(6 * t + slot_of(a, b), 6 * g.tet + slot_of(x, y), rel) {
                        return Err(Error::Encoding("tetrahedron edges are glued with both orientations".into()));
                    }
                }
            }
        }
        Ok(uf)
    }

    /// Rebuilds the slot encoding. Labelled ids are kept where possible; ids
    /// listed in `cell_order` / `edge_order` come first, in that order.
    pub fn to_spine(&self, name: &str, cell_order: &[String], edge_order: &[String]) -> Result<Built> {
        self.check()?;
        let n = self.tets.len();
        let mut uf = self.corner_classes()?;

        let mut used_cells: HashSet<String> = cell_order.iter().cloned().collect();
        let mut used_edges: HashSet<String> = edge_order.iter().cloned().collect();
        let mut used_verts: HashSet<String> = HashSet::new();
        for tet in &self.tets {
            used_cells.extend(tet.cell_labels.iter().flatten().map(|l| l.0.clone()));
            used_edges.extend(tet.face_labels.iter().flatten().map(|l| l.edge.clone()));
            used_verts.extend(tet.id.iter().cloned());
        }

        // Classes in order of their first corner.
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut members: Vec<Vec<(usize, i8)>> = vec![];
        for x in 0..6 * n {
            let (r, s) = uf.find(x);
            let c = *class_of_root.entry(r).or_insert_with(|| {
                members.push(vec![]);
                members.len() - 1
            });
            members[c].push((x, s));
        }

        // Resolve ids: (id, orientation of the class root relative to the cell).
        let mut taken: HashSet<String> = HashSet::new();
        let mut ids: Vec<(String, i8)> = vec![];
        let mut origin: Vec<Option<(String, i8)>> = vec![];
        for m in &members {
            let mut label: Option<(String, i8)> = None;
            for &(x, o) in m {
                if let Some((id, exp)) = &self.tets[x / 6].cell_labels[x % 6] {
                    let implied = (id.clone(), exp * o);
                    match &label {
                        None => label = Some(implied),
                        Some(l) if *l == implied => {}
                        Some(l) => {
                            return Err(Error::Encoding(format!(
                                "cell labels {} and {} meet in one class",
                                l.0, implied.0
                            )))
                        }
                    }
                }
            }
            match label {
                Some((id, s)) if !taken.contains(&id) => {
                    taken.insert(id.clone());
                    origin.push(Some((id.clone(), 1)));
                    ids.push((id, s));
                }
                Some((id, s)) => {
                    let new = fresh("c", &mut used_cells);
                    origin.push(Some((id, 1)));
                    ids.push((new, s));
                }
                None => {
                    origin.push(None);
                    ids.push((fresh("c", &mut used_cells), 1));
                }
            }
        }

        // Output order of cells.
        let pos: HashMap<&String, usize> = cell_order.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by_key(|&c| (pos.get(&ids[c].0).copied().unwrap_or(usize::MAX), c));
        let mut out_index = vec![0; members.len()];
        for (i, &c) in order.iter().enumerate() {
            out_index[c] = i;
        }

        // Sheet labels per corner.
        let mut corner_cell: Vec<(usize, i8)> = vec![(0, 1); 6 * n];
        for (c, m) in members.iter().enumerate() {
            for &(x, o) in m {
                corner_cell[x] = (out_index[c], o * ids[c].1);
            }
        }

        // Triple lines.
        let mut edges: Vec<(String, (usize, usize), (usize, usize))> = vec![]; // id, tail, head
        let mut edge_of_face: HashMap<(usize, usize), usize> = HashMap::new();
        let mut taken_edges: HashSet<String> = HashSet::new();
        for t in 0..n {
            for f in 0..4 {
                let g = self.tets[t].faces[f].expect("checked");
                if (g.tet, g.face) < (t, f) {
                    continue;
                }
                let a = self.tets[t].face_labels[f].as_ref();
                let b = self.tets[g.tet].face_labels[g.face].as_ref();
                let (id, a_head) = match (a, b) {
                    (Some(l), _) if !taken_edges.contains(&l.edge) => (l.edge.clone(), l.head),
                    (_, Some(l)) if !taken_edges.contains(&l.edge) => (l.edge.clone(), !l.head),
                    _ => (
                        fresh("e", &mut used_edges),
                        locally_incoming(self.tets[t].parity, f),
                    ),
                };
                taken_edges.insert(id.clone());
                let (tail, head) = if a_head {
                    ((g.tet, g.face), (t, f))
                } else {
                    ((t, f), (g.tet, g.face))
                };
                edge_of_face.insert((t, f), edges.len());
                edge_of_face.insert((g.tet, g.face), edges.len());
                edges.push((id, tail, head));
            }
        }
        let epos: HashMap<&String, usize> = edge_order.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut eorder: Vec<usize> = (0..edges.len()).collect();
        eorder.sort_by_key(|&e| (epos.get(&edges[e].0).copied().unwrap_or(usize::MAX), e));

        let cell_names: Vec<String> = order.iter().map(|&c| ids[c].0.clone()).collect();
        let sheet = |t: usize, a: usize, b: usize| -> (usize, i8) {
            let (c, e) = corner_cell[6 * t + slot_of(a, b)];
            (c, if a < b { e } else { -e })
        };
        let edge_records: Vec<EdgeRecord> = eorder
            .iter()
            .map(|&e| {
                let (id, _, (h, j)) = &edges[e];
                let [p, q, r] = face_vertices(*j);
                let inc = |(c, e): (usize, i8)| Incidence {
                    cell: cell_names[c].clone(),
                    exp: e,
                };
                let (pr_c, pr_e) = sheet(*h, p, r);
                EdgeRecord {
                    id: id.clone(),
                    incidences: vec![inc(sheet(*h, p, q)), inc(sheet(*h, q, r)), inc((pr_c, -pr_e))],
                }
            })
            .collect();

        let mut vertices = vec![];
        for (t, tet) in self.tets.iter().enumerate() {
            let id = match &tet.id {
                Some(id) => id.clone(),
                None => fresh("v", &mut used_verts),
            };
            let mut cell_slots = BTreeMap::new();
            for (s, &(a, b)) in SLOT_PAIRS.iter().enumerate() {
                let (c, e) = sheet(t, a, b);
                cell_slots.insert(
                    CELL_SLOTS[s].to_string(),
                    CellSlot {
                        cell: cell_names[c].clone(),
                        exp: e,
                    },
                );
            }
            let mut edge_slots = BTreeMap::new();
            for f in 0..4 {
                let e = edge_of_face[&(t, f)];
                let is_head = edges[e].2 == (t, f);
                let dir = if locally_incoming(tet.parity, f) == is_head { 1 } else { -1 };
                edge_slots.insert(
                    EDGE_SLOTS[f].to_string(),
                    EdgeSlot {
                        edge: edges[e].0.clone(),
                        dir,
                    },
                );
            }
            vertices.push(VertexRecord {
                id,
                parity: tet.parity,
                cell_slots,
                edge_slots,
            });
        }

        let mut corners = vec![vec![]; members.len()];
        for (c, m) in members.iter().enumerate() {
            for &(x, _) in m {
                let (_, e) = corner_cell[x];
                corners[out_index[c]].push((x / 6, x % 6, e));
            }
        }
        let spine = Spine {
            name: name.to_string(),
            cells: cell_names,
            edges: edge_records,
            vertices,
        };
        let origin = order.iter().map(|&c| origin[c].clone()).collect();
        Ok(Built { spine, origin, corners })
    }

    /// The gluing dual to a valid spine, with all ids as labels.
    ///
    /// The face identification across each triple line is recovered from the
    /// sheet labels; it must be unique.
    pub fn from_spine(s: &Spine) -> Result<Gluing> {
        let topo = s.topology()?;
        let mut g = Gluing {
            tets: s
                .vertices
                .iter()
                .map(|v| {
                    let mut t = Tet::new(v.parity);
                    t.id = Some(v.id.clone());
                    for k in 0..6 {
                        let cs = v.cell_slot(k);
                        t.cell_labels[k] = Some((cs.cell.clone(), cs.exp));
                    }
                    t
                })
                .collect(),
        };
        for (e, ends) in topo.ends.iter().enumerate() {
            let [(v1, j1), (v2, j2)] = *ends;
            g.tets[v1].face_labels[j1] = Some(FaceLabel {
                edge: s.edges[e].id.clone(),
                head: false,
            });
            g.tets[v2].face_labels[j2] = Some(FaceLabel {
                edge: s.edges[e].id.clone(),
                head: true,
            });
            let f1 = face_vertices(j1);
            let f2 = face_vertices(j2);
            let want = -topo.parity[v1] * topo.parity[v2];
            let directed = |v: usize, a: usize, b: usize| {
                let (c, e) = topo.cell_slots[v][slot_of(a, b)];
                (c, if a < b { e } else { -e })
            };
            let mut found = vec![];
            for sigma in PERMS3 {
                let mut perm = [0; 4];
                perm[j1] = j2;
                for i in 0..3 {
                    perm[f1[i]] = f2[sigma[i]];
                }
                if perm_sign(&perm) != want {
                    continue;
                }
                let ok = [(0, 1), (1, 2), (0, 2)].iter().all(|&(x, y)| {
                    let (a, b) = (f1[x], f1[y]);
                    directed(v1, a, b) == directed(v2, perm[a], perm[b])
                });
                if ok {
                    found.push(perm);
                }
            }
            match found[..] {
                [perm] => g.glue(v1, j1, v2, j2, perm),
                [] => {
                    return Err(Error::Encoding(format!(
                        "edge {}: the sheets at its two ends do not match",
                        s.edges[e].id
                    )))
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "edge {}: the face identification is not determined by the encoding",
                        s.edges[e].id
                    )))
                }
            }
        }
        g.check()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, CATALOG};
    use super::*;

    #[test]
    fn perm_helpers() {
        assert_eq!(perm_sign(&[1, 0, 2, 3]), -1);
        assert_eq!(perm_sign(&[1, 2, 3, 0]), -1);
        assert_eq!(invert(&[2, 0, 3, 1]), [1, 3, 0, 2]);
        assert_eq!(face_vertices(2), [0, 1, 3]);
    }

    #[test]
    fn catalog_round_trips_through_gluings() {
        for name in CATALOG {
            let s = catalog(name).unwrap();
            let g = Gluing::from_spine(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
            let edge_ids: Vec<String> = s.edges.iter().map(|e| e.id.clone()).collect();
            let back = g.to_spine(&s.name, &s.cells, &edge_ids).unwrap().spine;
            assert_eq!(back, s, "{name}");
        }
    }

    #[test]
    fn non_orientable_gluing_is_rejected() {
        let r = Gluing::from_pairs(&[1], &[((0, 0), (0, 1), [1, 0, 2, 3]), ((0, 2), (0, 3), [1, 0, 3, 2])]);
        assert!(r.is_err());
    }
}
