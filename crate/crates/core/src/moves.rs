//! Forward T- and L-moves with the induced bijection on colourings.
//!
//! Both moves are carried out on the dual triangulation: a T-move is the
//! 2-3 move across the face dual to a triple line, an L-move is the 0-2 move
//! that opens two faces around a tetrahedron edge and inserts a pillow of two
//! tetrahedra. Cells keep their ids and orientations wherever the rewrite
//! leaves them intact.

use std::collections::HashMap;

use crate::algebra::FiniteGroup;
use crate::colouring::{is_colouring, Colouring};
use crate::error::{Error, Result};
use crate::spine::gluing::{face_vertices, invert, Built, Tet};
use crate::spine::{slot_of, Gluing, Spine};

/// A product of signed old cells, freely reduced.
pub type Word = Vec<(usize, i8)>;

#[derive(Clone, Debug)]
pub struct MoveResult {
    pub spine_before: Spine,
    pub spine_after: Spine,
    /// Colour of each new cell as a word in the old cells.
    pub transport: Vec<Word>,
}

impl MoveResult {
    /// New cells that did not exist before the move.
    pub fn new_cells(&self) -> Vec<&str> {
        self.spine_after
            .cells
            .iter()
            .filter(|c| !self.spine_before.cells.contains(c))
            .map(String::as_str)
            .collect()
    }
}

fn reduce(mut w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for x in w.drain(..) {
        match out.last() {
            Some(&(c, e)) if c == x.0 && e == -x.1 => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

fn mul(a: &Word, b: &Word) -> Word {
    reduce(a.iter().chain(b).copied().collect())
}

fn inv(a: &Word) -> Word {
    a.iter().rev().map(|&(c, e)| (c, -e)).collect()
}

/// Expresses every cell of the rebuilt spine in the old cells. Inherited
/// cells map to their origin; new ones are solved from the face relations.
fn transport_words(before: &Spine, built: &Built) -> Result<Vec<Word>> {
    let mut words: Vec<Option<Word>> = built
        .origin
        .iter()
        .map(|o| match o {
            Some((id, e)) => before
                .cell_index(id)
                .map(|c| Some(vec![(c, *e)]))
                .ok_or_else(|| Error::Encoding(format!("label {id} is not an old cell"))),
            None => Ok(None),
        })
        .collect::<Result<_>>()?;
    let topo = built.spine.topology()?;
    let mut relations = vec![];
    for slots in &topo.cell_slots {
        for f in 0..4 {
            let [p, q, r] = face_vertices(f);
            let (c1, e1) = slots[slot_of(p, q)];
            let (c2, e2) = slots[slot_of(q, r)];
            let (c3, e3) = slots[slot_of(p, r)];
            relations.push([(c1, e1), (c2, e2), (c3, -e3)]);
        }
    }
    loop {
        let mut progress = false;
        for rel in &relations {
            let unknown: Vec<usize> = (0..3).filter(|&i| words[rel[i].0].is_none()).collect();
            if unknown.len() != 1 || rel.iter().filter(|x| x.0 == rel[unknown[0]].0).count() != 1 {
                continue;
            }
            let i = unknown[0];
            let w = |k: usize| {
                let (c, e) = rel[k % 3];
                let base = words[c].as_ref().expect("known");
                if e > 0 {
                    base.clone()
                } else {
                    inv(base)
                }
            };
            // r_i r_{i+1} r_{i+2} = 1 cyclically.
            let ri = inv(&mul(&w(i + 1), &w(i + 2)));
            let (c, e) = rel[i];
            words[c] = Some(if e > 0 { ri } else { inv(&ri) });
            progress = true;
        }
        if !progress {
            break;
        }
    }
    words
        .into_iter()
        .enumerate()
        .map(|(c, w)| {
            w.ok_or_else(|| {
                Error::Encoding(format!("colour of new cell {} is not determined", built.spine.cells[c]))
            })
        })
        .collect()
}

fn finish(before: &Spine, g: &Gluing) -> Result<MoveResult> {
    let edges: Vec<String> = before.edges.iter().map(|e| e.id.clone()).collect();
    let built = g.to_spine(&before.name, &before.cells, &edges)?;
    let transport = transport_words(before, &built)?;
    Ok(MoveResult {
        spine_before: before.clone(),
        spine_after: built.spine,
        transport,
    })
}

/// Triple lines whose ends lie at two distinct vertices.
pub fn t_sites(s: &Spine) -> Result<Vec<String>> {
    let topo = s.topology()?;
    Ok(topo
        .ends
        .iter()
        .enumerate()
        .filter(|(_, [(u, _), (w, _)])| u != w)
        .map(|(e, _)| s.edges[e].id.clone())
        .collect())
}

fn det_sign(c: [[i64; 3]; 4]) -> i8 {
    let d = |i: usize| [c[i][0] - c[0][0], c[i][1] - c[0][1], c[i][2] - c[0][2]];
    let (x, y, z) = (d(1), d(2), d(3));
    let det = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) + x[2] * (y[0] * z[1] - y[1] * z[0]);
    assert!(det != 0, "degenerate tetrahedron");
    det.signum() as i8
}

/// The T-move along triple line `edge`: its two end vertices become three.
pub fn t_move(s: &Spine, edge: &str) -> Result<MoveResult> {
    let e = s
        .edge_index(edge)
        .ok_or_else(|| Error::arg(format!("unknown edge {edge}")))?;
    let topo = s.topology()?;
    let [(u, j), (w, k)] = topo.ends[e];
    if u == w {
        return Err(Error::Precondition(format!(
            "edge {edge} has both ends at vertex {}; a T-move needs two distinct vertices",
            s.vertices[u].id
        )));
    }
    let g = Gluing::from_spine(s)?;
    let phi = g.tets[u].faces[j].expect("closed").perm;

    // Points 0..4 are the local vertices of u, point 4 is the far vertex of w.
    const W: usize = 4;
    let fv = face_vertices(j);
    let mut coord = [[0i64; 3]; 5];
    coord[fv[0]] = [1, 0, 0];
    coord[fv[1]] = [0, 1, 0];
    coord[fv[2]] = [-1, -1, 0];
    coord[j] = [0, 0, 1];
    coord[W] = [0, 0, -1];
    let det = |p: [usize; 4]| det_sign(p.map(|i| coord[i]));
    let orient = g.tets[u].parity * det([0, 1, 2, 3]);
    let phi_inv = invert(&phi);
    let w_points: [usize; 4] = std::array::from_fn(|i| if i == k { W } else { phi_inv[i] });
    if g.tets[w].parity != orient * det(w_points) {
        return Err(Error::Encoding(format!("edge {edge}: gluing reverses orientation")));
    }
    let wl = |p: usize| if p == W { k } else { phi[p] };

    let pairs = [(fv[0], fv[1]), (fv[0], fv[2]), (fv[1], fv[2])];
    let thirds = [fv[2], fv[1], fv[0]];
    let slots = [u, w, g.tets.len()];
    let points: [[usize; 4]; 3] = pairs.map(|(p, q)| [j, W, p, q]);

    let mut out = g.clone();
    out.tets.push(Tet::new(1));
    // Old exterior face -> (new tet, new face, new local -> old local).
    let mut repl: HashMap<(usize, usize), (usize, usize, [usize; 4])> = HashMap::new();
    for m in 0..3 {
        let pts = points[m];
        let r = thirds[m];
        let mut tet = Tet::new(orient * det(pts));
        for (sl, &(a, b)) in crate::spine::SLOT_PAIRS.iter().enumerate() {
            let (pa, pb) = (pts[a], pts[b]);
            tet.cell_labels[sl] = if pa != W && pb != W {
                g.tets[u].cell_labels[slot_of(pa, pb)]
                    .clone()
                    .map(|(c, x)| (c, if pa > pb { -x } else { x }))
            } else if pa != j && pb != j {
                let (x, y) = (wl(pa), wl(pb));
                g.tets[w].cell_labels[slot_of(x, y)]
                    .clone()
                    .map(|(c, e)| (c, if x > y { -e } else { e }))
            } else {
                None
            };
        }
        tet.face_labels[0] = g.tets[w].face_labels[phi[r]].clone();
        tet.face_labels[1] = g.tets[u].face_labels[r].clone();
        tet.id = match m {
            0 => g.tets[u].id.clone(),
            1 => g.tets[w].id.clone(),
            _ => None,
        };
        out.tets[slots[m]] = tet;
        let s1: [usize; 4] = std::array::from_fn(|i| if i == 1 { r } else { pts[i] });
        repl.insert((u, r), (slots[m], 1, s1));
        let s0: [usize; 4] = std::array::from_fn(|i| if i == 0 { phi[r] } else { wl(pts[i]) });
        repl.insert((w, phi[r]), (slots[m], 0, s0));
    }
    for (&(ot, of), &(nt, nf, sig)) in &repl {
        let old = g.tets[ot].faces[of].expect("closed");
        let mut perm: [usize; 4] = std::array::from_fn(|i| old.perm[sig[i]]);
        let (t2, f2) = match repl.get(&(old.tet, old.face)) {
            Some(&(nt2, nf2, sig2)) => {
                let back = invert(&sig2);
                perm = perm.map(|x| back[x]);
                (nt2, nf2)
            }
            None => (old.tet, old.face),
        };
        out.glue(nt, nf, t2, f2, perm);
    }
    // Internal faces {U, W, X} shared by the two new tetrahedra containing X.
    for m1 in 0..3 {
        for m2 in m1 + 1..3 {
            let (a, b) = (points[m1], points[m2]);
            let x = *a[2..].iter().find(|p| b[2..].contains(p)).expect("shared point");
            let l1 = a.iter().position(|&p| p == x).unwrap();
            let l2 = b.iter().position(|&p| p == x).unwrap();
            let (f1, f2) = (5 - l1, 5 - l2);
            let mut perm = [0, 1, 0, 0];
            perm[l1] = l2;
            perm[f1] = f2;
            out.glue(slots[m1], f1, slots[m2], f2, perm);
        }
    }
    finish(s, &out)
}

/// One step of the walk around a tetrahedron edge.
#[derive(Clone, Copy, Debug)]
struct Step {
    tet: usize,
    x: usize,
    y: usize,
    entry: usize,
    exit: usize,
}

fn walk(s: &Spine, g: &Gluing, cell: usize) -> Result<Vec<Step>> {
    let topo = s.topology()?;
    let corners: Vec<(usize, usize)> = (0..topo.cell_slots.len())
        .flat_map(|v| (0..6).map(move |sl| (v, sl)))
        .filter(|&(v, sl)| topo.cell_slots[v][sl].0 == cell)
        .collect();
    let &(t0, sl0) = corners.first().ok_or_else(|| Error::Encoding("cell has no corner".into()))?;
    let (x0, y0) = crate::spine::SLOT_PAIRS[sl0];
    let others: Vec<usize> = (0..4).filter(|&i| i != x0 && i != y0).collect();
    let start = Step {
        tet: t0,
        x: x0,
        y: y0,
        entry: others[1],
        exit: others[0],
    };
    let mut steps = vec![start];
    loop {
        let cur = *steps.last().unwrap();
        let gl = g.tets[cur.tet].faces[cur.exit].expect("closed");
        let (x, y, entry) = (gl.perm[cur.x], gl.perm[cur.y], gl.face);
        let exit = (0..4).find(|&i| i != x && i != y && i != entry).unwrap();
        let next = Step {
            tet: gl.tet,
            x,
            y,
            entry,
            exit,
        };
        if (next.tet, next.x, next.y, next.entry) == (t0, x0, y0, start.entry) {
            break;
        }
        steps.push(next);
        if steps.len() > corners.len() {
            return Err(Error::Encoding(format!("cell {} is not a disc around one edge", s.cells[cell])));
        }
    }
    if steps.len() != corners.len() {
        return Err(Error::Encoding(format!("cell {} is not a disc around one edge", s.cells[cell])));
    }
    Ok(steps)
}

fn side_pair(steps: &[Step], i: usize) -> [(usize, usize); 2] {
    let n = steps.len();
    let a = (steps[i].tet, steps[i].exit);
    let b = (steps[(i + 1) % n].tet, steps[(i + 1) % n].entry);
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// L-move sites `(cell, (i, j))` with `i < j`. Positions count the triple
/// lines met when walking once around the boundary of the cell.
pub fn l_sites(s: &Spine) -> Result<Vec<(String, (usize, usize))>> {
    let g = Gluing::from_spine(s)?;
    let mut out = vec![];
    for (c, id) in s.cells.iter().enumerate() {
        let steps = walk(s, &g, c)?;
        for i in 0..steps.len() {
            for j in i + 1..steps.len() {
                if side_pair(&steps, i) != side_pair(&steps, j) {
                    out.push((id.clone(), (i, j)));
                }
            }
        }
    }
    Ok(out)
}

/// The L-move on `cell` between the boundary triple lines at positions `i`
/// and `j`; it adds two vertices.
pub fn l_move(s: &Spine, cell: &str, (i, j): (usize, usize)) -> Result<MoveResult> {
    let c = s
        .cell_index(cell)
        .ok_or_else(|| Error::arg(format!("unknown cell {cell}")))?;
    let g = Gluing::from_spine(s)?;
    let steps = walk(s, &g, c)?;
    let n = steps.len();
    if i >= n || j >= n || i == j {
        return Err(Error::Precondition(format!(
            "cell {cell} meets {n} triple-line segments; positions must be distinct and below {n}"
        )));
    }
    if side_pair(&steps, i) == side_pair(&steps, j) {
        return Err(Error::Precondition(format!(
            "positions {i} and {j} of cell {cell} are the same triple line"
        )));
    }
    let topo = s.topology()?;
    // Oriented like the cell: (tail, head) of the edge in a tetrahedron.
    let tail_head = |st: &Step| {
        let (_, e) = topo.cell_slots[st.tet][slot_of(st.x, st.y)];
        let forward = if st.x < st.y { e } else { -e };
        if forward > 0 {
            (st.x, st.y)
        } else {
            (st.y, st.x)
        }
    };
    let side_exit = |st: &Step| (st.tet, st.exit, tail_head(st));
    let side_entry = |st: &Step| (st.tet, st.entry, tail_head(st));
    let (si, si1, sj, sj1) = (&steps[i], &steps[(i + 1) % n], &steps[j], &steps[(j + 1) % n]);
    // Sides facing the wedge from position i forward to j, then the rest.
    let w1 = [side_entry(si1), side_exit(sj)];
    let w2 = [side_exit(si), side_entry(sj1)];

    let mut out = g.clone();
    let mut parities = vec![];
    for (sides, idx) in [(w1, out.tets.len()), (w2, out.tets.len() + 1)] {
        out.tets.push(Tet::new(1));
        let mut implied = vec![];
        for (face, (t, f, (a, b))) in [3, 2].into_iter().zip(sides) {
            let third = (0..4).find(|&v| v != a && v != b && v != f).unwrap();
            let mut perm = [a, b, 0, 0];
            perm[5 - face] = third;
            perm[face] = f;
            implied.push(-crate::spine::gluing::perm_sign(&perm) * g.tets[t].parity);
            out.glue(idx, face, t, f, perm);
        }
        if implied[0] != implied[1] {
            return Err(Error::Encoding(format!("cell {cell}: inconsistent orientations at the site")));
        }
        out.tets[idx].parity = implied[0];
        parities.push(implied[0]);
    }
    if parities[0] != -parities[1] {
        return Err(Error::Encoding(format!("cell {cell}: inconsistent orientations at the site")));
    }
    let (p1, p2) = (out.tets.len() - 2, out.tets.len() - 1);
    out.glue(p1, 0, p2, 0, [0, 1, 2, 3]);
    out.glue(p1, 1, p2, 1, [0, 1, 2, 3]);
    finish(s, &out)
}

/// The colouring of the post-move spine matching `xi`.
pub fn transport_colouring(r: &MoveResult, g: &FiniteGroup, xi: &Colouring) -> Result<Colouring> {
    if !is_colouring(&r.spine_before, xi, g)? {
        return Err(Error::arg("not a colouring of the spine before the move"));
    }
    let values = r
        .transport
        .iter()
        .map(|w| {
            w.iter()
                .fold(g.identity(), |acc, &(c, e)| g.mul(acc, g.pow_sign(xi.values[c], e)))
        })
        .collect();
    Ok(Colouring::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::enumerate_colourings;
    use crate::spine::catalog;

    #[test]
    fn word_reduction() {
        assert_eq!(reduce(vec![(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]), vec![(2, 1)]);
        assert_eq!(inv(&vec![(0, 1), (1, -1)]), vec![(1, 1), (0, -1)]);
    }

    #[test]
    fn t_needs_distinct_vertices() {
        let s = catalog("L41").unwrap();
        assert!(t_sites(&s).unwrap().is_empty());
        assert!(matches!(t_move(&s, "e1"), Err(Error::Precondition(_))));
    }

    #[test]
    fn l_move_on_lens_space() {
        let s = catalog("L41").unwrap();
        let g = FiniteGroup::cyclic(4).unwrap();
        let sites = l_sites(&s).unwrap();
        assert!(!sites.is_empty());
        for (cell, pos) in sites {
            let r = l_move(&s, &cell, pos).unwrap();
            let after = &r.spine_after;
            let rep = after.validate();
            assert!(rep.is_valid());
            assert_eq!(
                (rep.vertices, rep.edges, rep.cells),
                (s.vertices.len() + 2, s.edges.len() + 4, s.cells.len() + 2)
            );
            let before = enumerate_colourings(&s, &g).unwrap();
            let mut image: Vec<Colouring> = before
                .iter()
                .map(|x| transport_colouring(&r, &g, x).unwrap())
                .collect();
            image.sort();
            assert_eq!(image, enumerate_colourings(after, &g).unwrap());
        }
    }

    #[test]
    fn t_move_counts_and_transport() {
        let s = catalog("L41_L").unwrap();
        let g = FiniteGroup::cyclic(4).unwrap();
        for e in t_sites(&s).unwrap() {
            let r = t_move(&s, &e).unwrap();
            let rep = r.spine_after.validate();
            assert!(rep.is_valid());
            assert_eq!(
                (rep.vertices, rep.edges, rep.cells),
                (s.vertices.len() + 1, s.edges.len() + 2, s.cells.len() + 1)
            );
            assert_eq!(r.new_cells().len(), 1);
            let mut image: Vec<Colouring> = enumerate_colourings(&s, &g)
                .unwrap()
                .iter()
                .map(|x| transport_colouring(&r, &g, x).unwrap())
                .collect();
            image.sort();
            assert_eq!(image, enumerate_colourings(&r.spine_after, &g).unwrap());
        }
    }
}
