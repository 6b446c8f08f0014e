//! Colourings of the 2-cells of a spine by a finite group.

use rayon::prelude::*;

use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};
use crate::spine::{Spine, Topology};

/// Colour per cell, indexed like `Spine::cells`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colouring {
    pub values: Vec<usize>,
}

impl Colouring {
    pub fn new(values: Vec<usize>) -> Self {
        Colouring { values }
    }

    pub fn trivial(s: &Spine, g: &FiniteGroup) -> Self {
        Colouring {
            values: vec![g.identity(); s.cells.len()],
        }
    }

    pub fn get(&self, s: &Spine, cell: &str) -> Option<usize> {
        s.cell_index(cell).map(|i| self.values[i])
    }

    /// `c1=2,c2=1`.
    pub fn render(&self, s: &Spine) -> String {
        s.cells
            .iter()
            .zip(&self.values)
            .map(|(c, v)| format!("{c}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Colouring::render`]; every cell must be assigned once.
    pub fn parse(s: &Spine, g: &FiniteGroup, text: &str) -> Result<Self> {
        let mut values = vec![None; s.cells.len()];
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (c, v) = item
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("expected cell=element, got {item:?}")))?;
            let i = s
                .cell_index(c.trim())
                .ok_or_else(|| Error::arg(format!("unknown cell {c}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("bad element {v:?}")))?;
            if v >= g.order() {
                return Err(Error::arg(format!("element {v} is not in {}", g.name())));
            }
            if values[i].replace(v).is_some() {
                return Err(Error::arg(format!("cell {c} assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::arg(format!("cell {} is not assigned", s.cells[i]))))
            .collect::<Result<_>>()?;
        Ok(Colouring { values })
    }

    fn check_shape(&self, s: &Spine, g: &FiniteGroup) -> Result<()> {
        if self.values.len() != s.cells.len() || self.values.iter().any(|&v| v >= g.order()) {
            return Err(Error::arg("colouring does not match the spine and group"));
        }
        Ok(())
    }
}

fn relation_holds(g: &FiniteGroup, inc: &[(usize, i8); 3], values: &[usize]) -> bool {
    let p = inc
        .iter()
        .fold(g.identity(), |acc, &(c, e)| g.mul(acc, g.pow_sign(values[c], e)));
    p == g.identity()
}

/// Whether the signed product around one triple line is trivial.
pub fn edge_holds(s: &Spine, edge: &str, xi: &Colouring, g: &FiniteGroup) -> Result<bool> {
    let k = s
        .edge_index(edge)
        .ok_or_else(|| Error::arg(format!("unknown edge {edge}")))?;
    xi.check_shape(s, g)?;
    let topo = s.topology()?;
    Ok(relation_holds(g, &topo.incidences[k], &xi.values))
}

/// Whether every triple-line relation holds.
pub fn is_colouring(s: &Spine, xi: &Colouring, g: &FiniteGroup) -> Result<bool> {
    xi.check_shape(s, g)?;
    let topo = s.topology()?;
    Ok(topo.incidences.iter().all(|inc| relation_holds(g, inc, &xi.values)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Search {
    /// Backtracking that checks each relation as soon as its cells are set.
    Pruned,
    /// Every assignment in `G^cells`; the testing oracle.
    BruteForce,
}

/// All colourings, sorted lexicographically by the values in cell order.
pub fn enumerate_colourings(s: &Spine, g: &FiniteGroup) -> Result<Vec<Colouring>> {
    enumerate_colourings_with(s, g, Search::Pruned)
}

pub fn enumerate_colourings_with(s: &Spine, g: &FiniteGroup, search: Search) -> Result<Vec<Colouring>> {
    let topo = s.topology()?;
    let mut out = match search {
        Search::Pruned => pruned(&topo, g),
        Search::BruteForce => brute_force(&topo, g)?,
    };
    out.sort();
    Ok(out.into_iter().map(Colouring::new).collect())
}

fn brute_force(topo: &Topology, g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    let n = topo.num_cells;
    let total = (g.order() as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 28)
        .ok_or_else(|| Error::Size(format!("{}^{n} assignments is too many for a full scan", g.order())))?;
    let mut out = vec![];
    let mut values = vec![0; n];
    for mut code in 0..total {
        for v in values.iter_mut().rev() {
            *v = (code % g.order() as u64) as usize;
            code /= g.order() as u64;
        }
        if topo.incidences.iter().all(|inc| relation_holds(g, inc, &values)) {
            out.push(values.clone());
        }
    }
    Ok(out)
}

// Greedy cell order: next is the cell completing the most relations, ties by index.
fn search_plan(topo: &Topology) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = topo.num_cells;
    let mut assigned = vec![false; n];
    let mut done = vec![false; topo.incidences.len()];
    let mut order = vec![];
    let mut checks = vec![];
    for _ in 0..n {
        let completes = |c: usize, assigned: &[bool]| -> Vec<usize> {
            topo.incidences
                .iter()
                .enumerate()
                .filter(|(e, inc)| !done[*e] && inc.iter().all(|&(x, _)| x == c || assigned[x]))
                .map(|(e, _)| e)
                .collect()
        };
        let best = (0..n)
            .filter(|&c| !assigned[c])
            .max_by_key(|&c| (completes(c, &assigned).len(), std::cmp::Reverse(c)))
            .expect("a cell is left");
        let edges = completes(best, &assigned);
        for &e in &edges {
            done[e] = true;
        }
        assigned[best] = true;
        order.push(best);
        checks.push(edges);
    }
    (order, checks)
}

fn pruned(topo: &Topology, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = topo.num_cells;
    if n == 0 {
        return vec![vec![]];
    }
    let (order, checks) = search_plan(topo);
    let dfs = |first: usize| -> Vec<Vec<usize>> {
        let mut out = vec![];
        let mut values = vec![0; n];
        values[order[0]] = first;
        if !checks[0].iter().all(|&e| relation_holds(g, &topo.incidences[e], &values)) {
            return out;
        }
        // Explicit stack of the next element to try at each depth.
        let mut depth = 1;
        let mut next = vec![0usize; n + 1];
        loop {
            if depth == n {
                out.push(values.clone());
                depth -= 1;
                if depth == 0 {
                    break;
                }
                continue;
            }
            if next[depth] == g.order() {
                next[depth] = 0;
                depth -= 1;
                if depth == 0 {
                    break;
                }
                continue;
            }
            values[order[depth]] = next[depth];
            next[depth] += 1;
            if checks[depth].iter().all(|&e| relation_holds(g, &topo.incidences[e], &values)) {
                depth += 1;
            }
        }
        out
    };
    g.elements().into_par_iter().flat_map_iter(dfs).collect()
}

/// Local colours at a vertex: the colours of sheets `01`, `12`, `23` read in
/// the vertex's local orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalColours {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub parity: i8,
}

pub(crate) fn local_colours_at(topo: &Topology, v: usize, xi: &[usize], g: &FiniteGroup) -> std::result::Result<LocalColours, usize> {
    let slot = |s: usize| {
        let (c, e) = topo.cell_slots[v][s];
        g.pow_sign(xi[c], e)
    };
    let (a, b, c) = (slot(0), slot(1), slot(2));
    let ab = g.mul(a, b);
    let bc = g.mul(b, c);
    for (s, want) in [(3, ab), (4, g.mul(ab, c)), (5, bc)] {
        if slot(s) != want {
            return Err(s);
        }
    }
    Ok(LocalColours {
        a,
        b,
        c,
        parity: topo.parity[v],
    })
}

/// Local colours at `vertex`, checking that sheets `02`, `03`, `13` carry
/// `ab`, `abc`, `bc`.
pub fn local_colours(s: &Spine, vertex: &str, xi: &Colouring, g: &FiniteGroup) -> Result<LocalColours> {
    let v = s
        .vertex_index(vertex)
        .ok_or_else(|| Error::arg(format!("unknown vertex {vertex}")))?;
    xi.check_shape(s, g)?;
    let topo = s.topology()?;
    local_colours_at(&topo, v, &xi.values, g).map_err(|slot| {
        Error::Encoding(format!(
            "vertex {vertex}: slot {} does not carry the product of the local colours",
            crate::spine::CELL_SLOTS[slot]
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spine::catalog;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn lens_colourings() {
        let s = catalog("L41").unwrap();
        let got: Vec<Vec<usize>> = enumerate_colourings(&s, &z(4))
            .unwrap()
            .into_iter()
            .map(|c| c.values)
            .collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 2], vec![2, 1], vec![2, 3]]);
        assert_eq!(enumerate_colourings(&s, &z(2)).unwrap().len(), 2);
    }

    #[test]
    fn edge_relations() {
        let s = catalog("L41").unwrap();
        let g = z(4);
        for e in ["e1", "e2"] {
            assert!(edge_holds(&s, e, &Colouring::new(vec![0, 0]), &g).unwrap());
            assert!(edge_holds(&s, e, &Colouring::new(vec![2, 1]), &g).unwrap());
        }
        let bad = Colouring::new(vec![1, 1]);
        assert!(!is_colouring(&s, &bad, &g).unwrap());
        assert!(edge_holds(&s, "e9", &bad, &g).is_err());
    }

    #[test]
    fn lens_local_colours() {
        let s = catalog("L41").unwrap();
        let g = z(4);
        let lc = |v: Vec<usize>| {
            let l = local_colours(&s, "v1", &Colouring::new(v), &g).unwrap();
            (l.a, l.b, l.c, l.parity)
        };
        assert_eq!(lc(vec![2, 1]), (1, 2, 3, 1));
        assert_eq!(lc(vec![0, 0]), (0, 0, 0, 1));
        assert_eq!(lc(vec![2, 3]), (3, 2, 1, 1));
        assert!(matches!(
            local_colours(&s, "v1", &Colouring::new(vec![1, 1]), &g),
            Err(Error::Encoding(_))
        ));
    }

    #[test]
    fn render_and_parse() {
        let s = catalog("L41").unwrap();
        let g = z(4);
        let c = Colouring::new(vec![2, 3]);
        assert_eq!(c.render(&s), "c1=2,c2=3");
        assert_eq!(Colouring::parse(&s, &g, "c2=3, c1=2").unwrap(), c);
        assert!(Colouring::parse(&s, &g, "c1=2").is_err());
        assert!(Colouring::parse(&s, &g, "c1=2,c2=4").is_err());
    }

    #[test]
    fn pruned_matches_brute_force() {
        for name in crate::spine::CATALOG {
            let s = catalog(name).unwrap();
            for g in [z(2), z(3), FiniteGroup::parse_spec("Z2xZ2").unwrap()] {
                assert_eq!(
                    enumerate_colourings_with(&s, &g, Search::Pruned).unwrap(),
                    enumerate_colourings_with(&s, &g, Search::BruteForce).unwrap(),
                    "{name} {}",
                    g.name()
                );
            }
        }
    }
}
