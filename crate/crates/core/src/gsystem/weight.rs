//! Vertex tensors of a coloured spine and their full contraction.

use super::{GSystem, Tensor};
use crate::algebra::FiniteGroup;
use crate::cohomology::Cochain3;
use crate::colouring::{local_colours_at, Colouring};
use crate::error::{Error, Result};
use crate::spine::{Spine, Topology, CELL_SLOTS};

fn encoding_error(s: &Spine, v: usize, slot: usize) -> Error {
    Error::Encoding(format!(
        "vertex {}: slot {} does not carry the product of the local colours",
        s.vertices[v].id, CELL_SLOTS[slot]
    ))
}

pub(crate) fn vertex_tensor_at(s: &Spine, topo: &Topology, v: usize, xi: &[usize], sys: &GSystem) -> Result<Tensor> {
    let lc = local_colours_at(topo, v, xi, &sys.group).map_err(|slot| encoding_error(s, v, slot))?;
    let flip = std::array::from_fn(|j| topo.edge_slots[v][j].1 < 0);
    Ok(sys.oriented_tensor(lc.parity, lc.a, lc.b, lc.c, flip))
}

/// The tensor `[(v, xi)]`: axes follow the slots `e0..e3`.
pub fn vertex_tensor(s: &Spine, vertex: &str, xi: &Colouring, sys: &GSystem) -> Result<Tensor> {
    let v = s
        .vertex_index(vertex)
        .ok_or_else(|| Error::arg(format!("unknown vertex {vertex}")))?;
    check_colouring(s, xi, &sys.group)?;
    vertex_tensor_at(s, &s.topology()?, v, &xi.values, sys)
}

fn check_colouring(s: &Spine, xi: &Colouring, g: &FiniteGroup) -> Result<()> {
    if !crate::colouring::is_colouring(s, xi, g)? {
        return Err(Error::arg("not a colouring of this spine"));
    }
    Ok(())
}

// Checks that every triple line pairs a dual tail slot with a primal head
// slot on the same module.
fn check_pairing(s: &Spine, topo: &Topology, tensors: &[Tensor]) -> Result<()> {
    for (e, [(v1, j1), (v2, j2)]) in topo.ends.iter().enumerate() {
        let (t, h) = (tensors[*v1].axes[*j1], tensors[*v2].axes[*j2]);
        if !t.dual || h.dual || t.key != h.key {
            return Err(Error::Encoding(format!(
                "edge {}: modules at its ends do not pair ({}{} at the tail, {}{} at the head)",
                s.edges[e].id,
                t.key,
                if t.dual { "*" } else { "" },
                h.key,
                if h.dual { "*" } else { "" }
            )));
        }
    }
    Ok(())
}

pub(crate) fn weight_at(s: &Spine, topo: &Topology, xi: &[usize], sys: &GSystem) -> Result<Vec<i64>> {
    let tensors = (0..topo.parity.len())
        .map(|v| vertex_tensor_at(s, topo, v, xi, sys))
        .collect::<Result<Vec<_>>>()?;
    check_pairing(s, topo, &tensors)?;
    let ring = &sys.ring;
    // Each axis is labelled by its triple line.
    let mut net: Vec<(Tensor, Vec<usize>)> = tensors
        .into_iter()
        .enumerate()
        .map(|(v, t)| (t, (0..4).map(|j| topo.edge_slots[v][j].0).collect()))
        .collect();
    let self_pairs = |labels: &[usize]| -> Vec<(usize, usize)> {
        let mut out = vec![];
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if labels[i] == labels[j] {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let trace = |(t, labels): (Tensor, Vec<usize>)| -> Result<(Tensor, Vec<usize>)> {
        let pairs = self_pairs(&labels);
        if pairs.is_empty() {
            return Ok((t, labels));
        }
        let used: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        let rest = (0..labels.len()).filter(|i| !used.contains(i)).map(|i| labels[i]).collect();
        Ok((Tensor::trace(ring, &t, &pairs)?, rest))
    };
    net = net.into_iter().map(trace).collect::<Result<_>>()?;
    while net.len() > 1 {
        // Cheapest pair by the size of the result.
        let mut best: Option<(usize, usize, usize, bool)> = None;
        for i in 0..net.len() {
            for j in i + 1..net.len() {
                let shared = net[i].1.iter().any(|l| net[j].1.contains(l));
                let size: usize = net[i]
                    .0
                    .axes
                    .iter()
                    .zip(&net[i].1)
                    .filter(|(_, l)| !net[j].1.contains(l))
                    .map(|(a, _)| a.len)
                    .product::<usize>()
                    * net[j]
                        .0
                        .axes
                        .iter()
                        .zip(&net[j].1)
                        .filter(|(_, l)| !net[i].1.contains(l))
                        .map(|(a, _)| a.len)
                        .product::<usize>();
                let better = match best {
                    None => true,
                    Some((_, _, s, sh)) => (shared, std::cmp::Reverse(size)) > (sh, std::cmp::Reverse(s)),
                };
                if better {
                    best = Some((i, j, size, shared));
                }
            }
        }
        let (i, j, _, _) = best.expect("two tensors");
        let (tj, lj) = net.remove(j);
        let (ti, li) = net.remove(i);
        let mut ax_i = vec![];
        let mut ax_j = vec![];
        for (x, l) in li.iter().enumerate() {
            if let Some(y) = lj.iter().position(|m| m == l) {
                ax_i.push(x);
                ax_j.push(y);
            }
        }
        let t = Tensor::contract(ring, &ti, &ax_i, &tj, &ax_j)?;
        let labels: Vec<usize> = (0..li.len())
            .filter(|x| !ax_i.contains(x))
            .map(|x| li[x])
            .chain((0..lj.len()).filter(|y| !ax_j.contains(y)).map(|y| lj[y]))
            .collect();
        net.push(trace((t, labels))?);
    }
    let (t, labels) = net.pop().expect("a spine has a vertex");
    debug_assert!(labels.is_empty());
    Ok(t.data)
}

/// `w_xi(P)`: all vertex tensors contracted along the triple lines.
pub fn weight(s: &Spine, xi: &Colouring, sys: &GSystem) -> Result<Vec<i64>> {
    check_colouring(s, xi, &sys.group)?;
    weight_at(s, &s.topology()?, &xi.values, sys)
}

/// The same weight by summing over every basis labelling of the triple
/// lines; exponential, for testing.
pub fn weight_brute_force(s: &Spine, xi: &Colouring, sys: &GSystem) -> Result<Vec<i64>> {
    check_colouring(s, xi, &sys.group)?;
    let topo = s.topology()?;
    let tensors = (0..topo.parity.len())
        .map(|v| vertex_tensor_at(s, &topo, v, &xi.values, sys))
        .collect::<Result<Vec<_>>>()?;
    check_pairing(s, &topo, &tensors)?;
    let ring = &sys.ring;
    let w = ring.width();
    let lens: Vec<usize> = topo.ends.iter().map(|[(v, j), _]| tensors[*v].axes[*j].len).collect();
    let mut idx = vec![0; lens.len()];
    let mut total = ring.zero();
    loop {
        let mut prod = ring.one();
        for (v, t) in tensors.iter().enumerate() {
            let at: Vec<usize> = (0..4).map(|j| idx[topo.edge_slots[v][j].0]).collect();
            prod = ring.mul(&prod, t.get(w, &at));
        }
        total = ring.add(&total, &prod);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < lens[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub(crate) fn weight_1dim_at(topo: &Topology, xi: &[usize], g: &FiniteGroup, omega: &Cochain3) -> std::result::Result<Vec<i64>, (usize, usize)> {
    let k = omega.coeff();
    let mut acc = k.zero();
    for v in 0..topo.parity.len() {
        let lc = local_colours_at(topo, v, xi, g).map_err(|slot| (v, slot))?;
        acc = k.add(&acc, &k.scale(omega.get([lc.a, lc.b, lc.c]), i64::from(lc.parity)));
    }
    Ok(acc)
}

/// `sum_v parity(v) * omega(a_v, b_v, c_v)` in `k`.
pub fn weight_1dim(s: &Spine, xi: &Colouring, g: &FiniteGroup, omega: &Cochain3) -> Result<Vec<i64>> {
    check_colouring(s, xi, g)?;
    if omega.order() != g.order() {
        return Err(Error::arg("cocycle and group do not match"));
    }
    weight_1dim_at(&s.topology()?, &xi.values, g, omega).map_err(|(v, slot)| encoding_error(s, v, slot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::enumerate_colourings;
    use crate::gsystem::system_from_cocycle;
    use crate::spine::{catalog, CATALOG};

    #[test]
    fn worked_example_weights() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let w = Cochain3::example_z4();
        let sys = system_from_cocycle(&g, &w).unwrap();
        let s = catalog("L41").unwrap();
        let got: Vec<Vec<i64>> = enumerate_colourings(&s, &g)
            .unwrap()
            .iter()
            .map(|x| weight(&s, x, &sys).unwrap())
            .collect();
        assert_eq!(got, vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
        let xi = Colouring::new(vec![2, 1]);
        assert_eq!(weight_1dim(&s, &xi, &g, &w).unwrap(), vec![1]);
        assert_eq!(vertex_tensor(&s, "v1", &xi, &sys).unwrap().data, vec![0, 1]);
    }

    #[test]
    fn greedy_matches_brute_force_on_random_systems() {
        let g = FiniteGroup::cyclic(2).unwrap();
        for seed in 0..4 {
            let sys = GSystem::random_diagonal(&g, 5, 2, seed).unwrap();
            for name in CATALOG {
                let s = catalog(name).unwrap();
                for xi in enumerate_colourings(&s, &g).unwrap() {
                    assert_eq!(
                        weight(&s, &xi, &sys).unwrap(),
                        weight_brute_force(&s, &xi, &sys).unwrap(),
                        "{name}"
                    );
                }
            }
        }
    }
}
