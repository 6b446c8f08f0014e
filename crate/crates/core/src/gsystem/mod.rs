//! `G`-systems: modules per colour triple, dualising isomorphisms and the
//! two vertex tensor families, plus the contraction that turns a coloured
//! spine into a weight.
//!
//! A module `V_K` has a fixed standard basis and is identified with `K^dim`.
//! Tensors are multilinear forms; an axis is primal when it eats vectors of
//! `V_K` and dual when it eats covectors. `I_K : V_K -> V*_{rev K}` is stored
//! as the matrix sending `e_i` to `sum_j M[i][j] e^j`.

mod checks;
mod json;
mod tensor;
pub(crate) mod weight;

use std::collections::BTreeMap;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use checks::Failure;
pub use tensor::{Axis, Mat, Tensor, TripleKey};
pub use weight::{vertex_tensor, weight, weight_1dim, weight_brute_force};

use crate::algebra::{FiniteGroup, Ring};
use crate::cohomology::Cochain3;
use crate::error::{Error, Result};
use crate::spine::locally_incoming;

#[derive(Clone, Debug)]
pub struct GSystem {
    pub group: FiniteGroup,
    pub ring: Ring,
    dims: BTreeMap<TripleKey, usize>,
    iso: BTreeMap<TripleKey, Mat>,
    iso_inv: BTreeMap<TripleKey, Mat>,
    /// `[a,b,c]` at index `(a*n + b)*n + c`.
    pos: Vec<Tensor>,
    /// The barred family, same indexing.
    neg: Vec<Tensor>,
}

impl GSystem {
    /// The keys of the four faces of the tetrahedron coloured `a, b, c`.
    pub fn face_keys(g: &FiniteGroup, a: usize, b: usize, c: usize) -> [TripleKey; 4] {
        let ab = g.mul(a, b);
        let bc = g.mul(b, c);
        let abc = g.mul(ab, c);
        [
            TripleKey::new([b, c, g.inv(bc)]),
            TripleKey::new([ab, c, g.inv(abc)]),
            TripleKey::new([a, bc, g.inv(abc)]),
            TripleKey::new([a, b, g.inv(ab)]),
        ]
    }

    /// `(c^-1, b^-1, a^-1)`, canonically rotated.
    pub fn reverse(&self, k: TripleKey) -> TripleKey {
        let [a, b, c] = k.0;
        let g = &self.group;
        TripleKey::new([g.inv(c), g.inv(b), g.inv(a)])
    }

    /// All canonical keys of the group.
    pub fn keys(g: &FiniteGroup) -> Vec<TripleKey> {
        let mut out: Vec<TripleKey> = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| TripleKey::new([a, b, g.inv(g.mul(a, b))]))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn dim(&self, k: TripleKey) -> usize {
        self.dims[&k]
    }

    pub fn iso(&self, k: TripleKey) -> &Mat {
        &self.iso[&k]
    }

    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.group.order();
        (a * n + b) * n + c
    }

    pub fn tensor_pos(&self, a: usize, b: usize, c: usize) -> &Tensor {
        &self.pos[self.index(a, b, c)]
    }

    pub fn tensor_neg(&self, a: usize, b: usize, c: usize) -> &Tensor {
        &self.neg[self.index(a, b, c)]
    }

    /// Axis labels of `[a,b,c]` (parity `+1`) or of its barred partner.
    pub fn vertex_axes(&self, parity: i8, a: usize, b: usize, c: usize) -> Vec<Axis> {
        Self::face_keys(&self.group, a, b, c)
            .iter()
            .enumerate()
            .map(|(j, &key)| Axis {
                key,
                dual: (j % 2 == 1) == (parity > 0),
                len: self.dims[&key],
            })
            .collect()
    }

    /// Assembles a system and checks shapes, invertibility of every `I_K`
    /// and the compatibility `I_{rev K} = I_K^T` that makes contraction
    /// independent of triple-line orientations.
    pub fn new(
        group: FiniteGroup,
        ring: Ring,
        dims: BTreeMap<TripleKey, usize>,
        iso: BTreeMap<TripleKey, Mat>,
        pos: Vec<Tensor>,
        neg: Vec<Tensor>,
    ) -> Result<Self> {
        ring.validate()?;
        let w = ring.width();
        let keys = Self::keys(&group);
        for k in &keys {
            match dims.get(k) {
                Some(&d) if d > 0 => {}
                _ => return Err(Error::Validation(format!("module {k} needs a positive dimension"))),
            }
        }
        let n = group.order();
        if pos.len() != n * n * n || neg.len() != n * n * n {
            return Err(Error::Validation("one tensor per colour triple is required".into()));
        }
        let mut sys = GSystem {
            group,
            ring,
            dims,
            iso: BTreeMap::new(),
            iso_inv: BTreeMap::new(),
            pos,
            neg,
        };
        for &k in &keys {
            let rk = sys.reverse(k);
            let m = iso
                .get(&k)
                .ok_or_else(|| Error::Validation(format!("missing isomorphism for {k}")))?;
            if (m.rows, m.cols) != (sys.dims[&k], sys.dims[&rk]) || m.data.len() != m.rows * m.cols * w {
                return Err(Error::Validation(format!("isomorphism for {k} has the wrong shape")));
            }
            let inv = m
                .inverse(&ring)
                .ok_or_else(|| Error::Validation(format!("isomorphism for {k} is not invertible")))?;
            if iso.get(&rk).map(|r| *r != m.transpose(w)).unwrap_or(true) {
                return Err(Error::Validation(format!(
                    "isomorphisms for {k} and {rk} must be transposes of each other"
                )));
            }
            sys.iso.insert(k, m.clone());
            sys.iso_inv.insert(k, inv);
        }
        for a in sys.group.elements() {
            for b in sys.group.elements() {
                for c in sys.group.elements() {
                    for (parity, t) in [(1, sys.tensor_pos(a, b, c)), (-1, sys.tensor_neg(a, b, c))] {
                        let axes = sys.vertex_axes(parity, a, b, c);
                        let want: usize = axes.iter().map(|x| x.len).product::<usize>() * w;
                        if t.axes != axes || t.data.len() != want {
                            return Err(Error::Validation(format!(
                                "tensor for ({a},{b},{c}) with parity {parity} has the wrong shape"
                            )));
                        }
                    }
                }
            }
        }
        Ok(sys)
    }

    /// One-dimensional system with `[a,b,c] = x^f(a,b,c)` and the barred
    /// tensor `x^-f(a,b,c)` over `Z[x]/(x^m - 1)`; every `I_K` is `1`.
    pub fn one_dimensional(group: &FiniteGroup, m: usize, f: impl Fn(usize, usize, usize) -> i64) -> Result<Self> {
        let ring = Ring::QuotientPoly { m };
        ring.validate()?;
        let keys = Self::keys(group);
        let dims = keys.iter().map(|&k| (k, 1)).collect();
        let iso = keys.iter().map(|&k| (k, Mat::identity(&ring, 1))).collect();
        let mut pos = vec![];
        let mut neg = vec![];
        let sys_axes = |parity: i8, a, b, c| -> Vec<Axis> {
            Self::face_keys(group, a, b, c)
                .iter()
                .enumerate()
                .map(|(j, &key)| Axis {
                    key,
                    dual: (j % 2 == 1) == (parity > 0),
                    len: 1,
                })
                .collect()
        };
        for a in group.elements() {
            for b in group.elements() {
                for c in group.elements() {
                    let v = f(a, b, c);
                    pos.push(Tensor {
                        axes: sys_axes(1, a, b, c),
                        data: ring.monomial(v),
                    });
                    neg.push(Tensor {
                        axes: sys_axes(-1, a, b, c),
                        data: ring.monomial(-v),
                    });
                }
            }
        }
        GSystem::new(group.clone(), ring, dims, iso, pos, neg)
    }

    /// Tensors of a vertex with parity and local colours given, with `I`
    /// inserted on the slots listed in `flip`.
    pub fn oriented_tensor(&self, parity: i8, a: usize, b: usize, c: usize, flip: [bool; 4]) -> Tensor {
        let mut t = if parity > 0 {
            self.tensor_pos(a, b, c).clone()
        } else {
            self.tensor_neg(a, b, c).clone()
        };
        for (j, &f) in flip.iter().enumerate() {
            if f {
                t = self.flip_axis(&t, j);
            }
        }
        t
    }

    /// Converts axis `j` to the other variance on the reversed module.
    pub fn flip_axis(&self, t: &Tensor, j: usize) -> Tensor {
        let ax = t.axes[j];
        let rk = self.reverse(ax.key);
        let new = Axis {
            key: rk,
            dual: !ax.dual,
            len: self.dims[&rk],
        };
        // A primal V_K slot is fed through I_K^-1 from V*_{rev K}; a dual
        // V*_K slot is fed through I_{rev K} from V_{rev K}.
        let m = if ax.dual { &self.iso[&rk] } else { &self.iso_inv[&ax.key] };
        t.transform_axis(&self.ring, j, m, new)
    }

    /// Random system over `Z_p` with dimensions in `1..=max_dim`, diagonal
    /// isomorphisms and random tensors. It is generally not symmetric; it
    /// exercises the contraction engine.
    pub fn random_diagonal(group: &FiniteGroup, p: i64, max_dim: usize, seed: u64) -> Result<Self> {
        let ring = Ring::Zmod { n: p };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keys = Self::keys(group);
        let mut dims = BTreeMap::new();
        let mut iso = BTreeMap::new();
        let rev = |k: TripleKey| {
            let [a, b, c] = k.0;
            TripleKey::new([group.inv(c), group.inv(b), group.inv(a)])
        };
        for &k in &keys {
            if dims.contains_key(&k) {
                continue;
            }
            let d = rng.gen_range(1..=max_dim);
            let rk = rev(k);
            dims.insert(k, d);
            dims.insert(rk, d);
            let mut m = Mat::identity(&ring, d);
            for i in 0..d {
                m.data[i * d + i] = rng.gen_range(1..p);
            }
            iso.insert(k, m.clone());
            iso.insert(rk, m);
        }
        let mut pos = vec![];
        let mut neg = vec![];
        for a in group.elements() {
            for b in group.elements() {
                for c in group.elements() {
                    for (parity, out) in [(1i8, &mut pos), (-1, &mut neg)] {
                        let axes: Vec<Axis> = Self::face_keys(group, a, b, c)
                            .iter()
                            .enumerate()
                            .map(|(j, &key)| Axis {
                                key,
                                dual: (j % 2 == 1) == (parity > 0),
                                len: dims[&key],
                            })
                            .collect();
                        let mut t = Tensor::zeros(&ring, axes);
                        for x in t.data.iter_mut() {
                            *x = rng.gen_range(0..p);
                        }
                        out.push(t);
                    }
                }
            }
        }
        GSystem::new(group.clone(), ring, dims, iso, pos, neg)
    }

    /// Whether the slot `e_j` of a vertex of this parity eats a vector (is
    /// primal) before any isomorphism is inserted.
    pub fn slot_is_primal(parity: i8, j: usize) -> bool {
        locally_incoming(parity, j)
    }
}

/// The one-dimensional system of a 3-cocycle with values in a cyclic `k`.
pub fn system_from_cocycle(g: &FiniteGroup, omega: &Cochain3) -> Result<GSystem> {
    let m = omega.coeff().single_modulus().ok_or_else(|| {
        Error::arg(format!(
            "cocycle systems need a cyclic coefficient group, got {}",
            omega.coeff().name()
        ))
    })?;
    if omega.order() != g.order() {
        return Err(Error::arg("cocycle and group do not match"));
    }
    if let Some(v) = omega.first_violation(g) {
        return Err(Error::Precondition(format!("not a 3-cocycle: {v}")));
    }
    GSystem::one_dimensional(g, m as usize, |a, b, c| omega.scalar([a, b, c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CoeffGroup;

    #[test]
    fn face_keys_match_colours() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let k = GSystem::face_keys(&g, 1, 2, 3);
        assert_eq!(k[0], TripleKey::new([2, 3, 3]));
        assert_eq!(k[3], TripleKey::new([1, 2, 1]));
    }

    #[test]
    fn cocycle_system_entries() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let w = Cochain3::example_z4();
        let s = system_from_cocycle(&g, &w).unwrap();
        assert_eq!(s.ring, Ring::QuotientPoly { m: 2 });
        assert_eq!(s.tensor_pos(1, 2, 3).data, vec![0, 1]);
        assert_eq!(s.tensor_neg(1, 2, 3).data, vec![0, 1]);
        assert_eq!(s.tensor_pos(0, 0, 0).data, vec![1, 0]);
    }

    #[test]
    fn rejects_non_cocycles_and_products() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mut w = Cochain3::example_z4();
        w.set([1, 2, 3], &[0]);
        w.set([1, 1, 1], &[1]);
        assert!(system_from_cocycle(&g, &w).is_err());
        let k = CoeffGroup::parse("Z2xZ2").unwrap();
        let z = Cochain3::zero(&g, &k);
        assert!(matches!(system_from_cocycle(&g, &z), Err(Error::Argument(_))));
    }

    #[test]
    fn random_systems_are_well_formed() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let s = GSystem::random_diagonal(&g, 7, 2, 1).unwrap();
        for k in GSystem::keys(&g) {
            assert_eq!(s.dim(k), s.dim(s.reverse(k)));
        }
    }
}
