use super::{coboundary3, tuple_index, Cochain2, Cochain3, SymOrbits};
use crate::algebra::{CoeffGroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, ModKernel, RowSpan, SmithMod};

/// Largest group order the dense solvers accept.
pub const MAX_SOLVE_ORDER: usize = 12;

/// The group of 3-cocycles, as a direct sum of cyclic pieces.
#[derive(Clone, Debug)]
pub struct CocycleGroup {
    group: FiniteGroup,
    k: CoeffGroup,
    orbits: SymOrbits,
    kernels: Vec<ModKernel>,
    generators: Vec<Cochain3>,
    orders: Vec<i64>,
}

impl CocycleGroup {
    /// Generators in a fixed order: by `k` component, then by kernel column.
    pub fn generators(&self) -> &[Cochain3] {
        &self.generators
    }

    /// Additive order of each generator.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn cardinality(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Values of one `k` component on the orbit representatives.
    fn rep_vector(&self, w: &Cochain3, c: usize) -> Vec<i64> {
        let comp = w.component(c);
        self.orbits.reps().iter().map(|&r| comp[r]).collect()
    }

    /// Coefficients expressing `w` in [`generators`](Self::generators), or
    /// `None` if `w` is not a 3-cocycle.
    pub fn coordinates(&self, w: &Cochain3) -> Option<Vec<i64>> {
        if w.coeff() != &self.k || w.order() != self.group.order() || !w.is_3cocycle(&self.group) {
            return None;
        }
        let mut out = vec![];
        for (c, kernel) in self.kernels.iter().enumerate() {
            out.extend(kernel.coordinates(&self.rep_vector(w, c))?);
        }
        Some(out)
    }

    /// `sum coeffs[i] * generators[i]`.
    pub fn combine(&self, coeffs: &[i64]) -> Cochain3 {
        let mut out = Cochain3::zero(&self.group, &self.k);
        for (g, &c) in self.generators.iter().zip(coeffs) {
            out = out.add(&g.scale(c)).expect("same shape");
        }
        out
    }
}

fn guard(g: &FiniteGroup) -> Result<()> {
    if g.order() > MAX_SOLVE_ORDER {
        return Err(Error::Size(format!(
            "group order {} exceeds the solver limit {MAX_SOLVE_ORDER}",
            g.order()
        )));
    }
    Ok(())
}

fn expand(g: &FiniteGroup, k: &CoeffGroup, orbits: &SymOrbits, c: usize, x: &[i64]) -> Cochain3 {
    let mut w = Cochain3::zero(g, k);
    for idx in 0..w.len() {
        let (p, s) = orbits.locate(idx);
        let mut v = k.zero();
        v[c] = if s > 0 { x[p] } else { -x[p] };
        w.set_idx(idx, &v);
    }
    w
}

/// Solves the 3-cocycle conditions as a linear system over each factor of `k`.
pub fn solve_3cocycles(g: &FiniteGroup, k: &CoeffGroup) -> Result<CocycleGroup> {
    guard(g)?;
    let n = g.order();
    let orbits = SymOrbits::new(g, 3);
    let r = orbits.num_reps();
    let mut kernels = vec![];
    let mut generators = vec![];
    let mut orders = vec![];
    for (c, &m) in k.moduli().iter().enumerate() {
        let mut span = RowSpan::new(r, m);
        for p in 0..r {
            if orbits.is_torsion(p) {
                let mut row = vec![0; r];
                row[p] = 2;
                span.insert(row);
            }
        }
        let mut row = vec![0i64; r];
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        row.iter_mut().for_each(|x| *x = 0);
                        let terms = [
                            ([b, cc, d], 1),
                            ([g.mul(a, b), cc, d], -1),
                            ([a, g.mul(b, cc), d], 1),
                            ([a, b, g.mul(cc, d)], -1),
                            ([a, b, cc], 1),
                        ];
                        for (t, sgn) in terms {
                            let (p, s) = orbits.locate(tuple_index(n, &t));
                            row[p] += sgn * i64::from(s);
                        }
                        if row.iter().any(|&x| x.rem_euclid(m) != 0) {
                            span.insert(row.clone());
                        }
                    }
                }
            }
        }
        let kernel = ModKernel::from_span(&span);
        for (x, &o) in kernel.generators.iter().zip(&kernel.orders) {
            generators.push(expand(g, k, &orbits, c, x));
            orders.push(o);
        }
        kernels.push(kernel);
    }
    Ok(CocycleGroup {
        group: g.clone(),
        k: k.clone(),
        orbits,
        kernels,
        generators,
        orders,
    })
}

/// `H^3 = Z / B` for the symmetric complex.
#[derive(Clone, Debug)]
pub struct H3 {
    pub cocycles: CocycleGroup,
    /// Invariant factors `d_1 | d_2 | ...`; empty for the trivial group.
    pub invariant_factors: Vec<i64>,
    coboundaries: Vec<RowSpan>,
    coboundary_count: u128,
}

impl H3 {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Number of coboundaries.
    pub fn coboundary_count(&self) -> u128 {
        self.coboundary_count
    }

    /// Whether a 3-cocycle is a coboundary of a `Q_2`-respecting 2-cochain.
    pub fn is_coboundary(&self, w: &Cochain3) -> bool {
        if self.cocycles.coordinates(w).is_none() {
            return false;
        }
        self.coboundaries
            .iter()
            .enumerate()
            .all(|(c, span)| span.contains(&self.cocycles.rep_vector(w, c)))
    }
}

/// Computes `H^3(G; k)` of the symmetric complex.
pub fn h3(g: &FiniteGroup, k: &CoeffGroup) -> Result<H3> {
    let cocycles = solve_3cocycles(g, k)?;
    let orbits2 = SymOrbits::new(g, 2);
    let mut cyclic = vec![];
    let mut coboundaries = vec![];
    let mut coboundary_count = 1u128;
    for (c, &m) in k.moduli().iter().enumerate() {
        let kc = CoeffGroup::cyclic(m)?;
        let kernel = &cocycles.kernels[c];
        let rdim = cocycles.orbits.num_reps();
        let mut span = RowSpan::new(rdim, m);
        let mut relations: Vec<Vec<i64>> = vec![];
        for p in 0..orbits2.num_reps() {
            let scale = match (orbits2.is_torsion(p), m % 2) {
                (false, _) => 1,
                (true, 0) => m / 2,
                (true, _) => continue,
            };
            let mut delta = Cochain2::zero(g, &kc);
            for idx in 0..delta.len() {
                let (q, s) = orbits2.locate(idx);
                if q == p {
                    delta.set_idx(idx, &[scale * i64::from(s)]);
                }
            }
            let w = coboundary3(g, &delta)?;
            let comp = w.component(0);
            let x: Vec<i64> = cocycles.orbits.reps().iter().map(|&r| comp[r]).collect();
            span.insert(x.clone());
            let coords = kernel
                .coordinates(&x)
                .ok_or_else(|| Error::Validation("coboundary outside the cocycle group".into()))?;
            relations.push(coords);
        }
        let gens = kernel.orders.len();
        for (i, &o) in kernel.orders.iter().enumerate() {
            let mut row = vec![0; gens];
            row[i] = o;
            relations.push(row);
        }
        let smith = SmithMod::compute(&relations, gens, m);
        for &d in &smith.diag {
            let o = crate::algebra::gcd(d, m);
            if o > 1 {
                cyclic.push(o);
            }
        }
        coboundary_count *= span.cardinality();
        coboundaries.push(span);
    }
    Ok(H3 {
        cocycles,
        invariant_factors: invariant_factors(&cyclic),
        coboundaries,
        coboundary_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute force over every table G^3 -> Z2 for a group of order <= 2.
    fn brute_cocycles(g: &FiniteGroup) -> Vec<Cochain3> {
        let k = CoeffGroup::cyclic(2).unwrap();
        let size = g.order().pow(3);
        (0..1u32 << size)
            .map(|bits| Cochain3::from_fn(g, &k, |t| vec![((bits >> tuple_index(g.order(), t)) & 1) as i64]))
            .filter(|w| w.is_3cocycle(g))
            .collect()
    }

    #[test]
    fn trivial_group_has_only_zero() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let k = CoeffGroup::cyclic(2).unwrap();
        let z = solve_3cocycles(&g, &k).unwrap();
        assert_eq!(z.cardinality(), 1);
        assert!(h3(&g, &k).unwrap().invariant_factors.is_empty());
    }

    #[test]
    fn z2_matches_brute_force() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let k = CoeffGroup::cyclic(2).unwrap();
        let z = solve_3cocycles(&g, &k).unwrap();
        let brute = brute_cocycles(&g);
        assert_eq!(z.cardinality(), brute.len() as u128);
        for w in &brute {
            let c = z.coordinates(w).unwrap();
            assert_eq!(&z.combine(&c), w);
        }
    }

    #[test]
    fn worked_example_is_in_the_solution_and_not_a_coboundary() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let k = CoeffGroup::cyclic(2).unwrap();
        let h = h3(&g, &k).unwrap();
        for gen in h.cocycles.generators() {
            assert!(gen.is_3cocycle(&g));
        }
        let w = Cochain3::example_z4();
        let c = h.cocycles.coordinates(&w).unwrap();
        assert_eq!(h.cocycles.combine(&c), w);
        assert!(!h.is_coboundary(&w));
        assert!(h.order() > 1);
    }

    #[test]
    fn size_guard() {
        let g = FiniteGroup::cyclic(13).unwrap();
        let k = CoeffGroup::cyclic(2).unwrap();
        assert!(matches!(solve_3cocycles(&g, &k), Err(Error::Size(_))));
    }
}
