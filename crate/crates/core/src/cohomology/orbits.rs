use super::{gamma_partner, tuple_at, tuple_index, Chain};
use crate::algebra::{CoeffGroup, FiniteGroup};

/// Orbits of degree-`n` tuples under the `gamma` involutions, with signs.
///
/// A cochain vanishing on `Q_n` satisfies `f(t) = -f(s_i(t))`, so it is fixed
/// by its values on one representative per orbit: `f(t) = sign(t) * f(rep(t))`.
/// An orbit that reaches its representative with both signs is a torsion orbit
/// and forces `2 f(rep) = 0`.
#[derive(Clone, Debug)]
pub struct SymOrbits {
    order: usize,
    degree: usize,
    rep: Vec<usize>,
    sign: Vec<i8>,
    torsion: Vec<bool>,
    reps: Vec<usize>,
    rep_pos: Vec<usize>,
}

impl SymOrbits {
    pub fn new(g: &FiniteGroup, degree: usize) -> Self {
        let order = g.order();
        let size = order.pow(degree as u32);
        // Signed union-find: value(x) = rel[x] * value(parent[x]).
        let mut parent: Vec<usize> = (0..size).collect();
        let mut rel: Vec<i8> = vec![1; size];
        let mut conflict = vec![false; size];

        fn find(parent: &mut [usize], rel: &mut [i8], x: usize) -> (usize, i8) {
            let mut path = vec![];
            let mut cur = x;
            while parent[cur] != cur {
                path.push(cur);
                cur = parent[cur];
            }
            let root = cur;
            // Compress from the top down so each node's relation is to the root.
            for &node in path.iter().rev() {
                let p = parent[node];
                if p != root {
                    rel[node] *= rel[p];
                }
                parent[node] = root;
            }
            (root, if x == root { 1 } else { rel[x] })
        }

        for idx in 0..size {
            let t = tuple_at(order, degree, idx);
            for i in 1..=degree {
                let p = gamma_partner(g, i, &t).expect("index in range");
                let pidx = tuple_index(order, &p);
                let (ra, sa) = find(&mut parent, &mut rel, idx);
                let (rb, sb) = find(&mut parent, &mut rel, pidx);
                // value(p) = -value(t)
                if ra == rb {
                    if sa != -sb {
                        conflict[ra] = true;
                    }
                } else {
                    // v(t) = sa v(ra), v(p) = sb v(rb) and v(p) = -v(t),
                    // so the two roots differ by the sign -sa*sb.
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi] = lo;
                    rel[hi] = -sa * sb;
                    if conflict[hi] {
                        conflict[lo] = true;
                    }
                }
            }
        }
        let mut rep = vec![0; size];
        let mut sign = vec![1; size];
        for idx in 0..size {
            let (r, s) = find(&mut parent, &mut rel, idx);
            rep[idx] = r;
            sign[idx] = s;
        }
        let mut torsion = vec![false; size];
        for idx in 0..size {
            if conflict[idx] {
                torsion[rep[idx]] = true;
            }
        }
        let reps: Vec<usize> = (0..size).filter(|&i| rep[i] == i).collect();
        let mut rep_pos = vec![usize::MAX; size];
        for (p, &r) in reps.iter().enumerate() {
            rep_pos[r] = p;
        }
        SymOrbits {
            order,
            degree,
            rep,
            sign,
            torsion,
            reps,
            rep_pos,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Representative tuple indices, ascending.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn num_reps(&self) -> usize {
        self.reps.len()
    }

    /// `(position of the representative in reps(), sign)` for a tuple index.
    #[inline]
    pub fn locate(&self, idx: usize) -> (usize, i8) {
        (self.rep_pos[self.rep[idx]], self.sign[idx])
    }

    /// Whether the orbit of the `p`-th representative forces `2 f = 0`.
    pub fn is_torsion(&self, p: usize) -> bool {
        self.torsion[self.reps[p]]
    }

    /// Whether a degree-`n` chain lies in the `k`-span of `Q_n`.
    pub fn chain_in_q(&self, k: &CoeffGroup, c: &Chain) -> bool {
        assert_eq!(c.degree(), self.degree);
        let mut acc = vec![k.zero(); self.reps.len()];
        for (t, coeff) in c.terms() {
            let (p, s) = self.locate(tuple_index(self.order, t));
            let term = if s > 0 { coeff.clone() } else { k.neg(coeff) };
            acc[p] = k.add(&acc[p], &term);
        }
        acc.iter().enumerate().all(|(p, v)| {
            if self.is_torsion(p) {
                v.iter().zip(k.moduli()).all(|(x, m)| x % crate::algebra::gcd(2, *m) == 0)
            } else {
                k.is_zero(v)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::gamma_generator;
    use crate::linalg::RowSpan;

    // Oracle: membership in the explicit row span of all gamma generators.
    fn q_span(g: &FiniteGroup, m: i64, n: usize) -> RowSpan {
        let k = CoeffGroup::cyclic(m).unwrap();
        let size = g.order().pow(n as u32);
        let mut span = RowSpan::new(size, m);
        for idx in 0..size {
            let t = tuple_at(g.order(), n, idx);
            for i in 1..=n {
                let c = gamma_generator(g, &k, i, &t).unwrap();
                let mut row = vec![0; size];
                for (tt, v) in c.terms() {
                    row[tuple_index(g.order(), tt)] = v[0];
                }
                span.insert(row);
            }
        }
        span
    }

    #[test]
    fn orbit_quotient_matches_row_span() {
        for (g, m) in [
            (FiniteGroup::cyclic(3).unwrap(), 4),
            (FiniteGroup::cyclic(4).unwrap(), 2),
            (FiniteGroup::parse_spec("Z2xZ2").unwrap(), 6),
        ] {
            for n in 1..=3 {
                let orbits = SymOrbits::new(&g, n);
                let span = q_span(&g, m, n);
                let size = g.order().pow(n as u32);
                // |D/Q| * |Q| = |D|, compared through logarithms to avoid overflow.
                let log_quotient: f64 = (0..orbits.num_reps())
                    .map(|p| {
                        let o = if orbits.is_torsion(p) { crate::algebra::gcd(2, m) } else { m };
                        (o as f64).ln()
                    })
                    .sum();
                let log_span: f64 = span.log_cardinality();
                let log_total = size as f64 * (m as f64).ln();
                assert!((log_quotient + log_span - log_total).abs() < 1e-6, "{} n={n}", g.name());
            }
        }
    }

    #[test]
    fn trivial_group_single_torsion_orbit() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let o = SymOrbits::new(&g, 3);
        assert_eq!(o.num_reps(), 1);
        assert!(o.is_torsion(0));
    }
}
