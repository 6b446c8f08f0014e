//! Exact linear algebra over `Z_m`.
//!
//! `Z_m` is a principal ideal ring, so diagonalisation by unimodular row and
//! column operations (a Smith form) still works when `m` is composite. All
//! entries are kept reduced into `[0, m)`.

use crate::algebra::{ext_gcd, gcd};

fn reduce(v: &mut [i64], m: i64) {
    for x in v {
        *x = x.rem_euclid(m);
    }
}

/// A unit `u` with `u * p ≡ gcd(p, m) (mod m)`.
fn normalizing_unit(p: i64, m: i64) -> i64 {
    let g = gcd(p, m);
    if g == 0 || m == 1 {
        return 1;
    }
    let (pp, mm) = (p / g, m / g);
    let (_, s, _) = ext_gcd(pp.rem_euclid(mm), mm);
    let mut u = s.rem_euclid(mm.max(1));
    if mm == 1 {
        u = 1;
    }
    while gcd(u, m) != 1 {
        u += mm;
    }
    u % m
}

/// A Smith-type diagonalisation `D = P A Q` over `Z_m`.
///
/// Only the column transform `Q` and its inverse are kept; kernels and
/// coordinates need nothing else.
#[derive(Clone, Debug)]
pub struct SmithMod {
    pub m: i64,
    /// Diagonal entries, one per column (zero past the rank).
    pub diag: Vec<i64>,
    pub q: Vec<Vec<i64>>,
    pub q_inv: Vec<Vec<i64>>,
}

impl SmithMod {
    pub fn compute(rows: &[Vec<i64>], cols: usize, m: i64) -> Self {
        let mut a: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                reduce(&mut r, m);
                r
            })
            .collect();
        let mut q: Vec<Vec<i64>> = identity(cols, m);
        let mut q_inv = identity(cols, m);
        let nrows = a.len();
        let mut diag = vec![0; cols];
        for t in 0..nrows.min(cols) {
            // Pivot with the smallest ideal, so it tends to divide the rest.
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let g = gcd(x, m);
                        if best.is_none_or(|b| g < b.0) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in q.iter_mut() {
                    row.swap(t, pj);
                }
                q_inv.swap(t, pj);
            }
            loop {
                let u = normalizing_unit(a[t][t], m);
                for x in a[t].iter_mut() {
                    *x = (*x * u).rem_euclid(m);
                }
                for i in t + 1..nrows {
                    let (pa, b) = (a[t][t], a[i][t]);
                    if b == 0 {
                        continue;
                    }
                    let (g, s, u) = ext_gcd(pa, b);
                    let (ag, bg) = (pa / g, b / g);
                    for j in t..cols {
                        let (x, y) = (a[t][j], a[i][j]);
                        if b % pa == 0 {
                            a[i][j] = (y - bg * x).rem_euclid(m);
                        } else {
                            a[t][j] = (s * x + u * y).rem_euclid(m);
                            a[i][j] = (-bg * x + ag * y).rem_euclid(m);
                        }
                    }
                }
                for j in t + 1..cols {
                    let (pa, b) = (a[t][t], a[t][j]);
                    if b == 0 {
                        continue;
                    }
                    // Columns (t, j) <- (t, j) * X with X unimodular.
                    let (s, u, c, d) = if b % pa == 0 {
                        (1, 0, -(b / pa), 1)
                    } else {
                        let (g, s, u) = ext_gcd(pa, b);
                        (s, u, -(b / g), pa / g)
                    };
                    // X = [[s, c], [u, d]], det 1, X^-1 = [[d, -c], [-u, s]].
                    for row in a.iter_mut().skip(t) {
                        let (x, y) = (row[t], row[j]);
                        row[t] = (s * x + u * y).rem_euclid(m);
                        row[j] = (c * x + d * y).rem_euclid(m);
                    }
                    for row in q.iter_mut() {
                        let (x, y) = (row[t], row[j]);
                        row[t] = (s * x + u * y).rem_euclid(m);
                        row[j] = (c * x + d * y).rem_euclid(m);
                    }
                    for k in 0..cols {
                        let (x, y) = (q_inv[t][k], q_inv[j][k]);
                        q_inv[t][k] = (d * x - c * y).rem_euclid(m);
                        q_inv[j][k] = (-u * x + s * y).rem_euclid(m);
                    }
                }
                if a.iter().skip(t + 1).all(|r| r[t] == 0) {
                    break;
                }
            }
            diag[t] = a[t][t];
        }
        SmithMod { m, diag, q, q_inv }
    }
}

fn identity(n: usize, m: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j) % m).collect())
        .collect()
}

/// The solution module `{x : A x = 0}` of a linear system over `Z_m`,
/// presented as a direct sum of cyclic pieces.
#[derive(Clone, Debug)]
pub struct ModKernel {
    pub m: i64,
    pub generators: Vec<Vec<i64>>,
    pub orders: Vec<i64>,
    // Row of Q^{-1} and divisor `m / order` for each generator.
    coord_rows: Vec<(Vec<i64>, i64)>,
    // Rows of Q^{-1} whose coordinate must be a multiple of the divisor.
    zero_rows: Vec<(Vec<i64>, i64)>,
}

impl ModKernel {
    /// Kernel of the matrix with the given rows and `cols` columns.
    pub fn compute(rows: &[Vec<i64>], cols: usize, m: i64) -> Self {
        // Pre-reduce to an echelon basis so the Smith step stays small.
        let mut span = RowSpan::new(cols, m);
        for r in rows {
            span.insert(r.clone());
        }
        Self::from_span(&span)
    }

    /// Kernel of the matrix whose rows span `span`.
    pub fn from_span(span: &RowSpan) -> Self {
        let (cols, m) = (span.n, span.m);
        let basis = span.rows();
        let s = SmithMod::compute(&basis, cols, m);
        let mut out = ModKernel {
            m,
            generators: vec![],
            orders: vec![],
            coord_rows: vec![],
            zero_rows: vec![],
        };
        for i in 0..cols {
            let g = gcd(s.diag[i], m);
            let scale = m / g;
            if scale != 1 {
                out.zero_rows.push((s.q_inv[i].clone(), scale));
            }
            if g == 1 {
                continue;
            }
            let gen: Vec<i64> = s.q.iter().map(|row| (row[i] * scale).rem_euclid(m)).collect();
            out.generators.push(gen);
            out.orders.push(g);
            out.coord_rows.push((s.q_inv[i].clone(), scale));
        }
        out
    }

    /// Number of elements in the kernel.
    pub fn cardinality(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Coefficients `c` with `x = sum c_i * gen_i`, or `None` if `x` is not in
    /// the kernel.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        let dot = |row: &[i64]| -> i64 {
            row.iter()
                .zip(x)
                .fold(0i64, |acc, (a, b)| (acc + a * b).rem_euclid(self.m))
        };
        for (row, scale) in &self.zero_rows {
            if dot(row) % scale != 0 {
                return None;
            }
        }
        Some(
            self.coord_rows
                .iter()
                .zip(&self.orders)
                .map(|((row, scale), &o)| (dot(row) / scale).rem_euclid(o))
                .collect(),
        )
    }

    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (g, &c) in self.generators.iter().zip(coeffs) {
            for (o, &v) in out.iter_mut().zip(g) {
                *o = (*o + c * v).rem_euclid(self.m);
            }
        }
        out
    }
}

/// The `Z_m`-submodule spanned by a set of rows, kept in a Howell-style
/// echelon form so that membership is decided by plain reduction.
#[derive(Clone, Debug)]
pub struct RowSpan {
    m: i64,
    n: usize,
    pivots: Vec<Option<Vec<i64>>>,
}

impl RowSpan {
    pub fn new(n: usize, m: i64) -> Self {
        RowSpan {
            m,
            n,
            pivots: vec![None; n],
        }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    /// Adds a row; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<i64>) -> bool {
        let m = self.m;
        let mut grew = false;
        let mut stack = vec![v];
        while let Some(mut v) = stack.pop() {
            reduce(&mut v, m);
            for c in 0..self.n {
                if v[c] == 0 {
                    continue;
                }
                match self.pivots[c].take() {
                    None => {
                        let u = normalizing_unit(v[c], m);
                        for x in v.iter_mut() {
                            *x = (*x * u).rem_euclid(m);
                        }
                        let ann = self.annihilator(&v, c);
                        self.pivots[c] = Some(v);
                        stack.extend(ann);
                        grew = true;
                        break;
                    }
                    Some(r) => {
                        let (a, b) = (r[c], v[c]);
                        if b % a == 0 {
                            let f = b / a;
                            for (x, y) in v.iter_mut().zip(&r) {
                                *x = (*x - f * y).rem_euclid(m);
                            }
                            self.pivots[c] = Some(r);
                            continue;
                        }
                        let (g, s, t) = ext_gcd(a, b);
                        let (ag, bg) = (a / g, b / g);
                        let mut nr: Vec<i64> = r
                            .iter()
                            .zip(&v)
                            .map(|(x, y)| (s * x + t * y).rem_euclid(m))
                            .collect();
                        v = r
                            .iter()
                            .zip(&v)
                            .map(|(x, y)| (bg * x - ag * y).rem_euclid(m))
                            .collect();
                        let u = normalizing_unit(nr[c], m);
                        for x in nr.iter_mut() {
                            *x = (*x * u).rem_euclid(m);
                        }
                        stack.extend(self.annihilator(&nr, c));
                        self.pivots[c] = Some(nr);
                        grew = true;
                    }
                }
            }
        }
        grew
    }

    fn annihilator(&self, r: &[i64], c: usize) -> Option<Vec<i64>> {
        let f = self.m / gcd(r[c], self.m);
        let ann: Vec<i64> = r.iter().map(|x| (x * f).rem_euclid(self.m)).collect();
        ann.iter().any(|&x| x != 0).then_some(ann)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let m = self.m;
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(m)).collect();
        for c in 0..self.n {
            if v[c] == 0 {
                continue;
            }
            let Some(r) = &self.pivots[c] else {
                return false;
            };
            if v[c] % r[c] != 0 {
                return false;
            }
            let f = v[c] / r[c];
            for (x, y) in v.iter_mut().zip(r) {
                *x = (*x - f * y).rem_euclid(m);
            }
        }
        true
    }

    /// Echelon rows, by pivot column.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Natural logarithm of the number of elements in the span.
    pub fn log_cardinality(&self) -> f64 {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| ((self.m / r[c]) as f64).ln()))
            .sum()
    }

    /// Number of elements in the span.
    pub fn cardinality(&self) -> u128 {
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (self.m / r[c]) as u128))
            .product()
    }
}

/// Invariant factors `d_1 | d_2 | ...` (all > 1) of a direct sum of cyclic
/// groups with the given orders.
pub fn invariant_factors(orders: &[i64]) -> Vec<i64> {
    use std::collections::BTreeMap;
    let mut primary: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &o in orders {
        let mut n = o;
        let mut p = 2;
        while n > 1 {
            if p * p > n {
                p = n;
            }
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                primary.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1i64; len];
    for powers in primary.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(rows: &[Vec<i64>], x: &[i64], m: i64) -> Vec<i64> {
        rows.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m))
            .collect()
    }

    // Brute-force kernel size for tiny systems.
    fn brute_kernel(rows: &[Vec<i64>], n: usize, m: i64) -> u128 {
        let mut count = 0;
        let total = (m as usize).pow(n as u32);
        for t in 0..total {
            let x: Vec<i64> = (0..n).map(|i| ((t / (m as usize).pow(i as u32)) % m as usize) as i64).collect();
            if apply(rows, &x, m).iter().all(|&v| v == 0) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn kernel_over_composite_modulus() {
        let rows = vec![vec![2, 4, 0], vec![0, 3, 6], vec![1, 1, 1]];
        for m in [2, 4, 6, 8, 12] {
            let k = ModKernel::compute(&rows, 3, m);
            assert_eq!(k.cardinality(), brute_kernel(&rows, 3, m), "m={m}");
            for g in &k.generators {
                assert!(apply(&rows, g, m).iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let rows = vec![vec![2, 2, 0, 1], vec![0, 0, 2, 2]];
        let m = 4;
        let k = ModKernel::compute(&rows, 4, m);
        for t in 0..256usize {
            let x: Vec<i64> = (0..4).map(|i| ((t >> (2 * i)) & 3) as i64).collect();
            let in_kernel = apply(&rows, &x, m).iter().all(|&v| v == 0);
            match k.coordinates(&x) {
                Some(c) => {
                    assert!(in_kernel);
                    assert_eq!(k.combine(&c), x);
                }
                None => assert!(!in_kernel),
            }
        }
    }

    #[test]
    fn span_membership_matches_enumeration() {
        let m = 4;
        let gens = vec![vec![2, 1, 0], vec![0, 2, 2]];
        let mut span = RowSpan::new(3, m);
        for g in &gens {
            span.insert(g.clone());
        }
        let mut reach = std::collections::BTreeSet::new();
        for a in 0..m {
            for b in 0..m {
                let v: Vec<i64> = (0..3).map(|i| (a * gens[0][i] + b * gens[1][i]) % m).collect();
                reach.insert(v);
            }
        }
        assert_eq!(span.cardinality(), reach.len() as u128);
        for t in 0..64usize {
            let v: Vec<i64> = (0..3).map(|i| ((t >> (2 * i)) & 3) as i64).collect();
            assert_eq!(span.contains(&v), reach.contains(&v), "{v:?}");
        }
    }

    #[test]
    fn invariant_factor_normal_form() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[2, 4, 2]), vec![2, 2, 4]);
        assert_eq!(invariant_factors(&[]), Vec::<i64>::new());
        assert_eq!(invariant_factors(&[1, 6, 4]), vec![2, 12]);
    }
}
