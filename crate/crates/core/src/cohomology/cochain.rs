use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{gamma_partner, tuple_at, tuple_index, SymOrbits};
use crate::algebra::{CoeffGroup, FiniteGroup};
use crate::error::{Error, Result};

/// A `k`-valued function on `G^N`, stored densely in row-major tuple order.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain<const N: usize> {
    order: usize,
    k: CoeffGroup,
    values: Vec<i64>,
}

pub type Cochain2 = Cochain<2>;
pub type Cochain3 = Cochain<3>;

impl<const N: usize> fmt::Debug for Cochain<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain<{N}>(|G|={}, k={}, nonzero={})", self.order, self.k.name(), self.support().len())
    }
}

/// Where a cochain first fails a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f(t) + f(s_i(t)) != 0`.
    Gamma { i: usize, tuple: Vec<usize> },
    /// The degree-4 cocycle condition fails at this quadruple.
    Boundary { tuple: [usize; 4] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Gamma { i, tuple } => write!(f, "gamma^{i} condition at {tuple:?}"),
            Violation::Boundary { tuple } => write!(f, "cocycle condition at {tuple:?}"),
        }
    }
}

impl<const N: usize> Cochain<N> {
    pub fn zero(g: &FiniteGroup, k: &CoeffGroup) -> Self {
        let size = g.order().pow(N as u32);
        Cochain {
            order: g.order(),
            k: k.clone(),
            values: vec![0; size * k.rank()],
        }
    }

    pub fn from_fn(g: &FiniteGroup, k: &CoeffGroup, f: impl Fn(&[usize]) -> Vec<i64>) -> Self {
        let mut c = Self::zero(g, k);
        for idx in 0..c.len() {
            let v = f(&tuple_at(c.order, N, idx));
            c.set_idx(idx, &v);
        }
        c
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.k
    }

    /// Number of tuples.
    pub fn len(&self) -> usize {
        self.order.pow(N as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get_idx(&self, idx: usize) -> &[i64] {
        let r = self.k.rank();
        &self.values[idx * r..(idx + 1) * r]
    }

    pub fn set_idx(&mut self, idx: usize, v: &[i64]) {
        let r = self.k.rank();
        let v = self.k.reduce(v);
        self.values[idx * r..(idx + 1) * r].copy_from_slice(&v);
    }

    #[inline]
    pub fn get(&self, t: [usize; N]) -> &[i64] {
        self.get_idx(tuple_index(self.order, &t))
    }

    pub fn set(&mut self, t: [usize; N], v: &[i64]) {
        self.set_idx(tuple_index(self.order, &t), v);
    }

    /// First component as a residue; the natural reading when `k` is cyclic.
    #[inline]
    pub fn scalar(&self, t: [usize; N]) -> i64 {
        self.get(t)[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Tuples with a nonzero value, ascending.
    pub fn support(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .filter(|&i| !self.k.is_zero(self.get_idx(i)))
            .map(|i| tuple_at(self.order, N, i))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order || self.k != other.k {
            return Err(Error::arg("cochains over different groups"));
        }
        let mut out = self.clone();
        for idx in 0..self.len() {
            let v = self.k.add(self.get_idx(idx), other.get_idx(idx));
            out.set_idx(idx, &v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = self.clone();
        for idx in 0..self.len() {
            let v = self.k.scale(self.get_idx(idx), s);
            out.set_idx(idx, &v);
        }
        out
    }

    /// Values on the given coordinates of one `k` component, tuple order.
    pub(crate) fn component(&self, c: usize) -> Vec<i64> {
        let r = self.k.rank();
        (0..self.len()).map(|i| self.values[i * r + c]).collect()
    }

    /// The first `gamma` condition this cochain violates, if any.
    pub fn first_q_violation(&self, g: &FiniteGroup) -> Option<Violation> {
        for idx in 0..self.len() {
            let t = tuple_at(self.order, N, idx);
            for i in 1..=N {
                let p = gamma_partner(g, i, &t).expect("index in range");
                let s = self.k.add(self.get_idx(idx), self.get_idx(tuple_index(self.order, &p)));
                if !self.k.is_zero(&s) {
                    return Some(Violation::Gamma { i, tuple: t });
                }
            }
        }
        None
    }

    /// Whether the cochain vanishes on every generator of `Q_N`.
    pub fn respects_q(&self, g: &FiniteGroup) -> bool {
        self.first_q_violation(g).is_none()
    }

    /// Text form: one `g1 ... gN -> v1,v2` line per nonzero value.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in self.support() {
            let mut arr = [0usize; N];
            arr.copy_from_slice(&t);
            let v: Vec<String> = self.get(arr).iter().map(i64::to_string).collect();
            let t: Vec<String> = t.iter().map(usize::to_string).collect();
            out.push_str(&format!("{} -> {}\n", t.join(" "), v.join(",")));
        }
        out
    }

    /// Parses the text form; unlisted tuples are zero, `#` starts a comment.
    pub fn parse_text(text: &str, g: &FiniteGroup, k: &CoeffGroup) -> Result<Self> {
        let mut c = Self::zero(g, k);
        let mut seen = std::collections::HashSet::new();
        for (ln, line) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, "expected `g1 ... -> v`"))?;
            let t: Vec<usize> = lhs
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| Error::parse(ln, format!("bad element `{s}`"))))
                .collect::<Result<_>>()?;
            if t.len() != N {
                return Err(Error::parse(ln, format!("expected {N} elements, found {}", t.len())));
            }
            if let Some(&bad) = t.iter().find(|&&x| x >= g.order()) {
                return Err(Error::parse(ln, format!("element {bad} out of range")));
            }
            let v: Vec<i64> = rhs
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::parse(ln, format!("bad value `{}`", s.trim()))))
                .collect::<Result<_>>()?;
            if v.len() != k.rank() {
                return Err(Error::parse(ln, format!("expected {} value(s), found {}", k.rank(), v.len())));
            }
            let idx = tuple_index(g.order(), &t);
            if !seen.insert(idx) {
                return Err(Error::parse(ln, format!("duplicate entry for {t:?}")));
            }
            c.set_idx(idx, &v);
        }
        Ok(c)
    }
}

impl Cochain3 {
    /// The first failing condition among the `gamma` conditions and the
    /// degree-4 cocycle condition.
    pub fn first_violation(&self, g: &FiniteGroup) -> Option<Violation> {
        if let Some(v) = self.first_q_violation(g) {
            return Some(v);
        }
        let n = self.order;
        let k = &self.k;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    let abc_t = self.get([a, b, c]);
                    for d in 0..n {
                        let cd = g.mul(c, d);
                        // w(b,c,d) - w(ab,c,d) + w(a,bc,d) - w(a,b,cd) + w(a,b,c)
                        let mut s = k.add(self.get([b, c, d]), &k.neg(self.get([ab, c, d])));
                        s = k.add(&s, self.get([a, bc, d]));
                        s = k.add(&s, &k.neg(self.get([a, b, cd])));
                        s = k.add(&s, abc_t);
                        if !k.is_zero(&s) {
                            return Some(Violation::Boundary { tuple: [a, b, c, d] });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_3cocycle(&self, g: &FiniteGroup) -> bool {
        self.first_violation(g).is_none()
    }

    /// The worked `Z4` example with `k = Z2`: value 1 on exactly six triples.
    pub fn example_z4() -> Self {
        let g = FiniteGroup::cyclic(4).expect("Z4");
        let k = CoeffGroup::cyclic(2).expect("Z2");
        let mut w = Self::zero(&g, &k);
        for t in [[1, 1, 1], [1, 2, 3], [2, 1, 2], [2, 3, 2], [3, 2, 1], [3, 3, 3]] {
            w.set(t, &[1]);
        }
        w
    }
}

/// `w(a,b,c) = d(b,c) - d(ab,c) + d(a,bc) - d(a,b)`.
pub fn coboundary3(g: &FiniteGroup, delta: &Cochain2) -> Result<Cochain3> {
    if delta.order() != g.order() {
        return Err(Error::arg("cochain and group have different orders"));
    }
    if let Some(v) = delta.first_q_violation(g) {
        return Err(Error::arg(format!("2-cochain does not vanish on Q_2: {v}")));
    }
    let k = delta.coeff().clone();
    Ok(Cochain3::from_fn(g, &k, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let mut s = k.add(delta.get([b, c]), &k.neg(delta.get([g.mul(a, b), c])));
        s = k.add(&s, delta.get([a, g.mul(b, c)]));
        k.add(&s, &k.neg(delta.get([a, b])))
    }))
}

/// A seeded random 2-cochain vanishing on `Q_2`.
pub fn random_cochain2(g: &FiniteGroup, k: &CoeffGroup, seed: u64) -> Cochain2 {
    let orbits = SymOrbits::new(g, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rep_values: Vec<Vec<i64>> = (0..orbits.num_reps())
        .map(|p| {
            k.moduli()
                .iter()
                .map(|&m| {
                    if !orbits.is_torsion(p) {
                        rng.gen_range(0..m)
                    } else if m % 2 == 0 {
                        rng.gen_range(0..2) * (m / 2)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let mut d = Cochain2::zero(g, k);
    for idx in 0..d.len() {
        let (p, s) = orbits.locate(idx);
        let v = if s > 0 { rep_values[p].clone() } else { k.neg(&rep_values[p]) };
        d.set_idx(idx, &v);
    }
    d
}
