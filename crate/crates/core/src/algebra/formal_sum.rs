use std::collections::BTreeMap;

use super::{CoeffGroup, Ring};
use crate::error::{Error, Result};

/// What the keys of a [`FormalSum`] are and how they multiply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// Keys are elements of `k`; the product of keys is their sum in `k`.
    Coeff(CoeffGroup),
    /// Keys are ring elements in their canonical encoding.
    Ring(Ring),
}

impl Carrier {
    fn combine(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        match self {
            Carrier::Coeff(k) => k.add(x, y),
            Carrier::Ring(r) => r.mul(x, y),
        }
    }
}

/// A finite formal sum `sum n_x * x` with integer multiplicities, kept sparse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    carrier: Carrier,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl FormalSum {
    pub fn empty(carrier: Carrier) -> Self {
        FormalSum {
            carrier,
            terms: BTreeMap::new(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, key: &[i64]) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: Vec<i64>, mult: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                if mult != 0 {
                    v.insert(mult);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn same_carrier(&self, other: &FormalSum) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::arg("formal sums over different carriers"))
        }
    }

    pub fn add(&self, other: &FormalSum) -> Result<FormalSum> {
        self.same_carrier(other)?;
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &FormalSum) -> Result<FormalSum> {
        self.same_carrier(other)?;
        let mut out = FormalSum::empty(self.carrier.clone());
        for (x, &m) in &self.terms {
            for (y, &n) in &other.terms {
                out.add_term(self.carrier.combine(x, y), m * n);
            }
        }
        Ok(out)
    }
}

/// The formal sum counting each distinct value of a multiset.
pub fn zeta<I>(carrier: Carrier, values: I) -> FormalSum
where
    I: IntoIterator<Item = Vec<i64>>,
{
    let mut out = FormalSum::empty(carrier);
    for v in values {
        out.add_term(v, 1);
    }
    out
}

/// Renders a sum over `k = Z_m` multiplicatively: `2*1 + 2*t`.
///
/// Keys are read as residues in their first component; ring-valued sums with
/// monomial keys render through their exponent.
pub fn render_formal_sum(fs: &FormalSum, m: i64) -> String {
    let mut by_residue: BTreeMap<i64, i64> = BTreeMap::new();
    for (key, &mult) in &fs.terms {
        let j = match &fs.carrier {
            Carrier::Ring(Ring::QuotientPoly { m: rm }) => super::QuotientPolyRing { modulus: *rm }
                .as_monomial(key)
                .unwrap_or(key[0]),
            _ => key[0],
        };
        *by_residue.entry(j.rem_euclid(m)).or_insert(0) += mult;
    }
    let terms: Vec<String> = by_residue
        .into_iter()
        .filter(|&(_, mult)| mult != 0)
        .map(|(j, mult)| match j {
            0 => format!("{mult}*1"),
            1 => format!("{mult}*t"),
            _ => format!("{mult}*t^{j}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Carrier {
        Carrier::Coeff(CoeffGroup::cyclic(2).unwrap())
    }

    #[test]
    fn add_merges() {
        let a = zeta(z2(), [vec![0], vec![0]]);
        let b = zeta(z2(), [vec![0], vec![1]]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.multiplicity(&[0]), 3);
        assert_eq!(s.multiplicity(&[1]), 1);
    }

    #[test]
    fn mul_opens_parentheses() {
        let a = zeta(z2(), [vec![0], vec![1]]);
        let p = a.mul(&a).unwrap();
        assert_eq!(render_formal_sum(&p, 2), "2*1 + 2*t");
        let e = FormalSum::empty(z2());
        assert!(a.mul(&e).unwrap().is_empty());
    }

    #[test]
    fn rendering() {
        assert_eq!(render_formal_sum(&FormalSum::empty(z2()), 2), "0");
        let z4 = Carrier::Coeff(CoeffGroup::cyclic(4).unwrap());
        assert_eq!(render_formal_sum(&zeta(z4, [vec![2]]), 4), "1*t^2");
        let five = zeta(z2(), std::iter::repeat(vec![0]).take(5));
        assert_eq!(render_formal_sum(&five, 2), "5*1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut s = zeta(z2(), [vec![1]]);
        s.add_term(vec![1], -1);
        assert!(s.is_empty());
    }

    #[test]
    fn carriers_must_match() {
        let a = zeta(z2(), [vec![0]]);
        let b = zeta(Carrier::Coeff(CoeffGroup::cyclic(3).unwrap()), [vec![0]]);
        assert!(matches!(a.add(&b), Err(Error::Argument(_))));
    }
}
