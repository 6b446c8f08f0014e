use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z[x]/(x^m - 1)`. An element is its coefficient vector, index `j` holding
/// the coefficient of `x^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientPolyRing {
    pub modulus: usize,
}

impl QuotientPolyRing {
    pub fn new(modulus: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::arg("quotient ring modulus must be positive"));
        }
        Ok(QuotientPolyRing { modulus })
    }

    /// `x^j`, reducing `j` modulo `m`.
    pub fn monomial(&self, j: i64) -> Vec<i64> {
        let mut e = vec![0; self.modulus];
        e[j.rem_euclid(self.modulus as i64) as usize] = 1;
        e
    }

    /// The exponent `j` if `e = x^j`.
    pub fn as_monomial(&self, e: &[i64]) -> Option<i64> {
        let mut hit = None;
        for (j, &c) in e.iter().enumerate() {
            match (c, hit) {
                (0, _) => {}
                (1, None) => hit = Some(j as i64),
                _ => return None,
            }
        }
        hit
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let m = self.modulus;
        let mut out = vec![0; m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[(i + j) % m] += x * y;
            }
        }
        out
    }
}

/// Commutative coefficient rings understood by the tensor engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ring {
    /// `Z[x]/(x^m - 1)`, width `m`.
    QuotientPoly { m: usize },
    /// `Z/nZ`, width 1.
    Zmod { n: i64 },
}

impl Ring {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Ring::QuotientPoly { m: 0 } => Err(Error::arg("ring modulus must be positive")),
            Ring::Zmod { n } if n < 1 => Err(Error::arg("ring modulus must be positive")),
            _ => Ok(()),
        }
    }

    /// Number of integers per element.
    #[inline]
    pub fn width(&self) -> usize {
        match *self {
            Ring::QuotientPoly { m } => m,
            Ring::Zmod { .. } => 1,
        }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.width()]
    }

    pub fn one(&self) -> Vec<i64> {
        let mut e = self.zero();
        e[0] = 1 % self.zmod_n().unwrap_or(2);
        e
    }

    fn zmod_n(&self) -> Option<i64> {
        match *self {
            Ring::Zmod { n } => Some(n),
            _ => None,
        }
    }

    pub fn from_int(&self, v: i64) -> Vec<i64> {
        let mut e = self.zero();
        e[0] = v;
        self.normalize(&mut e);
        e
    }

    pub fn normalize(&self, e: &mut [i64]) {
        if let Ring::Zmod { n } = *self {
            e[0] = e[0].rem_euclid(n);
        }
    }

    /// `acc += a * b`.
    #[inline]
    pub fn mul_add(&self, acc: &mut [i64], a: &[i64], b: &[i64]) {
        match *self {
            Ring::Zmod { n } => acc[0] = (acc[0] + a[0] * b[0]).rem_euclid(n),
            Ring::QuotientPoly { m } => {
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        if y != 0 {
                            let k = if i + j >= m { i + j - m } else { i + j };
                            acc[k] += x * y;
                        }
                    }
                }
            }
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = self.zero();
        self.mul_add(&mut out, a, b);
        out
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&mut out);
        out
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.normalize(&mut out);
        out
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = a.iter().map(|x| -x).collect();
        self.normalize(&mut out);
        out
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Multiplicative inverse of a unit this engine can recognise: residues
    /// coprime to `n` in `Z/nZ`, and `±x^j` in the quotient polynomial ring.
    pub fn inverse(&self, a: &[i64]) -> Option<Vec<i64>> {
        match *self {
            Ring::Zmod { n } => {
                let (g, s, _) = super::ext_gcd(a[0].rem_euclid(n), n);
                (g == 1).then(|| vec![s.rem_euclid(n)])
            }
            Ring::QuotientPoly { m } => {
                let nz: Vec<usize> = (0..m).filter(|&j| a[j] != 0).collect();
                match nz[..] {
                    [j] if a[j].abs() == 1 => {
                        let mut e = vec![0; m];
                        e[(m - j) % m] = a[j];
                        Some(e)
                    }
                    _ => None,
                }
            }
        }
    }

    /// The embedding of `Z_m` into units used for cocycle systems.
    pub fn monomial(&self, j: i64) -> Vec<i64> {
        match *self {
            Ring::QuotientPoly { m } => QuotientPolyRing { modulus: m }.monomial(j),
            Ring::Zmod { .. } => self.one(),
        }
    }

    pub fn render(&self, a: &[i64]) -> String {
        match *self {
            Ring::Zmod { .. } => a[0].to_string(),
            Ring::QuotientPoly { .. } => {
                let terms: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| match j {
                        0 => c.to_string(),
                        1 => format!("{c}*x"),
                        _ => format!("{c}*x^{j}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_multiply_cyclically() {
        let r = QuotientPolyRing::new(4).unwrap();
        assert_eq!(r.mul(&r.monomial(3), &r.monomial(2)), r.monomial(1));
        assert_eq!(r.monomial(4), r.monomial(0));
        assert_eq!(r.as_monomial(&r.monomial(3)), Some(3));
        assert_eq!(r.as_monomial(&[1, 1, 0, 0]), None);
    }

    #[test]
    fn ring_inverses() {
        let q = Ring::QuotientPoly { m: 3 };
        let x = q.monomial(1);
        assert_eq!(q.mul(&x, &q.inverse(&x).unwrap()), q.one());
        assert!(q.inverse(&[1, 1, 0]).is_none());
        let z = Ring::Zmod { n: 7 };
        assert_eq!(z.inverse(&[3]), Some(vec![5]));
        assert!(Ring::Zmod { n: 6 }.inverse(&[2]).is_none());
    }
}
