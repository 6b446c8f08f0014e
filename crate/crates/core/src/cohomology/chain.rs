use std::collections::BTreeMap;

use super::SymOrbits;
use crate::algebra::{CoeffGroup, FiniteGroup};
use crate::error::{Error, Result};

/// A finite `k`-linear combination of `n`-tuples of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, Vec<i64>>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Vec<i64>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * t`, dropping the term if it cancels.
    pub fn add_term(&mut self, k: &CoeffGroup, t: Vec<usize>, coeff: &[i64]) -> Result<()> {
        if t.len() != self.degree {
            return Err(Error::arg(format!(
                "tuple of length {} in a degree-{} chain",
                t.len(),
                self.degree
            )));
        }
        let zero = k.zero();
        let e = self.terms.entry(t.clone()).or_insert(zero);
        *e = k.add(e, coeff);
        if k.is_zero(e) {
            self.terms.remove(&t);
        }
        Ok(())
    }

    pub fn add(&self, k: &CoeffGroup, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(k, t.clone(), c)?;
        }
        Ok(out)
    }
}

/// `d^i_n`: drop the first entry (`i = 0`), multiply entries `i` and `i+1`
/// (1-based), or drop the last entry (`i = n`).
pub fn face_map(g: &FiniteGroup, i: usize, t: &[usize]) -> Result<Vec<usize>> {
    let n = t.len();
    if n < 1 || i > n {
        return Err(Error::arg(format!("face index {i} out of range for degree {n}")));
    }
    Ok(match i {
        0 => t[1..].to_vec(),
        _ if i == n => t[..n - 1].to_vec(),
        _ => {
            let mut out = Vec::with_capacity(n - 1);
            out.extend_from_slice(&t[..i - 1]);
            out.push(g.mul(t[i - 1], t[i]));
            out.extend_from_slice(&t[i + 1..]);
            out
        }
    })
}

/// `sum (-1)^i d^i`, extended linearly. Degrees `<= 1` map to zero.
pub fn boundary(g: &FiniteGroup, k: &CoeffGroup, c: &Chain) -> Result<Chain> {
    let n = c.degree;
    if n <= 1 {
        return Ok(Chain::zero(n.saturating_sub(1)));
    }
    let mut out = Chain::zero(n - 1);
    for (t, coeff) in &c.terms {
        let neg = k.neg(coeff);
        for i in 0..=n {
            let f = face_map(g, i, t)?;
            out.add_term(k, f, if i % 2 == 0 { coeff } else { &neg })?;
        }
    }
    Ok(out)
}

/// The second tuple of `gamma^i_t` (1-based `i`).
pub fn gamma_partner(g: &FiniteGroup, i: usize, t: &[usize]) -> Result<Vec<usize>> {
    let n = t.len();
    if n < 1 || i < 1 || i > n {
        return Err(Error::arg(format!("gamma index {i} out of range for degree {n}")));
    }
    let mut out = t.to_vec();
    let gi = t[i - 1];
    out[i - 1] = g.inv(gi);
    if i >= 2 {
        out[i - 2] = g.mul(t[i - 2], gi);
    }
    if i < n {
        out[i] = g.mul(gi, t[i]);
    }
    Ok(out)
}

/// `gamma^i_t = t + partner`, both with coefficient one.
pub fn gamma_generator(g: &FiniteGroup, k: &CoeffGroup, i: usize, t: &[usize]) -> Result<Chain> {
    let p = gamma_partner(g, i, t)?;
    let one = vec![1; k.rank()];
    let one = k.reduce(&one);
    let mut c = Chain::zero(t.len());
    c.add_term(k, t.to_vec(), &one)?;
    c.add_term(k, p, &one)?;
    Ok(c)
}

/// Whether `boundary(gamma^i_t)` lies in `Q_{n-1}`.
pub fn boundary_in_q(g: &FiniteGroup, k: &CoeffGroup, i: usize, t: &[usize]) -> Result<bool> {
    let n = t.len();
    if n < 2 {
        return Err(Error::arg("boundary_in_q needs degree >= 2"));
    }
    let b = boundary(g, k, &gamma_generator(g, k, i, t)?)?;
    let orbits = SymOrbits::new(g, n - 1);
    Ok(orbits.chain_in_q(k, &b))
}
