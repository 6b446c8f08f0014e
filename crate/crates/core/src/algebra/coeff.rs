use std::fmt;

use crate::error::{Error, Result};

/// The abelian coefficient group `k = Z_{m1} x ... x Z_{mr}`, written additively.
///
/// Elements are residue vectors with one entry per factor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffGroup {
    moduli: Vec<i64>,
}

impl fmt::Debug for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffGroup({})", self.name())
    }
}

impl CoeffGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::arg("coefficient group needs at least one factor"));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 1) {
            return Err(Error::arg(format!("modulus {m} must be positive")));
        }
        Ok(CoeffGroup { moduli })
    }

    pub fn cyclic(m: i64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// Parses `Z2`, `Z4`, `Z2xZ4`.
    pub fn parse(spec: &str) -> Result<Self> {
        let moduli = spec
            .split('x')
            .map(|p| {
                p.trim()
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<i64>().ok())
                    .ok_or_else(|| Error::arg(format!("bad coefficient factor `{p}` (use Zm)")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }

    pub fn name(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// The single modulus of a cyclic `k`, if it is cyclic as presented.
    pub fn single_modulus(&self) -> Option<i64> {
        match self.moduli[..] {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn order(&self) -> i64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(v, m)| v.rem_euclid(*m))
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b).rem_euclid(*m))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, m)| (-a).rem_euclid(*m))
            .collect()
    }

    pub fn scale(&self, x: &[i64], s: i64) -> Vec<i64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, m)| (a * s).rem_euclid(*m))
            .collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v == 0)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.moduli).all(|(v, m)| (0..*m).contains(v))
    }

    /// All elements in lexicographic residue order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..m).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn componentwise_arithmetic() {
        let k = CoeffGroup::parse("Z2xZ4").unwrap();
        assert_eq!(k.add(&[1, 3], &[1, 2]), vec![0, 1]);
        assert_eq!(k.neg(&[1, 1]), vec![1, 3]);
        assert_eq!(k.order(), 8);
        assert_eq!(k.elements().len(), 8);
        assert_eq!(k.name(), "Z2xZ4");
    }

    #[test]
    fn bad_specs() {
        assert!(CoeffGroup::parse("Q2").is_err());
        assert!(CoeffGroup::new(vec![0]).is_err());
    }
}
