//! The invariant: weights of all colourings collected into a formal sum.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::{render_formal_sum, zeta, Carrier, FiniteGroup, FormalSum, QuotientPolyRing, Ring};
use crate::cohomology::Cochain3;
use crate::colouring::{enumerate_colourings, Colouring};
use crate::error::{Error, Result};
use crate::gsystem::weight::{weight_1dim_at, weight_at};
use crate::gsystem::GSystem;
use crate::spine::{Spine, CELL_SLOTS};

/// How much invariance the system guarantees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Strong and special: invariant under both moves.
    Full,
    /// Special but not strong: invariant under T-moves only.
    TMoveOnly,
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub spine: String,
    pub group: String,
    pub system: String,
    pub sum: FormalSum,
    pub weights: Vec<(Colouring, Vec<i64>)>,
    pub claim: Claim,
    pub elapsed: Duration,
    cell_ids: Vec<String>,
}

/// One weight in multiplicative notation: `1`, `t`, `t^2`, or a ring element.
pub fn render_value(carrier: &Carrier, v: &[i64]) -> String {
    let exp = match carrier {
        Carrier::Coeff(k) if k.rank() == 1 => Some(v[0]),
        Carrier::Ring(Ring::QuotientPoly { m }) => QuotientPolyRing { modulus: *m }.as_monomial(v),
        _ => None,
    };
    match exp {
        Some(0) => "1".into(),
        Some(1) => "t".into(),
        Some(j) => format!("t^{j}"),
        None => match carrier {
            Carrier::Ring(r) => r.render(v),
            Carrier::Coeff(_) => format!("t^{v:?}"),
        },
    }
}

/// `2*1 + 2*t` style rendering of a formal sum.
pub fn render_sum(fs: &FormalSum) -> String {
    let modulus = match fs.carrier() {
        Carrier::Coeff(k) => k.single_modulus(),
        Carrier::Ring(Ring::QuotientPoly { m }) => {
            let r = QuotientPolyRing { modulus: *m };
            fs.terms().keys().all(|k| r.as_monomial(k).is_some()).then_some(*m as i64)
        }
        Carrier::Ring(Ring::Zmod { .. }) => None,
    };
    if let Some(m) = modulus {
        return render_formal_sum(fs, m);
    }
    if fs.is_empty() {
        return "0".into();
    }
    fs.terms()
        .iter()
        .map(|(k, n)| format!("{n}*[{}]", render_value(fs.carrier(), k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl InvariantReport {
    pub fn rendered_sum(&self) -> String {
        render_sum(&self.sum)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spine: {}", self.spine);
        let _ = writeln!(out, "group: {}", self.group);
        let _ = writeln!(out, "system: {}", self.system);
        let _ = writeln!(out, "colourings: {}", self.weights.len());
        for (xi, w) in &self.weights {
            let assignment: Vec<String> = self
                .cell_ids
                .iter()
                .zip(&xi.values)
                .map(|(c, v)| format!("{c}={v}"))
                .collect();
            let _ = writeln!(out, "  {}  ->  {}", assignment.join(","), render_value(self.sum.carrier(), w));
        }
        let _ = writeln!(out, "DW = {}", self.rendered_sum());
        if self.claim == Claim::TMoveOnly {
            let _ = writeln!(out, "note: special but not strong; T-move invariance only");
        }
        let _ = writeln!(out, "time: {:.3} s", self.elapsed.as_secs_f64());
        out
    }
}

/// Weights of every colouring, in enumeration order. The system should be
/// symmetric; this is not checked here.
pub fn weights(s: &Spine, sys: &GSystem) -> Result<Vec<(Colouring, Vec<i64>)>> {
    let topo = s.topology()?;
    enumerate_colourings(s, &sys.group)?
        .into_par_iter()
        .map(|xi| {
            let w = weight_at(s, &topo, &xi.values, sys)?;
            Ok((xi, w))
        })
        .collect()
}

/// `DW` through the general engine, without checking the system.
pub fn dw(s: &Spine, sys: &GSystem) -> Result<FormalSum> {
    let ws = weights(s, sys)?;
    Ok(zeta(Carrier::Ring(sys.ring), ws.into_iter().map(|(_, w)| w)))
}

/// Refuses systems that are not symmetric or not special.
pub fn classify(sys: &GSystem) -> Result<Claim> {
    sys.check_symmetric()
        .map_err(|f| Error::Precondition(format!("not a G-system: {f}")))?;
    sys.check_special()
        .map_err(|f| Error::Precondition(format!("no invariant is defined: {f}")))?;
    Ok(if sys.check_strong().is_ok() {
        Claim::Full
    } else {
        Claim::TMoveOnly
    })
}

pub fn invariant_report(s: &Spine, sys: &GSystem, system: &str) -> Result<InvariantReport> {
    let start = Instant::now();
    let claim = classify(sys)?;
    let weights = weights(s, sys)?;
    let sum = zeta(Carrier::Ring(sys.ring), weights.iter().map(|(_, w)| w.clone()));
    Ok(InvariantReport {
        spine: s.name.clone(),
        group: sys.group.name().to_string(),
        system: system.to_string(),
        sum,
        weights,
        claim,
        elapsed: start.elapsed(),
        cell_ids: s.cells.clone(),
    })
}

fn weights_1dim(s: &Spine, g: &FiniteGroup, omega: &Cochain3) -> Result<Vec<(Colouring, Vec<i64>)>> {
    if omega.order() != g.order() {
        return Err(Error::arg("cocycle and group do not match"));
    }
    if let Some(v) = omega.first_violation(g) {
        return Err(Error::Precondition(format!("not a 3-cocycle: {v}")));
    }
    let topo = s.topology()?;
    enumerate_colourings(s, g)?
        .into_par_iter()
        .map(|xi| {
            let w = weight_1dim_at(&topo, &xi.values, g, omega).map_err(|(v, slot)| {
                Error::Encoding(format!(
                    "vertex {}: slot {} does not carry the product of the local colours",
                    s.vertices[v].id, CELL_SLOTS[slot]
                ))
            })?;
            Ok((xi, w))
        })
        .collect()
}

/// `DW_omega` by the additive shortcut, as a formal sum over `k`.
pub fn dw_1dim(s: &Spine, g: &FiniteGroup, omega: &Cochain3) -> Result<FormalSum> {
    let ws = weights_1dim(s, g, omega)?;
    Ok(zeta(Carrier::Coeff(omega.coeff().clone()), ws.into_iter().map(|(_, w)| w)))
}

pub fn invariant_report_1dim(s: &Spine, g: &FiniteGroup, omega: &Cochain3, system: &str) -> Result<InvariantReport> {
    let start = Instant::now();
    let weights = weights_1dim(s, g, omega)?;
    let sum = zeta(Carrier::Coeff(omega.coeff().clone()), weights.iter().map(|(_, w)| w.clone()));
    Ok(InvariantReport {
        spine: s.name.clone(),
        group: g.name().to_string(),
        system: system.to_string(),
        sum,
        weights,
        claim: Claim::Full,
        elapsed: start.elapsed(),
        cell_ids: s.cells.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsystem::system_from_cocycle;
    use crate::spine::catalog;

    #[test]
    fn worked_example() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let w = Cochain3::example_z4();
        let s = catalog("L41").unwrap();
        assert_eq!(render_sum(&dw_1dim(&s, &g, &w).unwrap()), "2*1 + 2*t");
        let sys = system_from_cocycle(&g, &w).unwrap();
        let r = invariant_report(&s, &sys, "example").unwrap();
        assert_eq!(r.rendered_sum(), "2*1 + 2*t");
        assert_eq!(r.claim, Claim::Full);
        let shown: Vec<String> = r.weights.iter().map(|(_, w)| render_value(r.sum.carrier(), w)).collect();
        assert_eq!(shown, ["1", "1", "t", "t"]);
        assert!(r.to_text().contains("c1=2,c2=1  ->  t"));
    }

    #[test]
    fn zero_cocycle_counts_colourings() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let z = Cochain3::zero(&g, &crate::algebra::CoeffGroup::cyclic(2).unwrap());
        let s = catalog("L41").unwrap();
        assert_eq!(render_sum(&dw_1dim(&s, &g, &z).unwrap()), "4*1");
    }

    #[test]
    fn generic_rendering() {
        let fs = zeta(Carrier::Ring(Ring::Zmod { n: 5 }), [vec![3], vec![3], vec![1]]);
        assert_eq!(render_sum(&fs), "1*[1] + 2*[3]");
    }
}
