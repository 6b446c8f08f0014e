//! The symmetric chain complex of a finite group with coefficients in `k`.
//!
//! `D_n` is free on `n`-tuples of group elements. The subgroup `Q_n` is
//! spanned by the two-term chains `gamma^i_t = t + s_i(t)` where each `s_i`
//! is an involution on tuples. Cochains are total tables that vanish on `Q`.

mod chain;
mod cochain;
mod orbits;
mod solve;

pub use chain::{boundary, boundary_in_q, face_map, gamma_generator, gamma_partner, Chain};
pub use cochain::{coboundary3, random_cochain2, Cochain, Cochain2, Cochain3, Violation};
pub use orbits::SymOrbits;
pub use solve::{h3, solve_3cocycles, CocycleGroup, H3};

/// Row-major index of a tuple of group elements.
#[inline]
pub fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * order + g)
}

/// Inverse of [`tuple_index`].
pub fn tuple_at(order: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    t
}
