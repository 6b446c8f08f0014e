//! Finite groups, coefficient groups, rings and formal sums.

mod coeff;
mod formal_sum;
mod group;
mod ring;

pub use coeff::CoeffGroup;
pub use formal_sum::{render_formal_sum, zeta, Carrier, FormalSum};
pub use group::{FiniteGroup, BUILTIN_GROUPS};
pub use ring::{QuotientPolyRing, Ring};

/// Extended gcd on non-negative inputs: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
