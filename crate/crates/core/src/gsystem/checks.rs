//! The symmetric, special and strong conditions, checked exhaustively.

use std::fmt;

use super::{GSystem, Tensor};
use crate::error::Result;
use crate::spine::locally_incoming;

/// Where a condition first fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Swapping balls `swap.0` and `swap.1` changes the vertex tensor.
    Symmetric { swap: (usize, usize), triple: [usize; 3] },
    Special { quadruple: [usize; 4] },
    Strong { triple: [usize; 3] },
    /// Strength is only defined for special systems.
    NotSpecial { quadruple: [usize; 4] },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Symmetric { swap, triple } => write!(
                f,
                "vertex tensor changes when balls {} and {} are swapped at {triple:?}",
                swap.0, swap.1
            ),
            Failure::Special { quadruple } => write!(f, "special condition fails at {quadruple:?}"),
            Failure::Strong { triple } => write!(f, "strong condition fails at {triple:?}"),
            Failure::NotSpecial { quadruple } => {
                write!(f, "system is not special (fails at {quadruple:?})")
            }
        }
    }
}

impl GSystem {
    /// Re-enumerating the balls of a positive vertex by an adjacent
    /// transposition must give the same form on the same modules.
    pub fn check_symmetric(&self) -> std::result::Result<(), Failure> {
        let g = &self.group;
        let w = self.ring.width();
        for swap in [(0, 1), (1, 2), (2, 3)] {
            let mut tau = [0, 1, 2, 3];
            tau.swap(swap.0, swap.1);
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        let ab = g.mul(a, b);
                        let bc = g.mul(b, c);
                        let abc = g.mul(ab, c);
                        // Colour of the edge i -> j for i < j.
                        let col = |i: usize, j: usize| match (i, j) {
                            (0, 1) => a,
                            (1, 2) => b,
                            (2, 3) => c,
                            (0, 2) => ab,
                            (0, 3) => abc,
                            (1, 3) => bc,
                            _ => unreachable!(),
                        };
                        let dir = |i: usize, j: usize| if i < j { col(i, j) } else { g.inv(col(j, i)) };
                        let (a2, b2, c2) = (dir(tau[0], tau[1]), dir(tau[1], tau[2]), dir(tau[2], tau[3]));
                        let flip: [bool; 4] =
                            std::array::from_fn(|i| locally_incoming(1, tau[i]) != locally_incoming(-1, i));
                        let t = self.oriented_tensor(-1, a2, b2, c2, flip);
                        // New slot i is old slot tau[i]; tau is an involution.
                        let back = t.permute(w, &tau);
                        if &back != self.tensor_pos(a, b, c) {
                            return Err(Failure::Symmetric { swap, triple: [a, b, c] });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Both sides of the special condition at one quadruple, with axes in
    /// the order `V_{c,d}, V*_{abc,d}, V*_{ab,c}, V_{b,cd}, V_{a,bcd}, V*_{a,b}`.
    pub fn special_sides(&self, a: usize, b: usize, c: usize, d: usize) -> Result<(Tensor, Tensor)> {
        let g = &self.group;
        let (ab, bc, cd) = (g.mul(a, b), g.mul(b, c), g.mul(c, d));
        let r = &self.ring;
        let lhs = Tensor::contract(r, self.tensor_pos(ab, c, d), &[2], self.tensor_pos(a, b, cd), &[1])?;
        let x = Tensor::contract(r, self.tensor_pos(a, b, c), &[0], self.tensor_pos(b, c, d), &[3])?;
        let y = Tensor::contract(r, &x, &[1, 4], self.tensor_pos(a, bc, d), &[3, 0])?;
        Ok((lhs, y.permute(r.width(), &[2, 4, 0, 3, 5, 1])))
    }

    pub fn check_special(&self) -> std::result::Result<(), Failure> {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    for d in g.elements() {
                        match self.special_sides(a, b, c, d) {
                            Ok((l, r)) if l == r => {}
                            _ => return Err(Failure::Special { quadruple: [a, b, c, d] }),
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `[a,b,c]` and its barred partner contracted along `V_{a,b}` and
    /// `V_{b,c}` must be the canonical pairing on what is left.
    pub fn check_strong(&self) -> std::result::Result<(), Failure> {
        if let Err(Failure::Special { quadruple }) = self.check_special() {
            return Err(Failure::NotSpecial { quadruple });
        }
        let g = &self.group;
        let r = &self.ring;
        let w = r.width();
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    let e = Tensor::contract(r, self.tensor_pos(a, b, c), &[0, 3], self.tensor_neg(a, b, c), &[0, 3]);
                    let Ok(e) = e else {
                        return Err(Failure::Strong { triple: [a, b, c] });
                    };
                    // Axes: V*_{ab,c}, V_{a,bc}, V_{ab,c}, V*_{a,bc}.
                    let (n1, n2) = (e.axes[0].len, e.axes[1].len);
                    let mut ok = true;
                    for i in 0..n1 {
                        for k in 0..n2 {
                            for j in 0..n1 {
                                for l in 0..n2 {
                                    let want = if i == j && k == l { r.one() } else { r.zero() };
                                    if e.get(w, &[i, k, j, l]) != want.as_slice() {
                                        ok = false;
                                    }
                                }
                            }
                        }
                    }
                    if !ok {
                        return Err(Failure::Strong { triple: [a, b, c] });
                    }
                }
            }
        }
        Ok(())
    }
}
