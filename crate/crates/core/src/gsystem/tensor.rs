//! Dense multilinear forms over a [`Ring`] and their contractions.

use crate::algebra::Ring;
use crate::error::{Error, Result};

/// `V_{a,b,c}` named by its least cyclic rotation; `a*b*c` is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleKey(pub [usize; 3]);

impl TripleKey {
    pub fn new(t: [usize; 3]) -> Self {
        let r = [t, [t[1], t[2], t[0]], [t[2], t[0], t[1]]];
        TripleKey(*r.iter().min().expect("three rotations"))
    }
}

impl std::fmt::Display for TripleKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// One argument slot of a form: it eats vectors of `V_key`, or of its dual
/// when `dual` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axis {
    pub key: TripleKey,
    pub dual: bool,
    pub len: usize,
}

/// Values on basis vectors, row-major with the last axis fastest; each entry
/// occupies `ring.width()` integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub axes: Vec<Axis>,
    pub data: Vec<i64>,
}

/// A matrix over the ring, `rows x cols` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl Mat {
    pub fn identity(ring: &Ring, n: usize) -> Self {
        let w = ring.width();
        let mut data = vec![0; n * n * w];
        for i in 0..n {
            data[(i * n + i) * w..(i * n + i + 1) * w].copy_from_slice(&ring.one());
        }
        Mat { rows: n, cols: n, data }
    }

    pub fn entry(&self, w: usize, i: usize, j: usize) -> &[i64] {
        &self.data[(i * self.cols + j) * w..(i * self.cols + j + 1) * w]
    }

    fn entry_mut(&mut self, w: usize, i: usize, j: usize) -> &mut [i64] {
        &mut self.data[(i * self.cols + j) * w..(i * self.cols + j + 1) * w]
    }

    pub fn transpose(&self, w: usize) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.extend_from_slice(self.entry(w, i, j));
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Gauss-Jordan inverse using pivots the ring recognises as units.
    pub fn inverse(&self, ring: &Ring) -> Option<Mat> {
        let (n, w) = (self.rows, ring.width());
        if self.cols != n {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Mat::identity(ring, n);
        for col in 0..n {
            let (piv, unit) = (col..n).find_map(|r| ring.inverse(a.entry(w, r, col)).map(|u| (r, u)))?;
            for m in [&mut a, &mut inv] {
                for j in 0..n {
                    let x = m.entry(w, piv, j).to_vec();
                    let y = m.entry(w, col, j).to_vec();
                    m.entry_mut(w, piv, j).copy_from_slice(&y);
                    m.entry_mut(w, col, j).copy_from_slice(&ring.mul(&x, &unit));
                }
            }
            for r in 0..n {
                if r == col || ring.is_zero(a.entry(w, r, col)) {
                    continue;
                }
                let f = a.entry(w, r, col).to_vec();
                for m in [&mut a, &mut inv] {
                    for j in 0..n {
                        let t = ring.mul(&f, m.entry(w, col, j));
                        let v = ring.sub(m.entry(w, r, j), &t);
                        m.entry_mut(w, r, j).copy_from_slice(&v);
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn mul(&self, ring: &Ring, other: &Mat) -> Mat {
        let w = ring.width();
        let mut data = vec![0; self.rows * other.cols * w];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let acc = &mut data[(i * other.cols + j) * w..(i * other.cols + j + 1) * w];
                for k in 0..self.cols {
                    ring.mul_add(acc, self.entry(w, i, k), other.entry(w, k, j));
                }
                ring.normalize(acc);
            }
        }
        Mat {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }
}

fn strides(axes: &[Axis]) -> Vec<usize> {
    let mut s = vec![1; axes.len()];
    for i in (0..axes.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * axes[i + 1].len;
    }
    s
}

impl Tensor {
    pub fn scalar(value: Vec<i64>) -> Self {
        Tensor {
            axes: vec![],
            data: value,
        }
    }

    pub fn zeros(ring: &Ring, axes: Vec<Axis>) -> Self {
        let n: usize = axes.iter().map(|a| a.len).product();
        Tensor {
            data: vec![0; n * ring.width()],
            axes,
        }
    }

    pub fn num_entries(&self) -> usize {
        self.axes.iter().map(|a| a.len).product()
    }

    pub fn entry(&self, w: usize, flat: usize) -> &[i64] {
        &self.data[flat * w..(flat + 1) * w]
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        strides(&self.axes).iter().zip(idx).map(|(s, i)| s * i).sum()
    }

    pub fn get(&self, w: usize, idx: &[usize]) -> &[i64] {
        self.entry(w, self.flat_index(idx))
    }

    /// Axis `i` of the result is axis `order[i]` of `self`.
    pub fn permute(&self, w: usize, order: &[usize]) -> Tensor {
        let axes: Vec<Axis> = order.iter().map(|&i| self.axes[i]).collect();
        let old = strides(&self.axes);
        let src: Vec<usize> = order.iter().map(|&i| old[i]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0; axes.len()];
        for _ in 0..self.num_entries() {
            let f: usize = idx.iter().zip(&src).map(|(i, s)| i * s).sum();
            data.extend_from_slice(self.entry(w, f));
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < axes[k].len {
                    break;
                }
                idx[k] = 0;
            }
        }
        Tensor { axes, data }
    }

    /// Replaces axis `k` by `sum_i m[j][i] * self[.. i ..]`, giving it the new
    /// label `axis`.
    pub fn transform_axis(&self, ring: &Ring, k: usize, m: &Mat, axis: Axis) -> Tensor {
        let w = ring.width();
        let moved: Vec<usize> = (0..self.axes.len()).filter(|&i| i != k).chain([k]).collect();
        let t = self.permute(w, &moved);
        let n_in = self.axes[k].len;
        let rest = t.num_entries() / n_in.max(1);
        let mut axes = t.axes.clone();
        *axes.last_mut().expect("axis") = axis;
        let mut out = Tensor::zeros(ring, axes);
        for r in 0..rest {
            for j in 0..axis.len {
                let acc = &mut out.data[(r * axis.len + j) * w..(r * axis.len + j + 1) * w];
                for i in 0..n_in {
                    ring.mul_add(acc, m.entry(w, j, i), t.entry(w, r * n_in + i));
                }
                ring.normalize(acc);
            }
        }
        let mut back = vec![0; self.axes.len()];
        for (pos, &i) in moved.iter().enumerate() {
            back[i] = pos;
        }
        out.permute(w, &back)
    }

    /// Sums over paired axes `(axes1[i], axes2[i])`; the result keeps the
    /// remaining axes of `t1` followed by those of `t2`. Each pair must be one
    /// primal and one dual axis of the same module.
    pub fn contract(ring: &Ring, t1: &Tensor, axes1: &[usize], t2: &Tensor, axes2: &[usize]) -> Result<Tensor> {
        if axes1.len() != axes2.len() {
            return Err(Error::arg("contraction needs the same number of axes on both sides"));
        }
        for (&i, &j) in axes1.iter().zip(axes2) {
            let (a, b) = (
                t1.axes.get(i).ok_or_else(|| Error::arg("axis out of range"))?,
                t2.axes.get(j).ok_or_else(|| Error::arg("axis out of range"))?,
            );
            if a.key != b.key || a.dual == b.dual || a.len != b.len {
                return Err(Error::Encoding(format!(
                    "cannot pair {}{} with {}{}",
                    a.key,
                    if a.dual { "*" } else { "" },
                    b.key,
                    if b.dual { "*" } else { "" }
                )));
            }
        }
        let w = ring.width();
        let free1: Vec<usize> = (0..t1.axes.len()).filter(|i| !axes1.contains(i)).collect();
        let free2: Vec<usize> = (0..t2.axes.len()).filter(|i| !axes2.contains(i)).collect();
        let a = t1.permute(w, &[free1.clone(), axes1.to_vec()].concat());
        let b = t2.permute(w, &[free2.clone(), axes2.to_vec()].concat());
        let p: usize = axes1.iter().map(|&i| t1.axes[i].len).product();
        let (n1, n2) = (a.num_entries() / p.max(1), b.num_entries() / p.max(1));
        let axes: Vec<Axis> = free1
            .iter()
            .map(|&i| t1.axes[i])
            .chain(free2.iter().map(|&i| t2.axes[i]))
            .collect();
        let mut out = Tensor::zeros(ring, axes);
        if p == 0 {
            return Ok(out);
        }
        for x in 0..n1 {
            for y in 0..n2 {
                let acc = &mut out.data[(x * n2 + y) * w..(x * n2 + y + 1) * w];
                for k in 0..p {
                    ring.mul_add(acc, a.entry(w, x * p + k), b.entry(w, y * p + k));
                }
                ring.normalize(acc);
            }
        }
        Ok(out)
    }

    /// Contracts pairs of axes of one tensor against each other.
    pub fn trace(ring: &Ring, t: &Tensor, pairs: &[(usize, usize)]) -> Result<Tensor> {
        let w = ring.width();
        let used: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        for &(i, j) in pairs {
            let (a, b) = (t.axes[i], t.axes[j]);
            if a.key != b.key || a.dual == b.dual || a.len != b.len {
                return Err(Error::Encoding(format!("cannot pair {} with {}", a.key, b.key)));
            }
        }
        let free: Vec<usize> = (0..t.axes.len()).filter(|i| !used.contains(i)).collect();
        let p = t.permute(w, &[free.clone(), used].concat());
        let lens: Vec<usize> = pairs.iter().map(|&(i, _)| t.axes[i].len).collect();
        let block: usize = lens.iter().map(|l| l * l).product();
        let axes: Vec<Axis> = free.iter().map(|&i| t.axes[i]).collect();
        let mut out = Tensor::zeros(ring, axes);
        let n = out.num_entries();
        let diag: usize = lens.iter().product();
        for x in 0..n {
            let acc = &mut out.data[x * w..(x + 1) * w];
            for mut d in 0..diag {
                // Offset of the diagonal multi-index d inside the block.
                let mut off = 0;
                let mut stride = block;
                for &l in &lens {
                    stride /= l * l;
                    let i = d % l;
                    d /= l;
                    off += (i * l + i) * stride;
                }
                let e = p.entry(w, x * block + off);
                for (s, v) in acc.iter_mut().zip(e) {
                    *s += v;
                }
            }
            ring.normalize(acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ax(k: usize, dual: bool, len: usize) -> Axis {
        Axis {
            key: TripleKey([k, 0, 0]),
            dual,
            len,
        }
    }

    const Z7: Ring = Ring::Zmod { n: 7 };

    #[test]
    fn canonical_rotation() {
        assert_eq!(TripleKey::new([3, 1, 0]), TripleKey([0, 3, 1]));
    }

    #[test]
    fn monomials_multiply() {
        let r = Ring::QuotientPoly { m: 4 };
        let a = Tensor {
            axes: vec![ax(1, false, 1)],
            data: r.monomial(3),
        };
        let b = Tensor {
            axes: vec![ax(1, true, 1)],
            data: r.monomial(2),
        };
        let c = Tensor::contract(&r, &a, &[0], &b, &[0]).unwrap();
        assert_eq!(c.data, r.monomial(1));
    }

    #[test]
    fn identity_pairing_is_neutral() {
        let id = Tensor {
            axes: vec![ax(1, true, 2), ax(1, false, 2)],
            data: vec![1, 0, 0, 1],
        };
        let v = Tensor {
            axes: vec![ax(1, false, 2)],
            data: vec![3, 5],
        };
        let out = Tensor::contract(&Z7, &v, &[0], &id, &[0]).unwrap();
        assert_eq!(out.data, v.data);
        assert!(Tensor::contract(&Z7, &v, &[0], &v, &[0]).is_err());
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let id = Tensor {
            axes: vec![ax(1, true, 3), ax(1, false, 3)],
            data: vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
        };
        assert_eq!(Tensor::trace(&Z7, &id, &[(0, 1)]).unwrap().data, vec![3]);
    }

    #[test]
    fn matrix_inverse() {
        let m = Mat {
            rows: 2,
            cols: 2,
            data: vec![2, 1, 1, 1],
        };
        let inv = m.inverse(&Z7).unwrap();
        assert_eq!(m.mul(&Z7, &inv), Mat::identity(&Z7, 2));
        let singular = Mat {
            rows: 2,
            cols: 2,
            data: vec![1, 2, 2, 4],
        };
        assert!(singular.inverse(&Z7).is_none());
    }

    #[test]
    fn permute_round_trip() {
        let t = Tensor {
            axes: vec![ax(1, false, 2), ax(2, false, 3)],
            data: (0..6).collect(),
        };
        let p = t.permute(1, &[1, 0]);
        assert_eq!(p.data, vec![0, 3, 1, 4, 2, 5]);
        assert_eq!(p.permute(1, &[1, 0]), t);
    }
}
