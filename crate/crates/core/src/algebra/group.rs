use std::fmt;

use crate::error::{Error, Result};

/// Orders up to this bound get a full associativity check at construction.
const FULL_ASSOC_CHECK: usize = 64;

/// A finite group given by its multiplication table.
///
/// Elements are dense indices `0..order`; index 0 is always the identity.
/// Element semantics (residues, pairs, permutations) only matter to the
/// constructors.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table and validates the group axioms.
    pub fn from_table(name: impl Into<String>, order: usize, op: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Group("order must be positive".into()));
        }
        if op.len() != order * order {
            return Err(Error::Group(format!(
                "table has {} entries, expected {}",
                op.len(),
                order * order
            )));
        }
        if let Some(pos) = op.iter().position(|&z| z >= order) {
            return Err(Error::Group(format!(
                "entry ({}, {}) = {} is not a valid index",
                pos / order,
                pos % order,
                op[pos]
            )));
        }
        for x in 0..order {
            if op[x] != x || op[x * order] != x {
                return Err(Error::Group(format!(
                    "index 0 is not an identity: fails at element {x}"
                )));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| op[x * order + y] == 0) {
                Some(y) if op[y * order + x] == 0 => inv[x] = y,
                _ => {
                    return Err(Error::Group(format!("element {x} has no two-sided inverse")));
                }
            }
        }
        let group = FiniteGroup {
            name: name.into(),
            order,
            op,
            inv,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |x: usize, y: usize, z: usize| {
            Err(Error::Group(format!(
                "associativity fails at triple ({x}, {y}, {z})"
            )))
        };
        if n <= FULL_ASSOC_CHECK {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return fail(x, y, z);
                        }
                    }
                }
            }
        } else {
            // Deterministic sample: a fixed stride walk through G^3.
            let total = n * n * n;
            let stride = 7919usize;
            let samples = 200_000.min(total);
            for s in 0..samples {
                let t = (s * stride) % total;
                let (x, y, z) = (t / (n * n), (t / n) % n, t % n);
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return fail(x, y, z);
                }
            }
        }
        Ok(())
    }

    /// The cyclic group `Z_n` on residues with identity 0.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("cyclic group needs n >= 1".into()));
        }
        let op = (0..n * n).map(|t| (t / n + t % n) % n).collect();
        Self::from_table(format!("Z{n}"), n, op)
    }

    /// Direct product; the element `(g, h)` has index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (ng, nh) = (g.order, h.order);
        let n = ng * nh;
        let mut op = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = g.mul(x / nh, y / nh);
                let b = h.mul(x % nh, y % nh);
                op.push(a * nh + b);
            }
        }
        Self::from_table(format!("{}x{}", g.name, h.name), n, op)
    }

    /// The dihedral group of order `2n`: element `r^i s^f` has index `2i + f`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("dihedral group needs n >= 1".into()));
        }
        let m = 2 * n;
        let mut op = Vec::with_capacity(m * m);
        for x in 0..m {
            let (i, f) = (x / 2, x % 2);
            for y in 0..m {
                let (j, g) = (y / 2, y % 2);
                // r^i s^f r^j s^g = r^(i ± j) s^(f+g)
                let k = if f == 0 { (i + j) % n } else { (i + n - j) % n };
                op.push(2 * k + (f + g) % 2);
            }
        }
        Self::from_table(format!("D{n}"), m, op)
    }

    /// Parses the table text format: `order n` then `n` rows of `n` indices.
    pub fn from_table_text(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty group table"))?;
        let order: usize = header
            .strip_prefix("order")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| Error::parse(ln, "expected `order n`"))?;
        let mut op = Vec::with_capacity(order * order);
        for row in 0..order {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("missing table row {row}")))?;
            let entries: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad index `{t}`"))))
                .collect::<Result<_>>()?;
            if entries.len() != order {
                return Err(Error::parse(
                    ln,
                    format!("row has {} entries, expected {order}", entries.len()),
                ));
            }
            op.extend(entries);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content after table"));
        }
        Self::from_table(name, order, op)
    }

    /// Renders the table text format.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for x in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|y| self.mul(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses a short group description: `Z4`, `D3`, `Z2xZ2`, `Z1`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(['x', '*']).map(str::trim).collect();
        let mut factors = parts.iter().map(|p| Self::parse_factor(p));
        let mut group = factors
            .next()
            .ok_or_else(|| Error::arg("empty group description"))??;
        for f in factors {
            group = Self::product(&group, &f?)?;
        }
        Ok(group)
    }

    fn parse_factor(p: &str) -> Result<Self> {
        let bad = || Error::arg(format!("unknown group factor `{p}` (use Zn or Dn)"));
        let (kind, n) = p.split_at(1.min(p.len()));
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" | "C" => Self::cyclic(n),
            "D" => Self::dihedral(n),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.op[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `x^e` for `e = ±1`.
    #[inline]
    pub fn pow_sign(&self, x: usize, e: i8) -> usize {
        if e >= 0 {
            x
        } else {
            self.inv[x]
        }
    }

    pub fn checked_mul(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn checked_inv(&self, x: usize) -> Result<usize> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::arg(format!(
                "element {x} out of range for group {} of order {}",
                self.name, self.order
            )))
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Number of elements with `g^p = 1`.
    pub fn count_roots_of_unity(&self, p: usize) -> usize {
        self.elements()
            .filter(|&g| {
                let mut acc = 0;
                for _ in 0..p {
                    acc = self.mul(acc, g);
                }
                acc == 0
            })
            .count()
    }
}

/// Names accepted by [`FiniteGroup::parse_spec`] that the CLI lists.
pub const BUILTIN_GROUPS: &[&str] = &["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z2xZ2", "D3", "D4"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.mul(1, 2), 3);
        assert_eq!(g.inv(3), 1);
        assert_eq!(g.mul(2, g.inv(2)), 0);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn klein_group_is_self_inverse() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::product(&z2, &z2).unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.elements().all(|x| k.inv(x) == x));
        assert_eq!(k.name(), "Z2xZ2");
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        assert_eq!(d3.count_roots_of_unity(4), 4);
    }

    #[test]
    fn out_of_range_is_an_argument_error() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert!(matches!(g.checked_mul(4, 0), Err(Error::Argument(_))));
        assert!(matches!(g.checked_inv(9), Err(Error::Argument(_))));
    }

    #[test]
    fn non_associative_table_names_triple() {
        // A loop of order 5 that is not a group.
        let table = "order 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        let err = FiniteGroup::from_table_text("loop", table).unwrap_err();
        match err {
            Error::Group(msg) => assert!(msg.contains("associativity fails at triple"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_free_table_is_rejected() {
        let table = "order 2\n1 0\n0 1\n";
        assert!(matches!(
            FiniteGroup::from_table_text("bad", table),
            Err(Error::Group(_))
        ));
    }

    #[test]
    fn table_text_round_trip() {
        let g = FiniteGroup::parse_spec("D4").unwrap();
        let back = FiniteGroup::from_table_text("D4", &g.to_table_text()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn ragged_table_is_a_parse_error() {
        let err = FiniteGroup::from_table_text("x", "order 2\n0 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
