//! Built-in spines, each generated from a one-vertex triangulation.

use super::gluing::Gluing;
use super::Spine;
use crate::error::{Error, Result};

/// Names accepted by [`catalog`].
pub const CATALOG: [&str; 7] = ["L41", "S3", "L52", "L41_alt", "B2", "L41_L", "L41_T"];

/// Catalog entries whose thickening has nonempty boundary.
pub const WITH_BOUNDARY: [&str; 1] = ["B2"];

/// Order of the (cyclic) fundamental group of a closed catalog entry, if known.
pub fn cyclic_pi1_order(name: &str) -> Option<u64> {
    match name {
        "S3" => Some(1),
        "L41" | "L41_alt" | "L41_L" | "L41_T" => Some(4),
        "L52" => Some(5),
        _ => None,
    }
}

type Pairs = [((usize, usize), (usize, usize), [usize; 4])];

fn from_pairs(name: &str, parities: &[i8], pairs: &Pairs) -> Result<Spine> {
    let g = Gluing::from_pairs(parities, pairs)?;
    Ok(g.to_spine(name, &[], &[])?.spine)
}

fn l41() -> Result<Spine> {
    let mut g = Gluing::from_pairs(&[1], &[((0, 0), (0, 2), [2, 0, 3, 1]), ((0, 1), (0, 3), [1, 3, 0, 2])])?;
    // Slot order 01, 12, 23, 02, 03, 13.
    let labels = [("c2", 1), ("c1", 1), ("c2", -1), ("c2", -1), ("c1", 1), ("c2", 1)];
    for (k, (c, e)) in labels.into_iter().enumerate() {
        g.tets[0].cell_labels[k] = Some((c.to_string(), e));
    }
    let cells = ["c1".to_string(), "c2".to_string()];
    Ok(g.to_spine("L41", &cells, &[])?.spine)
}

/// A built-in spine by name.
pub fn catalog(name: &str) -> Result<Spine> {
    match name {
        "L41" => l41(),
        "S3" => from_pairs("S3", &[1], &[((0, 0), (0, 1), [1, 0, 2, 3]), ((0, 2), (0, 3), [1, 2, 3, 0])]),
        "L52" => from_pairs("L52", &[1], &[((0, 0), (0, 1), [1, 2, 3, 0]), ((0, 2), (0, 3), [2, 0, 3, 1])]),
        "L41_alt" => from_pairs(
            "L41_alt",
            &[1],
            &[((0, 0), (0, 1), [1, 2, 3, 0]), ((0, 2), (0, 3), [1, 2, 3, 0])],
        ),
        "B2" => from_pairs(
            "B2",
            &[1, 1],
            &[
                ((0, 0), (0, 1), [1, 0, 2, 3]),
                ((0, 2), (1, 0), [1, 3, 0, 2]),
                ((0, 3), (1, 1), [0, 3, 2, 1]),
                ((1, 2), (1, 3), [1, 2, 3, 0]),
            ],
        ),
        "L41_L" => {
            let base = l41()?;
            let site = crate::moves::l_sites(&base)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Precondition("L41 has no L-move site".into()))?;
            let mut s = crate::moves::l_move(&base, &site.0, site.1)?.spine_after;
            s.name = "L41_L".into();
            Ok(s)
        }
        "L41_T" => {
            let base = catalog("L41_L")?;
            let edge = crate::moves::t_sites(&base)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Precondition("L41_L has no T-move site".into()))?;
            let mut s = crate::moves::t_move(&base, &edge)?.spine_after;
            s.name = "L41_T".into();
            Ok(s)
        }
        _ => Err(Error::Argument(format!(
            "unknown catalog spine {name}; known: {}",
            CATALOG.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_is_valid() {
        for name in CATALOG {
            let s = catalog(name).unwrap();
            let r = s.validate();
            assert!(r.is_valid(), "{name}: {:?}", r.errors);
            let chi = if WITH_BOUNDARY.contains(&name) { 0 } else { 1 };
            assert_eq!(r.euler_characteristic(), chi, "{name}");
        }
    }

    #[test]
    fn sizes() {
        let v = |n: &str| catalog(n).unwrap().vertices.len();
        assert_eq!(v("L41"), 1);
        assert_eq!(v("L41_L"), 3);
        assert_eq!(v("L41_T"), 4);
        assert_eq!(catalog("L41").unwrap().cells, vec!["c1", "c2"]);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(catalog("nope"), Err(Error::Argument(_))));
    }
}
