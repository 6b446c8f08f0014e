//! JSON form of a general system.
//!
//! ```json
//! {
//!   "group": "Z2",
//!   "ring": {"kind": "zmod", "n": 7},
//!   "modules": [{"key": [0, 0, 0], "dim": 1, "iso": [[1]]}],
//!   "tensors": [{"colours": [0, 0, 0], "parity": 1, "entries": [3]}]
//! }
//! ```
//!
//! Module keys may be any rotation. A missing module defaults to dimension 1
//! with the identity isomorphism. Entries are integers, or coefficient lists
//! of length `m` over `quotient_poly`. Tensor entries are row-major over the
//! slots `e0..e3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GSystem, Mat, Tensor, TripleKey};
use crate::algebra::{FiniteGroup, Ring};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Poly(Vec<i64>),
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    key: [usize; 3],
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    iso: Option<Vec<Vec<Entry>>>,
}

#[derive(Serialize, Deserialize)]
struct TensorDoc {
    colours: [usize; 3],
    parity: i8,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    group: String,
    ring: Ring,
    #[serde(default)]
    modules: Vec<ModuleDoc>,
    tensors: Vec<TensorDoc>,
}

fn entry_value(ring: &Ring, e: &Entry) -> Result<Vec<i64>> {
    match e {
        Entry::Int(v) => Ok(ring.from_int(*v)),
        Entry::Poly(c) if c.len() == ring.width() => {
            let mut v = c.clone();
            ring.normalize(&mut v);
            Ok(v)
        }
        Entry::Poly(c) => Err(Error::Validation(format!(
            "entry with {} coefficients, the ring needs {}",
            c.len(),
            ring.width()
        ))),
    }
}

fn entry_doc(ring: &Ring, v: &[i64]) -> Entry {
    match ring {
        Ring::Zmod { .. } => Entry::Int(v[0]),
        Ring::QuotientPoly { .. } => Entry::Poly(v.to_vec()),
    }
}

impl GSystem {
    /// Parses and validates a system; `group` must match the document.
    pub fn from_json(text: &str, group: &FiniteGroup) -> Result<GSystem> {
        let doc: SystemDoc = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let named = FiniteGroup::parse_spec(&doc.group)?;
        if named.order() != group.order() || named.name() != group.name() {
            return Err(Error::Validation(format!(
                "system is over {}, not {}",
                doc.group,
                group.name()
            )));
        }
        let ring = doc.ring;
        ring.validate()?;
        let n = group.order();
        let check = |x: usize| {
            if x < n {
                Ok(x)
            } else {
                Err(Error::Validation(format!("element {x} is not in {}", group.name())))
            }
        };
        let mut dims = BTreeMap::new();
        let mut isos: BTreeMap<TripleKey, Vec<Vec<Entry>>> = BTreeMap::new();
        for m in doc.modules {
            let [a, b, c] = m.key.map(check).into_iter().collect::<Result<Vec<_>>>()?[..] else {
                unreachable!()
            };
            if group.mul(group.mul(a, b), c) != group.identity() {
                return Err(Error::Validation(format!("module key {:?} does not multiply to 1", m.key)));
            }
            let k = TripleKey::new([a, b, c]);
            if dims.insert(k, m.dim).is_some() {
                return Err(Error::Validation(format!("module {k} listed twice")));
            }
            if let Some(iso) = m.iso {
                isos.insert(k, iso);
            }
        }
        for k in GSystem::keys(group) {
            dims.entry(k).or_insert(1);
        }
        let rev = |k: TripleKey| {
            let [a, b, c] = k.0;
            TripleKey::new([group.inv(c), group.inv(b), group.inv(a)])
        };
        let mut iso = BTreeMap::new();
        for k in GSystem::keys(group) {
            let (r, c) = (dims[&k], dims[&rev(k)]);
            let m = match isos.remove(&k) {
                Some(rows) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(Error::Validation(format!("isomorphism for {k} must be {r}x{c}")));
                    }
                    let data = rows
                        .iter()
                        .flatten()
                        .map(|e| entry_value(&ring, e))
                        .collect::<Result<Vec<_>>>()?
                        .concat();
                    Mat { rows: r, cols: c, data }
                }
                None if r == c => Mat::identity(&ring, r),
                None => return Err(Error::Validation(format!("module {k} needs an isomorphism"))),
            };
            iso.insert(k, m);
        }
        let mut pos: Vec<Option<Tensor>> = vec![None; n * n * n];
        let mut neg: Vec<Option<Tensor>> = vec![None; n * n * n];
        for t in doc.tensors {
            let [a, b, c] = t.colours.map(check).into_iter().collect::<Result<Vec<_>>>()?[..] else {
                unreachable!()
            };
            let keys = GSystem::face_keys(group, a, b, c);
            let axes: Vec<super::Axis> = keys
                .iter()
                .enumerate()
                .map(|(j, &key)| super::Axis {
                    key,
                    dual: (j % 2 == 1) == (t.parity > 0),
                    len: dims[&key],
                })
                .collect();
            let data = t
                .entries
                .iter()
                .map(|e| entry_value(&ring, e))
                .collect::<Result<Vec<_>>>()?
                .concat();
            let slot = match t.parity {
                1 => &mut pos,
                -1 => &mut neg,
                p => return Err(Error::Validation(format!("parity must be 1 or -1, got {p}"))),
            };
            if slot[(a * n + b) * n + c].replace(Tensor { axes, data }).is_some() {
                return Err(Error::Validation(format!("tensor ({a},{b},{c}) listed twice")));
            }
        }
        let take = |v: Vec<Option<Tensor>>, parity: i8| -> Result<Vec<Tensor>> {
            v.into_iter()
                .enumerate()
                .map(|(i, t)| {
                    t.ok_or_else(|| {
                        Error::Validation(format!(
                            "missing tensor ({},{},{}) with parity {parity}",
                            i / (n * n),
                            i / n % n,
                            i % n
                        ))
                    })
                })
                .collect()
        };
        GSystem::new(group.clone(), ring, dims, iso, take(pos, 1)?, take(neg, -1)?)
    }

    pub fn to_json(&self) -> String {
        let w = self.ring.width();
        let g = &self.group;
        let modules = self
            .dims
            .iter()
            .map(|(&k, &dim)| {
                let m = &self.iso[&k];
                ModuleDoc {
                    key: k.0,
                    dim,
                    iso: Some(
                        (0..m.rows)
                            .map(|i| (0..m.cols).map(|j| entry_doc(&self.ring, m.entry(w, i, j))).collect())
                            .collect(),
                    ),
                }
            })
            .collect();
        let mut tensors = vec![];
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    for (parity, t) in [(1, self.tensor_pos(a, b, c)), (-1, self.tensor_neg(a, b, c))] {
                        tensors.push(TensorDoc {
                            colours: [a, b, c],
                            parity,
                            entries: t.data.chunks(w).map(|e| entry_doc(&self.ring, e)).collect(),
                        });
                    }
                }
            }
        }
        let doc = SystemDoc {
            group: g.name().to_string(),
            ring: self.ring,
            modules,
            tensors,
        };
        serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cochain3;
    use crate::gsystem::system_from_cocycle;

    #[test]
    fn round_trip() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let s = GSystem::random_diagonal(&g, 5, 2, 3).unwrap();
        let back = GSystem::from_json(&s.to_json(), &g).unwrap();
        assert_eq!(back.to_json(), s.to_json());
        let g4 = FiniteGroup::cyclic(4).unwrap();
        let c = system_from_cocycle(&g4, &Cochain3::example_z4()).unwrap();
        assert_eq!(GSystem::from_json(&c.to_json(), &g4).unwrap().to_json(), c.to_json());
    }

    #[test]
    fn defaults_and_errors() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let text = r#"{"group": "Z1", "ring": {"kind": "zmod", "n": 5},
            "tensors": [{"colours": [0,0,0], "parity": 1, "entries": [2]},
                        {"colours": [0,0,0], "parity": -1, "entries": [3]}]}"#;
        let s = GSystem::from_json(text, &g).unwrap();
        assert_eq!(s.tensor_neg(0, 0, 0).data, vec![3]);
        let missing = r#"{"group": "Z1", "ring": {"kind": "zmod", "n": 5}, "tensors": []}"#;
        assert!(matches!(GSystem::from_json(missing, &g), Err(Error::Validation(_))));
        assert!(matches!(GSystem::from_json("{", &g), Err(Error::Parse { .. })));
    }
}
