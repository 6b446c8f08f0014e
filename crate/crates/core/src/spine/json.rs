use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CellSlot, EdgeRecord, EdgeSlot, Incidence, Spine, VertexRecord};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Doc {
    name: String,
    cells: Vec<CellDoc>,
    edges: Vec<EdgeDoc>,
    vertices: Vec<VertexDoc>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    id: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    incidences: Vec<IncDoc>,
}

#[derive(Serialize, Deserialize)]
struct IncDoc {
    cell: String,
    exp: i8,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    parity: i8,
    cell_slots: BTreeMap<String, IncDoc>,
    edge_slots: BTreeMap<String, DirDoc>,
}

#[derive(Serialize, Deserialize)]
struct DirDoc {
    edge: String,
    dir: i8,
}

impl Spine {
    /// Parses the JSON form without validating it.
    pub fn from_json_unchecked(text: &str) -> Result<Spine> {
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        Ok(Spine {
            name: doc.name,
            cells: doc.cells.into_iter().map(|c| c.id).collect(),
            edges: doc
                .edges
                .into_iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    incidences: e
                        .incidences
                        .into_iter()
                        .map(|i| Incidence { cell: i.cell, exp: i.exp })
                        .collect(),
                })
                .collect(),
            vertices: doc
                .vertices
                .into_iter()
                .map(|v| VertexRecord {
                    id: v.id,
                    parity: v.parity,
                    cell_slots: v
                        .cell_slots
                        .into_iter()
                        .map(|(k, s)| (k, CellSlot { cell: s.cell, exp: s.exp }))
                        .collect(),
                    edge_slots: v
                        .edge_slots
                        .into_iter()
                        .map(|(k, s)| (k, EdgeSlot { edge: s.edge, dir: s.dir }))
                        .collect(),
                })
                .collect(),
        })
    }

    /// Parses and validates the JSON form.
    pub fn load(text: &str) -> Result<Spine> {
        let s = Self::from_json_unchecked(text)?;
        let report = s.validate();
        if report.is_valid() {
            Ok(s)
        } else {
            Err(Error::Validation(report.errors.join("; ")))
        }
    }

    pub fn to_json(&self) -> String {
        let doc = Doc {
            name: self.name.clone(),
            cells: self.cells.iter().map(|c| CellDoc { id: c.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    incidences: e
                        .incidences
                        .iter()
                        .map(|i| IncDoc { cell: i.cell.clone(), exp: i.exp })
                        .collect(),
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.clone(),
                    parity: v.parity,
                    cell_slots: v
                        .cell_slots
                        .iter()
                        .map(|(k, s)| (k.clone(), IncDoc { cell: s.cell.clone(), exp: s.exp }))
                        .collect(),
                    edge_slots: v
                        .edge_slots
                        .iter()
                        .map(|(k, s)| (k.clone(), DirDoc { edge: s.edge.clone(), dir: s.dir }))
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::super::{catalog, CATALOG};
    use super::*;

    #[test]
    fn round_trip_catalog() {
        for name in CATALOG {
            let s = catalog(name).unwrap();
            assert_eq!(Spine::load(&s.to_json()).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn empty_document() {
        assert!(matches!(Spine::load(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn bad_json_reports_line() {
        let err = Spine::load("{\n\"name\": \"x\",\n\"cells\": [\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn invalid_edge_is_a_validation_error() {
        let s = catalog("L41").unwrap();
        let text = s.to_json();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["edges"][0]["incidences"].as_array_mut().unwrap().pop();
        match Spine::load(&v.to_string()) {
            Err(Error::Validation(msg)) => assert!(msg.contains("must have 3 incidences"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
