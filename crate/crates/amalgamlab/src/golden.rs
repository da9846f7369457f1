//! Reference tables shipped with the crate: the sixteen amalgams with their
//! two-point columns, the 3-arc-transitive triples, and the complete bipartite
//! examples.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE1: &str = include_str!("../data/golden/table1.json");
const THREE_ARC: &str = include_str!("../data/golden/three_arc.json");
const EXAMPLES: &str = include_str!("../data/golden/examples.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub label: String,
    pub order: u64,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named {
    pub label: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub row: u32,
    pub left: Side,
    pub right: Side,
    pub shared: Named,
    pub columns: [Named; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub left: Side,
    pub right: Side,
    pub shared: Named,
    pub regular: bool,
    pub intersection: Option<Named>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeArcList {
    /// The count given in prose, which disagrees with the length of the list.
    pub stated_count: usize,
    pub triples: Vec<Triple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExampleConstruction {
    AffineProduct,
    /// `G` is the affine entry `group`, `A` its linear part, `B` the
    /// translations extended by a copy of the left entry's point stabiliser.
    AffineExtension { group: String },
    /// `A` is the point stabiliser of `group`, `B` a copy of the right entry's group.
    Factorisation { group: String },
    NotConstructible { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub group: String,
    pub left: Option<String>,
    pub right: Option<String>,
    pub shared: String,
    pub m: u64,
    pub n: u64,
    pub construction: ExampleConstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Examples {
    pub rows: Vec<ExampleRow>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Data(format!("{what}: {e}")))
}

pub fn table1() -> Table1 {
    parse(TABLE1, "table1").expect("bundled table parses")
}

pub fn three_arc() -> ThreeArcList {
    parse(THREE_ARC, "three_arc").expect("bundled list parses")
}

pub fn examples() -> Examples {
    parse(EXAMPLES, "examples").expect("bundled examples parse")
}

/// Reads a table in the same format from disk.
pub fn read_table1(path: &Path) -> Result<Table1> {
    parse(&std::fs::read_to_string(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_parse() {
        let t = table1();
        assert_eq!(t.rows.len(), 16);
        assert!(t.rows.iter().enumerate().all(|(i, r)| r.row as usize == i + 1));
        let r13 = &t.rows[12];
        assert_eq!((r13.columns[0].order, r13.columns[1].order), (5040, 1152));
        let arcs = three_arc();
        assert_eq!((arcs.stated_count, arcs.triples.len()), (6, 7));
        assert_eq!(examples().rows.len(), 11);
    }

    #[test]
    fn rows_are_internally_consistent() {
        for r in table1().rows {
            assert_eq!(r.left.order, r.left.degree * r.shared.order, "row {}", r.row);
            assert_eq!(r.right.order, r.right.degree * r.shared.order, "row {}", r.row);
            assert_eq!(r.shared.order, (r.left.degree - 1) * r.columns[0].order, "row {}", r.row);
            assert_eq!(r.shared.order, (r.right.degree - 1) * r.columns[1].order, "row {}", r.row);
        }
    }
}
