//! The catalog of 2-transitive groups.
//!
//! Each entry is one JSON descriptor under `<dir>/catalog/`. Entries with a
//! construction recipe build a concrete permutation group on demand; the rest
//! carry exact orders and stabiliser descriptors only.

pub mod build;

pub use build::*;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::names;
use crate::structure;

/// Environment variable naming the data directory.
pub const CATALOG_ENV: &str = "AMALGAMLAB_CATALOG";

pub const DEFAULT_DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    AlmostSimple,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Source {
    pub table: Family,
    pub row: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Alternating { n: usize },
    Symmetric { n: usize },
    ProjectiveLine { q: u32, variant: LineVariant },
    ProjectiveSpace { n: usize, q: u32 },
    QuadraticForms { sign: FormSign },
    Semilinear { q: u32, generators: Vec<(u32, u32)> },
    AffineLinear { p: u32, dim: usize, linear: LinearKind },
    AffineMatrices { file: String },
    Exceptional { name: Exceptional },
    DescriptorOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub family: Family,
    pub degree: u64,
    pub socle: String,
    pub group: String,
    pub outer: String,
    pub stabiliser: String,
    /// Isomorphism type of the point stabiliser in a conventional name.
    pub stabiliser_iso: String,
    pub two_point: String,
    pub order: u64,
    pub stabiliser_order: u64,
    pub two_point_order: u64,
    pub stabiliser_soluble: bool,
    pub construction: Construction,
    pub source: Source,
    #[serde(default)]
    pub notes: String,
    #[serde(skip)]
    built: Arc<OnceLock<std::result::Result<Group, String>>>,
    #[serde(skip)]
    data_dir: PathBuf,
}

impl PartialEq for CatalogEntry {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl CatalogEntry {
    pub fn is_constructed(&self) -> bool {
        self.construction != Construction::DescriptorOnly
    }

    pub fn degree_usize(&self) -> usize {
        self.degree as usize
    }

    /// The concrete group, built once and shared by clones of the entry.
    pub fn group(&self) -> Result<Group> {
        if !self.is_constructed() {
            return Err(Error::Input(format!("{} is descriptor-only", self.id)));
        }
        self.built
            .get_or_init(|| self.construct().map_err(|e| e.to_string()))
            .clone()
            .map_err(|e| Error::Data(format!("{}: {e}", self.id)))
    }

    /// Point stabiliser of 0 in the concrete group.
    pub fn stabiliser(&self) -> Result<Group> {
        Ok(self.group()?.point_stabiliser(0))
    }

    fn construct(&self) -> Result<Group> {
        let g = match &self.construction {
            Construction::Alternating { n } => build_alt(*n)?,
            Construction::Symmetric { n } => build_sym(*n)?,
            Construction::ProjectiveLine { q, variant } => build_projective_line(*q, *variant)?,
            Construction::ProjectiveSpace { n, q } => build_projective_space(*n, *q)?,
            Construction::QuadraticForms { sign } => build_sp6_2(*sign)?,
            Construction::Semilinear { q, generators } => build_semilinear(*q, generators)?,
            Construction::AffineLinear { p, dim, linear } => build_affine_linear(*p, *dim, *linear)?,
            Construction::AffineMatrices { file } => {
                let path = self.data_dir.join("matrices").join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
                let m: MatrixFile = serde_json::from_str(&text)
                    .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
                compact(build_affine(m.p, m.dim, &m.matrices)?, 0)
            }
            Construction::Exceptional { name } => exceptional_action(*name, 0)?,
            Construction::DescriptorOnly => unreachable!(),
        };
        Ok(g.with_order_hint(self.order.into()))
    }
}

/// Lookup key: lowercase with underscores and spaces dropped, so `A_7@15` finds `A7@15`.
pub fn normalise_id(id: &str) -> String {
    id.chars().filter(|c| *c != '_' && !c.is_whitespace()).flat_map(char::to_lowercase).collect()
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Loads from `AMALGAMLAB_CATALOG` or the data shipped with the crate.
    pub fn load_default() -> Result<Catalog> {
        let dir = std::env::var_os(CATALOG_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_DATA_DIR.into());
        Catalog::load(&dir)
    }

    /// Loads every `*.json` under `dir/catalog`, sorted by id.
    pub fn load(dir: &Path) -> Result<Catalog> {
        let cat_dir = dir.join("catalog");
        let listing =
            std::fs::read_dir(&cat_dir).map_err(|e| Error::Data(format!("{}: {e}", cat_dir.display())))?;
        let mut entries = Vec::new();
        for item in listing {
            let path = item.map_err(|e| Error::Data(e.to_string()))?.path();
            if path.extension().is_none_or(|x| x != "json") {
                continue;
            }
            let text =
                std::fs::read_to_string(&path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
            let mut entry: CatalogEntry =
                serde_json::from_str(&text).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
            entry.data_dir = dir.to_path_buf();
            entries.push(entry);
        }
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut seen = BTreeSet::new();
        for e in &entries {
            if !seen.insert(normalise_id(&e.id)) {
                return Err(Error::Data(format!("duplicate catalog id {}", e.id)));
            }
        }
        Ok(Catalog { entries })
    }

    pub fn from_entries(mut entries: Vec<CatalogEntry>) -> Catalog {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        let key = normalise_id(id);
        self.entries.iter().find(|e| normalise_id(&e.id) == key)
    }

    pub fn filter(&self, pred: impl Fn(&CatalogEntry) -> bool) -> Catalog {
        Catalog { entries: self.entries.iter().filter(|e| pred(e)).cloned().collect() }
    }

    pub fn constructed(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.is_constructed())
    }
}

/// The shipped catalog, loaded once per process.
pub fn load_catalog() -> Result<&'static Catalog> {
    static CAT: OnceLock<std::result::Result<Catalog, String>> = OnceLock::new();
    CAT.get_or_init(|| Catalog::load_default().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Data(e.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub field: &'static str,
    pub expected: String,
    pub found: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub id: String,
    pub constructed: bool,
    pub checks: Vec<Check>,
    /// `Some(false)` when the stabiliser is not isomorphic to its named type,
    /// `None` when the name is outside the reference library or too large.
    pub stabiliser_iso: Option<bool>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok) && self.stabiliser_iso != Some(false)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAIL" };
        let tier = if self.constructed { "constructed" } else { "descriptor" };
        write!(f, "{:<28} {tier:<12} {status}", self.id)?;
        for c in self.failures() {
            write!(f, " [{}: expected {}, found {}]", c.field, c.expected, c.found)?;
        }
        if self.constructed {
            let iso = match self.stabiliser_iso {
                Some(true) => "iso ok",
                Some(false) => "iso MISMATCH",
                None => "iso unchecked",
            };
            write!(f, " ({iso})")?;
        }
        Ok(())
    }
}

fn check(field: &'static str, expected: impl ToString, found: impl ToString) -> Check {
    let (expected, found) = (expected.to_string(), found.to_string());
    Check { field, ok: expected == found, expected, found }
}

/// Checks an entry's internal arithmetic and, when constructed, the built group
/// against every descriptor field that can be computed.
pub fn validate_entry(e: &CatalogEntry) -> Result<ValidationReport> {
    let mut checks = vec![
        check("order = degree * stabiliser", e.order, e.degree * e.stabiliser_order),
        check("stabiliser = (degree - 1) * two-point", e.stabiliser_order, (e.degree - 1) * e.two_point_order),
    ];
    let mut iso = None;
    if e.is_constructed() {
        let g = e.group()?;
        let stab = g.point_stabiliser(0);
        let two = stab.point_stabiliser(1);
        checks.push(check("degree", e.degree, g.degree()));
        checks.push(check("order", e.order, g.order()));
        checks.push(check("2-transitive", true, g.is_k_transitive(2)?));
        checks.push(check("stabiliser order", e.stabiliser_order, stab.order()));
        checks.push(check("two-point order", e.two_point_order, two.order()));
        checks.push(check("stabiliser soluble", e.stabiliser_soluble, structure::is_soluble(&stab)));
        if e.family == Family::Affine {
            let soc = structure::socle(&g, 0)?;
            checks.push(check("socle order", e.degree, soc.order()));
        }
        iso = names::matches_label(&stab, &e.stabiliser_iso)?;
    }
    Ok(ValidationReport { id: e.id.clone(), constructed: e.is_constructed(), checks, stabiliser_iso: iso })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_ignores_underscores_and_case() {
        let cat = load_catalog().unwrap();
        assert_eq!(cat.get("A_7@15").unwrap().id, "A7@15");
        assert_eq!(cat.get("m_24@24").unwrap().order, 244823040);
        assert!(!cat.get("M24@24").unwrap().is_constructed());
    }

    #[test]
    fn a7_on_15() {
        let cat = load_catalog().unwrap();
        let e = cat.get("A_7@15").unwrap();
        let report = validate_entry(e).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(e.stabiliser().unwrap().order_u64(), Some(168));
    }

    #[test]
    fn semilinear_family_at_eight() {
        let cat = load_catalog().unwrap();
        let e = cat.get("AGammaL1_8@8").unwrap();
        let s = e.stabiliser().unwrap();
        assert_eq!(s.order_u64(), Some(21));
        assert_eq!(names::name_group(&s).unwrap(), "7:3");
    }
}
