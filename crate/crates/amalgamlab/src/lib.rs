//! Permutation-group engine and amalgam classifier for locally 2-arc-transitive graphs.
//!
//! The crate is layered: [`perm`] and [`group`] form the exact engine, [`structure`]
//! adds solubility, composition factors and isomorphism testing, [`catalog`] holds
//! the 2-transitive groups, [`amalgam`] matches them up, and [`graphs`] builds and
//! checks concrete graphs.

pub mod error;
pub mod perm;
pub mod group;
pub mod arith;
pub mod field;
pub mod structure;
pub mod catalog;
pub mod names;
pub mod golden;
pub mod amalgam;
pub mod graphs;

pub use error::{Error, Result};
pub use group::{Group, GroupMap, MapKind};
pub use perm::Perm;
