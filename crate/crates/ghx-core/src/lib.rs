//! Engine for computing the homology of graph complexes.
//!
//! The crate is organised in layers:
//!
//! * [`graph`]: colored simple graphs, canonical forms, orientation signs,
//!   graph6 text and isomorph-free enumeration;
//! * [`linalg`]: sparse integer matrices, exact ranks over prime fields and
//!   the rationals, and the SMS file format;
//! * [`symrep`]: partitions, symmetric-group characters and isotypic
//!   projectors;
//! * [`engine`]: slices, bases, operator matrices, the homology formulas,
//!   certification and the on-disk artifact store;
//! * [`zoo`]: the concrete complex families and special cycles;
//! * [`reference`]: the bundled reference tables used for acceptance.

pub mod engine;
pub mod graph;
pub mod linalg;
pub mod reference;
pub mod symrep;
pub mod zoo;

pub use engine::{Basis, Engine, EngineError, Family, HomologyEntry, OpKind, Operator, SliceSpec, Status};
pub use graph::{ColoredGraph, OrientationConvention, OrientationKind, Permutation};
pub use linalg::{Field, RankResult, SparseIntMatrix};
pub use zoo::{compute_table, HomologyTable, TableKind, TableRequest};
