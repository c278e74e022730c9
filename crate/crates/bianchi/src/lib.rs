//! A workbench for graded cohomology rings of the Bianchi groups.
//!
//! The crate encodes finitely presented graded-commutative algebras over
//! small prime fields, graded maps and derivations between them, Bockstein
//! page bookkeeping against integral ring claims, and the long-exact-sequence
//! assembly for amalgamated products and HNN extensions. A built-in catalog
//! ships every ring, restriction map, derivation, integral claim, and
//! group-decomposition recipe the workbench verifies.
//!
//! Modules mirror the computation layers:
//!
//! * [`fplinalg`]: exact dense linear algebra over 𝔽ₚ.
//! * [`gradedalg`]: presentations, degreewise bases, normal forms, Poincaré series.
//! * [`gradedmaps`]: algebra homomorphisms and degree-(+1) derivations.
//! * [`bockstein`]: spectral-page dimensions, Universal-Coefficient checks, claim verification.
//! * [`bassserre`]: long-exact-sequence assembly, towers, delta-class bookkeeping.
//! * [`catalog`]: the presentation file format and the shipped dataset.
//! * [`verify`]: per-entry and whole-catalog verification drivers.
//! * [`report`]: the `CHECK`/`NOTE` report structure shared by all verifiers.

pub mod bassserre;
pub mod bockstein;
pub mod catalog;
pub mod exec;
pub mod fplinalg;
pub mod gradedalg;
pub mod gradedmaps;
pub mod report;
pub mod verify;

use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("inhomogeneous relation `{0}`")]
    InhomogeneousRelation(String),
    #[error("degree mismatch for `{gen}`: expected degree {expected}, image has degree {found}")]
    DegreeMismatch { gen: String, expected: usize, found: usize },
    #[error("relation not preserved: `{relation}` maps to `{image}`")]
    RelationNotPreserved { relation: String, image: String },
    #[error("derivation ill-defined on relation `{relation}`: image reduces to `{image}`")]
    IllDefinedDerivation { relation: String, image: String },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("entry `{id}` failed validation: {msg}")]
    EntryInvalid { id: String, msg: String },
    #[error("insufficient degree range: need {needed}, have {have}")]
    InsufficientRange { needed: usize, have: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
