//! Exact root systems for every irreducible finite Coxeter group, parabolic
//! orbit machinery, and the golden-ratio folding of the non-crystallographic
//! types into simply-laced ones.
//!
//! All arithmetic is exact: coefficients live in Z[tau] (tau the golden
//! ratio), so the crystallographic families and H3/H4/I2(5) share one code
//! path and no check ever depends on floating point. The [`sweep`] module
//! drives batches of verification checks and emits one [`cert::Certificate`]
//! per instance; the `coxcert` binary is a thin wrapper around it.

#![forbid(unsafe_code)]

pub mod cert;
pub mod folding;
pub mod linalg;
pub mod oshima;
pub mod rootsystem;
pub mod scalar;
pub mod sweep;
pub mod weyl;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown type label `{0}`")]
    UnknownLabel(String),
    #[error("rank {rank} is out of range for the {family} family")]
    RankOutOfRange { family: String, rank: usize },
    #[error("vector is not a root of {0}")]
    NotARoot(String),
    #[error("{0} is not crystallographic")]
    NotCrystallographic(String),
    #[error("{0} is reducible; this operation needs an irreducible system")]
    Reducible(String),
    #[error("root closure did not stabilize: {0}")]
    BadClosure(String),
    #[error("rescale factor for orbit class {0} must be positive")]
    NonPositiveFactor(usize),
    #[error("rescaled coefficients leave Z[tau]; this realization has no integral basis")]
    NonIntegralRescale,
    #[error("constraint set must be a nonempty subset of the simple roots")]
    EmptyConstraint,
    #[error("constraint coefficients must not all vanish")]
    ZeroConstraint,
    #[error("vector lies outside the requested fundamental chamber")]
    NotInChamber,
    #[error("dihedral checks need rank at most 2, got {0}")]
    NotDihedral(usize),
    #[error("Coxeter graph is not in the finite simply-laced catalog")]
    UnknownGraph,
    #[error("folding is defined for H3, H4 and I2(5), not {0}")]
    NotFoldable(String),
    #[error("map does not preserve the bilinear form")]
    NotFormPreserving,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
