//! Exact enumeration of finite-index substructures of free semigroups.
//!
//! The crate counts and enumerates three families of objects inside the free
//! semigroup on `r` generators:
//!
//! - subsemigroups of a given Rees index (size of the complement),
//! - one- and two-sided ideals of a given index,
//! - congruences with a given number of classes.
//!
//! Substructures are represented by their finite *gap sets* (the complement),
//! enumerated by a rooted tree search, and counted exactly. For a fixed index
//! the counts fit exact polynomials (or exponential forms, for congruences),
//! which the crate reconstructs with big-rational arithmetic and cross-checks
//! against embedded reference tables and independent brute-force oracles.

pub mod bounds;
pub mod checkpoint;
pub mod congruence;
pub mod gapset;
pub mod golden;
pub mod ideal;
pub mod oracle;
pub mod pattern;
pub mod poly;
pub mod tree;
pub mod verify;
pub mod words;

pub use gapset::GapSet;
pub use poly::{ExponentialForm, GrowthPolynomial};
pub use tree::TreeKind;
pub use words::{Alphabet, Word};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input: bad ranks, letters out of range, parse failures,
    /// violated preconditions.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A computation was refused because it would exceed the supported
    /// problem size (distinct from mathematical errors).
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// An internal consistency check failed; this signals a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
