//! Group gradings on the Jordan algebra `UJ_n` of upper triangular matrices.

pub mod automorphism;
pub mod classify;
pub mod error;
pub mod gradfile;
pub mod grading;
pub mod group;
pub mod identities;
pub mod matrix;
pub mod normalize;
pub mod subspace;
pub mod syntax;

pub use automorphism::{Automorphism, GradedIso};
pub use classify::CanonicalLabel;
pub use error::{Error, Result};
pub use grading::{Component, Grading, GradingLabel, Violation};
pub use group::{FiniteAbelianGroup, GroupElement, GroupHom, Quotient};
pub use matrix::{Scalar, UTMatrix};
pub use normalize::canonicalize;
pub use subspace::Subspace;
