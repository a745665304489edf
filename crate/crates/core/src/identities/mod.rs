//! Graded polynomial identities of graded `UJ_n`.

pub mod check;
pub mod separate;
pub mod sequences;
pub mod term;

pub use check::{is_graded_identity, IdentityChecker};
pub use separate::{separating_identity, verify_separation, HoldsIn, Method, Separation};
pub use sequences::{act, f_mu, is_jordan_good, rev_equivalent, tau_condition, tau_orbit, tau_set};
pub use term::{JordanTerm, Tree, Var};
