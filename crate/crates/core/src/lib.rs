//! Exact computation of L-invariant vectors in irreducible representations
//! of real simple Lie algebras, and of the action of the longest restricted
//! Weyl element on them.

pub mod arith;
pub mod conjectures;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod realform;
pub mod repbuild;
pub mod rootsys;
pub mod signtable;

pub use arith::Rat;
pub use error::{Error, Result};
