//! Exact computational Lie theory for the coadjoint invariants of maximal
//! nilpotent and Borel subalgebras of simple Lie algebras.
//!
//! The pipeline runs bottom-up:
//!
//! * [`rootsys`] builds root systems of every simple type (Bourbaki numbering),
//!   the action of the longest Weyl element and the diagram automorphism.
//! * [`cascade`] computes the Kostant cascade of strongly orthogonal roots.
//! * [`weight_table`] expresses the weights `(1 - w0) ϖ_i` in the cascade basis
//!   and checks them against the golden tables in [`fixtures`].
//! * [`liealg`] fixes Chevalley structure constants for `n` and `b`.
//! * [`polyalg`] is the sparse exact polynomial / rational-function kernel with
//!   the linear Poisson bracket.
//! * [`reduction`] builds the invariants `Z_i` and `Q_i` by iterated Heisenberg
//!   reduction and verifies them.
//! * [`spherical`] is the independent corner-minor oracle for type A.
//! * [`borel`] covers the Borel-subalgebra statements.

pub mod borel;
pub mod cascade;
pub mod error;
pub mod fixtures;
pub mod liealg;
pub mod linalg;
pub mod par;
pub mod polyalg;
pub mod rational;
pub mod reduction;
pub mod report;
pub mod rootsys;
pub mod spherical;
pub mod weight_table;

pub use error::{Error, Result};
pub use rational::Q;
