//! Exact-arithmetic toolkit for decomposition matrices of finite groups.
//!
//! The crate certifies and searches lower-unitriangular orderings of
//! integer decomposition matrices, computes permutation-orbit reorderings
//! that make group orbits consecutive, lifts unitriangular basic sets
//! through towers of normal subgroups with prime abelian quotients, and
//! implements the admissible-symbol combinatorics labelling characters of
//! the general linear and unitary groups.
//!
//! All data is exact: entries are non-negative 64-bit integers, roots of
//! unity are reduced fractions in the torsion of Q/Z, and every operation
//! is a pure function on immutable values.

pub mod label;
pub mod matrix;
pub mod perm;
pub mod symbols;
pub mod tower;

pub use label::{BrauerLabel, CharLabel};
pub use matrix::{DecMatrix, UnitriCertificate};
