//! Exact symbolic toolkit for generalized Fibonacci and Lucas polynomials,
//! their q-analogues, and the binomial-coefficient determinant identities
//! they satisfy.
//!
//! Everything is computed over arbitrary-precision integers in the fixed
//! polynomial ring Z[x, s, q, q^-1]; comparisons are structural equalities of
//! canonical polynomials, never numeric approximations.
//!
//! - [`poly`] -- the sparse exact polynomial ring.
//! - [`combinatorics`] -- generalized binomials, Gaussian q-binomials,
//!   q-integers.
//! - [`sequences`] -- the F/L/qF/Luc families by recursion and closed form.
//! - [`matrix`] -- companion matrices, determinant matrix builders, and
//!   three cross-checked exact determinant engines.
//! - [`verifier`] -- the registry of machine-checkable identities with sweep
//!   execution and witness reporting.

pub mod combinatorics;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod sequences;
pub mod verifier;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Var};
