//! Redheffer-type matrices and their Fibonacci relatives.
//!
//! The crate builds the classical Redheffer matrix `R_n`, the
//! Fibonacci–Redheffer matrix `F_R(n)`, its corner-shifted variant and the
//! generalized positive-sequence matrices, and offers:
//!
//! * exact determinants by a closed form, by fraction-free elimination and
//!   through the characteristic polynomial ([`det`]);
//! * certified eigenvalue brackets, eigenvectors and the secular function
//!   ([`spectral`]);
//! * rigorously bounded constants and asymptotic comparisons ([`asymptotics`]).
//!
//! All exact work is done over `num-bigint` integers and `num-rational`
//! rationals; floating point appears only where an approximation is the
//! stated output.

pub mod arithmetic;
pub mod asymptotics;
pub mod cli;
pub mod det;
pub mod error;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod reference;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{build, DivisorMatrix, MatrixKind, MatrixSpec, Sequence};
