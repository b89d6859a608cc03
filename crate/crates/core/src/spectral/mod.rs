//! Eigenvalues, eigenvectors and the secular function.
//!
//! The Fibonacci kind has a real, simple spectrum that interlaces with the
//! Fibonacci numbers; its eigenvalues are found by exact-sign bisection
//! inside certified brackets ([`eigenvalues`]). Other exact kinds go through
//! root isolation of the exact characteristic polynomial
//! ([`eigen_generalized`]).

mod bisect;
mod fibonacci;
mod generalized;
mod gershgorin;
mod scan;
mod secular;

pub use bisect::Bracket;
pub use fibonacci::{brackets, certified_brackets, eigenvalues, omega, refined_brackets};
pub use generalized::{eigen_generalized, Spectrum};
pub use gershgorin::{gershgorin, Disk};
pub use scan::{conjecture_scan, scan_one, ScanRow};
pub use secular::{
    eigenvector, eigenvector_exact, left_column_defect, left_eigenvector, left_eigenvector_exact, q_eval, q_exact,
    q_exact_f64, qplot, residual, residual_exact, QSample, POLE_GUARD,
};

use crate::error::Result;
use crate::matrix::{MatrixKind, MatrixSpec};

/// Default bracket width tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// One eigenvalue with its certificate and diagnostics.
#[derive(Clone, Debug)]
pub struct EigenPair {
    /// 1-based position in ascending order.
    pub index: usize,
    pub value: f64,
    pub multiplicity: usize,
    /// Exact bracket: `lo < λ < hi` with opposite signs of `χ`, or the exact
    /// eigenvalue.
    pub bracket: Bracket,
    /// Right eigenvector: `x_1 = 1` for the Fibonacci kind, otherwise scaled
    /// so that its largest entry is one.
    pub eigenvector: Vec<f64>,
    pub left: Option<Vec<f64>>,
    /// `‖(A − λI)x‖_∞` at the reported point (exact for the Fibonacci kind).
    pub residual: f64,
}

/// Spectrum of any exact kind: the interlacing route for the Fibonacci
/// kind, root isolation otherwise.
pub fn spectrum(spec: &MatrixSpec, tol: f64) -> Result<Spectrum> {
    match spec.kind {
        MatrixKind::Fibonacci => Ok(Spectrum { real: eigenvalues(spec.n, tol)?, complex: Vec::new() }),
        _ => eigen_generalized(spec, tol),
    }
}
