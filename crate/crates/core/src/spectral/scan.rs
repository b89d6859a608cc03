//! Reporting scan for two open questions about the Fibonacci kind:
//! whether `−1 < λ_1 < 0`, and whether `F_i < λ_i < F_i + 1` for
//! `2 ≤ i ≤ n`.
//!
//! Both are decided exactly: the bracket of `λ_i` contains exactly one
//! eigenvalue and has a sign change, so `λ_i < F_i + 1` holds iff `χ`
//! changes sign on `(F_i, F_i + 1)`, i.e. iff `χ(F_i + 1)` is nonzero and
//! differs in sign from `χ(F_i)`. The outcome is recorded, never asserted.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::fibonacci::{certified_brackets, refined_brackets};
use crate::arithmetic::fibonacci_numbers;
use crate::error::{Error, Result};
use crate::scalar::ratio_to_f64;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    /// `−1 < λ_1 < 0`.
    pub lambda1_above_minus_one: bool,
    /// `λ_i < F_i + 1` for every `2 ≤ i ≤ n`.
    pub unit_gap: bool,
    /// Indices `i` with `λ_i ≥ F_i + 1`.
    pub violations: Vec<usize>,
    pub lambda1: f64,
    /// `max_i (λ_i − F_i)` over `2 ≤ i ≤ n`.
    pub max_excess: f64,
}

pub fn scan_one(n: usize, tol: f64) -> Result<ScanRow> {
    if n < 3 {
        return Err(Error::invalid("the scan starts at n = 3"));
    }
    let (chi, _) = certified_brackets(n)?;
    let fib = fibonacci_numbers(n);
    let s = |x: &BigInt| chi.sign_at_dyadic(x, 0);
    let changes = |a: &BigInt, b: &BigInt| {
        let (sa, sb) = (s(a), s(b));
        sa != Ordering::Equal && sb != Ordering::Equal && sa != sb
    };
    let lambda1_above_minus_one = changes(&BigInt::from(-1), &BigInt::from(0));
    let violations: Vec<usize> = (2..=n).filter(|&i| !changes(&fib[i], &(&fib[i] + 1))).collect();
    let (_, refined) = refined_brackets(n, tol)?;
    let lambda1 = refined[0].value();
    let max_excess = refined[1..]
        .iter()
        .zip(2..)
        .map(|(b, i)| ratio_to_f64(&(b.point() - BigRational::from_integer(fib[i].clone()))))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(ScanRow {
        n,
        lambda1_above_minus_one,
        unit_gap: violations.is_empty(),
        violations,
        lambda1,
        max_excess,
    })
}

/// One row per `3 ≤ n ≤ n_max`.
pub fn conjecture_scan(n_max: usize, tol: f64) -> Result<Vec<ScanRow>> {
    if n_max < 3 {
        return Err(Error::invalid("n_max must be at least 3"));
    }
    (3..=n_max).into_par_iter().map(|n| scan_one(n, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_hold() {
        let rows = conjecture_scan(11, 1e-8).unwrap();
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert!(r.lambda1_above_minus_one && r.unit_gap, "n = {}", r.n);
            assert!(r.lambda1 < 0.0 && r.lambda1 > -1.0);
            assert!(r.max_excess > 0.0 && r.max_excess < 1.0);
        }
        assert!((rows[0].lambda1 + 0.247).abs() < 0.002);
        assert!(conjecture_scan(2, 1e-8).is_err());
    }
}
