//! Certified eigenvalues of the Fibonacci kind.
//!
//! For `n ≥ 3` the eigenvalues interlace with the Fibonacci numbers:
//! `λ_1 < 0`, `F_i < λ_i < F_{i+1}` for `2 ≤ i ≤ n−1` and `λ_n > F_n`.
//! The brackets below are certified by exact signs of `χ` at their integer
//! endpoints; since there are `n` disjoint brackets each with a sign
//! change, each holds exactly one eigenvalue.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::bisect::{bisect, Bracket, Dyadic};
use super::secular::secular_raw;
use super::EigenPair;
use crate::arithmetic::fibonacci_numbers;
use crate::det::charpoly;
use crate::error::{Error, Result};
use crate::matrix::{build, MatrixSpec};
use crate::poly::IntPoly;
use crate::scalar::{int, ratio_to_f64};

/// Upper limit on bisection steps per eigenvalue.
const MAX_STEPS: usize = 4000;
/// Number of times an outer endpoint may be widened before giving up.
const WIDEN_ATTEMPTS: usize = 16;

/// `⌊n/2⌋`.
pub fn omega(n: usize) -> usize {
    n / 2
}

/// Integer endpoints before certification.
fn proposed(n: usize, fib: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let w = omega(n);
    let one = BigInt::from(1);
    let refined = |i: usize| n >= 10 && i >= w + 2;
    let mut out = Vec::with_capacity(n);
    let lower = if n >= 10 {
        BigInt::from(w as i64 + 3 - n as i64) - &fib[w + 2]
    } else {
        gershgorin_floor(n, fib)
    };
    out.push((lower, BigInt::zero()));
    for i in 2..n {
        let hi = if refined(i) { &fib[i] + &one } else { fib[i + 1].clone() };
        out.push((fib[i].clone(), hi));
    }
    let top = if n >= 10 {
        &fib[n] + &one
    } else {
        fib[1..=n].iter().sum::<BigInt>() + &one
    };
    out.push((fib[n].clone(), top));
    out
}

/// `min_i (a_ii − r_i)` over the Gershgorin disks, an integer here.
fn gershgorin_floor(n: usize, fib: &[BigInt]) -> BigInt {
    let mut low = BigInt::from(1) - BigInt::from(n as i64 - 1);
    for i in 2..=n {
        let multiples = (n / i) as i64;
        let v = &fib[i] - BigInt::from(1) - BigInt::from(multiples - 1) * &fib[i];
        if v < low {
            low = v;
        }
    }
    low
}

/// Initial certified brackets for `F_R(n)` together with the integer
/// characteristic polynomial.
pub fn certified_brackets(n: usize) -> Result<(IntPoly, Vec<Bracket>)> {
    let spec = MatrixSpec::fibonacci(n);
    let chi = charpoly(&spec)?.int_poly();
    match n {
        0 => return Err(Error::invalid("n must be at least 1")),
        1 => return Ok((chi, vec![Bracket::exact(int(1))])),
        2 => return Ok((chi, vec![Bracket::exact(int(0)), Bracket::exact(int(2))])),
        _ => {}
    }
    let fib = fibonacci_numbers(n + 1);
    let mut raw = proposed(n, &fib);
    let last = raw.len() - 1;
    let sign = |x: &BigInt| chi.sign_at_dyadic(x, 0);
    for (idx, (lo, hi)) in raw.iter_mut().enumerate() {
        let mut attempts = 0;
        loop {
            let (sl, sh) = (sign(lo), sign(hi));
            if sl != Ordering::Equal && sh != Ordering::Equal && sl != sh {
                break;
            }
            attempts += 1;
            if attempts > WIDEN_ATTEMPTS || (idx != 0 && idx != last) {
                return Err(Error::BracketFailure(format!(
                    "no certified sign change for eigenvalue {} of F_R({n}) on ({lo}, {hi})",
                    idx + 1
                )));
            }
            if idx == 0 {
                *lo = &*lo * 2 - 1;
            } else {
                *hi = &*hi * 2 + 1;
            }
        }
    }
    let brackets = raw
        .into_iter()
        .map(|(lo, hi)| Bracket::open(BigRational::from_integer(lo), BigRational::from_integer(hi)))
        .collect();
    Ok((chi, brackets))
}

/// Public form of the initial interlacing brackets.
pub fn brackets(n: usize) -> Result<Vec<Bracket>> {
    certified_brackets(n).map(|(_, b)| b)
}

/// Distance from `[lo, hi]` to the nearest pole `F_k`, `2 ≤ k ≤ n`.
fn pole_distance(lo: &BigRational, hi: &BigRational, poles: &[BigRational]) -> BigRational {
    poles
        .iter()
        .map(|p| {
            if p <= lo {
                lo - p
            } else if p >= hi {
                p - hi
            } else {
                BigRational::zero()
            }
        })
        .min()
        .unwrap_or_else(|| BigRational::from_integer(1.into()))
}

/// Refines every bracket until its width is at most
/// `tol · min(1, |endpoint|, d²) / n`, with `d` the distance to the nearest
/// pole. The relative factor keeps `∏ λ_i` accurate; the `d²` factor keeps
/// the secular residual small when an eigenvalue sits within `1/F_i` of
/// `F_i`.
pub fn refined_brackets(n: usize, tol: f64) -> Result<(IntPoly, Vec<Bracket>)> {
    check_tol(tol)?;
    let (chi, initial) = certified_brackets(n)?;
    let tol_r = BigRational::from_float(tol).ok_or_else(|| Error::invalid("tolerance is not finite"))?;
    let nn = BigRational::from_integer(BigInt::from(n));
    let fib = fibonacci_numbers(n);
    let poles: Vec<BigRational> = fib[2..].iter().cloned().map(BigRational::from_integer).collect();
    let one = BigRational::from_integer(1.into());
    let refined: Vec<Bracket> = initial
        .into_par_iter()
        .map(|b| {
            if b.exact.is_some() {
                return b;
            }
            let lo = b.lo.to_integer();
            let hi = b.hi.to_integer();
            let sign_lo = chi.sign_at_dyadic(&lo, 0);
            let done = |l: &BigRational, h: &BigRational| {
                let d = pole_distance(l, h, &poles);
                let mut scale = one.clone().min(&d * &d);
                let mag = l.abs().min(h.abs());
                if mag < scale {
                    scale = mag;
                }
                (h - l) * &nn <= &tol_r * scale
            };
            bisect(&chi, Dyadic::integers(lo, hi), sign_lo, done, MAX_STEPS)
        })
        .collect();
    Ok((chi, refined))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// All eigenpairs of `F_R(n)`: certified brackets refined by exact
/// bisection, eigenvectors by back substitution evaluated exactly at the
/// bracket midpoint, and the exact residual there. Rows `2..n` of
/// `(A − zI)x` vanish identically for the back-substituted `x`, so the
/// residual is `|Q(z)|` from row 1.
pub fn eigenvalues(n: usize, tol: f64) -> Result<Vec<EigenPair>> {
    let (_, brackets) = refined_brackets(n, tol)?;
    let m = build(&MatrixSpec::fibonacci(n))?;
    brackets
        .into_par_iter()
        .enumerate()
        .map(|(idx, bracket)| {
            let z = bracket.point();
            let raw = secular_raw(&m, &z)?.expect("Fibonacci weights are integers");
            let residual = ratio_to_f64(&raw.q.abs());
            let eigenvector = raw
                .num
                .into_iter()
                .zip(raw.den)
                .map(|(a, b)| if b.is_negative() { (-a, -b) } else { (a, b) })
                .map(|(a, b)| ratio_to_f64(&BigRational::new_raw(a, b)))
                .collect();
            Ok(EigenPair {
                index: idx + 1,
                value: ratio_to_f64(&z),
                multiplicity: 1,
                eigenvector,
                left: None,
                residual,
                bracket,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::det_closed_form;
    use crate::scalar::ln_abs;

    #[test]
    fn small_orders() {
        let one = eigenvalues(1, 1e-10).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].bracket.exact, Some(int(1)));
        let two = eigenvalues(2, 1e-10).unwrap();
        assert_eq!(two.iter().map(|p| p.value).collect::<Vec<_>>(), vec![0.0, 2.0]);
        assert!(eigenvalues(0, 1e-10).is_err());
        assert!(eigenvalues(5, 0.0).is_err());
    }

    #[test]
    fn n5_spectrum() {
        let want = [-0.400, 1.197, 2.294, 3.600, 5.309];
        let pairs = eigenvalues(5, 1e-10).unwrap();
        for (p, w) in pairs.iter().zip(want) {
            assert!((p.value - w).abs() <= 0.002, "{} vs {w}", p.value);
        }
        let b = brackets(5).unwrap();
        assert_eq!(b[4].lo, int(5));
        assert!(b[4].contains(&BigRational::from_float(5.309).unwrap()));
    }

    #[test]
    fn n10_uses_unit_brackets() {
        let b = brackets(10).unwrap();
        assert_eq!((b[8].lo.clone(), b[8].hi.clone()), (int(34), int(35)));
        assert_eq!((b[0].lo.clone(), b[0].hi.clone()), (int(-15), int(0)));
        assert_eq!((b[9].lo.clone(), b[9].hi.clone()), (int(55), int(56)));
        assert_eq!((b[2].lo.clone(), b[2].hi.clone()), (int(2), int(3)));
    }

    #[test]
    fn product_sum_and_residuals() {
        for n in [3usize, 8, 17, 40] {
            let pairs = eigenvalues(n, 1e-10).unwrap();
            let det = det_closed_form(&MatrixSpec::fibonacci(n)).unwrap();
            let det = det.as_exact().unwrap().clone();
            let log_prod: f64 = pairs.iter().map(|p| ln_abs(&p.bracket.point())).sum();
            assert!((log_prod - ln_abs(&det)).abs() <= 1e-10, "n = {n}");
            let negatives = pairs.iter().filter(|p| p.value < 0.0).count();
            assert_eq!(negatives, 1);
            let sum: BigRational = pairs.iter().map(|p| p.bracket.point()).sum();
            let trace: BigInt = fibonacci_numbers(n)[1..].iter().sum();
            let gap = ratio_to_f64(&(sum - BigRational::from_integer(trace)).abs());
            assert!(gap <= 1e-8 * n as f64);
            let m = build(&MatrixSpec::fibonacci(n)).unwrap();
            for p in &pairs {
                assert!(p.residual <= 1e-8 * m.norm_inf(), "n = {n}, i = {}", p.index);
                assert!(p.eigenvector.iter().all(|x| *x != 0.0));
                assert_eq!(p.eigenvector[0], 1.0);
            }
        }
    }
}
