//! Constants and asymptotic formulas with rigorous truncation bounds.
//!
//! * `C = Σ_{k≥1} μ(k)/F_k`, from an exact partial sum and the tail bound
//!   `|Σ_{k>k₀} μ(k)/F_k| ≤ φ^{2−k₀}/(φ−1)`.
//! * `C_φ = ∏_{k≥1}(1 − b^k)`, `b = −φ⁻²`, from an exact truncated product
//!   in `Q(√5)` and the relative tail `|b|^{K+1}/((1−|b|)(1−|b|^{K+1}))`.
//! * `C_0 = C·C_φ`, so that `det F_R(n) ∼ C_0 φ^{n(n+1)/2} 5^{−n/2}`.
//!
//! Values are exact rationals until the final rounding; the only error
//! besides the stated tail is a final rounding far below it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arithmetic::{fib_cache, fibonacci_numbers, mobius_sieve, zeta, EULER_GAMMA, PHI};
use crate::det::{det_closed_form, sign_of_rational};
use crate::error::{Error, Result};
use crate::matrix::{MatrixSpec, Sequence};
use crate::scalar::{decimal_string, ln_abs, ln_abs_int, ratio_to_f64, sign_of};
use crate::spectral::refined_brackets;

/// `|b| = φ⁻²`.
pub const B_ABS: f64 = 0.381_966_011_250_105_1;

/// Relative slack applied to bounds evaluated in floating point.
const BOUND_SLACK: f64 = 1.0 + 1e-12;

/// A constant together with a rigorous bound on `|true − value|`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    pub name: String,
    pub value: BigRational,
    pub error_bound: f64,
    /// Number of terms (sum) or factors (product) used.
    pub truncation: usize,
}

impl AsymptoticReport {
    pub fn value_f64(&self) -> f64 {
        ratio_to_f64(&self.value)
    }

    /// Value rounded to `digits` places after the point.
    pub fn decimal(&self, digits: usize) -> String {
        decimal_string(&self.value, digits)
    }

    /// True when `reference`, itself rounded with half-unit `rounding`,
    /// is consistent with `value ± error_bound`.
    pub fn covers(&self, reference: f64, rounding: f64) -> bool {
        (self.value_f64() - reference).abs() <= self.error_bound + rounding
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// `10^{-digits}` as a rational.
fn ten_pow_neg(digits: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits))
}

/// Rounds to the nearest multiple of `10^{-digits}`.
fn round_to(r: &BigRational, digits: usize) -> BigRational {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// Decimal digits kept for a value whose target accuracy is `tol`.
fn working_digits(tol: f64) -> usize {
    ((-tol.log10()).ceil().max(0.0) as usize + 20).max(40)
}

// ---------------------------------------------------------------------------
// C

/// `Σ_{k=1}^{k₀} μ(k)/F_k`, exactly.
pub fn constant_c_partial_sum(k0: usize) -> Result<BigRational> {
    let mu = mobius_sieve(k0.max(1))?;
    let fib = fibonacci_numbers(k0);
    let mut sum = BigRational::zero();
    for k in 1..=k0 {
        let m = mu.mu(k);
        if m != 0 {
            sum += BigRational::new(BigInt::from(m), fib[k].clone());
        }
    }
    Ok(sum)
}

/// `φ^{2−k₀}/(φ−1) = φ^{3−k₀}`, bounding `|Σ_{k>k₀} μ(k)/F_k|`.
pub fn constant_c_tail_bound(k0: usize) -> f64 {
    PHI.powi(3 - k0 as i32) * BOUND_SLACK
}

/// `C` truncated after `k₀` terms.
pub fn constant_c_at(k0: usize) -> Result<AsymptoticReport> {
    if k0 == 0 {
        return Err(Error::invalid("k0 must be at least 1"));
    }
    Ok(AsymptoticReport {
        name: "C".to_string(),
        value: constant_c_partial_sum(k0)?,
        error_bound: constant_c_tail_bound(k0),
        truncation: k0,
    })
}

/// `C` with `k₀` minimal such that the tail bound is at most `tol`.
pub fn constant_c(tol: f64) -> Result<AsymptoticReport> {
    check_tol(tol)?;
    let mut k0 = 1usize;
    while constant_c_tail_bound(k0) > tol {
        k0 += 1;
    }
    constant_c_at(k0)
}

// ---------------------------------------------------------------------------
// Exact arithmetic in Q(√5)

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq)]
struct QuadSqrt5 {
    a: BigRational,
    b: BigRational,
}

impl QuadSqrt5 {
    fn from_rational(a: BigRational) -> Self {
        QuadSqrt5 { a, b: BigRational::zero() }
    }

    fn mul(&self, o: &QuadSqrt5) -> QuadSqrt5 {
        let five = BigRational::from_integer(5.into());
        QuadSqrt5 {
            a: &self.a * &o.a + five * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    /// Rational approximation with its error bound: `√5` is replaced by a
    /// truncated decimal accurate enough to survive cancellation and still
    /// leave `digits` correct decimals.
    fn approx(&self, digits: usize) -> (BigRational, BigRational) {
        if self.b.is_zero() {
            return (self.a.clone(), BigRational::zero());
        }
        let mag = (ln_abs(&self.b) / std::f64::consts::LN_10).ceil().max(0.0) as usize;
        let d = mag + digits + 5;
        let scale = num_traits::pow(BigInt::from(10), d);
        let root = (BigInt::from(5) * &scale * &scale).sqrt();
        let s5 = BigRational::new(root, scale);
        let value = &self.a + &self.b * s5;
        let err = self.b.abs() * ten_pow_neg(d);
        (value, err)
    }
}

/// `φ^{−j} = (−1)^j (L_j − F_j√5)/2`, with `fib` holding `F_0..=F_{j+1}`.
fn phi_pow_neg(j: usize, fib: &[BigInt]) -> QuadSqrt5 {
    if j == 0 {
        return QuadSqrt5::from_rational(BigRational::one());
    }
    let lucas = &fib[j - 1] + &fib[j + 1];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let sign = if j % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    QuadSqrt5 {
        a: &sign * &half * BigRational::from_integer(lucas),
        b: -sign * half * BigRational::from_integer(fib[j].clone()),
    }
}

/// `∏_{k=1}^{K} (1 − b^k)` exactly, `b^k = (−1)^k φ^{−2k}`.
fn b_product(k_max: usize) -> QuadSqrt5 {
    let fib = fibonacci_numbers(2 * k_max + 1);
    let mut acc = QuadSqrt5::from_rational(BigRational::one());
    for k in 1..=k_max {
        let mut bk = phi_pow_neg(2 * k, &fib);
        if k % 2 == 1 {
            bk.a = -bk.a;
            bk.b = -bk.b;
        }
        let factor = QuadSqrt5 { a: BigRational::one() - bk.a, b: -bk.b };
        acc = acc.mul(&factor);
    }
    acc
}

/// Relative tail of the `C_φ` product after `K` factors.
pub fn constant_c_phi_tail(k: usize) -> f64 {
    let q = B_ABS.powi(k as i32 + 1);
    q / ((1.0 - B_ABS) * (1.0 - q)) * BOUND_SLACK
}

/// `C_φ` truncated after `K` factors.
pub fn constant_c_phi_at(k: usize) -> Result<AsymptoticReport> {
    if k == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    let r = constant_c_phi_tail(k);
    let digits = working_digits(r.min(1e-20));
    let (approx, approx_err) = b_product(k).approx(digits + 5);
    let value = round_to(&approx, digits);
    // |ln(C_φ/P_K)| ≤ r, hence |C_φ − P_K| ≤ P_K (e^r − 1).
    let p_hi = ratio_to_f64(&approx) * BOUND_SLACK + ratio_to_f64(&approx_err);
    let rounding = ratio_to_f64(&(approx_err + ten_pow_neg(digits)));
    Ok(AsymptoticReport {
        name: "C_phi".to_string(),
        value,
        error_bound: (p_hi * r.exp_m1() + rounding) * BOUND_SLACK,
        truncation: k,
    })
}

/// `C_φ` with `K` minimal such that the relative tail is at most `tol`.
pub fn constant_c_phi(tol: f64) -> Result<AsymptoticReport> {
    check_tol(tol)?;
    let mut k = 1usize;
    while constant_c_phi_tail(k) > tol {
        k += 1;
    }
    constant_c_phi_at(k)
}

/// `C_0 = C·C_φ` with the propagated bound `|C|e_φ + C_φ e_C + e_C e_φ`.
pub fn constant_c0(tol: f64) -> Result<AsymptoticReport> {
    check_tol(tol)?;
    let c = constant_c(tol / 4.0)?;
    let p = constant_c_phi(tol / 4.0)?;
    let digits = working_digits(tol);
    let value = round_to(&(&c.value * &p.value), digits);
    let (cv, pv) = (c.value_f64().abs(), p.value_f64().abs());
    let propagated = cv * p.error_bound + pv * c.error_bound + c.error_bound * p.error_bound;
    Ok(AsymptoticReport {
        name: "C_0".to_string(),
        value,
        error_bound: (propagated + ratio_to_f64(&ten_pow_neg(digits))) * BOUND_SLACK,
        truncation: c.truncation,
    })
}

/// The three constants at a common tolerance, in the order `C`, `C_φ`,
/// `C_0`.
pub fn constants(tol: f64) -> Result<Vec<AsymptoticReport>> {
    Ok(vec![constant_c(tol)?, constant_c_phi(tol)?, constant_c0(tol)?])
}

// ---------------------------------------------------------------------------
// Determinant and fibonorial

/// Sign and natural log of the magnitude of an estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogEstimate {
    pub sign: i8,
    pub ln_abs: f64,
}

/// `det F_R(n) ∼ C_0 φ^{n(n+1)/2} 5^{−n/2}` on log scale.
pub fn det_asymptotic(n: usize) -> Result<LogEstimate> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let c0 = constant_c0(1e-15)?.value_f64();
    let nf = n as f64;
    Ok(LogEstimate {
        sign: if c0 < 0.0 { -1 } else { 1 },
        ln_abs: c0.abs().ln() + nf * (nf + 1.0) / 2.0 * PHI.ln() - nf / 2.0 * 5f64.ln(),
    })
}

/// Exact determinant of `F_R(n)` against [`det_asymptotic`].
#[derive(Clone, Debug, PartialEq)]
pub struct DetAsymptoticCheck {
    pub n: usize,
    pub estimate: LogEstimate,
    pub exact_sign: i8,
    /// `None` when the determinant is zero (`n = 2`).
    pub exact_ln_abs: Option<f64>,
    /// `|ln|det| − estimate| / |ln|det||`.
    pub relative_log_error: Option<f64>,
}

pub fn det_asymptotic_check(n: usize) -> Result<DetAsymptoticCheck> {
    let estimate = det_asymptotic(n)?;
    let det = det_closed_form(&MatrixSpec::fibonacci(n))?.to_rational();
    let exact_sign = sign_of_rational(&det);
    let exact_ln_abs = (!det.is_zero()).then(|| ln_abs(&det));
    let relative_log_error = exact_ln_abs
        .filter(|l| *l != 0.0)
        .map(|l| (l - estimate.ln_abs).abs() / l.abs());
    Ok(DetAsymptoticCheck { n, estimate, exact_sign, exact_ln_abs, relative_log_error })
}

/// `ln(n!_F)` against `ln C_φ + (n(n+1)/2) ln φ − (n/2) ln 5`.
#[derive(Clone, Debug, PartialEq)]
pub struct FibonorialAsymptotic {
    pub n: usize,
    pub ln_exact: f64,
    pub ln_estimate: f64,
    /// `ln(n!_F) − ln C_φ − (n(n+1)/2) ln φ + (n/2) ln 5`, evaluated from the
    /// exact fibonorial in high precision.
    pub residual: f64,
    /// Bound on the evaluation error of `residual`.
    pub residual_error: f64,
    /// `2|b|ⁿ/(1−|b|)`.
    pub bound: f64,
}

pub fn fibonorial_asymptotic(n: usize) -> Result<FibonorialAsymptotic> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let cache = fib_cache(n)?;
    let fact = cache.fibonorial(n).clone();
    let m = n * (n + 1) / 2;
    let fib = fibonacci_numbers(m + 1);
    // X = n!_F · 5^{n/2} · φ^{−m}, exactly in Q(√5).
    let five_half = num_traits::pow(BigInt::from(5), n / 2);
    let mut x = QuadSqrt5::from_rational(BigRational::from_integer(fact.clone() * five_half));
    if n % 2 == 1 {
        x = QuadSqrt5 { a: BigRational::zero(), b: x.a };
    }
    let x = x.mul(&phi_pow_neg(m, &fib));
    let tol_phi = (B_ABS.powi(n as i32) * 1e-12).max(1e-300);
    let c_phi = constant_c_phi(tol_phi)?;
    let digits = working_digits(tol_phi);
    let (xv, x_err) = x.approx(digits);
    let t = &xv / &c_phi.value - BigRational::one();
    let residual = ratio_to_f64(&t).ln_1p();
    let cp = c_phi.value_f64();
    let rel = (c_phi.error_bound + ratio_to_f64(&x_err)) / (cp - c_phi.error_bound);
    let nf = n as f64;
    let ln_phi_est = cp.ln() + (m as f64) * PHI.ln() - nf / 2.0 * 5f64.ln();
    Ok(FibonorialAsymptotic {
        n,
        ln_exact: ln_abs_int(&fact),
        ln_estimate: ln_phi_est,
        residual,
        residual_error: (2.0 * rel + 4.0 * f64::EPSILON * residual.abs()) * BOUND_SLACK,
        bound: 2.0 * B_ABS.powi(n as i32) / (1.0 - B_ABS),
    })
}

/// Trace and spectral radius of `F_R(n)` against `φ^{n+2}/√5` and `φⁿ/√5`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRadius {
    pub n: usize,
    /// `F_{n+2} − 1`.
    pub trace: BigInt,
    pub trace_ratio: f64,
    pub lambda_max: f64,
    pub radius_ratio: f64,
}

pub fn trace_and_radius_asymptotics(n: usize) -> Result<TraceRadius> {
    if n < 3 {
        return Err(Error::invalid("n must be at least 3"));
    }
    let fib = fibonacci_numbers(n + 2);
    let trace = &fib[n + 2] - BigInt::one();
    let ln_sqrt5 = 5f64.ln() / 2.0;
    let trace_ratio = (ln_abs_int(&trace) - ((n + 2) as f64 * PHI.ln() - ln_sqrt5)).exp();
    let (_, brackets) = refined_brackets(n, 1e-12)?;
    let top = brackets.last().expect("n >= 3 brackets").point();
    let lambda_max = ratio_to_f64(&top);
    let radius_ratio = (ln_abs(&top) - (n as f64 * PHI.ln() - ln_sqrt5)).exp();
    Ok(TraceRadius { n, trace, trace_ratio, lambda_max, radius_ratio })
}

// ---------------------------------------------------------------------------
// Series

/// One partial sum of a reported series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRow {
    pub n: usize,
    pub partial_sum: f64,
}

/// Partial sums at checkpoints `1..10` and then `1-2-5` steps up to
/// `n_max` (always included).
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub target: f64,
    /// False when convergence toward `target` is not asserted.
    pub asserted: bool,
    pub rows: Vec<SeriesRow>,
}

pub fn checkpoints(n_max: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n_max.min(10)).collect();
    let mut decade = 10usize;
    'outer: loop {
        for step in [2, 5, 10] {
            let c = decade.saturating_mul(step);
            if c >= n_max || c == usize::MAX {
                break 'outer;
            }
            out.push(c);
        }
        decade = decade.saturating_mul(10);
    }
    if out.last() != Some(&n_max) && n_max > 0 {
        out.push(n_max);
    }
    out
}

/// Compensated (Neumaier) running sum of `term(k)`, `k = 1..=n_max`,
/// recorded at [`checkpoints`].
fn running_sum(n_max: usize, term: impl Fn(usize) -> f64) -> Vec<SeriesRow> {
    let marks = checkpoints(n_max);
    let mut rows = Vec::with_capacity(marks.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut next = 0;
    for k in 1..=n_max {
        let t = term(k);
        let s = sum + t;
        comp += if sum.abs() >= t.abs() { (sum - s) + t } else { (t - s) + sum };
        sum = s;
        if marks.get(next) == Some(&k) {
            rows.push(SeriesRow { n: k, partial_sum: sum + comp });
            next += 1;
        }
    }
    rows
}

/// `Σ_{k≤n} μ(k)/k^p` toward `1/ζ(p)`.
pub fn zeta_inverse_partial_sums(p: f64, n_max: usize) -> Result<Series> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("the series needs p > 1, got {p}")));
    }
    if n_max == 0 {
        return Err(Error::invalid("n_max must be at least 1"));
    }
    let tol = 1e-12f64.max(10f64.powf(-7.0 * p));
    let target = 1.0 / zeta(p, tol)?;
    let mu = mobius_sieve(n_max)?;
    let rows = running_sum(n_max, |k| f64::from(mu.mu(k)) * (k as f64).powf(-p));
    Ok(Series { name: format!("zeta_inverse(p={p})"), target, asserted: true, rows })
}

/// `Σ_{k≤n} μ(k) ln²k / k`, whose limit is `−2γ ≈ −1.1544`. The series
/// converges conditionally and far too slowly for a tolerance at any
/// practical `n`, so it is reported without assertion.
pub fn mu_log_squared_partial_sums(n_max: usize) -> Result<Series> {
    if n_max < 2 {
        return Err(Error::invalid("n_max must be at least 2"));
    }
    let mu = mobius_sieve(n_max)?;
    let rows = running_sum(n_max, |k| {
        let l = (k as f64).ln();
        f64::from(mu.mu(k)) * l * l / k as f64
    });
    Ok(Series { name: "mu_log_squared".to_string(), target: -2.0 * EULER_GAMMA, asserted: false, rows })
}

/// `det A_R(n)` for `a_j = j^p` against
/// `ζ(p)⁻¹ (2nπ)^{p/2} (n/e)^{np}` on log scale.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedAsymptotic {
    pub p: u32,
    pub n: usize,
    pub det: BigRational,
    pub sign: i8,
    pub ln_exact: f64,
    pub ln_estimate: f64,
    /// `ln_exact / ln_estimate`.
    pub log_ratio: f64,
}

pub fn det_generalized_asymptotic_check(p: u32, n: usize) -> Result<GeneralizedAsymptotic> {
    if p < 2 {
        return Err(Error::Domain(format!("the estimate needs p > 1, got {p}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let spec = MatrixSpec::generalized(n, Sequence::Power(f64::from(p)), 0);
    let det = det_closed_form(&spec)?.to_rational();
    let (pf, nf) = (f64::from(p), n as f64);
    let ln_estimate = -zeta(pf, 1e-14)?.ln()
        + pf / 2.0 * (2.0 * nf * std::f64::consts::PI).ln()
        + nf * pf * (nf.ln() - 1.0);
    let ln_exact = ln_abs(&det);
    Ok(GeneralizedAsymptotic {
        p,
        n,
        sign: sign_of(det.numer()),
        det,
        ln_exact,
        ln_estimate,
        log_ratio: ln_exact / ln_estimate,
    })
}
