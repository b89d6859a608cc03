//! The secular function `Q`, eigenvectors by back substitution, and left
//! eigenvectors by forward substitution.
//!
//! Rows `k ≥ 2` of `(A − zI)x = 0` read
//! `x_1 + (w_k − z) x_k + w_k Σ_{m≥2, km≤n} x_{km} = 0`, so with `x_1 = 1`
//! every `x_k` follows from the entries at multiples of `k`:
//! `x_k = (1 + w_k Σ x_{km}) / (z − w_k)`, computed for `k = n, …, 2`.
//! Row 1 then leaves the scalar `Q(z) = (a_11 − z) + w_1 Σ_{k≥2} x_k`, and
//! `χ(z) = −Q(z) ∏_{k≥2} (z − w_k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::DivisorMatrix;
use crate::scalar::{format_exact, ratio_to_f64, Scalar};

/// Half-width of the band around each pole skipped by [`qplot`].
pub const POLE_GUARD: f64 = 1e-4;

/// One evaluation of the secular function.
#[derive(Clone, Debug, PartialEq)]
pub struct QSample {
    pub z: f64,
    pub q: f64,
    /// `x_k / x_1` for `k = 1..n`.
    pub ratios: Vec<f64>,
}

fn exact_weights(m: &DivisorMatrix) -> Result<(Vec<BigRational>, BigRational)> {
    m.exact_parts()
}

fn pole_exact(w: &[BigRational], z: &BigRational) -> Result<()> {
    if let Some(p) = w.iter().skip(1).find(|wk| *wk == z) {
        return Err(Error::Pole { z: format_exact(z), nearest: format_exact(p) });
    }
    Ok(())
}

fn pole_f64(w: &[f64], z: f64) -> Result<()> {
    let nearest = w
        .iter()
        .skip(1)
        .copied()
        .min_by(|a, b| (a - z).abs().total_cmp(&(b - z).abs()));
    if let Some(p) = nearest {
        if (p - z).abs() <= 8.0 * f64::EPSILON * p.abs().max(1.0) {
            return Err(Error::Pole { z: format!("{z}"), nearest: format!("{p}") });
        }
    }
    Ok(())
}

/// Unreduced `x_k = num[k] / den[k]` (index `k − 1`) together with `Q(z)`,
/// for integer weights and corner and `z = p/q`.
///
/// Every `x_k` depends only on `x_j` with `k | j`, so with
/// `c_j = p − w_j q` and `T_k = ∏_{j ∈ kℕ, j ≤ n} c_j` the numerators
/// `U_k = x_k T_k` are integers:
/// `U_k = q (R_k + w_k Σ_{j ∈ kℕ, j > k} U_j R_k / T_j)` with `R_k = T_k / c_k`,
/// and every division is exact. This avoids gcd work on the large
/// intermediate rationals.
pub(crate) struct RawSecular {
    pub num: Vec<BigInt>,
    pub den: Vec<BigInt>,
    pub q: BigRational,
}

fn integer_parts(m: &DivisorMatrix) -> Option<(Vec<BigInt>, BigInt)> {
    let (w, corner) = m.exact_parts().ok()?;
    if !corner.is_integer() || w.iter().any(|x| !x.is_integer()) {
        return None;
    }
    Some((w.iter().map(BigRational::to_integer).collect(), corner.to_integer()))
}

pub(crate) fn secular_raw(m: &DivisorMatrix, z: &BigRational) -> Result<Option<RawSecular>> {
    let Some((w, corner)) = integer_parts(m) else {
        return Ok(None);
    };
    let (w_r, _) = exact_weights(m)?;
    pole_exact(&w_r, z)?;
    let n = m.n();
    let (p, q) = (z.numer(), z.denom());
    let c: Vec<BigInt> = (0..=n).map(|k| if k >= 2 { p - &w[k - 1] * q } else { BigInt::one() }).collect();
    let mut t = vec![BigInt::one(); n + 1];
    let mut u = vec![BigInt::zero(); n + 1];
    for k in (2..=n).rev() {
        let r: BigInt = (2 * k..=n).step_by(k).fold(BigInt::one(), |acc, j| acc * &c[j]);
        let mut s = BigInt::zero();
        for j in (2 * k..=n).step_by(k) {
            s += &u[j] * (&r / &t[j]);
        }
        u[k] = q * (&r + &w[k - 1] * s);
        t[k] = &c[k] * r;
    }
    // Q = a_11 − z + w_1 Σ_{k≥2} x_k over the denominator q·D, D = ∏ c_k
    let d: BigInt = c[2..].iter().product();
    let sum: BigInt = (2..=n).map(|k| &u[k] * (&d / &t[k])).sum();
    let q_num = &corner * q * &d - p * &d + &w[0] * q * sum;
    let qv = BigRational::new(q_num, q * d);
    u[1] = BigInt::one();
    u.remove(0);
    t.remove(0);
    Ok(Some(RawSecular { num: u, den: t, q: qv }))
}

/// Right eigenvector candidate `x(z)` with `x_1 = 1`, exactly.
pub fn eigenvector_exact(m: &DivisorMatrix, z: &BigRational) -> Result<Vec<BigRational>> {
    if let Some(raw) = secular_raw(m, z)? {
        return Ok(raw.num.into_iter().zip(raw.den).map(|(a, b)| BigRational::new(a, b)).collect());
    }
    let (w, _) = exact_weights(m)?;
    pole_exact(&w, z)?;
    let n = m.n();
    let mut x = vec![BigRational::zero(); n + 1];
    for k in (2..=n).rev() {
        let mut s = BigRational::zero();
        for j in (2 * k..=n).step_by(k) {
            s += &x[j];
        }
        x[k] = (BigRational::from_integer(1.into()) + &w[k - 1] * s) / (z - &w[k - 1]);
    }
    x[1] = BigRational::from_integer(1.into());
    x.remove(0);
    Ok(x)
}

/// Right eigenvector candidate `x(z)` with `x_1 = 1`, in floating point.
pub fn eigenvector(m: &DivisorMatrix, z: f64) -> Result<Vec<f64>> {
    let w: Vec<f64> = m.weights().iter().map(Scalar::to_f64).collect();
    pole_f64(&w, z)?;
    let n = m.n();
    let mut x = vec![0.0; n + 1];
    for k in (2..=n).rev() {
        let s: f64 = (2 * k..=n).step_by(k).map(|j| x[j]).sum();
        x[k] = (1.0 + w[k - 1] * s) / (z - w[k - 1]);
    }
    x[1] = 1.0;
    x.remove(0);
    Ok(x)
}

/// `Q(z)` exactly.
pub fn q_exact(m: &DivisorMatrix, z: &BigRational) -> Result<BigRational> {
    if let Some(raw) = secular_raw(m, z)? {
        return Ok(raw.q);
    }
    let (w, corner) = exact_weights(m)?;
    let x = eigenvector_exact(m, z)?;
    let tail: BigRational = x[1..].iter().fold(BigRational::zero(), |acc, v| acc + v);
    Ok(corner - z + &w[0] * tail)
}

/// `Q(z)` in floating point, with the ratios `x_k / x_1`.
pub fn q_eval(m: &DivisorMatrix, z: f64) -> Result<QSample> {
    let x = eigenvector(m, z)?;
    let w1 = m.weight(1).to_f64();
    let q = m.corner().to_f64() - z + w1 * x[1..].iter().sum::<f64>();
    Ok(QSample { z, q, ratios: x })
}

/// Left eigenvector candidate `y(λ)` with `y_1 = 1`: column `j ≥ 2` of
/// `yᵀ(A − λI) = 0` gives `y_j = Σ_{i|j, i<j} a_{ij} y_i / (λ − w_j)`.
/// The remaining column-1 equation is `a_11 y_1 + Σ_{i≥2} y_i = λ y_1`.
pub fn left_eigenvector_exact(m: &DivisorMatrix, lambda: &BigRational) -> Result<Vec<BigRational>> {
    let (w, _) = exact_weights(m)?;
    pole_exact(&w, lambda)?;
    let n = m.n();
    let mut y = vec![BigRational::zero(); n + 1];
    y[1] = BigRational::from_integer(1.into());
    for j in 2..=n {
        let mut s = BigRational::zero();
        for i in m.row_divisors(j) {
            s += &w[i - 1] * &y[i];
        }
        y[j] = s / (lambda - &w[j - 1]);
    }
    y.remove(0);
    Ok(y)
}

pub fn left_eigenvector(m: &DivisorMatrix, lambda: f64) -> Result<Vec<f64>> {
    let w: Vec<f64> = m.weights().iter().map(Scalar::to_f64).collect();
    pole_f64(&w, lambda)?;
    let n = m.n();
    let mut y = vec![0.0; n + 1];
    y[1] = 1.0;
    for j in 2..=n {
        let s: f64 = m.row_divisors(j).into_iter().map(|i| w[i - 1] * y[i]).sum();
        y[j] = s / (lambda - w[j - 1]);
    }
    y.remove(0);
    Ok(y)
}

/// `‖(A − zI) x‖_∞`, exactly.
pub fn residual_exact(m: &DivisorMatrix, z: &BigRational, x: &[BigRational]) -> Result<BigRational> {
    let (w, corner) = exact_weights(m)?;
    let n = m.n();
    let mut worst = BigRational::zero();
    for i in 1..=n {
        let mut r = -(z * &x[i - 1]);
        for &j in m.row_columns(i) {
            let a = if i == 1 && j == 1 {
                &corner
            } else if j == 1 {
                &BigRational::from_integer(1.into())
            } else {
                &w[i - 1]
            };
            r += a * &x[j - 1];
        }
        let r = r.abs();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// `‖(A − zI) x‖_∞` in floating point.
pub fn residual(m: &DivisorMatrix, z: f64, x: &[f64]) -> f64 {
    (1..=m.n())
        .map(|i| {
            let r: f64 = m.row_entries(i).map(|(j, a)| a.to_f64() * x[j - 1]).sum::<f64>() - z * x[i - 1];
            r.abs()
        })
        .fold(0.0, f64::max)
}

/// `|a_11 y_1 + Σ_{i≥2} y_i − λ y_1|`: the column-1 condition of a left
/// eigenvector (equivalently `|Σ y_i − λ y_1|` when `a_11 = 1`).
pub fn left_column_defect(m: &DivisorMatrix, lambda: f64, y: &[f64]) -> f64 {
    (m.corner().to_f64() * y[0] + y[1..].iter().sum::<f64>() - lambda * y[0]).abs()
}

/// Samples `Q` at `samples` evenly spaced points of `[lo, hi]`, skipping
/// points within [`POLE_GUARD`] of a pole.
pub fn qplot(m: &DivisorMatrix, lo: f64, hi: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid(format!("bad plot range [{lo}, {hi}]")));
    }
    if samples < 2 {
        return Err(Error::invalid("qplot needs at least two samples"));
    }
    let poles: Vec<f64> = m.weights().iter().skip(1).map(Scalar::to_f64).collect();
    let step = (hi - lo) / (samples - 1) as f64;
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let z = if i + 1 == samples { hi } else { lo + step * i as f64 };
        if poles.iter().any(|p| (z - p).abs() < POLE_GUARD) {
            continue;
        }
        out.push((z, q_eval(m, z)?.q));
    }
    Ok(out)
}

/// `Q` at the exact point, reported in floating point (for diagnostics).
pub fn q_exact_f64(m: &DivisorMatrix, z: &BigRational) -> Result<f64> {
    q_exact(m, z).map(|q| ratio_to_f64(&q))
}
