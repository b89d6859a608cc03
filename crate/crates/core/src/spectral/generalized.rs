//! Spectra of arbitrary exact divisor matrices.
//!
//! Interlacing is not assumed. Real eigenvalues come from the exact
//! characteristic polynomial: square-free factorization, Sturm-sequence
//! isolation on dyadic intervals and exact-sign bisection, with a rational
//! root test inside each isolating interval. Non-real eigenvalues are
//! reported as conjugate pairs found by Durand–Kerner iteration.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bisect::{bisect, Bracket, Dyadic};
use super::EigenPair;
use crate::arithmetic::divisors;
use crate::det::charpoly;
use crate::error::{Error, Result};
use crate::matrix::{build, DivisorMatrix, MatrixSpec};
use crate::poly::{IntPoly, RatPoly};
use crate::scalar::ratio_to_f64;

const MAX_STEPS: usize = 4000;
/// Leading coefficients above this are not factored for the rational root
/// test; isolation and bisection still apply.
const RATIONAL_TEST_MAX_LEAD: u64 = 1_000_000_000_000;

/// Real eigenpairs (ascending) and non-real eigenvalues, one per conjugate
/// pair (positive imaginary part), each with its algebraic multiplicity.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub real: Vec<EigenPair>,
    pub complex: Vec<(Complex64, usize)>,
}

/// Integer polynomial that is a positive multiple of `p` (signs preserved).
fn positive_integer_multiple(p: &RatPoly) -> IntPoly {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return IntPoly::new(ints);
    }
    IntPoly::new(ints.into_iter().map(|c| c / &g).collect())
}

struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    fn new(f: &RatPoly) -> Self {
        let mut rat = vec![f.clone(), f.derivative()];
        loop {
            let k = rat.len();
            if rat[k - 1].is_zero() {
                rat.pop();
                break;
            }
            let (_, r) = rat[k - 2].div_rem(&rat[k - 1]);
            if r.is_zero() {
                break;
            }
            rat.push(-r);
        }
        Sturm { chain: rat.iter().map(positive_integer_multiple).collect() }
    }

    fn variations(&self, m: &BigInt, s: u64) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let sg = p.sign_at_dyadic(m, s);
            if sg == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && sg != last {
                count += 1;
            }
            last = sg;
        }
        count
    }

    /// Roots in `(lo, hi]`.
    fn count(&self, iv: &Dyadic) -> usize {
        self.variations(&iv.lo, iv.s) - self.variations(&iv.hi, iv.s)
    }
}

/// `1 + max |a_i / a_d|`, rounded up: every root has modulus below it.
fn cauchy_bound(f: &RatPoly) -> BigInt {
    let lead = f.leading();
    let max = f
        .coeffs()
        .iter()
        .take(f.coeffs().len() - 1)
        .map(|c| (c / &lead).abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    (max + BigRational::one()).ceil().to_integer() + BigInt::one()
}

fn same_scale(lo: &BigInt, hi: &BigInt, s: u64) -> Dyadic {
    Dyadic { lo: lo.clone(), hi: hi.clone(), s }
}

/// Isolating intervals `(lo, hi]` of the real roots of a square-free `f`.
fn isolate(f: &RatPoly, sturm: &Sturm) -> Vec<Dyadic> {
    let b = cauchy_bound(f);
    let mut stack = vec![Dyadic::integers(-b.clone(), b)];
    let mut out = Vec::new();
    while let Some(mut iv) = stack.pop() {
        match sturm.count(&iv) {
            0 => {}
            1 => out.push(iv),
            _ => {
                let mid = iv.split();
                stack.push(same_scale(&iv.lo, &mid, iv.s));
                stack.push(same_scale(&mid, &iv.hi, iv.s));
            }
        }
    }
    out
}

/// Exact rational root in `(lo, hi)` by the rational root test, if any.
fn rational_root(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    let lead = p.leading().abs().to_u64().filter(|&l| l <= RATIONAL_TEST_MAX_LEAD)?;
    for q in divisors(lead).ok()? {
        let qb = BigRational::from_integer(BigInt::from(q));
        let start = (lo * &qb).floor().to_integer();
        let end = (hi * &qb).ceil().to_integer();
        if &end - &start > BigInt::from(64) {
            continue;
        }
        let mut num = start;
        while num <= end {
            let r = BigRational::new(num.clone(), BigInt::from(q));
            if &r > lo && &r <= hi && p.sign_at(&r) == Ordering::Equal {
                return Some(r);
            }
            num += 1;
        }
    }
    None
}

/// Certified real roots of a square-free `f`, ascending.
fn real_roots(f: &RatPoly, tol: &BigRational) -> Vec<Bracket> {
    let p = positive_integer_multiple(f);
    let sturm = Sturm::new(f);
    let mut roots: Vec<Bracket> = isolate(f, &sturm)
        .into_iter()
        .map(|mut iv| {
            if p.sign_at_dyadic(&iv.hi, iv.s) == Ordering::Equal {
                return Bracket::exact(iv.hi());
            }
            // The left end may be the root of the neighbouring interval;
            // shrink until it is not.
            while p.sign_at_dyadic(&iv.lo, iv.s) == Ordering::Equal {
                let mid = iv.split();
                if p.sign_at_dyadic(&mid, iv.s) == Ordering::Equal {
                    return Bracket::exact(Dyadic::rational(&mid, iv.s));
                }
                let right = same_scale(&mid, &iv.hi, iv.s);
                if sturm.count(&right) == 1 {
                    iv = right;
                } else {
                    iv.hi = mid;
                }
            }
            let sign_lo = p.sign_at_dyadic(&iv.lo, iv.s);
            let lead = p.leading().abs();
            let coarse = BigRational::new(BigInt::one(), lead.max(BigInt::one()) * 4);
            let b = bisect(&p, iv, sign_lo, |l, h| h - l <= coarse, MAX_STEPS);
            if b.exact.is_some() {
                return b;
            }
            if let Some(r) = rational_root(&p, &b.lo, &b.hi) {
                return Bracket::exact(r);
            }
            refine_rational(&p, b, tol)
        })
        .collect();
    roots.sort_by(|a, b| a.point().cmp(&b.point()));
    roots
}

/// Continues bisection from a rational bracket whose endpoints are dyadic.
fn refine_rational(p: &IntPoly, b: Bracket, tol: &BigRational) -> Bracket {
    let s = dyadic_scale(&b.lo).max(dyadic_scale(&b.hi));
    let scale = BigRational::from_integer(BigInt::one() << s);
    let iv = Dyadic { lo: (&b.lo * &scale).to_integer(), hi: (&b.hi * &scale).to_integer(), s };
    let sign_lo = p.sign_at_dyadic(&iv.lo, iv.s);
    bisect(p, iv, sign_lo, |l, h| &(h - l) <= tol, MAX_STEPS)
}

fn dyadic_scale(r: &BigRational) -> u64 {
    r.denom().trailing_zeros().unwrap_or(0)
}

/// Durand–Kerner iteration for all roots of a polynomial given by f64
/// coefficients (ascending).
fn all_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * (radius / 2.0).max(1.0)).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..a.len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Exact null vector of `a − rI` for a rational eigenvalue `r`.
fn null_vector_exact(mut a: Vec<Vec<BigRational>>, r: &BigRational) -> Result<Vec<BigRational>> {
    let n = a.len();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= r;
    }
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .ok_or_else(|| Error::Domain(format!("{r} is not an eigenvalue")))?;
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[i][free].clone();
    }
    Ok(x)
}

/// Null vector of `a − λI` in floating point by elimination with complete
/// pivoting; the final (near-zero) pivot's variable is set to one.
fn null_vector_f64(mut a: Vec<Vec<f64>>, lambda: f64) -> Vec<f64> {
    let n = a.len();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let mut cols: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut bi, mut bj, mut best) = (k, k, -1.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if v.abs() > best {
                    best = v.abs();
                    bi = i;
                    bj = j;
                }
            }
        }
        a.swap(k, bi);
        for row in a.iter_mut() {
            row.swap(k, bj);
        }
        cols.swap(k, bj);
        if k + 1 == n || best == 0.0 {
            break;
        }
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
    }
    let mut y = vec![0.0; n];
    y[n - 1] = 1.0;
    for i in (0..n - 1).rev() {
        if a[i][i] == 0.0 {
            y[i] = 0.0;
            continue;
        }
        let s: f64 = (i + 1..n).map(|j| a[i][j] * y[j]).sum();
        y[i] = -s / a[i][i];
    }
    let mut x = vec![0.0; n];
    for (k, &c) in cols.iter().enumerate() {
        x[c] = y[k];
    }
    x
}

/// Scales so the entry of largest magnitude (the last one among ties)
/// equals one.
fn normalize(x: &mut [f64]) {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() >= x[best].abs() {
            best = i;
        }
    }
    let s = x[best];
    if s != 0.0 {
        for v in x.iter_mut() {
            *v /= s;
        }
    }
}

/// Right and left eigenvectors, each scaled so its largest entry is one.
fn eigenpair(m: &DivisorMatrix, bracket: Bracket, multiplicity: usize) -> Result<EigenPair> {
    let (mut x, mut y) = match &bracket.exact {
        Some(r) => {
            let a = m.dense_exact()?;
            let at = transpose(&a);
            let to_f64 = |v: Vec<BigRational>| v.iter().map(ratio_to_f64).collect::<Vec<f64>>();
            (to_f64(null_vector_exact(a, r)?), to_f64(null_vector_exact(at, r)?))
        }
        None => {
            let a = m.dense_f64()?;
            let at = transpose(&a);
            (null_vector_f64(a, bracket.value()), null_vector_f64(at, bracket.value()))
        }
    };
    normalize(&mut x);
    normalize(&mut y);
    let value = bracket.value();
    let residual = super::secular::residual(m, value, &x);
    Ok(EigenPair { index: 0, value, multiplicity, eigenvector: x, left: Some(y), residual, bracket })
}

/// All eigenvalues of an exact matrix of any kind.
pub fn eigen_generalized(spec: &MatrixSpec, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let m = build(spec)?;
    if !m.is_exact() {
        return Err(m.not_exact());
    }
    let chi = charpoly(spec)?;
    let tol_r = BigRational::from_float(tol / spec.n as f64).expect("finite");
    let mut real: Vec<(Bracket, usize)> = Vec::new();
    let mut complex = Vec::new();
    for (k, f) in chi.poly().squarefree_factors().into_iter().enumerate() {
        let multiplicity = k + 1;
        let Some(deg) = f.degree().filter(|&d| d > 0) else {
            continue;
        };
        let roots = real_roots(&f, &tol_r);
        let n_complex = deg - roots.len();
        real.extend(roots.into_iter().map(|b| (b, multiplicity)));
        if n_complex > 0 {
            let coeffs: Vec<f64> = f.coeffs().iter().map(ratio_to_f64).collect();
            let mut zs = all_roots(&coeffs);
            zs.sort_by(|a, b| b.im.abs().total_cmp(&a.im.abs()));
            complex.extend(zs.into_iter().take(n_complex).filter(|z| z.im > 0.0).map(|z| (z, multiplicity)));
        }
    }
    real.sort_by(|a, b| a.0.point().cmp(&b.0.point()));
    complex.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    let mut pairs = Vec::with_capacity(real.len());
    for (i, (b, mult)) in real.into_iter().enumerate() {
        let mut p = eigenpair(&m, b, mult)?;
        p.index = i + 1;
        pairs.push(p);
    }
    Ok(Spectrum { real: pairs, complex })
}
