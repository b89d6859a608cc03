//! Exact determinants and characteristic polynomials.
//!
//! Three independent routes are offered: the closed Möbius-sum form, exact
//! elimination (dense fraction-free Bareiss, or an `O(S_n)` sparse sweep that
//! exploits the divisor pattern), and the constant term of the
//! characteristic polynomial obtained from the Hessenberg recursion.

use std::ops::{Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arithmetic::{fib_cache, mertens, mobius_sieve};
use crate::error::{Error, Result};
use crate::matrix::{build, DivisorMatrix, MatrixKind, MatrixSpec};
use crate::poly::{IntPoly, RatPoly};
use crate::scalar::Scalar;

/// Orders up to which [`det_elimination`] uses the dense Bareiss oracle.
pub const DENSE_ELIMINATION_MAX: usize = 64;

/// Default refusal threshold for exact characteristic polynomials.
pub const DEFAULT_CHARPOLY_MAX: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    ClosedForm,
    Elimination,
    Charpoly,
}

impl DetMethod {
    pub fn name(self) -> &'static str {
        match self {
            DetMethod::ClosedForm => "closed-form",
            DetMethod::Elimination => "elimination",
            DetMethod::Charpoly => "charpoly",
        }
    }
}

/// Closed-form determinant.
///
/// * Classic: `M(n)`.
/// * Fibonacci: `n!_F · Σ_{k≤n} μ(k)/F_k`, summed over the common
///   denominator `n!_F` so the result is an integer from the start.
/// * Corner-shifted variant: `n!_F · (b + Σ μ(k)/F_k)`.
/// * Generalized: `(∏ w_j) · (1 + Σ_{k≥2} μ(k)/w_k)`.
pub fn det_closed_form(spec: &MatrixSpec) -> Result<Scalar> {
    spec.validate()?;
    let n = spec.n;
    match &spec.kind {
        MatrixKind::Classic => Ok(Scalar::from_int(mertens(n)?)),
        MatrixKind::Fibonacci | MatrixKind::FibonacciVariant { .. } => {
            let mu = mobius_sieve(n)?;
            let fib = fib_cache(n)?;
            let fact = fib.fibonorial(n);
            let mut acc = BigInt::zero();
            for k in 1..=n {
                match mu.mu(k) {
                    1 => acc += fact / fib.fib(k),
                    -1 => acc -= fact / fib.fib(k),
                    _ => {}
                }
            }
            let mut value = BigRational::from_integer(acc);
            if let MatrixKind::FibonacciVariant { b } = &spec.kind {
                value += b * BigRational::from_integer(fact.clone());
            }
            Ok(Scalar::Exact(value))
        }
        MatrixKind::Generalized { .. } => {
            let m = build(spec)?;
            let mu = mobius_sieve(n)?;
            if m.is_exact() {
                let (w, _) = m.exact_parts()?;
                let prod = w.iter().fold(BigRational::one(), |acc, x| acc * x);
                let mut sum = BigRational::one();
                for (k, wk) in w.iter().enumerate().skip(1) {
                    match mu.mu(k + 1) {
                        1 => sum += wk.recip(),
                        -1 => sum -= wk.recip(),
                        _ => {}
                    }
                }
                Ok(Scalar::Exact(prod * sum))
            } else {
                let w: Vec<f64> = m.weights().iter().map(Scalar::to_f64).collect();
                let prod: f64 = w.iter().product();
                let sum: f64 = 1.0
                    + (2..=n).map(|k| f64::from(mu.mu(k)) / w[k - 1]).sum::<f64>();
                Ok(Scalar::Approx(prod * sum))
            }
        }
    }
}

/// Exact determinant by elimination: dense Bareiss for small orders, the
/// sparse divisor sweep otherwise.
pub fn det_elimination(m: &DivisorMatrix) -> Result<BigRational> {
    if m.n() <= DENSE_ELIMINATION_MAX {
        det_bareiss(&m.dense_exact()?)
    } else {
        det_sparse(m)
    }
}

/// Fraction-free Bareiss elimination on a dense rational matrix. Each row
/// is first scaled to integers by the lcm of its denominators; pivots are
/// the first nonzero entry at or below the diagonal.
pub fn det_bareiss(a: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("determinant of a non-square matrix"));
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = BigRational::new(m[n - 1][n - 1].clone(), scale);
    Ok(if negate { -det } else { det })
}

/// Sparse exact elimination in `O(S_n)` rational operations.
///
/// Columns are cleared from `n` down to `2`, each with the pivot `w_j` of
/// row `j`. When column `j` is processed, row `j` has already lost all its
/// entries right of the diagonal, so only the column-1 entries change and
/// the matrix ends lower triangular: `det = c_1 · ∏_{j≥2} w_j`.
pub fn det_sparse(m: &DivisorMatrix) -> Result<BigRational> {
    let (w, corner) = m.exact_parts()?;
    let n = m.n();
    let mut c = vec![BigRational::one(); n + 1];
    c[1] = corner;
    for j in (2..=n).rev() {
        let cj = c[j].clone();
        if cj.is_zero() {
            continue;
        }
        let ratio = &cj / &w[j - 1];
        // Rows i | j, i < j, hold w_i in column j; row 1 holds w_1.
        for i in m.row_divisors(j) {
            let t = &w[i - 1] * &ratio;
            c[i] -= t;
        }
    }
    let prod = w[1..].iter().fold(BigRational::one(), |acc, x| acc * x);
    Ok(&c[1] * prod)
}

/// Determinant of an upper Hessenberg matrix over any commutative ring.
///
/// With `D_0 = 1` and `D_k` the leading principal minor of order `k`,
/// `D_k = Σ_{r=1}^{k} (−1)^{k−r} h_{r,k} (∏_{i=r}^{k−1} h_{i+1,i}) D_{r−1}`.
pub fn hessenberg_det<T>(h: &[Vec<T>]) -> Result<T>
where
    T: Clone + Zero + One + Neg<Output = T> + Sub<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("Hessenberg determinant of a non-square matrix"));
    }
    for (r, row) in h.iter().enumerate() {
        if row.iter().take(r.saturating_sub(1)).any(|x| !x.is_zero()) {
            return Err(Error::invalid(format!("row {} has entries below the subdiagonal", r + 1)));
        }
    }
    let mut d: Vec<T> = Vec::with_capacity(n + 1);
    d.push(T::one());
    for k in 1..=n {
        let mut acc = T::zero();
        let mut sub = T::one();
        for r in (1..=k).rev() {
            if r < k {
                sub = &sub * &h[r][r - 1];
            }
            let hrk = &h[r - 1][k - 1];
            if hrk.is_zero() || sub.is_zero() {
                continue;
            }
            let term = &(hrk * &sub) * &d[r - 1];
            acc = if (k - r) % 2 == 0 { acc + term } else { acc - term };
        }
        d.push(acc);
    }
    Ok(d.pop().expect("nonempty"))
}

/// The `(n−1)×(n−1)` upper Hessenberg polynomial matrix `H(z)`: rows
/// `1..n−1` and columns `2..n` of `zI − A`.
pub fn hessenberg_minor(m: &DivisorMatrix) -> Result<Vec<Vec<RatPoly>>> {
    let (w, _) = m.exact_parts()?;
    let n = m.n();
    let size = n.saturating_sub(1);
    let mut h = vec![vec![RatPoly::zero(); size]; size];
    for (r, row) in h.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let (i, j) = (r + 1, c + 2);
            if i == j {
                *cell = RatPoly::linear_root(w[i - 1].clone());
            } else if j % i == 0 {
                *cell = RatPoly::constant(-w[i - 1].clone());
            }
        }
    }
    Ok(h)
}

/// Exact characteristic polynomial `det(zI − A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub n: usize,
    poly: RatPoly,
}

impl CharPoly {
    /// Ascending coefficients.
    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    /// Coefficients by descending power, starting with the leading 1.
    pub fn descending(&self) -> Vec<BigRational> {
        let mut c = self.poly.coeffs().to_vec();
        c.reverse();
        c
    }

    pub fn is_integral(&self) -> bool {
        self.poly.coeffs().iter().all(BigRational::is_integer)
    }

    /// Primitive integer polynomial with the same sign pattern (a positive
    /// multiple of `χ`).
    pub fn int_poly(&self) -> IntPoly {
        self.poly.to_primitive_int()
    }

    /// `(−1)^n χ(0)`, which equals the determinant.
    pub fn det(&self) -> BigRational {
        let c0 = self.poly.coeff(0);
        if self.n % 2 == 0 {
            c0
        } else {
            -c0
        }
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.poly.eval(z)
    }
}

pub fn charpoly(spec: &MatrixSpec) -> Result<CharPoly> {
    charpoly_with_limit(spec, DEFAULT_CHARPOLY_MAX)
}

pub fn charpoly_with_limit(spec: &MatrixSpec, max_n: usize) -> Result<CharPoly> {
    spec.validate()?;
    if spec.n > max_n {
        return Err(Error::Unsupported(format!(
            "characteristic polynomial of order {} exceeds the limit {max_n}",
            spec.n
        )));
    }
    charpoly_of(&build(spec)?)
}

/// Characteristic polynomial by the nested recursion
///
/// `χ_1 = z − a_11`, `χ_k = (z − w_k) χ_{k−1} + (−1)^k D_{k−1}`,
///
/// where `D_{k−1}` is the leading minor of order `k−1` of the Hessenberg
/// matrix `H(z)`; the leading minors do not depend on the final order and
/// are shared across all `k`. Integer weights use integer polynomials;
/// rational weights run over the rationals.
pub fn charpoly_of(m: &DivisorMatrix) -> Result<CharPoly> {
    let (w, corner) = m.exact_parts()?;
    let n = m.n();
    let integral = corner.is_integer() && w.iter().all(BigRational::is_integer);
    let poly = if integral {
        let wi: Vec<BigInt> = w.iter().map(BigRational::to_integer).collect();
        divisor_charpoly_int(corner.to_integer(), &wi).to_rational()
    } else {
        divisor_charpoly_rat(corner, &w)
    };
    Ok(CharPoly { n, poly })
}

macro_rules! divisor_charpoly {
    ($name:ident, $t:ty, $poly:ty) => {
        fn $name(corner: $t, w: &[$t]) -> $poly {
            let n = w.len();
            let mut chi = <$poly>::linear_root(corner);
            // d[k] = leading minor of H(z) of order k.
            let mut d: Vec<$poly> = vec![<$poly>::one()];
            for k in 2..=n {
                let order = k - 1;
                // Column `order` of H is column k of zI − A: entries −w_r for
                // r | k, r < k.
                let mut acc = <$poly>::zero();
                for r in (1..=order).filter(|r| k % r == 0) {
                    let mut term = d[r - 1].scale(&-w[r - 1].clone());
                    for wi in &w[r..order] {
                        term = term.mul_linear(wi);
                    }
                    acc = if (order - r) % 2 == 0 { acc + term } else { acc - term };
                }
                chi = chi.mul_linear(&w[k - 1]);
                chi = if k % 2 == 0 { chi + acc.clone() } else { chi - acc.clone() };
                d.push(acc);
            }
            chi
        }
    };
}

divisor_charpoly!(divisor_charpoly_int, BigInt, IntPoly);
divisor_charpoly!(divisor_charpoly_rat, BigRational, RatPoly);

/// Corner offset making the variant singular: `b = −Σ μ(k)/F_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularB {
    pub n: usize,
    pub b: BigRational,
    /// True when `b ≤ −1`, outside the admissible range of the variant.
    pub boundary: bool,
}

pub fn singular_b(n: usize) -> Result<SingularB> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mu = mobius_sieve(n)?;
    let fib = fib_cache(n)?;
    let mut sum = BigRational::zero();
    for k in 1..=n {
        let m = mu.mu(k);
        if m != 0 {
            sum += BigRational::new(BigInt::from(m), fib.fib(k).clone());
        }
    }
    let b = -sum;
    let boundary = b <= -BigRational::one();
    Ok(SingularB { n, b, boundary })
}

/// Result of running all determinant methods on one spec.
#[derive(Clone, Debug)]
pub struct DetReport {
    pub closed_form: Option<Scalar>,
    pub elimination: Option<BigRational>,
    pub charpoly: Option<BigRational>,
}

impl DetReport {
    /// True when every computed exact value coincides.
    pub fn agree(&self) -> bool {
        let mut values: Vec<BigRational> = Vec::new();
        if let Some(Scalar::Exact(v)) = &self.closed_form {
            values.push(v.clone());
        }
        values.extend(self.elimination.iter().cloned());
        values.extend(self.charpoly.iter().cloned());
        values.windows(2).all(|p| p[0] == p[1])
    }
}

/// Runs the requested methods; `None` means all three.
pub fn det_report(spec: &MatrixSpec, method: Option<DetMethod>) -> Result<DetReport> {
    let want = |m: DetMethod| method.is_none_or(|x| x == m);
    let closed_form = if want(DetMethod::ClosedForm) { Some(det_closed_form(spec)?) } else { None };
    let elimination = if want(DetMethod::Elimination) {
        Some(det_elimination(&build(spec)?)?)
    } else {
        None
    };
    let charpoly = if want(DetMethod::Charpoly) { Some(charpoly(spec)?.det()) } else { None };
    Ok(DetReport { closed_form, elimination, charpoly })
}

pub(crate) fn sign_of_rational(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{decompose, DecompositionKind, Sequence};
    use crate::scalar::{int, rational};
    use proptest::prelude::*;

    fn exact(s: Scalar) -> BigRational {
        s.as_exact().cloned().expect("exact")
    }

    #[test]
    fn fibonacci_determinants_small_n() {
        let want = [1i64, 0, -1, -3, -21, -138, -2034, -42714, -1452276, -77647500, -7033149900, -1012773585600];
        for (i, &v) in want.iter().enumerate() {
            let spec = MatrixSpec::fibonacci(i + 1);
            assert_eq!(exact(det_closed_form(&spec).unwrap()), int(v), "n = {}", i + 1);
            assert_eq!(det_elimination(&build(&spec).unwrap()).unwrap(), int(v));
            assert_eq!(det_sparse(&build(&spec).unwrap()).unwrap(), int(v));
        }
    }

    #[test]
    fn classic_determinants_are_mertens() {
        let want = [1i64, 0, -1, -1, -2, -1, -2, -2, -2, -1, -2, -2];
        for (i, &v) in want.iter().enumerate() {
            let spec = MatrixSpec::classic(i + 1);
            assert_eq!(exact(det_closed_form(&spec).unwrap()), int(v));
            assert_eq!(charpoly(&spec).unwrap().det(), int(v));
        }
        for n in 1..=300 {
            let m = build(&MatrixSpec::classic(n)).unwrap();
            assert_eq!(det_sparse(&m).unwrap(), int(mertens(n).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn generalized_and_variant_examples() {
        let alpha = Sequence::Explicit((2..=7).map(int).collect());
        assert_eq!(exact(det_closed_form(&MatrixSpec::generalized(6, alpha.clone(), 0)).unwrap()), int(1980));
        let beta = Sequence::Explicit(vec![rational(1, 2), int(1), int(3), int(4), int(5), int(6)]);
        let spec = MatrixSpec::generalized(6, beta, 0);
        assert_eq!(exact(det_closed_form(&spec).unwrap()), int(-66));
        assert_eq!(det_elimination(&build(&spec).unwrap()).unwrap(), int(-66));
        let v = MatrixSpec::variant(4, rational(1, 3));
        assert_eq!(exact(det_closed_form(&v).unwrap()), int(-1));
        assert_eq!(det_elimination(&build(&v).unwrap()).unwrap(), int(-1));
        let p2 = MatrixSpec::generalized(5, Sequence::Power(2.0), 0);
        assert_eq!(exact(det_closed_form(&p2).unwrap()), int(8624));
        assert_eq!(det_sparse(&build(&p2).unwrap()).unwrap(), int(8624));
    }

    #[test]
    fn approximate_sequences_are_flagged() {
        let spec = MatrixSpec::generalized(6, Sequence::LogShift, 1);
        assert!(matches!(det_closed_form(&spec).unwrap(), Scalar::Approx(_)));
        let m = build(&spec).unwrap();
        assert!(matches!(det_elimination(&m), Err(Error::UnsupportedExact(_))));
        assert!(matches!(charpoly(&spec), Err(Error::UnsupportedExact(_))));
    }

    #[test]
    fn charpoly_golden_values() {
        let c5 = charpoly(&MatrixSpec::fibonacci(5)).unwrap();
        assert_eq!(c5.descending(), [1, -12, 48, -70, 16, 21].map(int).to_vec());
        let c1 = charpoly(&MatrixSpec::fibonacci(1)).unwrap();
        assert_eq!(c1.descending(), vec![int(1), int(-1)]);
        let c8 = charpoly(&MatrixSpec::fibonacci(8)).unwrap();
        assert_eq!(
            c8.descending(),
            [1, -54, 1094, -10700, 53977, -136987, 148016, -17769, -42714].map(int).to_vec()
        );
        let alpha = Sequence::Explicit((2..=7).map(int).collect());
        let ca = charpoly(&MatrixSpec::generalized(6, alpha, 0)).unwrap();
        assert_eq!(ca.descending(), [1, -27, 285, -1485, 3938, -4840, 1980].map(int).to_vec());
        let beta = Sequence::Explicit(vec![rational(1, 2), int(1), int(3), int(4), int(5), int(6)]);
        let cb = charpoly(&MatrixSpec::generalized(6, beta, 0)).unwrap();
        assert_eq!(
            cb.descending(),
            vec![int(1), rational(-39, 2), int(144), int(-494), int(755), rational(-697, 2), int(-66)]
        );
        assert!(!cb.is_integral());
        assert_eq!(charpoly(&MatrixSpec::classic(8)).unwrap().det(), int(-2));
    }

    #[test]
    fn charpoly_limit_is_enforced() {
        assert!(matches!(
            charpoly_with_limit(&MatrixSpec::fibonacci(10), 9),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn charpoly_matches_dense_oracle_at_points() {
        for n in 1..=12 {
            let spec = MatrixSpec::variant(n, rational(2, 5));
            let m = build(&spec).unwrap();
            let chi = charpoly(&spec).unwrap();
            for z in [int(0), int(3), rational(-7, 2), rational(11, 3)] {
                let mut a = m.dense_exact().unwrap();
                for (i, row) in a.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x = if i == j { &z - &*x } else { -x.clone() };
                    }
                }
                assert_eq!(chi.eval(&z), det_bareiss(&a).unwrap(), "n = {n}, z = {z}");
            }
        }
    }

    #[test]
    fn hessenberg_small_cases() {
        assert_eq!(hessenberg_det::<BigRational>(&[vec![int(7)]]).unwrap(), int(7));
        let (a, b, c, d) = (int(2), int(-3), int(5), int(11));
        let h = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        assert_eq!(hessenberg_det::<BigRational>(&h).unwrap(), a * d - b * c);
        let bad = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(1), int(0), int(1)]];
        assert!(hessenberg_det::<BigRational>(&bad).is_err());
        assert_eq!(hessenberg_det::<BigRational>(&[]).unwrap(), int(1));
    }

    #[test]
    fn hessenberg_minor_for_fibonacci_8() {
        let m = build(&MatrixSpec::fibonacci(8)).unwrap();
        let h = hessenberg_minor(&m).unwrap();
        assert_eq!(h.len(), 7);
        for z in [int(0), int(4), rational(1, 3)] {
            let hz: Vec<Vec<BigRational>> = h.iter().map(|r| r.iter().map(|p| p.eval(&z)).collect()).collect();
            let by_recursion = hessenberg_det::<BigRational>(&hz).unwrap();
            assert_eq!(by_recursion, det_bareiss(&hz).unwrap(), "z = {z}");
            if z.is_zero() {
                assert_eq!(by_recursion, int(0));
            }
        }
        let poly_det = hessenberg_det::<RatPoly>(&h).unwrap();
        let chi7 = charpoly(&MatrixSpec::fibonacci(7)).unwrap();
        let chi8 = charpoly(&MatrixSpec::fibonacci(8)).unwrap();
        let recombined = chi7.poly().mul_linear(&int(21)) + poly_det;
        assert_eq!(&recombined, chi8.poly());
    }

    #[test]
    fn singular_b_values() {
        let s3 = singular_b(3).unwrap();
        assert_eq!(s3.b, rational(1, 2));
        assert!(!s3.boundary);
        let s1 = singular_b(1).unwrap();
        assert_eq!(s1.b, int(-1));
        assert!(s1.boundary);
        for n in 2..=20 {
            let s = singular_b(n).unwrap();
            let m = build(&MatrixSpec::variant(n, s.b)).unwrap();
            assert!(det_elimination(&m).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn d_determinant_is_fibonorial() {
        let fib = fib_cache(40).unwrap();
        for n in 1..=40 {
            let m = build(&MatrixSpec::fibonacci(n)).unwrap();
            let d = decompose(&m, DecompositionKind::CplusD).unwrap().parts.1;
            let prod = (1..=n).fold(BigRational::one(), |acc, i| acc * d.get(i, i).to_rational());
            assert_eq!(prod, BigRational::from_integer(fib.fibonorial(n).clone()));
        }
    }

    #[test]
    fn fibonacci_determinant_is_negative() {
        for n in 3..=200 {
            let d = exact(det_closed_form(&MatrixSpec::fibonacci(n)).unwrap());
            assert_eq!(sign_of_rational(&d), -1, "n = {n}");
        }
    }

    #[test]
    fn report_agreement() {
        let r = det_report(&MatrixSpec::fibonacci(3), None).unwrap();
        assert!(r.agree());
        assert_eq!(r.elimination, Some(int(-1)));
        let only = det_report(&MatrixSpec::fibonacci(3), Some(DetMethod::Charpoly)).unwrap();
        assert!(only.closed_form.is_none() && only.charpoly.is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn three_methods_agree_on_random_sequences(
            n in 1usize..16,
            nums in proptest::collection::vec((1i64..40, 1i64..12), 17),
            offset in 0usize..2,
        ) {
            let seq = Sequence::Explicit(nums.iter().map(|&(p, q)| rational(p, q)).collect());
            let spec = MatrixSpec::generalized(n, seq, offset);
            let closed = exact(det_closed_form(&spec).unwrap());
            let m = build(&spec).unwrap();
            prop_assert_eq!(&closed, &det_bareiss(&m.dense_exact().unwrap()).unwrap());
            prop_assert_eq!(&closed, &det_sparse(&m).unwrap());
            prop_assert_eq!(&closed, &charpoly(&spec).unwrap().det());
        }

        #[test]
        fn hessenberg_agrees_with_bareiss(
            n in 1usize..7,
            vals in proptest::collection::vec(-9i64..10, 49),
        ) {
            let h: Vec<Vec<BigRational>> = (0..n)
                .map(|r| (0..n).map(|c| if r > c + 1 { int(0) } else { int(vals[r * 7 + c]) }).collect())
                .collect();
            prop_assert_eq!(hessenberg_det::<BigRational>(&h).unwrap(), det_bareiss(&h).unwrap());
        }
    }
}
