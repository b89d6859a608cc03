//! Dense univariate polynomials over exact rings.
//!
//! Coefficients are stored in ascending order of degree and kept
//! normalized (no trailing zeros), so the zero polynomial is the empty
//! vector.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Clone + Zero + One> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `z - root`.
    pub fn linear_root(root: T) -> Self
    where
        T: Neg<Output = T>,
    {
        Self::new(vec![-root, T::one()])
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `self · (z - root)`, the workhorse of the characteristic-polynomial
    /// recursion.
    pub fn mul_linear(&self, root: &T) -> Self
    where
        T: Sub<Output = T>,
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        out.push(T::zero() - root * &self.coeffs[0]);
        for k in 1..n {
            out.push(self.coeffs[k - 1].clone() - root * &self.coeffs[k]);
        }
        out.push(self.coeffs[n - 1].clone());
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self
    where
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &T) -> T
    where
        for<'a> &'a T: Mul<&'a T, Output = T>,
        T: Add<Output = T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| &acc * z + c.clone())
    }

    pub fn derivative(&self) -> Self
    where
        T: From<BigInt>,
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &T::from(BigInt::from(k)))
                .collect(),
        )
    }
}

impl<T: Clone + Zero + One> Zero for Poly<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Clone + Zero + One> One for Poly<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Clone + Zero + One> Add for Poly<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a, T: Clone + Zero + One> Add<&'a Poly<T>> for &'a Poly<T>
where
    for<'b> &'b T: Add<&'b T, Output = T>,
{
    type Output = Poly<T>;

    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = &*o + s;
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + One + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Clone + Zero + One + Neg<Output = T>> Sub for Poly<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Self {
        &self + &(-rhs)
    }
}

impl<T: Clone + Zero + One> Mul for Poly<T>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, T: Clone + Zero + One> Mul<&'a Poly<T>> for &'a Poly<T>
where
    for<'b> &'b T: Mul<&'b T, Output = T> + Add<&'b T, Output = T>,
{
    type Output = Poly<T>;

    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly { coeffs: Vec::new() };
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                out[i + j] = &out[i + j] + &prod;
            }
        }
        Poly::new(out)
    }
}

impl IntPoly {
    /// Sign of `p(m / 2^s)` computed exactly: the sign of
    /// `Σ c_k m^k 2^{s(d-k)}`, accumulated by Horner's rule.
    pub fn sign_at_dyadic(&self, m: &BigInt, s: u64) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let mut acc = self.coeffs[d].clone();
        for k in (0..d).rev() {
            acc *= m;
            let c = &self.coeffs[k];
            if !c.is_zero() {
                acc += c << (s * (d - k) as u64);
            }
        }
        acc.sign_ord()
    }

    pub fn sign_at(&self, z: &BigRational) -> Ordering {
        self.to_rational().eval(z).sign_ord()
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl RatPoly {
    /// Euclidean division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (RatPoly::zero(), RatPoly::zero());
        };
        if nd < dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> RatPoly {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lead = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Primitive integer polynomial with the same roots and a positive
    /// leading coefficient.
    pub fn to_primitive_int(&self) -> IntPoly {
        if self.coeffs.is_empty() {
            return IntPoly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        Poly::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }

    /// Yun's square-free factorization: returns `(f_1, f_2, ...)` with
    /// `p = c · f_1 f_2^2 f_3^3 ...`, each `f_i` monic and square-free.
    pub fn squarefree_factors(&self) -> Vec<RatPoly> {
        let p = self.monic();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let mut a = p.gcd(&dp);
        let mut b = p.div_rem(&a).0;
        let mut c = dp.div_rem(&a).0;
        let mut d = c - b.derivative();
        let mut out = Vec::new();
        loop {
            a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c - b.derivative();
        }
        out
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl SignOrd for BigRational {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}
