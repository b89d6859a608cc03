//! Exact-sign bisection on dyadic intervals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::poly::IntPoly;
use crate::scalar::ratio_to_f64;

/// An interval certified to contain exactly one eigenvalue, or a single
/// exact eigenvalue when `exact` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl Bracket {
    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        Bracket { lo, hi, exact: None }
    }

    pub fn exact(r: BigRational) -> Self {
        Bracket { lo: r.clone(), hi: r.clone(), exact: Some(r) }
    }

    /// The exact eigenvalue if known, otherwise the midpoint.
    pub fn point(&self) -> BigRational {
        self.exact
            .clone()
            .unwrap_or_else(|| (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn value(&self) -> f64 {
        ratio_to_f64(&self.point())
    }

    /// `lo < x < hi`, or equality with an exact eigenvalue.
    pub fn contains(&self, x: &BigRational) -> bool {
        match &self.exact {
            Some(r) => r == x,
            None => &self.lo < x && x < &self.hi,
        }
    }
}

/// `[lo, hi] / 2^s` with integer numerators.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    pub lo: BigInt,
    pub hi: BigInt,
    pub s: u64,
}

impl Dyadic {
    pub fn integers(lo: BigInt, hi: BigInt) -> Self {
        Dyadic { lo, hi, s: 0 }
    }

    pub fn rational(m: &BigInt, s: u64) -> BigRational {
        BigRational::new(m.clone(), BigInt::one() << s)
    }

    pub fn lo(&self) -> BigRational {
        Self::rational(&self.lo, self.s)
    }

    pub fn hi(&self) -> BigRational {
        Self::rational(&self.hi, self.s)
    }

    pub fn bracket(&self) -> Bracket {
        Bracket::open(self.lo(), self.hi())
    }

    /// Moves to scale `s + 1` and returns the midpoint numerator there.
    pub fn split(&mut self) -> BigInt {
        self.lo <<= 1u32;
        self.hi <<= 1u32;
        self.s += 1;
        (&self.lo + &self.hi) >> 1u32
    }
}

/// Bisects a sign-change interval of `p` (sign `sign_lo` at the left end)
/// until `done(lo, hi)` holds, returning early when a midpoint is an exact
/// root.
pub(crate) fn bisect(
    p: &IntPoly,
    mut iv: Dyadic,
    sign_lo: Ordering,
    done: impl Fn(&BigRational, &BigRational) -> bool,
    max_steps: usize,
) -> Bracket {
    for _ in 0..max_steps {
        if done(&iv.lo(), &iv.hi()) {
            break;
        }
        let mid = iv.split();
        match p.sign_at_dyadic(&mid, iv.s) {
            Ordering::Equal => return Bracket::exact(Dyadic::rational(&mid, iv.s)),
            s if s == sign_lo => iv.lo = mid,
            _ => iv.hi = mid,
        }
    }
    iv.bracket()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    #[test]
    fn bisects_to_sqrt_two() {
        let p = IntPoly::new(vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
        let tol = rational(1, 1 << 30);
        let b = bisect(&p, Dyadic::integers(BigInt::from(1), BigInt::from(2)), Ordering::Less, |lo, hi| hi - lo <= tol, 200);
        assert!(b.width() <= tol);
        assert!((b.value() - 2f64.sqrt()).abs() < 1e-9);
        assert!(b.exact.is_none());
    }

    #[test]
    fn hits_exact_dyadic_roots() {
        // (z - 3/4)(z + 5)
        let p = IntPoly::new(vec![BigInt::from(-15), BigInt::from(17), BigInt::from(4)]);
        let b = bisect(&p, Dyadic::integers(BigInt::from(0), BigInt::from(1)), Ordering::Less, |_, _| false, 100);
        assert_eq!(b.exact, Some(rational(3, 4)));
        assert!(b.contains(&rational(3, 4)));
        assert_eq!(b.point(), rational(3, 4));
        assert!(!Bracket::open(int(0), int(1)).contains(&int(1)));
    }
}
