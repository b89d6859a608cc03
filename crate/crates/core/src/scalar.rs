//! Exact scalars and the conversions shared by every exact path.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A matrix entry: an exact rational, or an approximate real for sequences
/// that have no exact representation (e.g. `j / ln² j`).
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => ratio_to_f64(r),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }

    /// Sum, staying exact when both sides are exact.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    /// Exact value, or the exact binary value of the float.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Approx(x) => BigRational::from_float(*x).unwrap_or_else(BigRational::zero),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Exact(BigRational::from_integer(v))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => f.write_str(&format_exact(r)),
            Scalar::Approx(x) => write!(f, "{x:e}"),
        }
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `p/q`, or just `p` when the denominator is one.
pub fn format_exact(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, a signed integer or a finite decimal literal (`-1.25`,
/// `3e-2`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Nearest `f64`; saturates to ±inf when the magnitude does not fit.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    let ln = ln_abs(r);
    let mag = ln.exp();
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// `ln |x|` for a nonzero big integer, without overflowing `f64`.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |r|` for a nonzero rational.
pub fn ln_abs(r: &BigRational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

/// Decimal expansion rounded half away from zero to `digits` places after
/// the point.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.numer().abs() * &scale;
    let (q, rem) = scaled.div_rem(r.denom());
    let rounded = if (rem * 2u32) >= *r.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let negative = r.is_negative() && !(int_part.is_zero() && frac_part.is_zero());
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// Terminating decimal representation, when the denominator has no prime
/// factors other than 2 and 5.
pub fn exact_decimal(r: &BigRational) -> Option<String> {
    let mut den = r.denom().clone();
    let mut twos = 0usize;
    let mut fives = 0usize;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    if places == 0 {
        return Some(r.numer().to_string());
    }
    let s = decimal_string(r, places);
    Some(s.trim_end_matches('0').trim_end_matches('.').to_string())
}

/// Full-precision decimal text: exact when the expansion terminates,
/// otherwise 17 significant digits.
pub fn full_precision_decimal(r: &BigRational) -> String {
    exact_decimal(r).unwrap_or_else(|| format!("{:.17e}", ratio_to_f64(r)))
}

pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
