//! Number-theoretic primitives: Möbius and Mertens tables, divisors,
//! Fibonacci numbers and fibonorials, and `ζ(p)` for `p > 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Golden ratio `(1 + √5) / 2`.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Möbius values and their running sums for `1..=limit`.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    limit: usize,
    values: Vec<i8>,
    mertens_prefix: Vec<i64>,
}

impl MobiusTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `μ(k)` for `1 <= k <= limit`.
    pub fn mu(&self, k: usize) -> i8 {
        assert!(k >= 1 && k <= self.limit, "mu({k}) outside table 1..={}", self.limit);
        self.values[k]
    }

    /// `M(k)`; `M(0) = 0`.
    pub fn mertens(&self, k: usize) -> i64 {
        assert!(k <= self.limit, "M({k}) outside table 0..={}", self.limit);
        self.mertens_prefix[k]
    }

    /// Values indexed from 1; slot 0 holds 0.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn mertens_prefix(&self) -> &[i64] {
        &self.mertens_prefix
    }

    /// `Σ_{m | d} μ(d/m)`, which is 1 for `d = 1` and 0 otherwise.
    pub fn divisor_sum(&self, d: usize) -> Result<i64> {
        if d == 0 {
            return Err(Error::invalid("divisor sum of 0"));
        }
        if d > self.limit {
            return Err(Error::invalid(format!("{d} exceeds table limit {}", self.limit)));
        }
        Ok(divisors_usize(d).into_iter().map(|m| i64::from(self.values[d / m])).sum())
    }
}

/// Linear sieve: every composite is crossed out exactly once by its smallest
/// prime factor, and `μ` falls out of the same pass.
pub fn mobius_sieve(limit: usize) -> Result<MobiusTable> {
    if limit == 0 {
        return Err(Error::invalid("Möbius sieve limit must be at least 1"));
    }
    let mut values = vec![0i8; limit + 1];
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    values[1] = 1;
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            values[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                values[m] = 0;
                break;
            }
            values[m] = -values[i];
        }
    }
    let mut mertens_prefix = vec![0i64; limit + 1];
    for k in 1..=limit {
        mertens_prefix[k] = mertens_prefix[k - 1] + i64::from(values[k]);
    }
    Ok(MobiusTable { limit, values, mertens_prefix })
}

/// `M(n) = Σ_{j ≤ n} μ(j)`.
pub fn mertens(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("Mertens function needs n >= 1"));
    }
    Ok(mobius_sieve(n)?.mertens(n))
}

/// Divisors of `k` in ascending order.
pub fn divisors(k: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::invalid("divisors of 0"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= k {
        if k % d == 0 {
            small.push(d);
            if d * d != k {
                large.push(k / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub(crate) fn divisors_usize(k: usize) -> Vec<usize> {
    divisors(k as u64)
        .expect("k >= 1")
        .into_iter()
        .map(|d| d as usize)
        .collect()
}

/// `Σ_{m | d} μ(d/m)`.
pub fn mobius_divisor_sum(d: usize) -> Result<i64> {
    if d == 0 {
        return Err(Error::invalid("divisor sum of 0"));
    }
    mobius_sieve(d)?.divisor_sum(d)
}

/// Number of divisors of every `j` in `1..=limit` (slot 0 is 0).
pub fn divisor_counts(limit: usize) -> Vec<u32> {
    let mut counts = vec![0u32; limit + 1];
    for i in 1..=limit {
        for j in (i..=limit).step_by(i) {
            counts[j] += 1;
        }
    }
    counts
}

/// Fibonacci numbers `F_1..F_limit` and fibonorials `n!_F`.
#[derive(Clone, Debug)]
pub struct FibCache {
    limit: usize,
    fib: Vec<BigInt>,
    fibonorial: Vec<BigInt>,
}

impl FibCache {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `F_k`, `1 <= k <= limit` (`F_0 = 0` is also available).
    pub fn fib(&self, k: usize) -> &BigInt {
        assert!(k <= self.limit, "F_{k} outside cache (limit {})", self.limit);
        &self.fib[k]
    }

    /// `k!_F = F_1 F_2 ... F_k`; `0!_F = 1`.
    pub fn fibonorial(&self, k: usize) -> &BigInt {
        assert!(k <= self.limit, "{k}!_F outside cache (limit {})", self.limit);
        &self.fibonorial[k]
    }

    /// `F_0..=F_limit`.
    pub fn fibs(&self) -> &[BigInt] {
        &self.fib
    }

    /// `F_1 + ... + F_k`, i.e. the trace of `F_R(k)`.
    pub fn partial_sum(&self, k: usize) -> BigInt {
        self.fib[1..=k].iter().sum()
    }
}

/// `F_0..=F_limit` without the fibonorials, whose size grows quadratically.
pub fn fibonacci_numbers(limit: usize) -> Vec<BigInt> {
    let mut fib = Vec::with_capacity(limit + 2);
    fib.push(BigInt::zero());
    fib.push(BigInt::one());
    for k in 2..=limit {
        let next = &fib[k - 1] + &fib[k - 2];
        fib.push(next);
    }
    fib.truncate(limit + 1);
    fib
}

pub fn fib_cache(limit: usize) -> Result<FibCache> {
    if limit == 0 {
        return Err(Error::invalid("Fibonacci cache limit must be at least 1"));
    }
    let fib = fibonacci_numbers(limit);
    let mut fibonorial = Vec::with_capacity(limit + 1);
    fibonorial.push(BigInt::one());
    for k in 1..=limit {
        let next = &fibonorial[k - 1] * &fib[k];
        fibonorial.push(next);
    }
    Ok(FibCache { limit, fib, fibonorial })
}

/// `ζ(p)` to within `tol`: the first `K` terms plus the integral tail
/// `K^{1-p}/(p-1)`. The tail integral overshoots the true tail by at most
/// `K^{-p}`, so `K` is the smallest integer with `K^{-p} <= tol`.
pub fn zeta(p: f64, tol: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("zeta needs p > 1, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("zeta tolerance must be positive"));
    }
    let k = tol.powf(-1.0 / p).ceil().max(1.0);
    if k > 4.0e9 {
        return Err(Error::Domain(format!("zeta({p}) to {tol} needs {k:e} terms")));
    }
    let k = k as u64;
    // smallest terms first
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in (1..=k).rev() {
        let term = (j as f64).powf(-p);
        let t = sum + term;
        comp += if sum.abs() >= term { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    let tail = (k as f64).powf(1.0 - p) / (p - 1.0);
    Ok(sum + comp + tail)
}
