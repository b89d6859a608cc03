//! Construction of the Redheffer-type matrices in divisor-structured form.
//!
//! Every matrix family shares one pattern: row `i` carries the weight `w_i`
//! at the columns `j` with `i | j`, rows `i >= 2` carry an extra `1` in
//! column 1, and the `(1,1)` entry is a separate "corner" value (equal to
//! `w_1` except for the corner-shifted Fibonacci variant).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arithmetic::{divisor_counts, fibonacci_numbers, mobius_sieve, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::scalar::{format_exact, Scalar};

pub const DEFAULT_DENSE_CAP: usize = 512;

/// Source of the weights of a generalized matrix, indexed from 1.
#[derive(Clone, Debug, PartialEq)]
pub enum Sequence {
    /// Explicit exact values `a_1, a_2, ...`.
    Explicit(Vec<BigRational>),
    /// `a_j = j^p`; exact when `p` is a nonnegative integer.
    Power(f64),
    /// `a_j = j / ln² j`, defined for `j >= 2` (use with row offset 1).
    LogShift,
}

impl Sequence {
    pub fn value(&self, j: usize) -> Result<Scalar> {
        match self {
            Sequence::Explicit(values) => values
                .get(j.wrapping_sub(1))
                .cloned()
                .map(Scalar::Exact)
                .ok_or_else(|| Error::invalid(format!("sequence has {} terms, a_{j} requested", values.len()))),
            Sequence::Power(p) => {
                if p.fract() == 0.0 && *p >= 0.0 && *p <= 4096.0 {
                    Ok(Scalar::Exact(BigRational::from_integer(num_traits::pow(BigInt::from(j), *p as usize))))
                } else {
                    Ok(Scalar::Approx((j as f64).powf(*p)))
                }
            }
            Sequence::LogShift => {
                if j < 2 {
                    return Err(Error::invalid("j / ln^2 j is undefined at j = 1; use row offset 1"));
                }
                let l = (j as f64).ln();
                Ok(Scalar::Approx(j as f64 / (l * l)))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Sequence::Explicit(v) => format!(
                "explicit[{}]",
                v.iter().map(format_exact).collect::<Vec<_>>().join(",")
            ),
            Sequence::Power(p) => format!("power:{p}"),
            Sequence::LogShift => "log-shift".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixKind {
    /// `R_n`: all weights 1.
    Classic,
    /// `F_R(n)`: `w_i = F_i`.
    Fibonacci,
    /// `F_R(n)` with the `(1,1)` entry replaced by `1 + b`, `b > -1`.
    FibonacciVariant { b: BigRational },
    /// `A_R(n)` with `w_i = a_{i + offset}`.
    Generalized { sequence: Sequence, offset: usize },
}

impl MatrixKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Classic => "classic",
            MatrixKind::Fibonacci => "fibonacci",
            MatrixKind::FibonacciVariant { .. } => "fibonacci-variant",
            MatrixKind::Generalized { .. } => "generalized",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::FibonacciVariant { b } => write!(f, "fibonacci-variant(b={})", format_exact(b)),
            MatrixKind::Generalized { sequence, offset } => {
                write!(f, "generalized({}, offset={offset})", sequence.label())
            }
            other => f.write_str(other.name()),
        }
    }
}

/// Declarative description of a matrix to build.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSpec {
    pub kind: MatrixKind,
    pub n: usize,
}

impl MatrixSpec {
    pub fn classic(n: usize) -> Self {
        MatrixSpec { kind: MatrixKind::Classic, n }
    }

    pub fn fibonacci(n: usize) -> Self {
        MatrixSpec { kind: MatrixKind::Fibonacci, n }
    }

    pub fn variant(n: usize, b: BigRational) -> Self {
        MatrixSpec { kind: MatrixKind::FibonacciVariant { b }, n }
    }

    pub fn generalized(n: usize, sequence: Sequence, offset: usize) -> Self {
        MatrixSpec { kind: MatrixKind::Generalized { sequence, offset }, n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("matrix order n must be at least 1"));
        }
        if let MatrixKind::FibonacciVariant { b } = &self.kind {
            if *b <= -BigRational::one() {
                return Err(Error::invalid(format!("corner offset b = {} must exceed -1", format_exact(b))));
            }
        }
        Ok(())
    }

    /// Diagonal weights `w_1..w_n` and the corner entry.
    fn weights(&self) -> Result<(Vec<Scalar>, Scalar)> {
        let n = self.n;
        match &self.kind {
            MatrixKind::Classic => Ok((vec![Scalar::one(); n], Scalar::one())),
            MatrixKind::Fibonacci | MatrixKind::FibonacciVariant { .. } => {
                let w: Vec<Scalar> = fibonacci_numbers(n).into_iter().skip(1).map(Scalar::from).collect();
                let corner = match &self.kind {
                    MatrixKind::FibonacciVariant { b } => Scalar::Exact(BigRational::one() + b),
                    _ => Scalar::one(),
                };
                Ok((w, corner))
            }
            MatrixKind::Generalized { sequence, offset } => {
                let mut w = Vec::with_capacity(n);
                for i in 1..=n {
                    let a = sequence.value(i + offset)?;
                    if !a.is_positive() || !a.to_f64().is_finite() {
                        return Err(Error::invalid(format!(
                            "sequence term a_{} = {a} is not strictly positive",
                            i + offset
                        )));
                    }
                    w.push(a);
                }
                let corner = w[0].clone();
                Ok((w, corner))
            }
        }
    }
}

/// A realized matrix in divisor-structured sparse form.
#[derive(Clone, Debug)]
pub struct DivisorMatrix {
    spec: MatrixSpec,
    weights: Vec<Scalar>,
    corner: Scalar,
    rows: Vec<Vec<usize>>,
    nnz: usize,
    dense_cap: usize,
}

/// Builds the matrix described by `spec`.
pub fn build(spec: &MatrixSpec) -> Result<DivisorMatrix> {
    spec.validate()?;
    let n = spec.n;
    let (weights, corner) = spec.weights()?;
    let mut rows = Vec::with_capacity(n);
    rows.push((1..=n).collect::<Vec<_>>());
    for i in 2..=n {
        let mut cols = Vec::with_capacity(n / i + 1);
        cols.push(1);
        cols.extend((i..=n).step_by(i));
        rows.push(cols);
    }
    let nnz = rows.iter().map(Vec::len).sum();
    Ok(DivisorMatrix { spec: spec.clone(), weights, corner, rows, nnz, dense_cap: DEFAULT_DENSE_CAP })
}

impl DivisorMatrix {
    pub fn spec(&self) -> &MatrixSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    /// `w_i`, 1-based.
    pub fn weight(&self, i: usize) -> &Scalar {
        &self.weights[i - 1]
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    /// The `(1,1)` entry.
    pub fn corner(&self) -> &Scalar {
        &self.corner
    }

    pub fn is_exact(&self) -> bool {
        self.corner.is_exact() && self.weights.iter().all(Scalar::is_exact)
    }

    pub fn with_dense_cap(mut self, cap: usize) -> Self {
        self.dense_cap = cap;
        self
    }

    /// Sorted column indices of row `i` (1-based).
    pub fn row_columns(&self, i: usize) -> &[usize] {
        &self.rows[i - 1]
    }

    /// Rows `i < j` holding a weight in column `j` (the proper divisors of
    /// `j`), ascending.
    pub fn row_divisors(&self, j: usize) -> Vec<usize> {
        let mut d = crate::arithmetic::divisors_usize(j);
        d.pop();
        d
    }

    /// Nonzero entries of row `i` as `(column, value)`.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.rows[i - 1].iter().map(move |&j| (j, self.entry(i, j)))
    }

    /// Entry `(i, j)`, both 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        if i == 1 && j == 1 {
            self.corner.clone()
        } else if j == 1 {
            Scalar::one()
        } else if j % i == 0 {
            self.weights[i - 1].clone()
        } else {
            Scalar::zero()
        }
    }

    /// Exact weights `w_1..w_n` and the corner, or an error for approximate
    /// sequences.
    pub fn exact_parts(&self) -> Result<(Vec<BigRational>, BigRational)> {
        let corner = self
            .corner
            .as_exact()
            .cloned()
            .ok_or_else(|| self.not_exact())?;
        let weights = self
            .weights
            .iter()
            .map(|w| w.as_exact().cloned().ok_or_else(|| self.not_exact()))
            .collect::<Result<Vec<_>>>()?;
        Ok((weights, corner))
    }

    pub(crate) fn not_exact(&self) -> Error {
        Error::UnsupportedExact(format!("{} has approximate entries", self.spec.kind))
    }

    pub fn trace(&self) -> Scalar {
        self.weights[1..].iter().fold(self.corner.clone(), |acc, w| acc.add(w))
    }

    fn check_dense(&self) -> Result<()> {
        if self.n() > self.dense_cap {
            return Err(Error::Unsupported(format!(
                "dense view of order {} exceeds the cap {}",
                self.n(),
                self.dense_cap
            )));
        }
        Ok(())
    }

    pub fn dense_exact(&self) -> Result<Vec<Vec<BigRational>>> {
        self.check_dense()?;
        let (weights, corner) = self.exact_parts()?;
        let n = self.n();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 1..=n {
            for &j in self.row_columns(i) {
                out[i - 1][j - 1] = if i == 1 && j == 1 {
                    corner.clone()
                } else if j == 1 {
                    BigRational::one()
                } else {
                    weights[i - 1].clone()
                };
            }
        }
        Ok(out)
    }

    pub fn dense_f64(&self) -> Result<Vec<Vec<f64>>> {
        self.check_dense()?;
        let n = self.n();
        let mut out = vec![vec![0.0; n]; n];
        for i in 1..=n {
            for (j, v) in self.row_entries(i) {
                out[i - 1][j - 1] = v.to_f64();
            }
        }
        Ok(out)
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let rows = (1..=self.n()).map(|i| self.row_entries(i).collect()).collect();
        SparseMatrix { n: self.n(), rows }
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (1..=self.n())
            .map(|i| self.row_entries(i).map(|(_, v)| v.to_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// General square sparse matrix, rows of sorted `(column, value)` pairs,
/// 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub n: usize,
    pub rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix { n, rows: vec![Vec::new(); n] }
    }

    /// Builds from `(row, column, value)` triples; zeros are dropped and
    /// duplicates summed.
    pub fn from_triplets(n: usize, triplets: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let mut m = SparseMatrix::zeros(n);
        for (i, j, v) in triplets {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::invalid(format!("entry ({i},{j}) outside a {n}x{n} matrix")));
            }
            let cur = m.get(i, j);
            m.set(i, j, cur.add(&v));
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let row = &self.rows[i - 1];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => row[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let row = &mut self.rows[i - 1];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (j, v));
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.n != other.n {
            return Err(Error::invalid("matrix orders differ"));
        }
        let triplets = self
            .triplets()
            .chain(other.triplets())
            .collect::<Vec<_>>();
        SparseMatrix::from_triplets(self.n, triplets)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i + 1, *j, v.clone())))
    }

    pub fn to_dense_exact(&self) -> Result<Vec<Vec<BigRational>>> {
        let mut out = vec![vec![BigRational::zero(); self.n]; self.n];
        for (i, j, v) in self.triplets() {
            out[i - 1][j - 1] = v
                .as_exact()
                .cloned()
                .ok_or_else(|| Error::UnsupportedExact("approximate sparse entry".into()))?;
        }
        Ok(out)
    }

    /// Exact product `self · other`.
    pub fn mul_exact(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.n != other.n {
            return Err(Error::invalid("matrix orders differ"));
        }
        let mut out = SparseMatrix::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, BigRational> = Default::default();
            for (k, a) in row {
                let a = a.as_exact().ok_or_else(|| Error::UnsupportedExact("approximate entry".into()))?;
                for (j, b) in &other.rows[k - 1] {
                    let b = b.as_exact().ok_or_else(|| Error::UnsupportedExact("approximate entry".into()))?;
                    *acc.entry(*j).or_insert_with(BigRational::zero) += a * b;
                }
            }
            out.rows[i] = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, Scalar::Exact(v)))
                .collect();
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.len() == 1 && row[0].0 == i + 1 && row[0].1 == Scalar::one()
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.triplets().all(|(i, j, _)| j >= i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    /// `F_R(n) = C(n) + D(n)`: first-column ones plus the upper-triangular
    /// divisor part.
    CplusD,
    /// `A = T + M` with the rank-one `M = u vᵀ`, `u` all ones, `v = e_1`.
    TplusM,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub parts: (SparseMatrix, SparseMatrix),
}

impl Decomposition {
    pub fn recombine(&self) -> Result<SparseMatrix> {
        self.parts.0.add(&self.parts.1)
    }
}

pub fn decompose(m: &DivisorMatrix, kind: DecompositionKind) -> Result<Decomposition> {
    let n = m.n();
    let parts = match kind {
        DecompositionKind::CplusD => {
            if m.spec().kind != MatrixKind::Fibonacci {
                return Err(Error::Unsupported(format!(
                    "C + D decomposition is defined for the Fibonacci kind, not {}",
                    m.spec().kind
                )));
            }
            let c = SparseMatrix::from_triplets(n, (2..=n).map(|i| (i, 1, Scalar::one())))?;
            let d = SparseMatrix::from_triplets(
                n,
                (1..=n).flat_map(|i| (i..=n).step_by(i).map(move |j| (i, j, m.weight(i).clone()))),
            )?;
            (c, d)
        }
        DecompositionKind::TplusM => {
            let mut t = m.to_sparse();
            t.set(1, 1, m.corner().sub(&Scalar::one()));
            for i in 2..=n {
                t.set(i, 1, Scalar::zero());
            }
            let rank_one = SparseMatrix::from_triplets(n, (1..=n).map(|i| (i, 1, Scalar::one())))?;
            (t, rank_one)
        }
    };
    Ok(Decomposition { kind, parts })
}

/// `D(n)⁻¹` for the Fibonacci kind: entry `(i, j)` is `μ(j/i) / F_j` when
/// `i | j`.
pub fn d_inverse(spec: &MatrixSpec) -> Result<SparseMatrix> {
    spec.validate()?;
    if spec.kind != MatrixKind::Fibonacci {
        return Err(Error::Unsupported("D(n)^-1 is defined for the Fibonacci kind".into()));
    }
    let n = spec.n;
    let mu = mobius_sieve(n)?;
    let fib = fibonacci_numbers(n);
    let triplets = (1..=n).flat_map(|i| {
        let mu = &mu;
        let fib = &fib;
        (i..=n).step_by(i).filter_map(move |j| {
            let m = mu.mu(j / i);
            (m != 0).then(|| {
                let v = BigRational::new(BigInt::from(m), fib[j].clone());
                (i, j, Scalar::Exact(v))
            })
        })
    });
    SparseMatrix::from_triplets(n, triplets)
}

/// Exact nonzero count `S_n = n + Σ_{j=2}^n d(j)` with its hyperbola-method
/// estimate `n ln n + 2γn`.
#[derive(Clone, Debug, PartialEq)]
pub struct NnzCount {
    pub n: usize,
    pub exact: u64,
    pub estimate: f64,
}

impl NnzCount {
    pub fn ratio(&self) -> f64 {
        self.exact as f64 / self.estimate
    }
}

pub fn nnz_count(n: usize) -> Result<NnzCount> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let d = divisor_counts(n);
    let exact = n as u64 + d[2..].iter().map(|&c| u64::from(c)).sum::<u64>();
    let nf = n as f64;
    Ok(NnzCount { n, exact, estimate: nf * nf.ln() + 2.0 * EULER_GAMMA * nf })
}

/// True when the two matrices have the same zero/nonzero pattern.
pub fn same_pattern(a: &DivisorMatrix, b: &DivisorMatrix) -> bool {
    a.n() == b.n()
        && (1..=a.n()).all(|i| {
            let pa: Vec<usize> = a.row_entries(i).filter(|(_, v)| !v.is_zero()).map(|(j, _)| j).collect();
            let pb: Vec<usize> = b.row_entries(i).filter(|(_, v)| !v.is_zero()).map(|(j, _)| j).collect();
            pa == pb
        })
}

/// Leading principal submatrix of order `k` as a sparse matrix.
pub fn leading_block(m: &SparseMatrix, k: usize) -> SparseMatrix {
    let rows = m.rows[..k]
        .iter()
        .map(|row| row.iter().filter(|(j, _)| *j <= k).cloned().collect())
        .collect();
    SparseMatrix { n: k, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rational};

    fn dense_i64(m: &DivisorMatrix) -> Vec<Vec<i64>> {
        m.dense_exact()
            .unwrap()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn classic_r8_matches_printed_matrix() {
        let printed = vec![
            vec![1, 1, 1, 1, 1, 1, 1, 1],
            vec![1, 1, 0, 1, 0, 1, 0, 1],
            vec![1, 0, 1, 0, 0, 1, 0, 0],
            vec![1, 0, 0, 1, 0, 0, 0, 1],
            vec![1, 0, 0, 0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 1, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 1],
        ];
        assert_eq!(dense_i64(&build(&MatrixSpec::classic(8)).unwrap()), printed);
    }

    #[test]
    fn fibonacci_fr8_matches_printed_matrix() {
        let printed = vec![
            vec![1, 1, 1, 1, 1, 1, 1, 1],
            vec![1, 1, 0, 1, 0, 1, 0, 1],
            vec![1, 0, 2, 0, 0, 2, 0, 0],
            vec![1, 0, 0, 3, 0, 0, 0, 3],
            vec![1, 0, 0, 0, 5, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 8, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 13, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 21],
        ];
        let m = build(&MatrixSpec::fibonacci(8)).unwrap();
        assert_eq!(dense_i64(&m), printed);
        assert_eq!(m.nnz(), 27);
        assert_eq!(dense_i64(&build(&MatrixSpec::fibonacci(1)).unwrap()), vec![vec![1]]);
    }

    #[test]
    fn generalized_and_variant_entries() {
        let seq = Sequence::Explicit(vec![int(2), int(3), int(4), int(5)]);
        let m = build(&MatrixSpec::generalized(4, seq.clone(), 0)).unwrap();
        assert_eq!(m.entry(1, 1), Scalar::from_int(2));
        assert_eq!(m.entry(1, 3), Scalar::from_int(2));
        assert_eq!(m.entry(2, 1), Scalar::one());
        assert_eq!(m.entry(2, 4), Scalar::from_int(3));
        assert_eq!(m.entry(3, 4), Scalar::zero());
        let shifted = build(&MatrixSpec::generalized(3, seq, 1)).unwrap();
        assert_eq!(shifted.weight(1), &Scalar::from_int(3));

        let v = build(&MatrixSpec::variant(4, rational(1, 3))).unwrap();
        assert_eq!(v.entry(1, 1), Scalar::Exact(rational(4, 3)));
        assert_eq!(v.entry(1, 2), Scalar::one());
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(build(&MatrixSpec::fibonacci(0)).is_err());
        assert!(build(&MatrixSpec::variant(3, int(-1))).is_err());
        let bad = Sequence::Explicit(vec![int(1), int(0), int(2)]);
        assert!(build(&MatrixSpec::generalized(3, bad, 0)).is_err());
        let short = Sequence::Explicit(vec![int(1)]);
        assert!(build(&MatrixSpec::generalized(3, short, 0)).is_err());
        assert!(build(&MatrixSpec::generalized(3, Sequence::LogShift, 0)).is_err());
        let log = build(&MatrixSpec::generalized(3, Sequence::LogShift, 1)).unwrap();
        assert!(!log.is_exact());
        assert!(log.dense_exact().is_err());
    }

    #[test]
    fn dense_cap_is_enforced() {
        let m = build(&MatrixSpec::classic(20)).unwrap().with_dense_cap(10);
        assert!(matches!(m.dense_f64(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fibonacci_block_structure() {
        for n in 1..=64 {
            let m = build(&MatrixSpec::fibonacci(n)).unwrap();
            let w = n / 2;
            if w >= 1 {
                let small = build(&MatrixSpec::fibonacci(w)).unwrap().to_sparse();
                assert_eq!(leading_block(&m.to_sparse(), w), small, "n = {n}");
            }
            for i in w + 1..=n {
                if i == 1 {
                    continue;
                }
                let cols: Vec<usize> = m.row_columns(i).to_vec();
                assert_eq!(cols, vec![1, i], "row {i} of F_R({n})");
            }
        }
    }

    #[test]
    fn classic_and_fibonacci_share_pattern() {
        for n in 1..=64 {
            let a = build(&MatrixSpec::classic(n)).unwrap();
            let b = build(&MatrixSpec::fibonacci(n)).unwrap();
            assert!(same_pattern(&a, &b), "n = {n}");
        }
    }

    #[test]
    fn nonzero_counts() {
        assert_eq!(nnz_count(1).unwrap().exact, 1);
        assert_eq!(nnz_count(8).unwrap().exact, 27);
        let r = nnz_count(10_000).unwrap().ratio();
        assert!(r > 0.98 && r < 1.02, "ratio {r}");
        assert!(nnz_count(0).is_err());
        for n in 1..=2000 {
            let m = build(&MatrixSpec::fibonacci(n)).unwrap();
            assert_eq!(m.nnz() as u64, nnz_count(n).unwrap().exact);
            assert_eq!(m.to_sparse().nnz(), m.nnz());
        }
    }

    #[test]
    fn d_inverse_matches_printed_d8() {
        let inv = d_inverse(&MatrixSpec::fibonacci(8)).unwrap();
        let printed: Vec<Vec<BigRational>> = vec![
            vec![int(1), int(-1), rational(-1, 2), int(0), rational(-1, 5), rational(1, 8), rational(-1, 13), int(0)],
            vec![int(0), int(1), int(0), rational(-1, 3), int(0), rational(-1, 8), int(0), int(0)],
            vec![int(0), int(0), rational(1, 2), int(0), int(0), rational(-1, 8), int(0), int(0)],
            vec![int(0), int(0), int(0), rational(1, 3), int(0), int(0), int(0), rational(-1, 21)],
            vec![int(0), int(0), int(0), int(0), rational(1, 5), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0), int(0), rational(1, 8), int(0), int(0)],
            vec![int(0), int(0), int(0), int(0), int(0), int(0), rational(1, 13), int(0)],
            vec![int(0), int(0), int(0), int(0), int(0), int(0), int(0), rational(1, 21)],
        ];
        assert_eq!(inv.to_dense_exact().unwrap(), printed);
        let one = d_inverse(&MatrixSpec::fibonacci(1)).unwrap();
        assert!(one.is_identity());
        assert!(d_inverse(&MatrixSpec::classic(3)).is_err());
    }

    #[test]
    fn d_times_d_inverse_is_identity() {
        for n in 1..=64 {
            let m = build(&MatrixSpec::fibonacci(n)).unwrap();
            let d = decompose(&m, DecompositionKind::CplusD).unwrap().parts.1;
            let prod = d.mul_exact(&d_inverse(&MatrixSpec::fibonacci(n)).unwrap()).unwrap();
            assert!(prod.is_identity(), "n = {n}");
        }
    }

    #[test]
    fn c_plus_d_matches_printed_parts() {
        let m = build(&MatrixSpec::fibonacci(8)).unwrap();
        let dec = decompose(&m, DecompositionKind::CplusD).unwrap();
        let (c, d) = &dec.parts;
        for i in 1..=8 {
            for j in 1..=8 {
                let want_c = if j == 1 && i != 1 { 1 } else { 0 };
                assert_eq!(c.get(i, j), Scalar::from_int(want_c));
                let want_d = if j % i == 0 { m.weight(i).clone() } else { Scalar::zero() };
                assert_eq!(d.get(i, j), want_d);
            }
        }
        assert!(d.is_upper_triangular());
        assert_eq!(dec.recombine().unwrap(), m.to_sparse());
        let classic = build(&MatrixSpec::classic(4)).unwrap();
        assert!(matches!(decompose(&classic, DecompositionKind::CplusD), Err(Error::Unsupported(_))));
    }

    #[test]
    fn t_plus_m_parts() {
        let m = build(&MatrixSpec::fibonacci(3)).unwrap();
        let dec = decompose(&m, DecompositionKind::TplusM).unwrap();
        let t = dec.parts.0.to_dense_exact().unwrap();
        assert_eq!(
            t,
            vec![vec![int(0), int(1), int(1)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(2)]]
        );
        assert!(dec.parts.0.is_upper_triangular());
        let ones = dec.parts.1.to_dense_exact().unwrap();
        assert_eq!(ones, vec![vec![int(1), int(0), int(0)]; 3]);
        assert_eq!(dec.recombine().unwrap(), m.to_sparse());

        let one = build(&MatrixSpec::fibonacci(1)).unwrap();
        let dec = decompose(&one, DecompositionKind::TplusM).unwrap();
        assert_eq!(dec.parts.0.get(1, 1), Scalar::zero());
        assert_eq!(dec.parts.1.get(1, 1), Scalar::one());

        for spec in [
            MatrixSpec::classic(12),
            MatrixSpec::variant(9, rational(2, 7)),
            MatrixSpec::generalized(7, Sequence::Power(2.0), 0),
        ] {
            let m = build(&spec).unwrap();
            let dec = decompose(&m, DecompositionKind::TplusM).unwrap();
            assert_eq!(dec.recombine().unwrap(), m.to_sparse());
            assert!(dec.parts.0.is_upper_triangular());
        }
    }
}
