//! Published reference values, used by the `examples` command and the
//! acceptance checks.

use crate::matrix::{MatrixSpec, Sequence};
use crate::scalar::{int, rational};

/// Eigenvalues of `F_R(n)` for `n = 3..=11`, rounded to three decimals.
pub const EIGENVALUE_TABLE: [&[f64]; 9] = [
    &[-0.247, 1.445, 2.802],
    &[-0.284, 1.215, 2.318, 3.751],
    &[-0.400, 1.197, 2.294, 3.600, 5.309],
    &[-0.356, 1.159, 2.197, 3.512, 5.260, 8.228],
    &[-0.406, 1.154, 2.193, 3.498, 5.252, 8.221, 13.087],
    &[-0.408, 1.168, 2.206, 3.426, 5.242, 8.217, 13.086, 21.062],
    &[-0.411, 1.171, 2.189, 3.417, 5.239, 8.215, 13.086, 21.062, 34.032],
    &[-0.403, 1.163, 2.189, 3.421, 5.216, 8.213, 13.085, 21.062, 34.032, 55.021],
    &[-0.411, 1.163, 2.189, 3.420, 5.215, 8.213, 13.085, 21.062, 34.032, 55.021, 89.011],
];

/// Tabulated eigenvalues of `F_R(n)`, `3 ≤ n ≤ 11`.
pub fn tabulated_eigenvalues(n: usize) -> Option<&'static [f64]> {
    (3..=11).contains(&n).then(|| EIGENVALUE_TABLE[n - 3])
}

/// `A_R(6)` with `a = (2, 3, 4, 5, 6, 7)`.
pub fn alpha_example() -> MatrixSpec {
    MatrixSpec::generalized(6, Sequence::Explicit((2..=7).map(int).collect()), 0)
}

/// `B_R(6)` with `β = (1/2, 1, 3, 4, 5, 6)`.
pub fn beta_example() -> MatrixSpec {
    let v = vec![rational(1, 2), int(1), int(3), int(4), int(5), int(6)];
    MatrixSpec::generalized(6, Sequence::Explicit(v), 0)
}

pub const ALPHA_SPECTRUM: [f64; 6] = [0.77338667, 2.31234369, 3.94590989, 5.41017632, 6.21975829, 8.33842514];

pub const BETA_SPECTRUM: [f64; 6] = [-0.14168871, 1.18251376, 3.0, 4.14065288, 5.09707404, 6.22144801];

/// Left eigenvector of `B_R(6)` for the eigenvalue 3, up to scaling.
pub const BETA_LEFT_AT_THREE: [f64; 6] = [0.0, 0.0, -1.0, 0.0, 0.0, 1.0];

/// `C ≈ −0.64572472` (8 decimals).
pub const C_PUBLISHED: f64 = -0.64572472;
/// `Σ_{k≤12} μ(k)/F_k ≈ −0.6449772` (7 decimals).
pub const C_PARTIAL_12_PUBLISHED: f64 = -0.6449772;
/// Published upper bound for the tail after `k₀ = 12`.
pub const C_TAIL_12_PUBLISHED: f64 = 0.013192;
/// `C_φ ≈ 1.226742` (6 decimals).
pub const C_PHI_PUBLISHED: f64 = 1.226742;
/// `C_0 ≈ −0.7921376` (7 decimals).
pub const C0_PUBLISHED: f64 = -0.7921376;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        for n in 3..=11 {
            let row = tabulated_eigenvalues(n).unwrap();
            assert_eq!(row.len(), n);
            assert!(row.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(tabulated_eigenvalues(2).is_none());
        assert!(tabulated_eigenvalues(12).is_none());
    }
}
