//! Gershgorin disks of a divisor matrix.

use num_rational::BigRational;
use num_traits::Signed;

use crate::matrix::DivisorMatrix;
use crate::scalar::Scalar;

/// Closed disk `|z − center| ≤ radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: Scalar,
    pub radius: Scalar,
}

enum Pair {
    Exact(BigRational, BigRational, BigRational, BigRational),
    Approx(f64, f64, f64, f64),
}

impl Disk {
    fn pair(&self, other: &Disk) -> Pair {
        match (&self.center, &self.radius, &other.center, &other.radius) {
            (Scalar::Exact(a), Scalar::Exact(r), Scalar::Exact(b), Scalar::Exact(s)) => {
                Pair::Exact(a.clone(), r.clone(), b.clone(), s.clone())
            }
            _ => Pair::Approx(self.center.to_f64(), self.radius.to_f64(), other.center.to_f64(), other.radius.to_f64()),
        }
    }

    /// True when `other ⊆ self`.
    pub fn contains_disk(&self, other: &Disk) -> bool {
        match self.pair(other) {
            Pair::Exact(a, r, b, s) => (a - b).abs() + s <= r,
            Pair::Approx(a, r, b, s) => (a - b).abs() + s <= r,
        }
    }

    /// True when the closed disks do not meet.
    pub fn disjoint(&self, other: &Disk) -> bool {
        match self.pair(other) {
            Pair::Exact(a, r, b, s) => (a - b).abs() > r + s,
            Pair::Approx(a, r, b, s) => (a - b).abs() > r + s,
        }
    }
}

/// Disk `i` is centered at the diagonal entry `a_ii` with radius
/// `Σ_{j≠i} |a_ij|`.
pub fn gershgorin(m: &DivisorMatrix) -> Vec<Disk> {
    (1..=m.n())
        .map(|i| {
            let mut radius = Scalar::zero();
            let mut center = Scalar::zero();
            for (j, v) in m.row_entries(i) {
                if j == i {
                    center = v;
                } else {
                    radius = radius.add(&v.abs());
                }
            }
            Disk { center, radius }
        })
        .collect()
}
