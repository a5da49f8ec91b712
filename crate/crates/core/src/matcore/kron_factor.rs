use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{aligned_distance, kron, su_normalize, CMatrix, PhaseTracker, UnitaryMatrix};
use crate::{Error, Result, Tolerances};

/// `u ≈ e^{iφ}·(a ⊗ b)` with `a, b ∈ SU(2)`.
#[derive(Clone, Debug)]
pub struct KronFactors {
    pub a: UnitaryMatrix,
    pub b: UnitaryMatrix,
    pub phase: PhaseTracker,
    /// `‖u − e^{iφ}(a⊗b)‖_F`.
    pub residual: f64,
}

/// Splits a 4x4 local unitary into its two single-qubit factors.
///
/// The entries are rearranged so that `a ⊗ b` becomes the rank-one matrix
/// `vec(a)·vec(b)ᵀ`; its dominant singular pair gives the factors.
pub fn kron_factor_2q(u: &UnitaryMatrix, tol: &Tolerances) -> Result<KronFactors> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    let m = u.matrix();
    // row (i, j) of a, column (k, l) of b
    let r = DMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        m[(2 * i + k, 2 * j + l)]
    });
    let (left, sigma, right) = super::svd::svd(&r);
    let sqrt2 = std::f64::consts::SQRT_2;
    let a = CMatrix::from_fn(2, 2, |i, j| left[(2 * i + j, 0)] * sqrt2);
    let b = CMatrix::from_fn(2, 2, |k, l| {
        right[(2 * k + l, 0)].conj() * (sigma[0] / sqrt2)
    });

    let (a, _) = su_normalize(&UnitaryMatrix::assume(super::closest_unitary(&a)));
    let (b, _) = su_normalize(&UnitaryMatrix::assume(super::closest_unitary(&b)));
    let prod = kron(a.matrix(), b.matrix());
    let overlap: Complex64 = prod.iter().zip(m.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = PhaseTracker(super::matrix::arg(overlap));
    let residual = aligned_distance(m, &prod);
    let bound = tol.acceptance;
    if residual > bound {
        return Err(Error::Kronecker {
            residual,
            tolerance: bound,
        });
    }
    Ok(KronFactors {
        a,
        b,
        phase,
        residual,
    })
}
