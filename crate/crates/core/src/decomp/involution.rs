//! The three Cartan involutions used by the factorizations, plus the
//! parity-grouping helpers that expose the block structure they induce.
//!
//! Qubit 1 is the most significant bit of a basis index, so the low qubit
//! `n` is the least significant bit and `Z⁽ⁿ⁾ = diag(+1, −1, +1, −1, …)`.

use crate::matcore::{CMatrix, UnitaryMatrix};
use crate::{Error, Result};

fn check_dim(u: &UnitaryMatrix, n: usize) -> Result<()> {
    let expected = 1usize.checked_shl(n as u32).unwrap_or(0);
    if n == 0 || u.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: u.dim(),
        });
    }
    Ok(())
}

/// Type AI involution `Θ(U) = U*`.
pub fn involution_ai(u: &UnitaryMatrix) -> UnitaryMatrix {
    UnitaryMatrix::assume(u.matrix().map(|z| z.conj()))
}

/// Type AIII involution `Θ(U) = Z⁽ⁿ⁾ U Z⁽ⁿ⁾` (entrywise sign flips, exact).
pub fn involution_z(u: &UnitaryMatrix, n: usize) -> Result<UnitaryMatrix> {
    check_dim(u, n)?;
    Ok(UnitaryMatrix::assume(z_conjugate(u.matrix())))
}

/// Tensor-sum involution `Θ(U) = X⁽ⁿ⁾ U X⁽ⁿ⁾` (index permutation, exact).
pub fn involution_x(u: &UnitaryMatrix, n: usize) -> Result<UnitaryMatrix> {
    check_dim(u, n)?;
    let m = u.matrix();
    Ok(UnitaryMatrix::assume(CMatrix::from_fn(
        m.nrows(),
        m.ncols(),
        |r, c| m[(r ^ 1, c ^ 1)],
    )))
}

pub(crate) fn z_conjugate(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
        if (r ^ c) & 1 == 1 {
            -m[(r, c)]
        } else {
            m[(r, c)]
        }
    })
}

/// `Z⁽ⁿ⁾·v` for a column vector: negates odd-index entries.
pub(crate) fn z_apply(
    v: &nalgebra::DVector<num_complex::Complex64>,
) -> nalgebra::DVector<num_complex::Complex64> {
    nalgebra::DVector::from_fn(v.len(), |i, _| if i & 1 == 1 { -v[i] } else { v[i] })
}

/// The `(a, b)` parity block: rows with low bit `a`, columns with low bit `b`.
pub(crate) fn parity_block(m: &CMatrix, a: usize, b: usize) -> CMatrix {
    let h = m.nrows() / 2;
    CMatrix::from_fn(h, h, |r, c| m[(2 * r + a, 2 * c + b)])
}

/// An element of `S[U(2ⁿ⁻¹) ⊕ U(2ⁿ⁻¹)]` in parity-grouped form:
/// `u0 ⊗ |0⟩⟨0| + u1 ⊗ |1⟩⟨1|` with the low qubit as the block selector.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiagPair {
    pub u0: UnitaryMatrix,
    pub u1: UnitaryMatrix,
}

impl BlockDiagPair {
    pub fn new(u0: UnitaryMatrix, u1: UnitaryMatrix) -> Result<Self> {
        if u0.dim() != u1.dim() {
            return Err(Error::DimensionMismatch {
                expected: u0.dim(),
                found: u1.dim(),
            });
        }
        Ok(BlockDiagPair { u0, u1 })
    }

    /// Dense `2·dim × 2·dim` form with the blocks interleaved by parity.
    pub fn to_matrix(&self) -> UnitaryMatrix {
        let h = self.u0.dim();
        let (a, b) = (self.u0.matrix(), self.u1.matrix());
        UnitaryMatrix::assume(CMatrix::from_fn(2 * h, 2 * h, |r, c| {
            if (r ^ c) & 1 == 1 {
                num_complex::Complex64::new(0.0, 0.0)
            } else if r & 1 == 0 {
                a[(r / 2, c / 2)]
            } else {
                b[(r / 2, c / 2)]
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{frobenius, haar_random_unitary, kron, pauli, Axis};

    #[test]
    fn involutions_square_to_identity_exactly() {
        for seed in 0..20 {
            let n = 1 + (seed as usize % 4);
            let u = haar_random_unitary(n, seed).unwrap();
            assert_eq!(involution_ai(&involution_ai(&u)), u);
            assert_eq!(involution_z(&involution_z(&u, n).unwrap(), n).unwrap(), u);
            assert_eq!(involution_x(&involution_x(&u, n).unwrap(), n).unwrap(), u);
        }
    }

    #[test]
    fn fixed_points() {
        assert_eq!(
            involution_ai(&UnitaryMatrix::identity(4)),
            UnitaryMatrix::identity(4)
        );
        let z3 = kron(&CMatrix::identity(4, 4), &pauli(Axis::Z));
        let z3 = UnitaryMatrix::new(z3).unwrap();
        assert_eq!(involution_z(&z3, 3).unwrap(), z3);
    }

    #[test]
    fn z_involution_matches_matrix_product() {
        let u = haar_random_unitary(3, 4).unwrap();
        let z = kron(&CMatrix::identity(4, 4), &pauli(Axis::Z));
        let expect = &z * u.matrix() * &z;
        assert!(frobenius(&(involution_z(&u, 3).unwrap().into_inner() - expect)) < 1e-15);
    }

    #[test]
    fn x_involution_swaps_blocks() {
        let u0 = haar_random_unitary(2, 1).unwrap();
        let u1 = haar_random_unitary(2, 2).unwrap();
        let g = BlockDiagPair::new(u0.clone(), u1.clone())
            .unwrap()
            .to_matrix();
        let swapped = BlockDiagPair::new(u1, u0).unwrap().to_matrix();
        assert_eq!(involution_x(&g, 3).unwrap(), swapped);
        // and agrees with conjugation by I⊗X
        let x = kron(&CMatrix::identity(4, 4), &pauli(Axis::X));
        let expect = &x * g.matrix() * &x;
        assert!(frobenius(&(swapped.into_inner() - expect)) < 1e-15);
    }

    #[test]
    fn block_pair_matches_tensor_form() {
        let u0 = haar_random_unitary(1, 5).unwrap();
        let u1 = haar_random_unitary(1, 6).unwrap();
        let p0 = CMatrix::from_row_slice(
            2,
            2,
            &[1.0, 0.0, 0.0, 0.0].map(|x| crate::matcore::c64(x, 0.0)),
        );
        let p1 = CMatrix::identity(2, 2) - &p0;
        let expect = kron(u0.matrix(), &p0) + kron(u1.matrix(), &p1);
        let got = BlockDiagPair::new(u0, u1).unwrap().to_matrix();
        assert!(frobenius(&(got.into_inner() - expect)) < 1e-15);
    }

    #[test]
    fn dimension_checked() {
        let u = haar_random_unitary(2, 1).unwrap();
        assert!(involution_z(&u, 3).is_err());
        assert!(involution_x(&u, 1).is_err());
    }
}
