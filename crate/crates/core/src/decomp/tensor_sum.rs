//! Splitting a block-diagonal pair `u0 ⊕ u1` into
//! `(w ⊗ I)·(multiplexed Rz on the low qubit)·(v ⊗ I)`.

use num_complex::Complex64;

use super::involution::BlockDiagPair;
use super::Certificate;
use crate::circuit::MultiplexedRotation;
use crate::matcore::{diag_sqrt, eig_unitary, frobenius, Axis, CMatrix, UnitaryMatrix};
use crate::{Error, Result, Tolerances};

#[derive(Clone, Debug)]
pub struct TensorSumSplit {
    pub w: UnitaryMatrix,
    pub rotation: MultiplexedRotation,
    pub v: UnitaryMatrix,
    pub certificate: Certificate,
}

/// With `u1†·u0 = L·diag(e^{iφ})·L†` and `D = diag(e^{iφ/2})`:
/// `v = L†`, `w = u0·L·D†`, so that `u0 = w·D·v` and `u1 = w·D†·v`.
pub fn split_tensor_sum(
    pair: &BlockDiagPair,
    n: usize,
    tol: &Tolerances,
) -> Result<TensorSumSplit> {
    let half = 1usize.checked_shl(n.saturating_sub(1) as u32).unwrap_or(0);
    if n < 2 || pair.u0.dim() != half || pair.u1.dim() != half {
        return Err(Error::DimensionMismatch {
            expected: half,
            found: pair.u0.dim(),
        });
    }
    let (u0, u1) = (pair.u0.matrix(), pair.u1.matrix());
    let x = u1.adjoint() * u0;
    let eig = eig_unitary(&UnitaryMatrix::assume(x.clone()), tol)?;
    let theta = diag_sqrt(&eig.phases);
    let l = eig.vectors.matrix();
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        half,
        theta.iter().map(|&t| Complex64::from_polar(1.0, t)),
    ));
    let v = l.adjoint();
    let w = u0 * l * d.adjoint();

    let r0 = frobenius(&(&w * &d * &v - u0));
    let r1 = frobenius(&(&w * d.adjoint() * &v - u1));
    let residual = r0.hypot(r1);
    let bound = tol.acceptance * (2.0 * half as f64).sqrt();
    if residual > bound {
        return Err(Error::Reconstruction {
            stage: "tensor-sum",
            residual,
            tolerance: bound,
        });
    }
    // M = (v†Dv) ⊕ (v†D†v); the involution swaps the two blocks
    let m0 = v.adjoint() * &d * &v;
    let m1 = v.adjoint() * d.adjoint() * &v;
    let involution = frobenius(&(&m1 - m0.adjoint())).hypot(frobenius(&(&m0 - m1.adjoint())));
    let square = frobenius(&(&m0 * &m0 - &x)).hypot(frobenius(&(&m1 * &m1 - x.adjoint())));
    let rotation = MultiplexedRotation::new(Axis::Z, n, (1..n).collect(), theta)?;
    Ok(TensorSumSplit {
        w: UnitaryMatrix::assume(w),
        rotation,
        v: UnitaryMatrix::assume(v),
        certificate: Certificate::single(involution, square, 0.0, residual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::haar_random_unitary;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn opposite_phases_give_uniform_angles() {
        let a = 0.37;
        let u0 = UnitaryMatrix::identity(4).with_phase(a);
        let u1 = UnitaryMatrix::identity(4).with_phase(-a);
        let s = split_tensor_sum(&BlockDiagPair::new(u0, u1).unwrap(), 3, &tol()).unwrap();
        for t in s.rotation.angles() {
            assert_abs_diff_eq!(*t, a, epsilon = 1e-15);
        }
        assert!(frobenius(&(s.w.matrix() - CMatrix::identity(4, 4))) < 1e-15);
        assert!(frobenius(&(s.v.matrix() - CMatrix::identity(4, 4))) < 1e-15);
    }

    #[test]
    fn haar_pairs_reconstruct() {
        for n in 2..=5 {
            for seed in 0..5u64 {
                let u0 = haar_random_unitary(n - 1, seed).unwrap();
                let u1 = haar_random_unitary(n - 1, seed + 100).unwrap();
                let s = split_tensor_sum(
                    &BlockDiagPair::new(u0.clone(), u1.clone()).unwrap(),
                    n,
                    &tol(),
                )
                .unwrap();
                let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    u0.dim(),
                    s.rotation
                        .angles()
                        .iter()
                        .map(|&t| Complex64::from_polar(1.0, t)),
                ));
                assert!(frobenius(&(s.w.matrix() * &d * s.v.matrix() - u0.matrix())) < 1e-12);
                assert!(
                    frobenius(&(s.w.matrix() * d.adjoint() * s.v.matrix() - u1.matrix())) < 1e-12
                );
                assert!(s.certificate.involution < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        let p = BlockDiagPair::new(UnitaryMatrix::identity(2), UnitaryMatrix::identity(2)).unwrap();
        assert!(split_tensor_sum(&p, 3, &tol()).is_err());
    }
}
