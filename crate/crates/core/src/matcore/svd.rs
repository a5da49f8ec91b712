//! Singular value decomposition through the Hermitian eigensolver.
//!
//! nalgebra's complex SVD returns inconsistent factors for some
//! rank-deficient inputs (observed on 4x4 rank-one matrices), which is exactly
//! the shape Kronecker factorization and eigenspace pairing produce.

use super::eigen::eigh;
use super::matrix::{c64, CMatrix};

/// `m = U·diag(σ)·V†` with `σ` descending, `U`, `V` unitary.
///
/// `V` comes from the eigenvectors of `m†m`; columns of `U` with
/// `σ_k > floor` are `m·V_k/σ_k`, the rest complete an orthonormal basis.
/// Singular values far below the largest are only accurate to about
/// `sqrt(ε)·σ_max`, which is all the callers need.
pub(crate) fn svd(m: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let (rows, cols) = m.shape();
    assert_eq!(rows, cols, "square matrices only");
    let n = rows;
    let (vals, vecs) = eigh(m.adjoint() * m);
    let order: Vec<usize> = (0..n).rev().collect();
    let v = CMatrix::from_fn(n, n, |r, c| vecs[(r, order[c])]);
    let sigma: Vec<f64> = order.iter().map(|&i| vals[i].max(0.0).sqrt()).collect();
    let floor = 1e-7 * sigma.first().copied().unwrap_or(0.0).max(1.0);
    let mut u = CMatrix::zeros(n, n);
    let mut filled = 0;
    for (k, &s) in sigma.iter().enumerate() {
        if s <= floor {
            break;
        }
        let mut col = m * v.column(k) / c64(s, 0.0);
        for j in 0..k {
            let c = u.column(j).dotc(&col);
            col -= u.column(j) * c;
        }
        let nrm = col.norm();
        u.set_column(k, &(col / c64(nrm, 0.0)));
        filled += 1;
    }
    // complete with coordinate vectors, lowest index first
    let mut e = 0;
    while filled < n && e < n {
        let mut col = CMatrix::zeros(n, 1);
        col[(e, 0)] = c64(1.0, 0.0);
        for j in 0..filled {
            let c = u.column(j).dotc(&col.column(0));
            col -= u.column(j) * c;
        }
        let nrm = col.norm();
        if nrm > 0.5 {
            u.set_column(filled, &(col.column(0) / c64(nrm, 0.0)));
            filled += 1;
        }
        e += 1;
    }
    (u, sigma, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{frobenius, haar_random_unitary, unitarity_residual};

    fn recompose(u: &CMatrix, s: &[f64], v: &CMatrix) -> CMatrix {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            s.len(),
            s.iter().map(|&x| c64(x, 0.0)),
        ));
        u * d * v.adjoint()
    }

    #[test]
    fn rank_one_input() {
        let a = haar_random_unitary(2, 3).unwrap();
        let x = a.matrix().column(0).into_owned();
        let y = a.matrix().column(1).into_owned();
        let m = &x * y.adjoint() * c64(2.0, 0.0);
        let (u, s, v) = svd(&m);
        assert!((s[0] - 2.0).abs() < 1e-14);
        assert!(s[1..].iter().all(|&x| x < 1e-7));
        assert!(frobenius(&(recompose(&u, &s, &v) - &m)) < 1e-7);
        let top = u.column(0) * v.column(0).adjoint() * c64(s[0], 0.0);
        assert!(frobenius(&(top - &m)) < 1e-13);
        assert!(unitarity_residual(&u) < 1e-13 && unitarity_residual(&v) < 1e-13);
    }

    #[test]
    fn full_rank_input() {
        let a = haar_random_unitary(3, 1).unwrap();
        let b = haar_random_unitary(3, 2).unwrap();
        let m = a.matrix() + b.matrix() * c64(0.5, 0.0);
        let (u, s, v) = svd(&m);
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
        assert!(frobenius(&(recompose(&u, &s, &v) - &m)) < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let (u, s, v) = svd(&CMatrix::zeros(3, 3));
        assert!(s.iter().all(|&x| x == 0.0));
        assert_eq!(u, CMatrix::identity(3, 3));
        assert!(unitarity_residual(&v) < 1e-15);
    }
}
