use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::{arg, c64, frobenius, CMatrix, UnitaryMatrix};
use crate::{Error, Result, Tolerances};

/// Gap below which Hermitian eigenvalues are re-split with the second
/// functional. Wider than the degeneracy tolerance so that the invariant
/// subspaces handed to the second pass are well separated from the rest.
const SPLIT_GAP: f64 = 1e-6;

/// Rotation applied to the spectrum before taking Hermitian parts. Structured
/// gates have eigenphases at rational multiples of π; a twist of 1/2 rad keeps
/// distinct eigenvalues from colliding in the first functional.
const TWIST: f64 = 0.5;

/// Entries at or below this modulus count as zero for sign canonicalization.
const SIGN_FLOOR: f64 = 1e-9;

/// Eigendecomposition `S = V·diag(e^{iφ})·V†` of a unitary matrix.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub vectors: UnitaryMatrix,
    pub phases: Vec<f64>,
}

impl EigenPair {
    pub fn rebuild(&self) -> CMatrix {
        let v = self.vectors.matrix();
        let d = phase_diag(&self.phases);
        v * d * v.adjoint()
    }
}

/// Eigendecomposition `S = P·diag(e^{iφ})·Pᵀ` of a symmetric unitary matrix
/// with `P` real orthogonal and `det P = +1`.
#[derive(Clone, Debug)]
pub struct OrthogonalEigenPair {
    pub vectors: DMatrix<f64>,
    pub phases: Vec<f64>,
}

impl OrthogonalEigenPair {
    pub fn rebuild(&self) -> CMatrix {
        let p = self.vectors.map(|x| c64(x, 0.0));
        &p * phase_diag(&self.phases) * p.transpose()
    }
}

fn phase_diag(phases: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(
        phases.len(),
        phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
    ))
}

/// Half of every phase (principal square root of `diag(e^{iφ})`).
///
/// Branch flips are the caller's business.
pub fn diag_sqrt(phases: &[f64]) -> Vec<f64> {
    phases.iter().map(|p| p / 2.0).collect()
}

/// Eigendecomposition of a unitary matrix.
///
/// Phases are in `(−π, π]` and sorted ascending; a phase within the degeneracy
/// tolerance of `−π` is ordered as `+π`. Every degenerate eigenspace is
/// replaced by the basis obtained from pivoted Gram–Schmidt on its projector's
/// columns, and each eigenvector is scaled so its first nonzero component is
/// positive real.
pub fn eig_unitary(u: &UnitaryMatrix, tol: &Tolerances) -> Result<EigenPair> {
    let m = u.matrix();
    let a = m * Complex64::from_polar(1.0, -TWIST);
    let ah = a.adjoint();
    let f1 = (&a + &ah) * c64(0.5, 0.0);
    let f2 = (&a - &ah) * c64(0.0, -0.5);
    let v = simultaneous_diag(&f1, &f2);
    let (v, phases) = finalize(
        v,
        |v, k| {
            let col = v.column(k);
            col.dotc(&(m * col))
        },
        tol.degeneracy,
    );
    let pair = EigenPair {
        vectors: UnitaryMatrix::assume(v),
        phases,
    };
    let residual = frobenius(&(pair.rebuild() - m));
    let bound = tol.acceptance * u.dim() as f64;
    if residual > bound || pair.vectors.residual() > bound {
        return Err(Error::Eigen {
            residual: residual.max(pair.vectors.residual()),
            tolerance: bound,
        });
    }
    Ok(pair)
}

/// Eigendecomposition of a complex-symmetric unitary with a real orthogonal
/// eigenvector matrix of determinant +1.
///
/// `Re(S)` and `Im(S)` are commuting real symmetric matrices; they are
/// diagonalized simultaneously and near-degenerate groups of one are split
/// by the other. A determinant of −1 is repaired by negating the last column.
pub fn eig_symmetric_unitary(s: &UnitaryMatrix, tol: &Tolerances) -> Result<OrthogonalEigenPair> {
    let m = s.matrix();
    let asymmetry = frobenius(&(m - m.transpose()));
    if asymmetry > tol.unitarity {
        return Err(Error::NotSymmetric {
            asymmetry,
            tolerance: tol.unitarity,
        });
    }
    let sym = (m + m.transpose()) * c64(0.5, 0.0);
    let a = &sym * Complex64::from_polar(1.0, -TWIST);
    let f1 = a.map(|z| z.re);
    let f2 = a.map(|z| z.im);
    let v = simultaneous_diag(&f1, &f2);
    let (mut v, phases) = finalize(
        v,
        |v, k| {
            let col = v.column(k).map(|x| c64(x, 0.0));
            col.dot(&(&sym * &col))
        },
        tol.degeneracy,
    );
    if v.clone().determinant() < 0.0 {
        let last = v.ncols() - 1;
        v.column_mut(last).neg_mut();
    }
    let pair = OrthogonalEigenPair { vectors: v, phases };
    let bound = tol.acceptance * s.dim() as f64;
    let residual = frobenius(&(pair.rebuild() - m));
    let ortho =
        (pair.vectors.transpose() * &pair.vectors - DMatrix::identity(s.dim(), s.dim())).norm();
    if residual > bound || ortho > bound {
        return Err(Error::Eigen {
            residual: residual.max(ortho),
            tolerance: bound,
        });
    }
    Ok(pair)
}

/// Eigenvalues ascending with matching eigenvector columns.
pub(crate) fn eigh<T: ComplexField<RealField = f64>>(m: DMatrix<T>) -> (Vec<f64>, DMatrix<T>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])].clone());
    (vals, vecs)
}

fn hermitian_part<T: ComplexField<RealField = f64>>(m: DMatrix<T>) -> DMatrix<T> {
    let h = T::from_real(0.5);
    (m.adjoint() + m) * h
}

/// Maximal runs of a sorted sequence whose consecutive gaps are `<= tol`.
pub(crate) fn chains(sorted: &[f64], tol: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Common eigenbasis of two commuting Hermitian matrices.
fn simultaneous_diag<T: ComplexField<RealField = f64>>(
    f1: &DMatrix<T>,
    f2: &DMatrix<T>,
) -> DMatrix<T> {
    let (a, mut v) = eigh(f1.clone());
    for r in chains(&a, SPLIT_GAP) {
        if r.len() < 2 {
            continue;
        }
        let w = v.columns(r.start, r.len()).into_owned();
        let (b, y) = eigh(hermitian_part(w.adjoint() * f2 * &w));
        let mut w = w * y;
        for s in chains(&b, SPLIT_GAP) {
            if s.len() < 2 {
                continue;
            }
            let ws = w.columns(s.start, s.len()).into_owned();
            let (_, z) = eigh(hermitian_part(ws.adjoint() * f1 * &ws));
            w.columns_mut(s.start, s.len()).copy_from(&(ws * z));
        }
        v.columns_mut(r.start, r.len()).copy_from(&w);
    }
    v
}

fn sort_key(phase: f64, deg: f64) -> f64 {
    if phase < -PI + deg {
        phase + 2.0 * PI
    } else {
        phase
    }
}

/// Orders columns by eigenphase, canonicalizes degenerate eigenspaces and
/// column signs.
fn finalize<T, F>(v: DMatrix<T>, rayleigh: F, deg: f64) -> (DMatrix<T>, Vec<f64>)
where
    T: ComplexField<RealField = f64>,
    F: Fn(&DMatrix<T>, usize) -> Complex64,
{
    let (mut v, phases) = sort_columns(v, &rayleigh, deg);
    let keys: Vec<f64> = phases.iter().map(|&p| sort_key(p, deg)).collect();
    let mut touched = false;
    for r in chains(&keys, deg) {
        if r.len() < 2 {
            continue;
        }
        let w = v.columns(r.start, r.len()).into_owned();
        v.columns_mut(r.start, r.len())
            .copy_from(&canonical_basis(&w));
        touched = true;
    }
    if touched {
        v = sort_columns(v, &rayleigh, deg).0;
    }
    for k in 0..v.ncols() {
        let mut col = v.column_mut(k);
        if let Some(x) = col
            .iter()
            .find(|x| (*x).clone().modulus() > SIGN_FLOOR)
            .cloned()
        {
            let unit = x.clone().conjugate() / T::from_real(x.modulus());
            col *= unit;
        }
    }
    let phases = (0..v.ncols()).map(|k| arg(rayleigh(&v, k))).collect();
    (v, phases)
}

fn sort_columns<T, F>(v: DMatrix<T>, rayleigh: &F, deg: f64) -> (DMatrix<T>, Vec<f64>)
where
    T: ComplexField<RealField = f64>,
    F: Fn(&DMatrix<T>, usize) -> Complex64,
{
    let n = v.ncols();
    let phases: Vec<f64> = (0..n).map(|k| arg(rayleigh(&v, k))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sort_key(phases[a], deg).total_cmp(&sort_key(phases[b], deg)));
    let sorted = DMatrix::from_fn(v.nrows(), n, |r, c| v[(r, order[c])].clone());
    (sorted, order.iter().map(|&i| phases[i]).collect())
}

/// Basis of `span(w)` that depends only on the subspace: pivoted Gram–Schmidt
/// over the columns of the orthogonal projector `w·w†`, ties going to the
/// lowest coordinate index.
pub(crate) fn canonical_basis<T: ComplexField<RealField = f64>>(w: &DMatrix<T>) -> DMatrix<T> {
    let (d, m) = w.shape();
    let proj = w * w.adjoint();
    let mut resid: Vec<DVector<T>> = (0..d).map(|i| proj.column(i).into_owned()).collect();
    let mut out = DMatrix::zeros(d, m);
    for k in 0..m {
        let mut best = 0;
        let mut best_norm = -1.0;
        for (i, r) in resid.iter().enumerate() {
            let nrm = r.norm();
            if nrm > best_norm * (1.0 + 1e-10) {
                best = i;
                best_norm = nrm;
            }
        }
        let q = resid[best].clone() / T::from_real(best_norm);
        for r in resid.iter_mut() {
            let c = q.dotc(r);
            r.axpy(-c, &q, T::one());
        }
        out.set_column(k, &q);
    }
    out
}
