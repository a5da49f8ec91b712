//! Two-qubit KAK decomposition in the magic basis.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use nalgebra::{DVector, Matrix4, Vector4};
use num_complex::Complex64;

use super::Certificate;
use crate::matcore::{
    c64, eig_symmetric_unitary, frobenius, kron, kron_factor_2q, pauli, su_normalize, Axis,
    CMatrix, PhaseTracker, UnitaryMatrix,
};
use crate::{Error, Result, Tolerances};

/// The magic basis `B`: `B†·(SU(2)⊗SU(2))·B = SO(4)`.
pub fn magic_basis() -> &'static CMatrix {
    static B: OnceLock<CMatrix> = OnceLock::new();
    B.get_or_init(|| {
        let o = c64(FRAC_1_SQRT_2, 0.0);
        let i = c64(0.0, FRAC_1_SQRT_2);
        let z = c64(0.0, 0.0);
        CMatrix::from_row_slice(4, 4, &[o, i, z, z, z, z, i, o, z, z, i, -o, o, -i, z, z])
    })
}

/// Rows `k` hold `(x_k, y_k, z_k, 1)` where `B†·XX·B = diag(x)` and so on, so
/// that `B†·exp(i(αXX+βYY+γZZ))·e^{iψ}·B = diag(e^{i·row_k·(α,β,γ,ψ)})`.
fn coefficients() -> &'static (Matrix4<f64>, Matrix4<f64>) {
    static C: OnceLock<(Matrix4<f64>, Matrix4<f64>)> = OnceLock::new();
    C.get_or_init(|| {
        let b = magic_basis();
        let diag_of = |a: Axis| {
            let p = pauli(a);
            (b.adjoint() * kron(&p, &p) * b).diagonal()
        };
        let (x, y, z) = (diag_of(Axis::X), diag_of(Axis::Y), diag_of(Axis::Z));
        let m = Matrix4::from_fn(|r, c| match c {
            0 => x[r].re.round(),
            1 => y[r].re.round(),
            2 => z[r].re.round(),
            _ => 1.0,
        });
        let inv = m
            .try_inverse()
            .expect("magic-basis coefficient matrix is invertible");
        (m, inv)
    })
}

/// Interaction coefficients of `exp(i(α·XX + β·YY + γ·ZZ))`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CanonicalParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CanonicalParams {
    pub fn matrix(&self) -> CMatrix {
        canonical_matrix(self.alpha, self.beta, self.gamma)
    }
}

/// `exp(i(α·XX + β·YY + γ·ZZ))`, evaluated through its magic-basis diagonal.
pub fn canonical_matrix(alpha: f64, beta: f64, gamma: f64) -> CMatrix {
    let (m, _) = coefficients();
    let h = m * Vector4::new(alpha, beta, gamma, 0.0);
    let b = magic_basis();
    let d = CMatrix::from_diagonal(&DVector::from_iterator(
        4,
        h.iter().map(|&x| Complex64::from_polar(1.0, x)),
    ));
    b * d * b.adjoint()
}

/// `u = e^{iφ}·(k1.0 ⊗ k1.1)·N(α,β,γ)·(k2.0 ⊗ k2.1)`, all local factors in SU(2).
#[derive(Clone, Debug)]
pub struct TwoQubitKak {
    pub k1: (UnitaryMatrix, UnitaryMatrix),
    pub params: CanonicalParams,
    pub k2: (UnitaryMatrix, UnitaryMatrix),
    pub phase: PhaseTracker,
    pub certificate: Certificate,
}

impl TwoQubitKak {
    pub fn matrix(&self) -> CMatrix {
        let k1 = kron(self.k1.0.matrix(), self.k1.1.matrix());
        let k2 = kron(self.k2.0.matrix(), self.k2.1.matrix());
        k1 * self.params.matrix() * k2 * self.phase.factor()
    }
}

/// Branch patterns for the square root of `D²`, fewest flips first.
fn flip_patterns() -> &'static [u8] {
    static P: OnceLock<Vec<u8>> = OnceLock::new();
    P.get_or_init(|| {
        let mut p: Vec<u8> = (0..16).collect();
        p.sort_by_key(|m| (m.count_ones(), *m));
        p
    })
}

/// Factorizes a two-qubit unitary as local ⋅ canonical ⋅ local.
///
/// Works from `M² = U'ᵀU'` with `U' = B†·U·B` (the AI-type split in the magic
/// basis). The square root `D` of its diagonal is chosen so that
/// `K' = U'·P·D⁻¹·Pᵀ` is real; the first admissible branch wins.
pub fn kak2q(u: &UnitaryMatrix, tol: &Tolerances) -> Result<TwoQubitKak> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: u.dim(),
        });
    }
    let (us, phi0) = su_normalize(u);
    let b = magic_basis();
    let up = b.adjoint() * us.matrix() * b;
    let m2 = up.transpose() * &up;
    let m2 = (&m2 + m2.transpose()) * c64(0.5, 0.0);
    let eig = eig_symmetric_unitary(&UnitaryMatrix::assume(m2.clone()), tol)?;
    let p = eig.vectors.map(|x| c64(x, 0.0));
    let det = up.determinant();

    let mut best_imag = f64::INFINITY;
    let mut found = None;
    for &mask in flip_patterns() {
        let h: Vec<f64> = (0..4)
            .map(|k| eig.phases[k] / 2.0 + if mask >> k & 1 == 1 { PI } else { 0.0 })
            .collect();
        let sum: f64 = h.iter().sum();
        if (Complex64::from_polar(1.0, sum) * det.conj()).re <= 0.0 {
            continue;
        }
        let dinv = CMatrix::from_diagonal(&DVector::from_iterator(
            4,
            h.iter().map(|&x| Complex64::from_polar(1.0, -x)),
        ));
        let kp = &up * &p * dinv * p.transpose();
        let imag = frobenius(&kp.map(|z| c64(z.im, 0.0)));
        best_imag = best_imag.min(imag);
        if imag <= tol.acceptance {
            found = Some((h, kp, imag));
            break;
        }
    }
    let Some((h, kp, imag)) = found else {
        return Err(Error::Branch { best_imag });
    };
    let kr = kp.map(|z| c64(z.re, 0.0));
    let k1 = b * &kr * &p * b.adjoint();
    let k2 = b * p.transpose() * b.adjoint();

    let (_, inv) = coefficients();
    let c = inv * Vector4::from_iterator(h.iter().copied());
    let params = CanonicalParams {
        alpha: c[0],
        beta: c[1],
        gamma: c[2],
    };
    let f1 = kron_factor_2q(&UnitaryMatrix::assume(k1), tol)?;
    let f2 = kron_factor_2q(&UnitaryMatrix::assume(k2), tol)?;
    let phase = phi0 + PhaseTracker(c[3]) + f1.phase + f2.phase;
    let kak = TwoQubitKak {
        k1: (f1.a, f1.b),
        params,
        k2: (f2.a, f2.b),
        phase,
        certificate: Certificate::default(),
    };

    // M in the magic basis; the involution there is complex conjugation
    let m =
        &p * CMatrix::from_diagonal(&DVector::from_iterator(
            4,
            h.iter().map(|&x| Complex64::from_polar(1.0, x)),
        )) * p.transpose();
    let involution = frobenius(&(m.map(|z| z.conj()) - m.adjoint()));
    let square = frobenius(&(&m * &m - &m2));
    let residual = frobenius(&(kak.matrix() - u.matrix()));
    if residual > tol.acceptance {
        return Err(Error::Reconstruction {
            stage: "kak2q",
            residual,
            tolerance: tol.acceptance,
        });
    }
    let structure = imag.max(f1.residual).max(f2.residual);
    Ok(TwoQubitKak {
        certificate: Certificate::single(involution, square, structure, residual),
        ..kak
    })
}
