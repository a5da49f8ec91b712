//! Single-qubit `Y·Z·Y` Euler decomposition from the AI-type Cartan split of
//! SU(2) with `Θ(G) = Y·G·Y`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::Certificate;
use crate::matcore::{
    aligned_distance, c64, eig_symmetric_unitary, frobenius, pauli, rotation, su_normalize,
    wrap_angle, Axis, CMatrix, PhaseTracker, UnitaryMatrix,
};
use crate::{Error, Result, Tolerances};

/// Angles of `e^{iaY}·e^{ibZ}·e^{icY}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EulerAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl EulerAngles {
    pub fn matrix(&self) -> CMatrix {
        euler_matrix(self.a, self.b, self.c)
    }
}

/// `e^{iaY}·e^{ibZ}·e^{icY}`.
pub fn euler_matrix(a: f64, b: f64, c: f64) -> CMatrix {
    rotation(Axis::Y, a) * rotation(Axis::Z, b) * rotation(Axis::Y, c)
}

/// Finds `φ, a, b, c` with `g = e^{iφ}·e^{iaY}·e^{ibZ}·e^{icY}`.
///
/// `a ∈ (−π, π]` and `c ∈ (−π/4, π/4]`. A pure Z rotation `e^{iθZ}` comes back
/// as exactly `(0, θ, 0)`.
pub fn euler_yzy(g: &UnitaryMatrix, tol: &Tolerances) -> Result<(EulerAngles, PhaseTracker)> {
    euler_certified(g, tol).map(|(e, p, _)| (e, p))
}

pub(crate) fn euler_certified(
    g: &UnitaryMatrix,
    tol: &Tolerances,
) -> Result<(EulerAngles, PhaseTracker, Certificate)> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: g.dim(),
        });
    }
    let (gs, phase) = su_normalize(g);
    let gm = gs.matrix();
    let y = pauli(Axis::Y);
    let m2 = &y * gm.adjoint() * &y * gm;
    let m2 = (&m2 + m2.transpose()) * c64(0.5, 0.0);
    let eig = eig_symmetric_unitary(&UnitaryMatrix::assume(m2.clone()), tol)?;

    let mut h = [eig.phases[0] / 2.0, eig.phases[1] / 2.0];
    // det M must be +1, not −1
    if (h[0] + h[1]).cos() < 0.0 {
        h[1] += PI;
    }
    let p = &eig.vectors;
    let t = p[(1, 0)].atan2(p[(0, 0)]);
    let mut k = (t / FRAC_PI_2).round();
    let mut tp = t - k * FRAC_PI_2;
    if tp <= -FRAC_PI_4 {
        tp += FRAC_PI_2;
        k -= 1.0;
    }
    if (k as i64).rem_euclid(2) == 1 {
        h.swap(0, 1);
    }
    let (cs, sn) = (tp.cos(), tp.sin());
    let pr = Matrix2::new(cs, -sn, sn, cs);
    let prc = CMatrix::from_fn(2, 2, |r, c| c64(pr[(r, c)], 0.0));
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        2,
        h.iter().map(|&x| Complex64::from_polar(1.0, x)),
    ));
    let m = &prc * d * prc.transpose();
    let kp = gm * m.adjoint() * &prc;
    let a = wrap_angle(kp[(0, 1)].re.atan2(kp[(0, 0)].re));
    let angles = EulerAngles { a, b: h[0], c: tp };

    let involution = frobenius(&(&y * &m * &y - m.adjoint()));
    let square = frobenius(&(&m * &m - &m2));
    let residual = aligned_distance(&angles.matrix(), gm);
    let exact = frobenius(&(angles.matrix() * phase.factor() - g.matrix()));
    if exact > tol.acceptance {
        return Err(Error::Reconstruction {
            stage: "euler",
            residual: exact,
            tolerance: tol.acceptance,
        });
    }
    let structure = frobenius(&kp.map(|z| c64(z.im, 0.0)));
    Ok((
        angles,
        phase,
        Certificate::single(involution, square, structure, residual.max(exact)),
    ))
}
