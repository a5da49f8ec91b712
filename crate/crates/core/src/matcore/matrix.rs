use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result, Tolerances};

pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rotation / Pauli axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// The 2x2 Pauli matrix for `axis`.
pub fn pauli(axis: Axis) -> CMatrix {
    let (o, z, i) = (c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0));
    match axis {
        Axis::X => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        Axis::Y => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Axis::Z => CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// `R_a(θ) = exp(iθσ_a) = cos θ·I + i sin θ·σ_a`.
pub fn rotation(axis: Axis, angle: f64) -> CMatrix {
    let (c, s) = (angle.cos(), angle.sin());
    let p = pauli(axis);
    CMatrix::from_fn(2, 2, |r, k| {
        let id = if r == k { c } else { 0.0 };
        Complex64::new(id, 0.0) + Complex64::new(0.0, s) * p[(r, k)]
    })
}

/// Accumulated global phase in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTracker(pub f64);

impl PhaseTracker {
    pub fn new(angle: f64) -> Self {
        PhaseTracker(angle)
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    /// The phase reduced to `(−π, π]`.
    pub fn wrapped(self) -> f64 {
        wrap_angle(self.0)
    }

    pub fn factor(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }
}

impl std::ops::Add for PhaseTracker {
    type Output = PhaseTracker;
    fn add(self, rhs: PhaseTracker) -> PhaseTracker {
        PhaseTracker(self.0 + rhs.0)
    }
}

impl std::ops::AddAssign for PhaseTracker {
    fn add_assign(&mut self, rhs: PhaseTracker) {
        self.0 += rhs.0;
    }
}

/// Maps an angle to `(−π, π]`.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Principal argument in `(−π, π]` (the sign of a zero imaginary part is ignored).
pub(crate) fn arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Frobenius norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A square complex matrix known to be unitary within tolerance.
///
/// Values are immutable once constructed; every operation returns a new
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    /// Validates `m` against the default unitarity tolerance.
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::default().unitarity)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        check_square_finite(&m)?;
        let residual = unitarity_residual(&m);
        if residual > tol {
            return Err(Error::NotUnitary {
                residual,
                tolerance: tol,
            });
        }
        Ok(UnitaryMatrix(m))
    }

    /// Wraps a matrix produced by a unitarity-preserving computation.
    pub(crate) fn assume(m: CMatrix) -> Self {
        debug_assert!(m.is_square());
        UnitaryMatrix(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(CMatrix::identity(dim, dim))
    }

    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(CMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// `log2(dim)` when the dimension is a power of two.
    pub fn n_qubits(&self) -> Result<usize> {
        let d = self.dim();
        if d.is_power_of_two() {
            Ok(d.trailing_zeros() as usize)
        } else {
            Err(Error::NotPowerOfTwo(d))
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix(self.0.adjoint())
    }

    /// `e^{iφ}·self`.
    pub fn with_phase(&self, phi: f64) -> Self {
        UnitaryMatrix(&self.0 * Complex64::from_polar(1.0, phi))
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().determinant()
    }

    pub fn residual(&self) -> f64 {
        unitarity_residual(&self.0)
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;
    fn mul(self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(&self.0 * &rhs.0)
    }
}

impl AsRef<CMatrix> for UnitaryMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.0
    }
}

pub(crate) fn check_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::Empty);
    }
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

/// Kronecker product; qubits of `a` are the more significant ones.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

impl UnitaryMatrix {
    pub fn kron(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(kron(&self.0, &other.0))
    }
}

/// `‖m†m − I‖_F`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let n = m.ncols();
    let mut g = m.adjoint() * m;
    for i in 0..n {
        g[(i, i)] -= Complex64::new(1.0, 0.0);
    }
    frobenius(&g)
}

/// `min_φ ‖a − e^{iφ}b‖_F`.
///
/// Equal to `sqrt(2d − 2|tr(a†b)|)` for unitaries, but evaluated directly at
/// the optimal phase `φ = arg tr(b†a)`: the closed form cancels
/// catastrophically and cannot resolve residuals below ~1e-8.
pub fn phase_aligned_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(aligned_distance(&a.0, &b.0))
}

pub(crate) fn aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let overlap: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Projects `u` onto SU(d): returns `e^{−iφ/d}·u` and the tracked phase `φ/d`
/// where `φ` is the principal argument of `det u`.
pub fn su_normalize(u: &UnitaryMatrix) -> (UnitaryMatrix, PhaseTracker) {
    let d = u.dim() as f64;
    let phase = arg(u.determinant()) / d;
    (u.with_phase(-phase), PhaseTracker(phase))
}

/// The unitary polar factor of `m` (closest unitary in Frobenius norm).
pub fn closest_unitary(m: &CMatrix) -> CMatrix {
    let (u, _, v) = super::svd::svd(m);
    u * v.adjoint()
}
