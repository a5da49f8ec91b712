use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::UnitaryMatrix;
use crate::{Error, Result};

pub const MAX_HAAR_QUBITS: usize = 10;

/// Haar-distributed `2ⁿ×2ⁿ` unitary, deterministic in `seed`.
///
/// QR of a complex Ginibre matrix with the phases of `R`'s diagonal moved
/// back into `Q` (without that correction the distribution is not Haar).
pub fn haar_random_unitary(n_qubits: usize, seed: u64) -> Result<UnitaryMatrix> {
    if n_qubits == 0 || n_qubits > MAX_HAAR_QUBITS {
        return Err(Error::QubitRange {
            n: n_qubits,
            min: 1,
            max: MAX_HAAR_QUBITS,
        });
    }
    let dim = 1usize << n_qubits;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let mut g = DMatrix::<Complex64>::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            g[(r, c)] = Complex64::new(draw() * scale, draw() * scale);
        }
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let d = r[(k, k)];
        let unit = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= unit;
    }
    Ok(UnitaryMatrix::assume(q))
}
