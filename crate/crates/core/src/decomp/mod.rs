//! Cartan factorizations and the recursive synthesis driver.
//!
//! Each step takes a unitary `G`, forms `M² = Θ(G†)·G` for an involution `Θ`,
//! diagonalizes it, and splits `G = K·M` with `Θ(K) = K` and `Θ(M) = M†`.

mod aiii;
mod euler;
mod involution;
mod kak2q;
mod qsd;
mod tensor_sum;

pub use aiii::{demultiplex_aiii, AiiiSplit};
pub use euler::{euler_matrix, euler_yzy, EulerAngles};
pub use involution::{involution_ai, involution_x, involution_z, BlockDiagPair};
pub use kak2q::{canonical_matrix, kak2q, magic_basis, CanonicalParams, TwoQubitKak};
pub use qsd::{
    qsd, qsd_batch, qsd_cnot_count, qsd_cnot_recurrence, qsd_with, verify, QsdOptions, QsdOutput,
    DEFAULT_MAX_QUBITS,
};
pub use tensor_sum::{split_tensor_sum, TensorSumSplit};

/// Numerical evidence collected while factorizing.
///
/// All fields are maxima over the splits performed; a fresh certificate is
/// all zeros.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Certificate {
    /// Number of Cartan splits that contributed.
    pub splits: usize,
    /// `‖Θ(M) − M†‖_F`.
    pub involution: f64,
    /// `‖M·M − Θ(G†)·G‖_F`.
    pub square: f64,
    /// Leakage of a `K` factor out of the fixed-point subgroup.
    pub structure: f64,
    /// `‖G − K·M‖_F` of the individual split (before any rounding to a circuit).
    pub reconstruction: f64,
}

impl Certificate {
    pub(crate) fn single(
        involution: f64,
        square: f64,
        structure: f64,
        reconstruction: f64,
    ) -> Self {
        Certificate {
            splits: 1,
            involution,
            square,
            structure,
            reconstruction,
        }
    }

    pub fn merge(self, other: Certificate) -> Certificate {
        Certificate {
            splits: self.splits + other.splits,
            involution: self.involution.max(other.involution),
            square: self.square.max(other.square),
            structure: self.structure.max(other.structure),
            reconstruction: self.reconstruction.max(other.reconstruction),
        }
    }
}
