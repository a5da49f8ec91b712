//! Dense complex linear-algebra kernel.
//!
//! Only the factorizations the decomposition algorithms need live here, each
//! with explicit branch and tie-breaking rules so that results are
//! reproducible bit for bit.

mod eigen;
mod haar;
mod io;
mod kron_factor;
mod matrix;
mod svd;

pub use eigen::{diag_sqrt, eig_symmetric_unitary, eig_unitary, EigenPair, OrthogonalEigenPair};
pub use haar::{haar_random_unitary, MAX_HAAR_QUBITS};
pub use io::{parse_matrix, read_matrix_file, write_matrix, write_matrix_file};
pub use kron_factor::{kron_factor_2q, KronFactors};
pub use matrix::{
    c64, closest_unitary, frobenius, kron, pauli, phase_aligned_distance, rotation, su_normalize,
    unitarity_residual, Axis, CMatrix, PhaseTracker, UnitaryMatrix,
};

pub(crate) use eigen::{canonical_basis, chains, eigh};
pub(crate) use matrix::{aligned_distance, wrap_angle};
