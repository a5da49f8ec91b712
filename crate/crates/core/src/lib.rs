//! Synthesis of n-qubit unitaries into CNOT + single-qubit rotation circuits
//! through alternating Cartan decompositions (the Quantum Shannon
//! Decomposition).
//!
//! The crate is organised in three layers:
//!
//! - [`matcore`]: the dense complex linear algebra the factorizations need
//!   (unitary eigendecompositions with controlled degeneracy handling,
//!   nearest Kronecker factorization, Haar sampling, matrix file I/O).
//! - [`decomp`]: the Cartan factorizations themselves (Euler YZY, two-qubit
//!   KAK in the magic basis, the AIII demultiplexing step, the tensor-sum
//!   split) and the recursive [`decomp::qsd`] driver.
//! - [`circuit`]: the gate-level IR, multiplexed-rotation lowering, a
//!   reference simulator used for verification, and QASM / gate-list export.
//!
//! ```
//! use qsd_core::{decomp, matcore, circuit};
//!
//! let u = matcore::haar_random_unitary(3, 11).unwrap();
//! let out = decomp::qsd(&u).unwrap();
//! assert_eq!(out.cnot_count(), 24);
//! let rebuilt = circuit::circuit_to_unitary(&out).unwrap();
//! assert!(matcore::phase_aligned_distance(&u, &rebuilt).unwrap() < 1e-8 * 8.0);
//! ```

pub mod circuit;
pub mod decomp;
mod error;
pub mod matcore;
pub mod parallel;

pub use error::{Error, Result};
pub use parallel::Parallelism;

/// Numerical thresholds shared by every factorization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Maximum `‖U†U − I‖_F` accepted for a matrix to count as unitary.
    pub unitarity: f64,
    /// Eigenphases closer than this are treated as one degenerate eigenspace.
    pub degeneracy: f64,
    /// Residual bound for reconstruction and structure checks.
    pub acceptance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-10,
            degeneracy: 1e-8,
            acceptance: 1e-8,
        }
    }
}
