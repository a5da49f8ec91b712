//! Line-oriented `key=value` output and the exit-code mapping.

use std::fmt;
use std::process::ExitCode;

use qsd_core::decomp::qsd_cnot_count;
use qsd_core::Error;

/// Outcome of a decomposition or verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub n_qubits: usize,
    pub cnot_count: usize,
    pub total_gate_count: usize,
    /// `None` when no reconstruction was requested.
    pub reconstruction_residual: Option<f64>,
    pub tolerance: f64,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn formula_count(&self) -> usize {
        qsd_cnot_count(self.n_qubits)
    }

    pub fn count_matches(&self) -> bool {
        self.cnot_count == self.formula_count()
    }

    pub fn within_tolerance(&self) -> bool {
        self.reconstruction_residual
            .is_none_or(|r| r <= self.tolerance)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_qubits={}", self.n_qubits)?;
        writeln!(f, "cnot_count={}", self.cnot_count)?;
        writeln!(f, "total_gate_count={}", self.total_gate_count)?;
        match self.reconstruction_residual {
            Some(r) => writeln!(f, "reconstruction_residual={r:e}")?,
            None => writeln!(f, "reconstruction_residual=none")?,
        }
        writeln!(f, "tolerance={:e}", self.tolerance)?;
        writeln!(f, "elapsed_ms={:.3}", self.elapsed_ms)?;
        writeln!(f, "formula_count={}", self.formula_count())?;
        writeln!(f, "match={}", self.count_matches())
    }
}

/// A failed command: machine-readable kind, human reason, exit status.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub reason: String,
    pub code: u8,
}

pub const EXIT_RANGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_NON_UNITARY: u8 = 3;
pub const EXIT_STRUCTURAL: u8 = 4;
pub const EXIT_TOLERANCE: u8 = 5;
pub const EXIT_MISMATCH: u8 = 6;

impl Failure {
    pub fn new(kind: &'static str, code: u8, reason: impl Into<String>) -> Self {
        Failure {
            kind,
            reason: reason.into(),
            code,
        }
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Failure::new("io", EXIT_RANGE, format!("{}: {e}", path.display()))
    }

    pub fn exit(&self) -> ExitCode {
        eprintln!("error={} reason={:?}", self.kind, self.reason);
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, code) = match e {
            Error::Parse(_)
            | Error::NotSquare { .. }
            | Error::Empty
            | Error::NonFinite { .. }
            | Error::NotPowerOfTwo(_) => ("parse", EXIT_PARSE),
            Error::NotUnitary { .. } => ("non_unitary", EXIT_NON_UNITARY),
            Error::QubitRange { .. } => ("range", EXIT_RANGE),
            Error::DimensionMismatch { .. } => ("mismatch", EXIT_MISMATCH),
            _ => ("structural", EXIT_STRUCTURAL),
        };
        Failure::new(kind, code, e.to_string())
    }
}
