//! Gate-level circuit IR.
//!
//! Qubits are numbered from 1 (most significant) to `n`. Gates are stored in
//! application order: the first gate acts first. Rotations follow the
//! `R_a(θ) = exp(iθσ_a)` convention.

mod canonical;
mod gatelist;
mod multiplexed;
mod qasm;
mod simulate;

use std::fmt;

use crate::matcore::{rotation, Axis, CMatrix, PhaseTracker};
use crate::{Error, Result};

pub use canonical::canonical_gate_circuit;
pub use gatelist::{export_gatelist, import_gatelist};
pub(crate) use multiplexed::append_multiplexed;
pub use multiplexed::{gray_code, synthesize_multiplexed_rotation, MultiplexedRotation};
pub use qasm::{export_qasm, import_qasm};
pub use simulate::{circuit_to_unitary, circuit_to_unitary_with, MAX_SIM_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Rx { qubit: usize, angle: f64 },
    Ry { qubit: usize, angle: f64 },
    Rz { qubit: usize, angle: f64 },
    GlobalPhase { angle: f64 },
}

impl Gate {
    pub fn rotation(axis: Axis, qubit: usize, angle: f64) -> Gate {
        match axis {
            Axis::X => Gate::Rx { qubit, angle },
            Axis::Y => Gate::Ry { qubit, angle },
            Axis::Z => Gate::Rz { qubit, angle },
        }
    }

    /// Axis, qubit and angle of a single-qubit rotation.
    pub fn as_rotation(&self) -> Option<(Axis, usize, f64)> {
        match *self {
            Gate::Rx { qubit, angle } => Some((Axis::X, qubit, angle)),
            Gate::Ry { qubit, angle } => Some((Axis::Y, qubit, angle)),
            Gate::Rz { qubit, angle } => Some((Axis::Z, qubit, angle)),
            _ => None,
        }
    }

    /// Defining matrix on the gate's own qubits: 2x2 for rotations, 4x4 with
    /// the control as the high bit for CNOT, 1x1 for a global phase.
    pub fn matrix(&self) -> CMatrix {
        match *self {
            Gate::Cnot { .. } => {
                let mut m = CMatrix::zeros(4, 4);
                for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                    m[(r, c)] = num_complex::Complex64::new(1.0, 0.0);
                }
                m
            }
            Gate::GlobalPhase { angle } => {
                CMatrix::from_element(1, 1, PhaseTracker(angle).factor())
            }
            _ => {
                let (axis, _, angle) = self.as_rotation().expect("rotation gate");
                rotation(axis, angle)
            }
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        let in_range = |q: usize| q >= 1 && q <= n_qubits;
        match *self {
            Gate::Cnot { control, target } => {
                if !in_range(control) || !in_range(target) || control == target {
                    return Err(Error::InvalidGate(format!(
                        "cnot({control}, {target}) on {n_qubits} qubits"
                    )));
                }
            }
            Gate::GlobalPhase { angle } => {
                if !angle.is_finite() {
                    return Err(Error::InvalidGate(format!("global phase {angle}")));
                }
            }
            _ => {
                let (axis, q, angle) = self.as_rotation().expect("rotation gate");
                if !in_range(q) || !angle.is_finite() {
                    return Err(Error::InvalidGate(format!(
                        "r{axis}({angle}) on qubit {q} of {n_qubits}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::GlobalPhase { angle } => write!(f, "phase {angle:?}"),
            _ => {
                let (axis, q, angle) = self.as_rotation().expect("rotation gate");
                write!(f, "r{axis} {q} {angle:?}")
            }
        }
    }
}

/// An ordered gate list on a fixed number of qubits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n_qubits)?;
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n_qubits)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends a circuit acting on the first `other.n_qubits()` qubits.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits > self.n_qubits {
            return Err(Error::InvalidGate(format!(
                "cannot append a {}-qubit circuit to a {}-qubit one",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }

    pub fn rotation_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.as_rotation().is_some())
            .count()
    }

    /// Sum of all global-phase gates.
    pub fn global_phase(&self) -> f64 {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::GlobalPhase { angle } => *angle,
                _ => 0.0,
            })
            .sum()
    }

    /// Replaces every global-phase gate by one trailing gate (wrapped to
    /// `(−π, π]`); dropped entirely when the total is zero.
    pub fn consolidate_phase(self) -> Circuit {
        let total = PhaseTracker(self.global_phase()).wrapped();
        let mut gates: Vec<Gate> = self
            .gates
            .into_iter()
            .filter(|g| !matches!(g, Gate::GlobalPhase { .. }))
            .collect();
        if total != 0.0 {
            gates.push(Gate::GlobalPhase { angle: total });
        }
        Circuit {
            n_qubits: self.n_qubits,
            gates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2);
        assert!(c
            .push(Gate::Cnot {
                control: 1,
                target: 2
            })
            .is_ok());
        assert!(c
            .push(Gate::Cnot {
                control: 1,
                target: 1
            })
            .is_err());
        assert!(c
            .push(Gate::Rx {
                qubit: 3,
                angle: 0.1
            })
            .is_err());
        assert!(c
            .push(Gate::Ry {
                qubit: 0,
                angle: 0.1
            })
            .is_err());
        assert!(c
            .push(Gate::Rz {
                qubit: 1,
                angle: f64::NAN
            })
            .is_err());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn phases_are_merged() {
        let mut c = Circuit::new(1);
        c.push(Gate::GlobalPhase { angle: 0.5 }).unwrap();
        c.push(Gate::Rz {
            qubit: 1,
            angle: 0.1,
        })
        .unwrap();
        c.push(Gate::GlobalPhase { angle: 3.0 }).unwrap();
        let c = c.consolidate_phase();
        assert_eq!(c.len(), 2);
        let Gate::GlobalPhase { angle } = c.gates()[1] else {
            panic!()
        };
        assert!((angle - (3.5 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(c.rotation_count(), 1);
    }

    #[test]
    fn append_rejects_wider_circuit() {
        let mut a = Circuit::new(1);
        assert!(a.append(&Circuit::new(2)).is_err());
    }
}
