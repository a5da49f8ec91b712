//! Recursive Quantum Shannon Decomposition.

use super::aiii::demultiplex_aiii;
use super::euler::euler_certified;
use super::kak2q::kak2q;
use super::tensor_sum::{split_tensor_sum, TensorSumSplit};
use super::Certificate;
use crate::circuit::{
    append_multiplexed, canonical_gate_circuit, circuit_to_unitary_with, Circuit, Gate,
};
use crate::matcore::{phase_aligned_distance, PhaseTracker, UnitaryMatrix};
use crate::parallel::{self, Parallelism};
use crate::{Error, Result, Tolerances};

/// Largest register [`qsd`] accepts unless told otherwise.
pub const DEFAULT_MAX_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QsdOptions {
    pub tolerances: Tolerances,
    pub max_qubits: usize,
    pub parallelism: Parallelism,
}

impl Default for QsdOptions {
    fn default() -> Self {
        QsdOptions {
            tolerances: Tolerances::default(),
            max_qubits: DEFAULT_MAX_QUBITS,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct QsdOutput {
    pub circuit: Circuit,
    pub certificate: Certificate,
}

/// Decomposes `u` with default options.
pub fn qsd(u: &UnitaryMatrix) -> Result<Circuit> {
    qsd_with(u, &QsdOptions::default()).map(|o| o.circuit)
}

/// Decomposes `u` into CNOTs and single-qubit rotations.
///
/// The circuit reproduces `u` exactly including global phase, which is
/// collected into a single trailing [`Gate::GlobalPhase`].
pub fn qsd_with(u: &UnitaryMatrix, opts: &QsdOptions) -> Result<QsdOutput> {
    let n = u.n_qubits()?;
    if n == 0 || n > opts.max_qubits {
        return Err(Error::QubitRange {
            n,
            min: 1,
            max: opts.max_qubits,
        });
    }
    let (circuit, certificate) = recurse(u, n, opts)?;
    Ok(QsdOutput {
        circuit: circuit.consolidate_phase(),
        certificate,
    })
}

/// Decomposes many unitaries, spreading them over threads under
/// [`Parallelism::Rayon`]. Output order matches input order.
pub fn qsd_batch(us: &[UnitaryMatrix], opts: &QsdOptions) -> Vec<Result<QsdOutput>> {
    parallel::map(opts.parallelism, us, |u| qsd_with(u, opts))
}

/// CNOT count of the synthesized circuit: `(9·4ⁿ − 24·2ⁿ)/16` for `n ≥ 2`.
pub fn qsd_cnot_count(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (9 * (1usize << (2 * n)) - 24 * (1usize << n)) / 16
}

/// The same count from `C(n) = 4·C(n−1) + 3·2ⁿ⁻¹`, `C(2) = 3`.
pub fn qsd_cnot_recurrence(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 3,
        _ => 4 * qsd_cnot_recurrence(n - 1) + 3 * (1 << (n - 1)),
    }
}

/// Phase-aligned Frobenius distance between `u` and the circuit's unitary.
pub fn verify(u: &UnitaryMatrix, circuit: &Circuit, parallelism: Parallelism) -> Result<f64> {
    let rebuilt = circuit_to_unitary_with(circuit, parallelism)?;
    phase_aligned_distance(u, &rebuilt)
}

fn recurse(u: &UnitaryMatrix, n: usize, opts: &QsdOptions) -> Result<(Circuit, Certificate)> {
    let tol = &opts.tolerances;
    let mut c = Circuit::new(n);
    match n {
        1 => {
            let (phase, cert) = push_euler(&mut c, u, 1, tol)?;
            c.push(Gate::GlobalPhase {
                angle: phase.angle(),
            })?;
            Ok((c, cert))
        }
        2 => {
            let kak = kak2q(u, tol)?;
            let mut phase = kak.phase;
            let mut cert = kak.certificate;
            for (g, q) in [(&kak.k2.0, 1), (&kak.k2.1, 2)] {
                let (p, ce) = push_euler(&mut c, g, q, tol)?;
                phase += p;
                cert = cert.merge(ce);
            }
            let canon = canonical_gate_circuit(&kak.params);
            c.append(&canon)?;
            for (g, q) in [(&kak.k1.0, 1), (&kak.k1.1, 2)] {
                let (p, ce) = push_euler(&mut c, g, q, tol)?;
                phase += p;
                cert = cert.merge(ce);
            }
            c.push(Gate::GlobalPhase {
                angle: phase.angle(),
            })?;
            Ok((c, cert))
        }
        _ => {
            let split = demultiplex_aiii(u, n, tol)?;
            let (s1, s2) = parallel::join(
                opts.parallelism,
                || split_tensor_sum(&split.k1, n, tol),
                || split_tensor_sum(&split.k2, n, tol),
            );
            let (s1, s2) = (s1?, s2?);
            let ((v2, w2), (v1, w1)) = parallel::join(
                opts.parallelism,
                || children(&s2, n, opts),
                || children(&s1, n, opts),
            );
            let mut cert = split
                .certificate
                .merge(s1.certificate)
                .merge(s2.certificate);
            for (child, rot) in [
                (v2?, Some(&s2.rotation)),
                (w2?, Some(&split.rotation)),
                (v1?, Some(&s1.rotation)),
                (w1?, None),
            ] {
                c.append(&child.0)?;
                cert = cert.merge(child.1);
                if let Some(r) = rot {
                    append_multiplexed(&mut c, r)?;
                }
            }
            Ok((c, cert))
        }
    }
}

type Child = Result<(Circuit, Certificate)>;

fn children(s: &TensorSumSplit, n: usize, opts: &QsdOptions) -> (Child, Child) {
    parallel::join(
        opts.parallelism,
        || recurse(&s.v, n - 1, opts),
        || recurse(&s.w, n - 1, opts),
    )
}

/// Appends `Ry(c)·Rz(b)·Ry(a)` (application order) on `qubit`.
fn push_euler(
    c: &mut Circuit,
    g: &UnitaryMatrix,
    qubit: usize,
    tol: &Tolerances,
) -> Result<(PhaseTracker, Certificate)> {
    let (e, phase, cert) = euler_certified(g, tol)?;
    c.push(Gate::Ry { qubit, angle: e.c })?;
    c.push(Gate::Rz { qubit, angle: e.b })?;
    c.push(Gate::Ry { qubit, angle: e.a })?;
    Ok((phase, cert))
}
