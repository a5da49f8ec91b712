//! Reference simulator: builds the full unitary of a circuit by running every
//! basis state through the gate list.

use num_complex::Complex64;

use super::{Circuit, Gate};
use crate::matcore::{rotation, CMatrix, UnitaryMatrix};
use crate::parallel::{for_each_chunk_mut, Parallelism};
use crate::{Error, Result};

/// Largest register the simulator will expand to a dense matrix.
pub const MAX_SIM_QUBITS: usize = 10;

pub fn circuit_to_unitary(c: &Circuit) -> Result<UnitaryMatrix> {
    circuit_to_unitary_with(c, Parallelism::default())
}

pub fn circuit_to_unitary_with(c: &Circuit, parallelism: Parallelism) -> Result<UnitaryMatrix> {
    let n = c.n_qubits();
    if n == 0 || n > MAX_SIM_QUBITS {
        return Err(Error::QubitRange {
            n,
            min: 1,
            max: MAX_SIM_QUBITS,
        });
    }
    let dim = 1usize << n;
    let ops: Vec<Op> = c.gates().iter().map(|g| Op::new(g, n)).collect();
    let mut m = CMatrix::identity(dim, dim);
    // column-major storage: each chunk of `dim` is one column
    for_each_chunk_mut(parallelism, m.as_mut_slice(), dim, |col| {
        for op in &ops {
            op.apply(col);
        }
    });
    Ok(UnitaryMatrix::assume(m))
}

enum Op {
    Cnot { control: usize, target: usize },
    Single { mask: usize, m: [Complex64; 4] },
    Phase(Complex64),
}

impl Op {
    fn new(g: &Gate, n: usize) -> Op {
        let mask = |q: usize| 1usize << (n - q);
        match *g {
            Gate::Cnot { control, target } => Op::Cnot {
                control: mask(control),
                target: mask(target),
            },
            Gate::GlobalPhase { angle } => Op::Phase(Complex64::from_polar(1.0, angle)),
            _ => {
                let (axis, q, angle) = g.as_rotation().expect("rotation gate");
                let r = rotation(axis, angle);
                Op::Single {
                    mask: mask(q),
                    m: [r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]],
                }
            }
        }
    }

    fn apply(&self, s: &mut [Complex64]) {
        match *self {
            Op::Cnot { control, target } => {
                for i in 0..s.len() {
                    if i & control != 0 && i & target == 0 {
                        s.swap(i, i | target);
                    }
                }
            }
            Op::Single { mask, m } => {
                for i in 0..s.len() {
                    if i & mask == 0 {
                        let (a, b) = (s[i], s[i | mask]);
                        s[i] = m[0] * a + m[1] * b;
                        s[i | mask] = m[2] * a + m[3] * b;
                    }
                }
            }
            Op::Phase(z) => s.iter_mut().for_each(|x| *x *= z),
        }
    }
}
