//! Uniformly controlled rotations and their CNOT + rotation lowering.

use std::f64::consts::FRAC_PI_4;

use super::{Circuit, Gate};
use crate::matcore::{rotation, Axis, CMatrix};
use crate::{Error, Result};

/// `Σ_j |j⟩⟨j|_controls ⊗ R_axis(θ_j)` on `target`.
///
/// `controls[0]` is the most significant bit of the pattern index `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplexedRotation {
    axis: Axis,
    target: usize,
    controls: Vec<usize>,
    angles: Vec<f64>,
}

impl MultiplexedRotation {
    pub fn new(axis: Axis, target: usize, controls: Vec<usize>, angles: Vec<f64>) -> Result<Self> {
        if axis == Axis::Y {
            return Err(Error::InvalidGate(
                "multiplexed rotations are X or Z".into(),
            ));
        }
        let expected = 1usize.checked_shl(controls.len() as u32).unwrap_or(0);
        if angles.len() != expected {
            return Err(Error::AngleCount {
                controls: controls.len(),
                expected,
                found: angles.len(),
            });
        }
        let mut seen = controls.clone();
        seen.push(target);
        seen.sort_unstable();
        seen.dedup();
        if target == 0 || seen[0] == 0 || seen.len() != controls.len() + 1 {
            return Err(Error::InvalidGate(format!(
                "multiplexor target {target} with controls {controls:?}"
            )));
        }
        if let Some(a) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidGate(format!("multiplexor angle {a}")));
        }
        Ok(MultiplexedRotation {
            axis,
            target,
            controls,
            angles,
        })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn max_qubit(&self) -> usize {
        self.controls
            .iter()
            .copied()
            .chain([self.target])
            .max()
            .unwrap_or(0)
    }

    /// Dense matrix on an `n_qubits` register.
    pub fn dense_matrix(&self, n_qubits: usize) -> Result<CMatrix> {
        if self.max_qubit() > n_qubits {
            return Err(Error::QubitRange {
                n: self.max_qubit(),
                min: 1,
                max: n_qubits,
            });
        }
        let dim = 1usize << n_qubits;
        let bit = |q: usize| n_qubits - q;
        let rots: Vec<CMatrix> = self
            .angles
            .iter()
            .map(|&t| rotation(self.axis, t))
            .collect();
        let tb = bit(self.target);
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let j = self
                .controls
                .iter()
                .fold(0, |acc, &q| (acc << 1) | ((col >> bit(q)) & 1));
            let tc = (col >> tb) & 1;
            for tr in 0..2 {
                let row = (col & !(1 << tb)) | (tr << tb);
                m[(row, col)] = rots[j][(tr, tc)];
            }
        }
        Ok(m)
    }
}

/// Reflected binary Gray code of length `2^k`.
pub fn gray_code(k: usize) -> Vec<usize> {
    (0..1usize << k).map(|i| i ^ (i >> 1)).collect()
}

/// In-place Walsh–Hadamard transform: `out[s] = Σ_j (−1)^{popcount(j & s)}·x[j]`.
fn walsh_hadamard(x: &mut [f64]) {
    let mut h = 1;
    while h < x.len() {
        for i in (0..x.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (x[j], x[j + h]);
                x[j] = a + b;
                x[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Lowers a multiplexed rotation with `k` controls to `2^k` rotations and
/// `2^k` CNOTs (none for `k = 0`).
///
/// Rotation `i` carries `α_i = 2^{−k}·Σ_j (−1)^{popcount(j & g_i)}·θ_j` for the
/// Gray code word `g_i`; the CNOT after it is controlled by the bit that
/// changes from `g_i` to `g_{i+1}` (cyclically). X multiplexors are conjugated
/// by `Ry(±π/4)` on the target.
pub fn synthesize_multiplexed_rotation(m: &MultiplexedRotation) -> Result<Circuit> {
    let mut c = Circuit::new(m.max_qubit());
    append_multiplexed(&mut c, m)?;
    Ok(c)
}

pub(crate) fn append_multiplexed(c: &mut Circuit, m: &MultiplexedRotation) -> Result<()> {
    let k = m.controls.len();
    let t = m.target;
    if k == 0 {
        return c.push(Gate::rotation(m.axis, t, m.angles[0]));
    }
    let mut alpha = m.angles.clone();
    walsh_hadamard(&mut alpha);
    let scale = 1.0 / (1usize << k) as f64;
    let gray = gray_code(k);
    if m.axis == Axis::X {
        c.push(Gate::Ry {
            qubit: t,
            angle: FRAC_PI_4,
        })?;
    }
    for i in 0..gray.len() {
        c.push(Gate::Rz {
            qubit: t,
            angle: alpha[gray[i]] * scale,
        })?;
        let changed = (gray[i] ^ gray[(i + 1) % gray.len()]).trailing_zeros() as usize;
        c.push(Gate::Cnot {
            control: m.controls[k - 1 - changed],
            target: t,
        })?;
    }
    if m.axis == Axis::X {
        c.push(Gate::Ry {
            qubit: t,
            angle: -FRAC_PI_4,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::circuit_to_unitary;
    use crate::matcore::frobenius;
    use proptest::prelude::*;

    #[test]
    fn gray_code_small() {
        assert_eq!(gray_code(0), vec![0]);
        assert_eq!(gray_code(2), vec![0, 1, 3, 2]);
        for k in 0..6 {
            let g = gray_code(k);
            for i in 0..g.len() {
                assert_eq!(
                    (g[i] ^ g[(i + 1) % g.len()]).count_ones(),
                    1.min(g.len() as u32 - 1)
                );
            }
        }
    }

    #[test]
    fn walsh_matches_definition() {
        let x = [0.3, -1.0, 2.5, 0.25, 0.0, 1.5, -0.75, 4.0];
        let mut y = x;
        walsh_hadamard(&mut y);
        for (s, &ys) in y.iter().enumerate() {
            let direct: f64 = (0..8usize)
                .map(|j| {
                    if (j & s).count_ones() % 2 == 0 {
                        x[j]
                    } else {
                        -x[j]
                    }
                })
                .sum();
            assert!((ys - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_controls_is_a_single_gate() {
        let m = MultiplexedRotation::new(Axis::X, 1, vec![], vec![0.7]).unwrap();
        let c = synthesize_multiplexed_rotation(&m).unwrap();
        assert_eq!(
            c.gates(),
            &[Gate::Rx {
                qubit: 1,
                angle: 0.7
            }]
        );
    }

    #[test]
    fn one_control_example() {
        let m = MultiplexedRotation::new(Axis::Z, 2, vec![1], vec![0.3, -0.5]).unwrap();
        let c = synthesize_multiplexed_rotation(&m).unwrap();
        assert_eq!(c.cnot_count(), 2);
        let u = circuit_to_unitary(&c).unwrap();
        assert!(frobenius(&(u.matrix() - m.dense_matrix(2).unwrap())) < 1e-14);
    }

    #[test]
    fn constructor_checks() {
        assert!(matches!(
            MultiplexedRotation::new(Axis::Z, 3, vec![1, 2], vec![0.0; 3]),
            Err(Error::AngleCount { .. })
        ));
        assert!(MultiplexedRotation::new(Axis::Y, 2, vec![1], vec![0.0; 2]).is_err());
        assert!(MultiplexedRotation::new(Axis::Z, 2, vec![2], vec![0.0; 2]).is_err());
        assert!(MultiplexedRotation::new(Axis::Z, 0, vec![], vec![0.0]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn lowering_matches_dense(
            k in 0usize..4,
            x_axis in any::<bool>(),
            seed in prop::collection::vec(-3.0f64..3.0, 8),
            perm in 0usize..24,
        ) {
            // controls and target drawn from a permutation of 1..=k+1
            let mut qubits: Vec<usize> = (1..=k + 1).collect();
            let len = qubits.len();
            qubits.rotate_left(perm % len);
            if perm % 2 == 1 { qubits.reverse(); }
            let target = qubits[0];
            let controls = qubits[1..].to_vec();
            let angles = seed[..1 << k].to_vec();
            let axis = if x_axis { Axis::X } else { Axis::Z };
            let m = MultiplexedRotation::new(axis, target, controls, angles).unwrap();
            let c = synthesize_multiplexed_rotation(&m).unwrap();
            prop_assert_eq!(c.cnot_count(), if k == 0 { 0 } else { 1 << k });
            let u = circuit_to_unitary(&c).unwrap();
            let d = m.dense_matrix(k + 1).unwrap();
            prop_assert!(frobenius(&(u.matrix() - d)) < 1e-12);
        }
    }
}
