//! Three-CNOT realization of `exp(i(α·XX + β·YY + γ·ZZ))`.

use std::f64::consts::FRAC_PI_4;

use super::{Circuit, Gate};
use crate::decomp::CanonicalParams;

/// Exact circuit for the canonical two-qubit gate, global phase included.
pub fn canonical_gate_circuit(p: &CanonicalParams) -> Circuit {
    let gates = vec![
        Gate::Rz {
            qubit: 2,
            angle: FRAC_PI_4,
        },
        Gate::Cnot {
            control: 2,
            target: 1,
        },
        Gate::Rz {
            qubit: 1,
            angle: p.gamma - FRAC_PI_4,
        },
        Gate::Ry {
            qubit: 2,
            angle: FRAC_PI_4 - p.alpha,
        },
        Gate::Cnot {
            control: 1,
            target: 2,
        },
        Gate::Ry {
            qubit: 2,
            angle: p.beta - FRAC_PI_4,
        },
        Gate::Cnot {
            control: 2,
            target: 1,
        },
        Gate::Rz {
            qubit: 1,
            angle: -FRAC_PI_4,
        },
        Gate::GlobalPhase { angle: FRAC_PI_4 },
    ];
    Circuit::from_gates(2, gates).expect("fixed two-qubit template")
}
