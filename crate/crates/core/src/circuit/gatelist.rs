//! Plain-text gate list: a `qubits <n>` line followed by one gate per line.
//!
//! ```text
//! qubits 2
//! ry 1 0.25
//! cnot 1 2
//! phase -0.5
//! ```
//!
//! Angles use Rust's shortest round-trip formatting, so import is exact.

use super::{Circuit, Gate};
use crate::matcore::Axis;
use crate::{Error, Result};

pub fn export_gatelist(c: &Circuit) -> String {
    let mut s = format!("qubits {}\n", c.n_qubits());
    for g in c.gates() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

pub fn import_gatelist(text: &str) -> Result<Circuit> {
    let err = |no: usize, what: String| Error::Parse(format!("gatelist line {no}: {what}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (no, first) = lines.next().ok_or_else(|| err(0, "empty input".into()))?;
    let n = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["qubits", k] => k
            .parse()
            .map_err(|_| err(no, format!("bad qubit count {k:?}")))?,
        _ => return Err(err(no, "expected `qubits <n>`".into())),
    };
    let mut c = Circuit::new(n);
    for (no, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let int = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| err(no, format!("bad qubit {t:?}")))
        };
        let real = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| err(no, format!("bad angle {t:?}")))
        };
        let g = match toks[..] {
            ["cnot", a, b] => Gate::Cnot {
                control: int(a)?,
                target: int(b)?,
            },
            ["rx", q, a] => Gate::rotation(Axis::X, int(q)?, real(a)?),
            ["ry", q, a] => Gate::rotation(Axis::Y, int(q)?, real(a)?),
            ["rz", q, a] => Gate::rotation(Axis::Z, int(q)?, real(a)?),
            ["phase", a] => Gate::GlobalPhase { angle: real(a)? },
            _ => return Err(err(no, format!("unrecognized gate {l:?}"))),
        };
        c.push(g).map_err(|e| err(no, e.to_string()))?;
    }
    Ok(c)
}
