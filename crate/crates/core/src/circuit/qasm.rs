//! OpenQASM 2.0 export and the matching importer.
//!
//! Qubit `k` is `q[k-1]`. `R_a(θ) = exp(iθσ_a)` is written as `ra(-2θ)` in the
//! QASM convention. Global phase has no QASM gate and is kept in a
//! `// global_phase <θ>` comment so the importer can restore it.

use std::fmt::Write;

use super::{Circuit, Gate};
use crate::matcore::Axis;
use crate::{Error, Result};

const HEADER: [&str; 2] = ["OPENQASM 2.0;", "include \"qelib1.inc\";"];

fn num(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn export_qasm(c: &Circuit) -> String {
    let mut s = String::new();
    for line in HEADER {
        s.push_str(line);
        s.push('\n');
    }
    let _ = writeln!(s, "qreg q[{}];", c.n_qubits());
    for g in c.gates() {
        let _ = match *g {
            Gate::Cnot { control, target } => {
                writeln!(s, "cx q[{}],q[{}];", control - 1, target - 1)
            }
            Gate::GlobalPhase { angle } => writeln!(s, "// global_phase {}", num(angle)),
            _ => {
                let (axis, q, angle) = g.as_rotation().expect("rotation gate");
                writeln!(s, "r{axis}({}) q[{}];", num(-2.0 * angle), q - 1)
            }
        };
    }
    s
}

fn parse_err(line: usize, what: &str) -> Error {
    Error::Parse(format!("qasm line {line}: {what}"))
}

fn qubit(tok: &str, n: usize, line: usize) -> Result<usize> {
    let inner = tok
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, &format!("expected q[i], got {tok:?}")))?;
    let i: usize = inner
        .parse()
        .map_err(|_| parse_err(line, &format!("bad qubit index {inner:?}")))?;
    if i >= n {
        return Err(parse_err(line, &format!("qubit {i} outside q[{n}]")));
    }
    Ok(i + 1)
}

/// Reads the subset of OpenQASM 2.0 produced by [`export_qasm`]; whitespace
/// may vary.
pub fn import_qasm(text: &str) -> Result<Circuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let squash = |l: &str| l.split_whitespace().collect::<String>();
    for h in HEADER {
        let (no, l) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        if squash(l) != squash(h) {
            return Err(parse_err(no, &format!("expected {h:?}")));
        }
    }
    let (no, l) = lines.next().ok_or_else(|| parse_err(0, "missing qreg"))?;
    let compact: String = l.split_whitespace().collect();
    let n: usize = compact
        .strip_prefix("qregq[")
        .and_then(|t| t.strip_suffix("];"))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(no, "expected qreg q[n];"))?;
    let mut c = Circuit::new(n);
    for (no, l) in lines {
        if let Some(rest) = l.strip_prefix("//") {
            let mut it = rest.split_whitespace();
            let (Some("global_phase"), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err(no, "unexpected comment"));
            };
            let angle = v.parse().map_err(|_| parse_err(no, "bad global phase"))?;
            c.push(Gate::GlobalPhase { angle })?;
            continue;
        }
        let compact: String = l.split_whitespace().collect();
        let body = compact
            .strip_suffix(';')
            .ok_or_else(|| parse_err(no, "missing ';'"))?;
        let gate = if let Some(args) = body.strip_prefix("cx") {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| parse_err(no, "cx needs two qubits"))?;
            Gate::Cnot {
                control: qubit(a, n, no)?,
                target: qubit(b, n, no)?,
            }
        } else {
            let axis = match body.get(..3) {
                Some("rx(") => Axis::X,
                Some("ry(") => Axis::Y,
                Some("rz(") => Axis::Z,
                _ => return Err(parse_err(no, &format!("unsupported statement {l:?}"))),
            };
            let (val, q) = body[3..]
                .split_once(')')
                .ok_or_else(|| parse_err(no, "unclosed parameter"))?;
            let v: f64 = val
                .parse()
                .map_err(|_| parse_err(no, &format!("bad angle {val:?}")))?;
            Gate::rotation(axis, qubit(q, n, no)?, -v / 2.0)
        };
        c.push(gate).map_err(|e| parse_err(no, &e.to_string()))?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Circuit {
        Circuit::from_gates(
            3,
            vec![
                Gate::Rx {
                    qubit: 1,
                    angle: 0.1234567890123,
                },
                Gate::Cnot {
                    control: 3,
                    target: 1,
                },
                Gate::Ry {
                    qubit: 2,
                    angle: -1.0e-7,
                },
                Gate::Rz {
                    qubit: 3,
                    angle: 2.5,
                },
                Gate::GlobalPhase { angle: -0.75 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn layout() {
        let s = export_qasm(&sample());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "OPENQASM 2.0;");
        assert_eq!(lines[1], "include \"qelib1.inc\";");
        assert_eq!(lines[2], "qreg q[3];");
        assert_eq!(lines[3], "rx(-2.46913578024600e-1) q[0];");
        assert_eq!(lines[4], "cx q[2],q[0];");
        assert_eq!(lines[7], "// global_phase -7.50000000000000e-1");
    }

    #[test]
    fn export_import_export_is_identical() {
        let s = export_qasm(&sample());
        let back = import_qasm(&s).unwrap();
        assert_eq!(export_qasm(&back), s);
    }

    #[test]
    fn whitespace_is_tolerated() {
        let s = "OPENQASM   2.0 ;\n\n include \"qelib1.inc\";\nqreg q[ 2 ];\n  cx q[0] , q[1] ;\nrz( 1.0e0 )  q[1];\n";
        let c = import_qasm(s).unwrap();
        assert_eq!(
            c.gates()[0],
            Gate::Cnot {
                control: 1,
                target: 2
            }
        );
        assert_eq!(
            c.gates()[1],
            Gate::Rz {
                qubit: 2,
                angle: -0.5
            }
        );
    }

    #[test]
    fn rejects_unknown_input() {
        let head = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n";
        for bad in [
            "h q[0];",
            "cx q[0],q[2];",
            "rz(pi) q[0];",
            "cx q[0],q[0];",
            "// hello",
            "rx(1.0) q[0]",
        ] {
            assert!(import_qasm(&format!("{head}{bad}\n")).is_err(), "{bad}");
        }
        assert!(import_qasm("qreg q[2];").is_err());
    }
}
