//! `qsd`: decompose unitary matrix files into CNOT + rotation circuits.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsd_core::circuit::{
    circuit_to_unitary, export_gatelist, export_qasm, import_gatelist, import_qasm, Circuit,
    MAX_SIM_QUBITS,
};
use qsd_core::decomp::{qsd_with, QsdOptions, DEFAULT_MAX_QUBITS};
use qsd_core::matcore::{
    closest_unitary, haar_random_unitary, parse_matrix, phase_aligned_distance, unitarity_residual,
    write_matrix, UnitaryMatrix,
};
use qsd_core::{Error, Tolerances};

use report::{Failure, RunReport, EXIT_RANGE, EXIT_TOLERANCE};

#[derive(Parser)]
#[command(
    name = "qsd",
    version,
    about = "Quantum Shannon Decomposition of unitary matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Reconstruction bound [default: 1e-8·2ⁿ]; also relaxes the 1e-10 input unitarity check
    #[arg(long, env = "QSD_TOL", global = true, value_parser = positive)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a matrix file into a circuit
    Decompose {
        input: PathBuf,
        /// Circuit destination [default: standard output]
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Qasm)]
        format: Format,
        /// Rebuild the circuit's unitary and report the residual
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Write a Haar-random unitary in the matrix file format
    Random {
        n_qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination [default: standard output]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a matrix file with a circuit file (QASM or gate list)
    Verify {
        matrix: PathBuf,
        circuit: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Tabulate measured against predicted CNOT counts for n = 2..=N
    Stats {
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Qasm,
    Gatelist,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose {
            input,
            out,
            format,
            check,
            max_qubits,
            tol,
        } => decompose(&input, out.as_deref(), format, check, max_qubits, tol.tol),
        Command::Random {
            n_qubits,
            seed,
            out,
        } => random(n_qubits, seed, out.as_deref()),
        Command::Verify {
            matrix,
            circuit,
            tol,
        } => verify(&matrix, &circuit, tol.tol),
        Command::Stats { n_max, seed, tol } => stats(n_max, seed, tol.tol),
    };
    result.unwrap_or_else(|f| f.exit())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn residual_bound(n: usize, tol: Option<f64>) -> f64 {
    tol.unwrap_or(1e-8 * (1u64 << n) as f64)
}

/// Reads a matrix file and checks unitarity against `max(1e-10, tol)`.
/// Inputs that only pass the relaxed check are projected onto the nearest
/// unitary before decomposition.
fn load_unitary(path: &Path, tol: Option<f64>) -> Result<(UnitaryMatrix, UnitaryMatrix), Failure> {
    let m = parse_matrix(&read(path)?)?;
    let strict = Tolerances::default().unitarity;
    let original = UnitaryMatrix::with_tolerance(m.clone(), tol.map_or(strict, |t| t.max(strict)))?;
    original.n_qubits()?;
    let working = if unitarity_residual(&m) > strict {
        UnitaryMatrix::new(closest_unitary(&m))?
    } else {
        original.clone()
    };
    Ok((original, working))
}

fn reconstruct(u: &UnitaryMatrix, c: &Circuit) -> Result<f64, Failure> {
    if c.n_qubits() > MAX_SIM_QUBITS {
        return Err(Failure::new(
            "range",
            EXIT_RANGE,
            format!("residual check refused above {MAX_SIM_QUBITS} qubits"),
        ));
    }
    Ok(phase_aligned_distance(u, &circuit_to_unitary(c)?)?)
}

fn finish(r: &RunReport) -> ExitCode {
    print!("{r}");
    if r.within_tolerance() {
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "error=tolerance reason={:?}",
            format!(
                "residual {:e} exceeds {:e}",
                r.reconstruction_residual.unwrap_or(0.0),
                r.tolerance
            )
        );
        ExitCode::from(EXIT_TOLERANCE)
    }
}

fn decompose(
    input: &Path,
    out: Option<&Path>,
    format: Format,
    check: bool,
    max_qubits: usize,
    tol: Option<f64>,
) -> Outcome {
    let (original, working) = load_unitary(input, tol)?;
    let n = original.n_qubits()?;
    if check && n > MAX_SIM_QUBITS {
        return Err(Failure::new(
            "range",
            EXIT_RANGE,
            format!("--check refused above {MAX_SIM_QUBITS} qubits"),
        ));
    }
    let opts = QsdOptions {
        max_qubits,
        ..QsdOptions::default()
    };
    let start = Instant::now();
    let circuit = qsd_with(&working, &opts)?.circuit;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let text = match format {
        Format::Qasm => export_qasm(&circuit),
        Format::Gatelist => export_gatelist(&circuit),
    };
    let residual = if check {
        Some(reconstruct(&original, &circuit)?)
    } else {
        None
    };
    let report = RunReport {
        n_qubits: n,
        cnot_count: circuit.cnot_count(),
        total_gate_count: circuit.len(),
        reconstruction_residual: residual,
        tolerance: residual_bound(n, tol),
        elapsed_ms,
    };
    match out {
        Some(p) => {
            emit(Some(p), &text)?;
            Ok(finish(&report))
        }
        // circuit on stdout; report goes to stderr so the two do not interleave
        None => {
            emit(None, &text)?;
            eprint!("{report}");
            Ok(if report.within_tolerance() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_TOLERANCE)
            })
        }
    }
}

fn random(n: usize, seed: u64, out: Option<&Path>) -> Outcome {
    let u = haar_random_unitary(n, seed)?;
    emit(out, &write_matrix(u.matrix()))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_circuit(text: &str) -> Result<Circuit, Error> {
    if text.trim_start().starts_with("OPENQASM") {
        import_qasm(text)
    } else {
        import_gatelist(text)
    }
}

fn verify(matrix: &Path, circuit: &Path, tol: Option<f64>) -> Outcome {
    let (u, _) = load_unitary(matrix, tol)?;
    let c = parse_circuit(&read(circuit)?)?;
    let n = u.n_qubits()?;
    if c.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.n_qubits(),
        }
        .into());
    }
    let start = Instant::now();
    let residual = reconstruct(&u, &c)?;
    let report = RunReport {
        n_qubits: n,
        cnot_count: c.cnot_count(),
        total_gate_count: c.len(),
        reconstruction_residual: Some(residual),
        tolerance: residual_bound(n, tol),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(finish(&report))
}

fn stats(n_max: usize, seed: u64, tol: Option<f64>) -> Outcome {
    let cap = DEFAULT_MAX_QUBITS.min(MAX_SIM_QUBITS);
    if !(2..=cap).contains(&n_max) {
        return Err(Error::QubitRange {
            n: n_max,
            min: 2,
            max: cap,
        }
        .into());
    }
    println!(
        "{:>2} {:>9} {:>9} {:>12}",
        "n", "measured", "formula", "residual"
    );
    let mut ok = true;
    for n in 2..=n_max {
        let u = haar_random_unitary(n, seed)?;
        let c = qsd_with(&u, &QsdOptions::default())?.circuit;
        let residual = reconstruct(&u, &c)?;
        let row = RunReport {
            n_qubits: n,
            cnot_count: c.cnot_count(),
            total_gate_count: c.len(),
            reconstruction_residual: Some(residual),
            tolerance: residual_bound(n, tol),
            elapsed_ms: 0.0,
        };
        println!(
            "{n:>2} {:>9} {:>9} {residual:>12.3e}",
            row.cnot_count,
            row.formula_count()
        );
        ok &= row.count_matches() && row.within_tolerance();
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_TOLERANCE)
    })
}
