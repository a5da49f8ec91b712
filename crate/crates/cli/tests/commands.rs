use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsd_core::matcore::{phase_aligned_distance, read_matrix_file, UnitaryMatrix};
use tempfile::TempDir;

fn qsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsd"))
        .args(args)
        .env_remove("QSD_TOL")
        .output()
        .unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {report}"))
}

fn write_matrix(p: &Path, rows: &[&[(f64, f64)]]) {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            let e: Vec<String> = r.iter().map(|(a, b)| format!("[{a:?}, {b:?}]")).collect();
            format!("[{}]", e.join(", "))
        })
        .collect();
    fs::write(
        p,
        format!(
            "{{\"dim\": {}, \"entries\": [{}]}}",
            rows.len(),
            body.join(", ")
        ),
    )
    .unwrap();
}

#[test]
fn random_is_deterministic_per_seed() {
    let d = TempDir::new().unwrap();
    let (a, b, c) = (path(&d, "a.json"), path(&d, "b.json"), path(&d, "c.json"));
    for (p, seed) in [(&a, "42"), (&b, "42"), (&c, "43")] {
        assert!(qsd(&["random", "2", "--seed", seed, "--out", p])
            .status
            .success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let o = qsd(&["random", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error=range "));
}

#[test]
fn decompose_then_verify() {
    let d = TempDir::new().unwrap();
    let (m, c) = (path(&d, "m.json"), path(&d, "c.qasm"));
    assert!(qsd(&["random", "3", "--seed", "7", "--out", &m])
        .status
        .success());
    let o = qsd(&["decompose", &m, "--out", &c, "--check"]);
    assert!(o.status.success());
    let report = stdout(&o);
    assert_eq!(field(&report, "n_qubits"), "3");
    assert_eq!(field(&report, "cnot_count"), "24");
    assert_eq!(field(&report, "formula_count"), "24");
    assert_eq!(field(&report, "match"), "true");
    assert!(
        field(&report, "reconstruction_residual")
            .parse::<f64>()
            .unwrap()
            <= 1e-8
    );
    assert!(fs::read_to_string(&c).unwrap().starts_with("OPENQASM 2.0;"));

    let o = qsd(&["verify", &m, &c]);
    assert!(o.status.success());
    assert!(
        field(&stdout(&o), "reconstruction_residual")
            .parse::<f64>()
            .unwrap()
            <= 1e-8
    );
}

#[test]
fn gatelist_output_and_stdout_mode() {
    let d = TempDir::new().unwrap();
    let (m, g) = (path(&d, "m.json"), path(&d, "c.txt"));
    qsd(&["random", "2", "--seed", "1", "--out", &m]);
    let o = qsd(&["decompose", &m, "--format", "gatelist"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("qubits 2\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("cnot ")).count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cnot_count=3"));
    fs::write(&g, text).unwrap();
    assert!(qsd(&["verify", &m, &g]).status.success());
}

#[test]
fn identity_input() {
    let d = TempDir::new().unwrap();
    let m = path(&d, "id.json");
    let one = (1.0, 0.0);
    let zero = (0.0, 0.0);
    write_matrix(
        Path::new(&m),
        &[
            &[one, zero, zero, zero],
            &[zero, one, zero, zero],
            &[zero, zero, one, zero],
            &[zero, zero, zero, one],
        ],
    );
    let o = qsd(&["decompose", &m, "--out", &path(&d, "c.qasm"), "--check"]);
    assert!(o.status.success());
    assert!(
        field(&stdout(&o), "reconstruction_residual")
            .parse::<f64>()
            .unwrap()
            <= 1e-12
    );
}

#[test]
fn error_exit_codes() {
    let d = TempDir::new().unwrap();
    let bad = path(&d, "bad.json");
    write_matrix(
        Path::new(&bad),
        &[&[(1.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (1.0, 0.0)]],
    );
    let o = qsd(&["decompose", &bad]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error=non_unitary reason="));

    let junk = path(&d, "junk.json");
    fs::write(&junk, "{\"dim\": 2, \"entries\": [[[1, 0]]]}").unwrap();
    assert_eq!(qsd(&["decompose", &junk]).status.code(), Some(2));
    fs::write(&junk, "not json").unwrap();
    assert_eq!(qsd(&["decompose", &junk]).status.code(), Some(2));
    assert_eq!(
        qsd(&["decompose", &path(&d, "missing.json")]).status.code(),
        Some(1)
    );

    let three = path(&d, "three.json");
    write_matrix(
        Path::new(&three),
        &[
            &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
            &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        ],
    );
    assert_eq!(qsd(&["decompose", &three]).status.code(), Some(2));

    let m = path(&d, "m.json");
    qsd(&["random", "4", "--out", &m]);
    let o = qsd(&["decompose", &m, "--max-qubits", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(qsd(&["decompose", &m, "--tol", "-1"]).status.code() == Some(2));
}

#[test]
fn verify_against_empty_and_mismatched_circuits() {
    let d = TempDir::new().unwrap();
    let (m, empty, small) = (path(&d, "m.json"), path(&d, "e.txt"), path(&d, "s.txt"));
    qsd(&["random", "2", "--seed", "3", "--out", &m]);
    fs::write(&empty, "qubits 2\n").unwrap();
    let o = qsd(&["verify", &m, &empty]);
    assert_eq!(o.status.code(), Some(5));
    let r: f64 = field(&stdout(&o), "reconstruction_residual")
        .parse()
        .unwrap();
    let u = UnitaryMatrix::new(read_matrix_file(Path::new(&m)).unwrap()).unwrap();
    assert_eq!(
        r,
        phase_aligned_distance(&u, &UnitaryMatrix::identity(4)).unwrap()
    );

    fs::write(&small, "qubits 1\nrx 1 0.5\n").unwrap();
    let o = qsd(&["verify", &m, &small]);
    assert_eq!(o.status.code(), Some(6));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error=mismatch "));
}

#[test]
fn tolerance_from_environment() {
    let d = TempDir::new().unwrap();
    let (m, c) = (path(&d, "m.json"), path(&d, "c.qasm"));
    qsd(&["random", "2", "--out", &m]);
    qsd(&["decompose", &m, "--out", &c]);
    let o = Command::new(env!("CARGO_BIN_EXE_qsd"))
        .args(["verify", &m, &c])
        .env("QSD_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(field(&stdout(&o), "tolerance"), "1e-30");
}

#[test]
fn stats_table() {
    let o = qsd(&["stats", "4"]);
    assert!(o.status.success());
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(str::to_owned).collect())
        .collect();
    let counts: Vec<(&str, &str, &str)> = rows.iter().map(|r| (&*r[0], &*r[1], &*r[2])).collect();
    assert_eq!(
        counts,
        [("2", "3", "3"), ("3", "24", "24"), ("4", "120", "120")]
    );
    assert_eq!(qsd(&["stats", "1"]).status.code(), Some(1));
}
