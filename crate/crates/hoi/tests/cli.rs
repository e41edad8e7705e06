//! End-to-end tests of the `hoi` binary: every subcommand, deterministic
//! outputs, and one-line diagnostics on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hoi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_passes_on_a_clean_build() {
    let out = hoi(&["verify", "--systems", "40"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("all 11 invariant checks passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn gradients_on_the_latent_factor_fixture_are_all_positive_significant() {
    let input = fixture("latent_factor.csv");
    let out = hoi(&[
        "gradients",
        "--input",
        input.to_str().unwrap(),
        "--order",
        "1",
        "--n-boot",
        "200",
        "--seed",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let data_lines: Vec<&str> = text.lines().filter(|l| l.starts_with("grad1[")).collect();
    assert_eq!(data_lines.len(), 5);
    for line in data_lines {
        let fields: Vec<&str> = line.split(',').collect();
        let estimate: f64 = fields[1].parse().unwrap();
        assert!(estimate > 0.0, "line: {line}");
        assert_eq!(fields[4], "true", "line: {line}");
    }
}

#[test]
fn identical_config_and_seed_give_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("latent_factor.csv");
    let run = |path: &Path| {
        let out = hoi(&[
            "gradients",
            "--input",
            input.to_str().unwrap(),
            "--order",
            "2",
            "--n-boot",
            "150",
            "--seed",
            "9",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    };
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run(&a);
    run(&b);
    let bytes_a = fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    // The config echoes the output path, so compare after normalizing it.
    let text_a = String::from_utf8(bytes_a).unwrap().replace("a.json", "X");
    let text_b = fs::read_to_string(&b).unwrap().replace("b.json", "X");
    assert_eq!(text_a, text_b);
}

#[test]
fn ising_sweep_default_emits_64_rows_of_seven_gradients() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = hoi(&["ising-sweep", "--output", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# schema_version: 1");
    assert!(lines.next().unwrap().starts_with("# config: "));
    assert_eq!(
        lines.next().unwrap(),
        "beta,grad1_0,grad1_1,grad1_2,grad1_3,grad1_4,grad1_5,grad1_6"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 64);
    let first: Vec<f64> = rows[0].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(first.len(), 8);
    assert_eq!(first[0], 0.0);
    assert!(first[1..].iter().all(|v| v.abs() < 1e-9));
}

#[test]
fn ising_sweep_accepts_a_couplings_file() {
    let dir = tempfile::tempdir().unwrap();
    let couplings = dir.path().join("j.csv");
    // A frustrated triangle.
    fs::write(&couplings, "0,1,-1\n1,0,1\n-1,1,0\n").unwrap();
    let out = hoi(&[
        "ising-sweep",
        "--couplings",
        couplings.to_str().unwrap(),
        "--beta-steps",
        "4",
        "--quantities",
        "grad1,oinfo",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("beta,grad1_0,grad1_1,grad1_2,oinfo"));
}

#[test]
fn oinfo_on_discrete_gate_data_recovers_plus_one_bit() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("copy.csv");
    let mut text = String::from("a,b,c\n");
    for t in 0..40 {
        let bit = t % 2;
        text.push_str(&format!("{bit},{bit},{bit}\n"));
    }
    fs::write(&input, text).unwrap();
    let out = hoi(&[
        "oinfo",
        "--input",
        input.to_str().unwrap(),
        "--backend",
        "discrete",
        "--n-boot",
        "100",
        "--seed",
        "4",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["report"]["label"], "omega[a,b,c]");
    let estimate = doc["report"]["estimate"].as_f64().unwrap();
    assert!((estimate - 1.0).abs() < 1e-9);
}

#[test]
fn scan_csv_format_writes_three_provenance_stamped_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("scan.csv");
    let input = fixture("latent_factor.csv");
    let out = hoi(&[
        "scan",
        "--input",
        input.to_str().unwrap(),
        "--order",
        "3",
        "--n-boot",
        "100",
        "--format",
        "csv",
        "--output",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    for section in ["multiplets", "variables", "pairs"] {
        let path = dir.path().join(format!("scan.{section}.csv"));
        let text = fs::read_to_string(&path).unwrap();
        assert!(
            text.starts_with("# schema_version: 1\n# config: "),
            "{section}"
        );
    }
    let pairs = fs::read_to_string(dir.path().join("scan.pairs.csv")).unwrap();
    assert!(pairs.contains("node_i,node_j,r_omega,s_omega"));
}

#[test]
fn log_returns_preprocessing_shortens_and_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("prices.csv");
    let mut text = String::from("DATE,p,q,r\n");
    let mut state = 9u64;
    for t in 0..50 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let jitter = (state >> 33) as f64 / (1u64 << 31) as f64;
        text.push_str(&format!(
            "2020-{t},{},{},{}\n",
            1.0 + 0.01 * t as f64 + 0.1 * jitter,
            2.0 + 0.02 * t as f64 + 0.2 * (1.0 - jitter),
            3.0 + 0.05 * ((t * 7) % 11) as f64 + 0.3 * jitter
        ));
    }
    fs::write(&input, &text).unwrap();
    let out = hoi(&[
        "oinfo",
        "--input",
        input.to_str().unwrap(),
        "--preprocess",
        "log-returns",
        "--n-boot",
        "100",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("dropped non-numeric index column 'DATE'"));

    // A non-positive price has no log return; the row is named.
    fs::write(&input, "DATE,p,q,r\nt0,1.0,2.0,3.0\nt1,-1.0,2.1,3.1\nt2,1.1,2.2,3.2\nt3,1.2,2.3,3.3\nt4,1.3,2.4,3.4\n").unwrap();
    let out = hoi(&[
        "oinfo",
        "--input",
        input.to_str().unwrap(),
        "--preprocess",
        "log-returns",
    ]);
    assert!(!out.status.success());
    let err = stderr_of(&out);
    assert!(
        err.contains("column 'p'") && err.contains("row 1"),
        "stderr: {err}"
    );
}

#[test]
fn bad_inputs_exit_nonzero_with_one_line_diagnostics() {
    let input = fixture("latent_factor.csv");

    let unknown = hoi(&[
        "gradients",
        "--input",
        input.to_str().unwrap(),
        "--columns",
        "f1,nope",
    ]);
    assert!(!unknown.status.success());
    let err = stderr_of(&unknown);
    assert_eq!(err.lines().count(), 1, "stderr: {err}");
    assert!(err.starts_with("error: unknown column 'nope'"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "a,b\n1.0,oops\n2.0,3.0\n").unwrap();
    let malformed = hoi(&["oinfo", "--input", bad.to_str().unwrap()]);
    assert!(!malformed.status.success());
    assert!(stderr_of(&malformed).contains("cannot parse 'oops'"));

    let invalid_order = hoi(&[
        "scan",
        "--input",
        input.to_str().unwrap(),
        "--order",
        "5",
        "--n-boot",
        "100",
    ]);
    assert!(!invalid_order.status.success());
    assert!(stderr_of(&invalid_order).contains("scan order must be 3 or 4"));
}
