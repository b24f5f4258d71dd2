//! End-to-end tests spawning the built binary: report shape, exit
//! codes, determinism, environment overrides, and input round-trips.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn luroth(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_luroth"));
    cmd.args(args);
    // Isolate from the ambient environment.
    cmd.env_remove("LUROTH_PRIMES");
    cmd
}

fn run(args: &[&str]) -> Output {
    luroth(args).output().expect("spawn luroth")
}

fn parse_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad report JSON ({e}): stdout={:?} stderr={:?}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn terracini_report_has_schema_claim_and_defect() {
    let out = run(&["terracini", "--kind", "segre-veronese", "--n", "4", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = parse_report(&out);
    assert_eq!(rep["schema"], json!(1));
    assert_eq!(rep["command"], json!("terracini"));
    assert_eq!(rep["claim"], json!("secant-dimension"));
    assert_eq!(rep["agreement"], json!("agreed"));
    assert_eq!(rep["passed"], json!(true));
    assert_eq!(rep["result"]["defect"], json!(1));
    assert_eq!(rep["result"]["computed_affine"], json!(29));
    assert_eq!(rep["result"]["pair_ranks"].as_array().unwrap().len(), 3);
    assert_eq!(rep["config"]["retry_cap"], json!(10));
}

#[test]
fn identical_config_gives_byte_identical_report_minus_timing() {
    let strip_timing = |out: &Output| -> Vec<String> {
        String::from_utf8(out.stdout.clone())
            .unwrap()
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"elapsed_ms\""))
            .map(str::to_owned)
            .collect()
    };
    let a = run(&["delta", "--n", "4", "--seeds", "11"]);
    let b = run(&["delta", "--n", "4", "--seeds", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_timing(&a), strip_timing(&b));
    // A different seed changes the result.
    let c = run(&["delta", "--n", "4", "--seeds", "12"]);
    assert_ne!(strip_timing(&a), strip_timing(&c));
}

#[test]
fn input_tensor_round_trips_through_generic_rank() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tensor.json");
    let tensor = json!({
        "kind": "sym",
        "summands": [{"u": [1, "1/2", 3], "v": [1, 0, "2/3"]}],
    });
    std::fs::File::create(&path)
        .unwrap()
        .write_all(tensor.to_string().as_bytes())
        .unwrap();
    let out = run(&["generic-rank", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = parse_report(&out);
    // A single decomposable summand always has contraction rank 2.
    assert_eq!(rep["result"]["rank"], json!(2));
    assert_eq!(rep["agreement"], json!("exact"));
    assert_eq!(rep["result"]["field"], json!({"kind": "rational"}));
}

#[test]
fn gon_input_round_trips_forms_and_holds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lines.json");
    let line = |a: i64, b: i64, c: i64| {
        json!({"degree": 1, "coeffs": [[1, 0, 0, a], [0, 1, 0, b], [0, 0, 1, c]]})
    };
    let lines = json!({"lines": [line(1, 0, 0), line(0, 1, 0), line(0, 0, 1), line(1, 1, 1)]});
    std::fs::File::create(&path)
        .unwrap()
        .write_all(lines.to_string().as_bytes())
        .unwrap();
    let out = run(&["gon", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = parse_report(&out);
    assert_eq!(rep["result"]["holds"], json!(true));
    assert_eq!(rep["result"]["degree"], json!(3));
    // det(diag(x, y, z) + w J) with w = x + y + z: the expansion is
    // yz(x+y+z) + xz(x+y+z) + xy(x+y+z) + xyz, whose x y z coefficient
    // is 3 + 1 = 4.
    let det = rep["result"]["det"]["coeffs"].as_array().unwrap();
    let xyz = det.iter().find(|e| e[0] == json!(1) && e[1] == json!(1) && e[2] == json!(1));
    assert_eq!(xyz.unwrap()[3], json!("4"));
}

#[test]
fn darboux_report_sample_replays_as_input() {
    let out = run(&["darboux", "--n", "3", "--seeds", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = parse_report(&out);
    assert_eq!(rep["result"]["vertices_vanish"], json!(true));
    assert_eq!(rep["result"]["vertices"].as_array().unwrap().len(), 6);
    // The echoed sample is a valid input file (entries are residues,
    // replayed here over the rationals).
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample.json");
    std::fs::write(&path, rep["result"]["sample"].to_string()).unwrap();
    let replay = run(&["darboux", "--input", path.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0), "{}", String::from_utf8_lossy(&replay.stderr));
    assert_eq!(parse_report(&replay)["result"]["vertices_vanish"], json!(true));
}

#[test]
fn environment_variable_overrides_default_primes() {
    let mut cmd = luroth(&["numerology", "--r", "2", "--n", "4"]);
    cmd.env("LUROTH_PRIMES", "1000003");
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let rep = parse_report(&out);
    assert_eq!(rep["config"]["primes"], json!([1000003]));
    // The flag wins over the environment.
    let mut cmd = luroth(&["numerology", "--r", "2", "--n", "4", "--primes", "2147483647"]);
    cmd.env("LUROTH_PRIMES", "1000003");
    let rep = parse_report(&cmd.output().unwrap());
    assert_eq!(rep["config"]["primes"], json!([2147483647u64]));
}

#[test]
fn usage_errors_exit_2() {
    // Unknown subcommand (clap) and invalid parameters (ours).
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["delta"]).status.code(), Some(2), "needs --n or --input");
    assert_eq!(
        run(&["terracini", "--kind", "segre", "--n", "4", "--k", "5", "--primes", "4"])
            .status
            .code(),
        Some(2),
        "4 is not a valid modulus"
    );
    let mut cmd = luroth(&["numerology", "--r", "2", "--n", "4"]);
    cmd.env("LUROTH_PRIMES", "not-a-prime");
    assert_eq!(cmd.output().unwrap().status.code(), Some(2));
    // spanning-list needs odd n.
    assert_eq!(run(&["spanning-list", "--n", "4"]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["numerology", "--r", "2", "--n", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep["result"]["even_theta_h0_zero"], json!("36"));
    assert_eq!(rep["result"]["barth_product"], json!("54"));
    assert_eq!(rep["result"]["dim_m_sp"], json!(13));
}

#[test]
fn numerology_serializes_large_counts_as_strings() {
    let out = run(&["numerology", "--r", "2", "--n", "10"]);
    let rep = parse_report(&out);
    // genus C(9,2) = 36: counts far beyond u64 must survive as strings.
    assert_eq!(rep["result"]["genus"], json!(36));
    let count = rep["result"]["even_theta_count"].as_str().unwrap();
    assert!(count.len() > 20, "expected a huge decimal string, got {count}");
}

#[test]
fn strassen_identity_accepts_explicit_slices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("slices.json");
    let tensor = json!({
        "kind": "segre",
        "slices": [
            [[1, 2], [3, 4]],
            [[1, 0], [0, 1]],
            [[0, 1], [1, 0]],
        ],
    });
    std::fs::write(&path, tensor.to_string()).unwrap();
    let out = run(&["strassen-identity", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = parse_report(&out);
    assert_eq!(rep["result"]["identity_holds"], json!(true));
    assert_eq!(rep["result"]["scalar_corollary_holds"], json!(true));
    // A singular middle slice violates the precondition: usage error.
    let singular = json!({
        "kind": "segre",
        "slices": [
            [[1, 2], [3, 4]],
            [[1, 1], [1, 1]],
            [[0, 1], [1, 0]],
        ],
    });
    std::fs::write(&path, singular.to_string()).unwrap();
    assert_eq!(run(&["strassen-identity", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}
