//! End-to-end tests of the binary: exit codes, format equivalence, and
//! byte-stable golden output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfind"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn axioms_exit_codes() {
    let ok = run(&["axioms", fixture("taft3.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let corrupt = run(&["axioms", fixture("custom_corrupt.json").to_str().unwrap()]);
    assert_eq!(corrupt.status.code(), Some(1));
    // The failing check is named on the data stream.
    assert!(stdout(&corrupt).contains("antipode-left"));

    let broken = run(&["axioms", fixture("broken.json").to_str().unwrap()]);
    assert_eq!(broken.status.code(), Some(2));
    // Parse errors carry position info.
    let err = String::from_utf8(broken.stderr).unwrap();
    assert!(err.contains("line"), "no position info: {err}");

    let missing = run(&["axioms", "/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(4));

    let usage = run(&["axioms"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn indicator_methods_agree_and_values_match() {
    let out = run(&[
        "indicator",
        fixture("taft2.json").to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "8",
        "--method",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = records.as_array().unwrap();
    // Three methods for each of 8 levels.
    assert_eq!(arr.len(), 24);
    for rec in arr {
        let n = rec["n"].as_i64().unwrap();
        assert_eq!(
            rec["value_pretty"].as_str().unwrap(),
            n.to_string(),
            "nu_n of the dimension-4 algebra is n"
        );
    }
}

#[test]
fn indicator_quantum_group_squares() {
    let out = run(&[
        "indicator",
        fixture("uq3.json").to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "6",
        "--method",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for rec in records.as_array().unwrap() {
        let n = rec["n"].as_i64().unwrap();
        assert_eq!(rec["value_pretty"].as_str().unwrap(), (n * n).to_string());
    }
}

#[test]
fn indicator_json_csv_equivalence() {
    let path = fixture("z6.json");
    let json_out = run(&[
        "indicator",
        path.to_str().unwrap(),
        "--from",
        "-6",
        "--to",
        "6",
        "--method",
        "trace",
        "--format",
        "json",
    ]);
    let csv_out = run(&[
        "indicator",
        path.to_str().unwrap(),
        "--from",
        "-6",
        "--to",
        "6",
        "--method",
        "trace",
        "--format",
        "csv",
    ]);
    assert_eq!(json_out.status.code(), Some(0));
    assert_eq!(csv_out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let mut from_json = Vec::new();
    for rec in json.as_array().unwrap() {
        from_json.push((
            rec["n"].as_i64().unwrap(),
            rec["method"].as_str().unwrap().to_string(),
            rec["value"]["conductor"].as_u64().unwrap(),
            rec["value"]["coeffs"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap().to_string())
                .collect::<Vec<_>>()
                .join(";"),
        ));
    }
    let csv = stdout(&csv_out);
    let mut from_csv = Vec::new();
    for line in csv.lines().skip(2) {
        // n,method,conductor,coeffs,"pretty"
        let parts: Vec<&str> = line.splitn(5, ',').collect();
        from_csv.push((
            parts[0].parse::<i64>().unwrap(),
            parts[1].to_string(),
            parts[2].parse::<u64>().unwrap(),
            parts[3].to_string(),
        ));
    }
    assert_eq!(from_json, from_csv);
}

#[test]
fn indicator_output_is_byte_stable() {
    let path = fixture("taft2.json");
    let args = [
        "indicator",
        path.to_str().unwrap(),
        "--from",
        "1",
        "--to",
        "4",
        "--method",
        "trace",
        "--format",
        "csv",
    ];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second);
    // Golden content, frozen: nu_n = n with rational values.
    let expected = "\
# algebra: {\"family\":\"taft\",\"n\":2,\"omega_power\":1}\n\
n,method,conductor,coeffs,value_pretty\n\
1,trace,1,1,\"1\"\n\
2,trace,1,2,\"2\"\n\
3,trace,1,3,\"3\"\n\
4,trace,1,4,\"4\"\n";
    assert_eq!(first, expected);
}

#[test]
fn indicator_out_file_round_trip() {
    let dir = std::env::temp_dir().join("hopfind-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("records.json");
    let run_out = run(&[
        "indicator",
        fixture("taft2.json").to_str().unwrap(),
        "--to",
        "3",
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(run_out.status.code(), Some(0));
    let content = std::fs::read_to_string(&out_path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 3);
}

#[test]
fn minpoly_reports_taft2() {
    let out = run(&[
        "minpoly",
        fixture("taft2.json").to_str().unwrap(),
        "--sequence",
        "nu",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["min_poly"]["pretty"].as_str().unwrap(), "X^2 - 2*X + 1");
    assert_eq!(v["e"].as_u64(), Some(1));
    assert_eq!(v["m"].as_u64(), Some(2));
    assert_eq!(v["root_of_unity_certificate"].as_u64(), Some(1));
}

#[test]
fn minpoly_t_sequence_reports_exponent() {
    let out = run(&[
        "minpoly",
        fixture("z6.json").to_str().unwrap(),
        "--sequence",
        "t",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["exp"].as_str(), Some("6"));
    assert_eq!(v["qexp"].as_u64(), Some(6));
}

#[test]
fn decompose_taft2_auto() {
    let out = run(&[
        "decompose",
        fixture("taft2.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["e"].as_u64(), Some(1));
    assert_eq!(v["m"].as_u64(), Some(2));
    // c_0 = 0, c_1 = 1 since nu_n = n = binom(n, 1).
    assert_eq!(v["c"][0][0]["coeffs"][0].as_str(), Some("0"));
    assert_eq!(v["c"][1][0]["coeffs"][0].as_str(), Some("1"));
}

#[test]
fn qfunction_prints_value() {
    let out = run(&["qfunction", "2", "2", "3", "--conductor", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");
    let json = run(&[
        "qfunction",
        "1",
        "1",
        "1",
        "--conductor",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["value_pretty"].as_str(), Some("z3"));
}

#[test]
fn crosscheck_identities() {
    let out = run(&[
        "crosscheck",
        fixture("taft3.json").to_str().unwrap(),
        "--identities",
        "dual,op,double,integrality",
        "--from",
        "1",
        "--to",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Tensor multiplicativity on T_4 (x) kZ/2.
    let out = run(&[
        "crosscheck",
        fixture("taft2_tensor_z2.json").to_str().unwrap(),
        "--identities",
        "tensor",
        "--from",
        "1",
        "--to",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Reflection on the symmetric group: values are rational, so the
    // reflection holds literally.
    let out = run(&[
        "crosscheck",
        fixture("z6.json").to_str().unwrap(),
        "--identities",
        "reflection",
        "--from",
        "1",
        "--to",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let bad = run(&[
        "crosscheck",
        fixture("taft3.json").to_str().unwrap(),
        "--identities",
        "nonsense",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn wrong_root_order_is_a_usage_error() {
    // zeta_4^2 = -1 has order 2, not 4.
    let dir = std::env::temp_dir().join("hopfind-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_order.json");
    std::fs::write(&path, r#"{"family": "taft", "n": 4, "omega_power": 2}"#).unwrap();
    let out = run(&["axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("order"), "{err}");
}

#[test]
fn bound_exceeded_exit_code() {
    // A custom algebra carries no family bound; a tiny explicit bound
    // cannot fit the recurrence and must exit 3.
    let out = run(&[
        "minpoly",
        fixture("custom_z2.json").to_str().unwrap(),
        "--sequence",
        "nu",
        "--bound",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
}

#[test]
fn observations_go_to_stderr_only() {
    let out = run(&[
        "indicator",
        fixture("taft2.json").to_str().unwrap(),
        "--to",
        "4",
        "--observations",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("observation:"));
    assert!(!stdout(&out).contains("observation:"));
}
