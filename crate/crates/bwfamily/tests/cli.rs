//! End-to-end tests of the binary: exit-code policy and JSON stability.
//!
//! Exit codes: 0 success, 1 negative mathematical verdict, 2 usage or parse
//! error, 3 internal inconsistency. A failing mathematical check must never
//! surface as a usage error.

use std::process::{Command, Output};

fn bwfamily(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwfamily"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn cyclotomic_prints_shared_format() {
    let out = bwfamily(&["cyclotomic", "12"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "x^4-x^2+1");

    let out = bwfamily(&["cyclotomic", "1"]);
    assert_eq!(stdout(&out).trim(), "x-1");

    let out = bwfamily(&["cyclotomic", "8"]);
    assert_eq!(stdout(&out).trim(), "x^4+1");

    // bad k is a usage error
    let out = bwfamily(&["cyclotomic", "0"]);
    assert_eq!(code(&out), 2);
    let out = bwfamily(&["cyclotomic", "banana"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_exit_codes_follow_the_verdict() {
    // BN: a complete family, exit 0
    let out = bwfamily(&[
        "construct",
        "--k",
        "12",
        "--D",
        "3",
        "--r",
        "36*x^4+36*x^3+18*x^2+6*x+1",
        "--zeta",
        "6*x^2",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("q = 36*x^4+36*x^3+24*x^2+6*x+1"));
    assert!(text.contains("rho = 1"));
    assert!(text.contains("ideal: yes"));

    // k=4 D=2: constructs fine but fails condition (ii) -> exit 1
    let out = bwfamily(&[
        "construct",
        "--k",
        "4",
        "--D",
        "2",
        "--r",
        "x^4+1",
        "--zeta",
        "x^2",
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("q = 1/4*x^4+x^2+1/4"));

    // unsupported (k, D) with no --sqrt -> negative verdict, not usage
    let out = bwfamily(&[
        "construct",
        "--k",
        "5",
        "--D",
        "7",
        "--r",
        "x^4+x^3+x^2+x+1",
        "--zeta",
        "x",
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    // reducible r -> exit 1 carrying a factor witness
    let out = bwfamily(&[
        "construct",
        "--k",
        "4",
        "--D",
        "1",
        "--r",
        "x^2-1",
        "--zeta",
        "x",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("x-1"), "{}", stdout(&out));

    // invalid zeta image -> exit 1
    let out = bwfamily(&[
        "construct",
        "--k",
        "4",
        "--D",
        "1",
        "--r",
        "x^4+1",
        "--zeta",
        "x",
    ]);
    assert_eq!(code(&out), 1);

    // unparsable polynomial -> usage error
    let out = bwfamily(&[
        "construct",
        "--k",
        "4",
        "--D",
        "1",
        "--r",
        "x^2+(",
        "--zeta",
        "x",
    ]);
    assert_eq!(code(&out), 2);

    // missing required flag -> clap usage error
    let out = bwfamily(&["construct", "--k", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn validate_builtin_families() {
    let out = bwfamily(&["validate", "bn"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("rho = 1"));

    let out = bwfamily(&["validate", "example-k4-d2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("(ii) q represents primes: FAIL"));

    let out = bwfamily(&["validate", "example-k6-d1"]);
    assert_eq!(code(&out), 1);

    // unknown name or missing file is a usage error
    let out = bwfamily(&["validate", "no-such-family"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn validate_tampered_document() {
    let dir = std::env::temp_dir().join("bwfamily-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tampered.json");
    // BN with q shifted by one: conditions (iii) and (v) must fail
    std::fs::write(
        &path,
        r#"{
            "k": 12, "D": 3,
            "t": "6*x^2+1",
            "r": "36*x^4+36*x^3+18*x^2+6*x+1",
            "q": "36*x^4+36*x^3+24*x^2+6*x+2",
            "y": "6*x^2+4*x+1",
            "h": "1"
        }"#,
    )
    .unwrap();
    let out = bwfamily(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("(iii) r divides q + 1 - t: FAIL (nonzero remainder 1)"));
    assert!(text.contains("(v) D y^2 = 4q - t^2 solvable: FAIL"));

    // malformed JSON is a usage error
    let bad = dir.join("broken.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = bwfamily(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn instantiate_range_and_bits() {
    let out = bwfamily(&["instantiate", "bn", "--x-start", "1", "--x-end", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.contains("t = 7, r = 97, q = 103, y = 11, h = 1"),
        "{text}"
    );

    // a scan with no hits is a negative verdict
    let out = bwfamily(&[
        "instantiate",
        "example-k4-d2",
        "--x-start",
        "-100",
        "--x-end",
        "100",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("q non-integral: 201"), "{text}");

    // deterministic fixed-seed bits scan
    let out = bwfamily(&[
        "instantiate",
        "bn",
        "--bits",
        "32",
        "--count",
        "1",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("x0 = -107"), "{}", stdout(&out));

    // both range styles at once, or neither, is a usage error
    let out = bwfamily(&["instantiate", "bn"]);
    assert_eq!(code(&out), 2);
    let out = bwfamily(&[
        "instantiate",
        "bn",
        "--x-start",
        "1",
        "--x-end",
        "2",
        "--bits",
        "32",
        "--count",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    // count = 0 rejected
    let out = bwfamily(&["instantiate", "bn", "--bits", "32", "--count", "0"]);
    assert_eq!(code(&out), 2);
    // bits < 8 rejected
    let out = bwfamily(&["instantiate", "bn", "--bits", "4", "--count", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reproduce_targets() {
    for name in ["bn", "example-k4-d2", "example-k6-d1"] {
        let out = bwfamily(&["reproduce", name]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
        assert!(stdout(&out).contains("reconstructed = registry"));
    }

    let out = bwfamily(&["reproduce", "theorem1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1/4*x^2+5/4*x+1/4"));
    assert!(text.contains("constant * square"));

    let out = bwfamily(&["reproduce", "theorem3-scan"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no ideal complete family"));

    let out = bwfamily(&["reproduce", "unknown-target"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_output_round_trips_and_sorts_keys() {
    let out = bwfamily(&["validate", "bn", "--json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // parse -> print -> parse is the identity on the document
    let reprinted = serde_json::to_string_pretty(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reprinted).unwrap();
    assert_eq!(value, reparsed);
    assert_eq!(value["diagnosis"]["complete_family"], true);
    assert_eq!(value["diagnosis"]["rho"], "1");
    assert_eq!(value["family"]["q"], "36*x^4+36*x^3+24*x^2+6*x+1");

    let out = bwfamily(&[
        "instantiate",
        "bn",
        "--x-start",
        "-5",
        "--x-end",
        "5",
        "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["scanned"], 11);
    let hits = value["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["x0"] == "1"));
    // big integers serialize as decimal strings
    assert!(hits.iter().all(|h| h["r"].is_string()));

    let out = bwfamily(&[
        "construct",
        "--k",
        "12",
        "--D",
        "3",
        "--r",
        "36*x^4+36*x^3+18*x^2+6*x+1",
        "--zeta",
        "6*x^2",
        "--json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["diagnosis"]["ideal"], true);
}
