//! End-to-end CLI checks: exit codes, output determinism, witness
//! verification through files.

use std::path::Path;
use std::process::{Command, Output};

fn qmlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmlen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_codes_cover_the_contract() {
    // 0: conclusive exact length
    let out = qmlen(&["length", "--group", "perm:4", "--element", "(0 1 2)"]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("Exact(2)"));

    // 2: search radius exhausted below the true length
    let out = qmlen(&[
        "length", "--group", "free:1", "--element", "a1 a1 a1 a1", "--radius", "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stdout(&out).contains("AtLeast(4)"));

    // 1: malformed element
    let out = qmlen(&["length", "--group", "perm:4", "--element", "(0 9)"]);
    assert_eq!(exit_code(&out), 1);

    // 1: usage error from the argument parser
    let out = qmlen(&["length", "--group", "perm:4"]);
    assert_eq!(exit_code(&out), 1);

    // 3: the element is conjugate to its inverse, the method gives nothing
    let out = qmlen(&[
        "table", "--group", "sl2z", "--element", "[[2,1],[1,1]]", "--qm", "rademacher",
        "--kind", "torsion", "--n-max", "3",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stdout(&out).contains("no bound"));
}

#[test]
fn identity_length_is_zero() {
    let out = qmlen(&["length", "--group", "sl2z", "--element", "[[1,0],[0,1]]"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("Exact(0)"));
}

#[test]
fn table_json_and_csv_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |json: &Path, csv: &Path| {
        let out = qmlen(&[
            "table", "--group", "psl2z", "--element", "[[1,1],[0,1]]", "--qm", "rademacher",
            "--kind", "torsion", "--n-max", "6",
            "--json", json.to_str().unwrap(),
            "--csv", csv.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    };
    let (j1, c1) = (dir.path().join("a.json"), dir.path().join("a.csv"));
    let (j2, c2) = (dir.path().join("b.json"), dir.path().join("b.csv"));
    run(&j1, &c1);
    run(&j2, &c2);
    assert_eq!(
        std::fs::read(&j1).unwrap(),
        std::fs::read(&j2).unwrap(),
        "JSON output must be byte-identical"
    );
    assert_eq!(std::fs::read(&c1).unwrap(), std::fs::read(&c2).unwrap());
    let json = std::fs::read_to_string(&j1).unwrap();
    assert!(json.contains("\"qmlen.table/1\""));
    // every rational appears in exact p/q form
    assert!(json.contains("7/6"));
}

#[test]
fn witness_round_trip_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let out = qmlen(&[
        "witness", "--group", "sl2z", "--element", "[[2,1],[1,1]]",
        "--json", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));

    let out = qmlen(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verification: ok"));

    // tamper with a factor element: product no longer matches
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("[[0,1],[-1,0]]", "[[0,1],[-1,1]]", 1);
    assert_ne!(text, tampered, "expected the witness to contain an order-4 factor");
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, &tampered).unwrap();
    let out = qmlen(&["verify", bad.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 4);
    assert!(stdout(&out).contains("product mismatch") || stdout(&out).contains("order claim"));

    // corrupt an order claim: first failing claim is reported by index
    let wrong_order = text.replacen("\"order\": 4", "\"order\": 2", 1);
    let bad2 = dir.path().join("wrong_order.json");
    std::fs::write(&bad2, &wrong_order).unwrap();
    let out = qmlen(&["verify", bad2.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 4);
    assert!(stdout(&out).contains("order claim failed at index"));

    // schema violation: exit 1 with a JSON-path diagnostic
    let bad3 = dir.path().join("schema.json");
    std::fs::write(&bad3, "{\"schema\": \"qmlen.witness/1\", \"group\": \"sl2z\"}").unwrap();
    let out = qmlen(&["verify", bad3.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn qm_eval_prints_exact_rationals() {
    let out = qmlen(&[
        "qm-eval", "--group", "sl2z", "--qm", "dedekind-phi", "--element", "[[1,1],[0,1]]",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("= 1/1"), "{text}");
    assert!(text.contains("homogeneous: false"));
}

#[test]
fn defect_search_stays_within_declared_bounds() {
    let out = qmlen(&[
        "defect-search", "--group", "sl2z", "--qm", "dedekind-phi", "--radius", "3",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("declared upper bound: 3/1"));

    let out = qmlen(&[
        "defect-search", "--group", "free:2", "--qm", "brooks:a1 a2", "--radius", "3",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stdout(&out));
}

#[test]
fn dehn_twist_table_matches_formula() {
    let out = qmlen(&[
        "table", "--dehn-genus", "2", "--dehn-twists", "1", "--n-max", "5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("31/30"), "{text}");
    assert!(text.contains("1/15"), "{text}");
}
