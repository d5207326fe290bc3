use std::process::Command;

use denum_cli::families::Family;
use denum_cli::report::{table_report, CSV_COLUMNS};
use denum_core::denumerant::LShapePreference;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("denum").chain(args.iter().copied());
    let code = denum_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["denumerant", "--gens", "7,11,59", "--m", "4465"]), "2232\n");
    assert_eq!(ok(&["lshape", "--gens", "5,7,11"]), "L(5,3,2,2) delta=1 theta=1\n");
    assert_eq!(ok(&["sums", "--sign", "plus", "--s", "1", "--t", "3", "--q", "12", "--N", "30"]), "105\n");
}

#[test]
fn other_subcommands() {
    assert_eq!(ok(&["denumerant", "--gens", "2,4,6", "--m", "20"]), "14\n");
    assert_eq!(ok(&["denumerant", "--gens", "2,4,6", "--m", "21"]), "0\n");
    assert_eq!(ok(&["denumerant", "--gens", "5,7,11", "--m", "87", "--lshape-pref", "h2"]), "13\n");
    assert_eq!(ok(&["factorizations", "--gens", "5,7,11", "--m", "30"]), "6 0 0\n1 2 1\n");
    assert_eq!(ok(&["apery", "--gens", "5,7,11", "--m", "5"]), "0 11 7 18 14\n");
    assert_eq!(ok(&["lshape", "--gens", "7,11,18"]).lines().count(), 2);
    assert_eq!(ok(&["sums", "--sign", "minus", "--s", "5", "--t", "3", "--q", "7", "--N", "4"]), "-3\n");

    let v: serde_json::Value = serde_json::from_str(&ok(&["denumerant", "--gens", "5,7,11", "--m", "87", "--json"])).unwrap();
    assert_eq!(v["d"], "13");
    assert_eq!(v["trace"]["case_id"], "iii.4.a2.b2");
    assert_eq!(v["trace"]["a_m"], "3");
    assert_eq!(v["trace"]["basic"], serde_json::json!(["2", "0", "7"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["denumerant", "--gens", "7,11,59"]).0, 1);
    assert_eq!(run(&["denumerant", "--gens", "7,11", "--m", "3"]).0, 1);
    assert_eq!(run(&["denumerant", "--gens", "7,11,59", "--m", "1e3"]).0, 1);
    assert_eq!(run(&["bench", "--family", "T9", "--k-range", "1..2"]).0, 1);
    assert_eq!(run(&["bench", "--family", "T1", "--k-range", "3..2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);

    let (code, _, err) = run(&["lshape", "--gens", "4,6,9"]);
    assert_eq!(code, 2);
    assert!(err.contains("pairwise coprime"));
    assert_eq!(run(&["denumerant", "--gens", "7,11,59", "--m", "-1"]).0, 2);
    assert_eq!(run(&["denumerant", "--gens", "11,7,59", "--m", "10"]).0, 2);
    assert_eq!(run(&["sums", "--sign", "plus", "--s", "1", "--t", "3", "--q", "0", "--N", "3"]).0, 2);
}

#[test]
fn large_decimal_arguments() {
    let m = "190035222340650307226923642236";
    let t = Family::T2.semigroup(10).unwrap();
    let gens = format!("{},{},{}", t.a, t.b, t.c);
    assert_eq!(ok(&["denumerant", "--gens", &gens, "--m", m]), "95017611170325153613461821113\n");
}

#[test]
fn bench_rows() {
    let d = |fam: &str, ks: &str| -> Vec<String> {
        let out = ok(&["bench", "--family", fam, "--k-range", ks]);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), CSV_COLUMNS.join(","));
        lines.map(|l| l.split(',').nth(3).unwrap().to_string()).collect()
    };
    assert_eq!(d("T1", "1..3"), ["2232", "17069589", "103828843654"]);
    assert_eq!(d("T5", "1..2"), ["29", "2878"]);
    assert_eq!(d("T2", "4"), ["257355397315"]);

    let v: serde_json::Value = serde_json::from_str(&ok(&["bench", "--family", "T2", "--k-range", "4..4", "--json"])).unwrap();
    assert_eq!(v[0]["m"], "514710794634");
    assert_eq!(v[0]["gens"], serde_json::json!(["2401", "14641", "14642"]));
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(4);
                f.join(",")
            })
            .collect()
    };
    let args = ["bench", "--family", "T3", "--k-range", "1..6", "--lshape-pref", "h2"];
    assert_eq!(strip(ok(&args)), strip(ok(&args)));
    let h1 = strip(ok(&["bench", "--family", "T3", "--k-range", "1..6"]));
    let values = |rows: &[String]| rows.iter().map(|r| r.split(',').nth(3).unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(values(&h1), values(&strip(ok(&args))));
}

#[test]
fn bench_writes_csv_file() {
    let path = std::env::temp_dir().join(format!("denum-bench-{}.csv", std::process::id()));
    let out = ok(&["bench", "--family", "T6", "--k-range", "1..3", "--csv", path.to_str().unwrap()]);
    assert!(out.is_empty());
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_COLUMNS);
    let ds: Vec<String> = reader.records().map(|r| r.unwrap()[3].to_string()).collect();
    assert_eq!(ds, ["20", "1174", "58650"]);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exhausted_budget_gives_partial_report() {
    let report = table_report(Family::T1, 1..=3, LShapePreference::H1, Some(std::time::Duration::ZERO)).unwrap();
    assert!(report.records.is_empty());
    assert_eq!(report.truncated_at, Some(1));
    let (code, out, err) = run(&["bench", "--family", "T1", "--k-range", "1..3", "--budget-secs", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), CSV_COLUMNS.join(","));
    assert!(err.contains("budget"));
}

#[test]
fn verify_small_sweep() {
    let out = ok(&["verify", "--max-c", "12"]);
    assert!(out.contains("mismatches 0"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&ok(&["verify", "--max-c", "10", "--json"])).unwrap();
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    assert!(v["enumerated"].as_u64().unwrap() > 0);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_denum")).args(["denumerant", "--gens", "1,7,8", "--m", "39"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "20\n");
    let out = Command::new(env!("CARGO_BIN_EXE_denum")).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
