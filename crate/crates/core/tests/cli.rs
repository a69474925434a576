use std::path::PathBuf;
use std::process::Command;

use galoiskit::cli::{parse_poly, run, EXIT_CAP, EXIT_OK, EXIT_USAGE};
use galoiskit::field::{PrimeField, Rationals};
use galoiskit::poly::{Poly, QPoly};
use proptest::prelude::*;
use serde_json::Value;

/// (file stem, arguments after the program name)
const GOLDEN: &[(&str, &[&str])] = &[
    ("factor_x4_plus_4", &["factor", "x^4+4"]),
    ("factor_mod5", &["factor", "x^4-1", "--mod", "5"]),
    ("factor_half_mod7", &["factor", "1/2*x^2 - 1/2", "--mod", "7"]),
    ("factor_repeated", &["factor", "24*x^5 - 24*x^4 + 6*x^3 + 24*x^3*(x^2+1)"]),
    ("gal_cubic_table", &["gal", "x^3-2", "--table"]),
    ("gal_biquadratic_json", &["gal", "(x^2-2)*(x^2-3)", "--json"]),
    ("split_cubic", &["split", "x^3-2"]),
    ("solvable_quintic", &["solvable", "x^5-80*x+5"]),
    ("solvable_cubic", &["solvable", "x^3-2"]),
    ("cyclotomic_12", &["cyclotomic", "12"]),
    ("ngon_7", &["ngon", "7"]),
    ("ngon_17_json", &["ngon", "17", "--json"]),
    ("constructible_classical", &["constructible"]),
    ("constructible_trisect", &["constructible", "8x^3-6x-1"]),
    ("group_s4", &["group", "S4"]),
    ("group_gens", &["group", "(1 2 3 4)", "(1 3)"]),
    ("ff_2_4", &["ff", "2", "4"]),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

fn invoke(args: &[&str]) -> galoiskit::cli::Outcome {
    run(std::iter::once("galoiskit").chain(args.iter().copied()))
}

/// Set `GALOISKIT_BLESS=1` to rewrite the expected files.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("GALOISKIT_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in GOLDEN {
        let out = invoke(args);
        assert_eq!(out.code, EXIT_OK, "{name}: {}", out.stderr);
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if want != out.stdout {
            failures.push(format!("{name}:\n--- expected\n{want}--- got\n{}", out.stdout));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

fn binary(args: &[&str], cap_env: Option<&str>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galoiskit"));
    cmd.args(args).env_remove(galoiskit::cli::CAP_ENV);
    if let Some(v) = cap_env {
        cmd.env(galoiskit::cli::CAP_ENV, v);
    }
    cmd.output().unwrap()
}

#[test]
fn exit_codes() {
    let ok = binary(&["factor", "x^2-1"], None);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "(x - 1)*(x + 1)\n");

    for args in [&["factor", "x^"][..], &["frobnicate"], &["factor", "x", "--mod", "4"], &["ngon", "0"]] {
        let out = binary(args, None);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }

    let capped = binary(&["split", "x^5-2", "--cap", "10"], None);
    assert_eq!(capped.status.code(), Some(EXIT_CAP));
    assert!(capped.stdout.is_empty());

    // the environment variable is the fallback, the flag wins
    assert_eq!(binary(&["split", "x^5-2"], Some("10")).status.code(), Some(EXIT_CAP));
    assert_eq!(binary(&["split", "x^3-2", "--cap", "6"], Some("2")).status.code(), Some(EXIT_OK));
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = invoke(&full);
    let v: Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", out.stdout));
    (out.code, v)
}

#[test]
fn json_results() {
    let (code, v) = json(&["gal", "x^3-2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["command"], "gal");
    assert_eq!(v["input"], "x^3-2");
    let r = &v["result"];
    assert_eq!(r["order"], 6);
    assert_eq!(r["solvable"], true);
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let order = row["subgroup_order"].as_u64().unwrap();
        assert_eq!(order * row["index"].as_u64().unwrap(), 6);
        let p = parse_poly(row["fixed_minpoly"].as_str().unwrap(), &Rationals).unwrap();
        assert_eq!(p.deg() as u64, row["index"].as_u64().unwrap().max(1));
    }

    let (_, v) = json(&["ngon", "257"]);
    assert_eq!(v["result"]["constructible"], true);
    let (_, v) = json(&["ngon", "9"]);
    assert_eq!(v["result"]["constructible"], false);

    // output is stable and re-serializes to itself
    let out = invoke(&["--json", "factor", "x^6-1"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), out.stdout.trim_end());
}

#[test]
fn json_errors() {
    for (args, kind, code) in [
        (&["gal", "x^^2"][..], "parse", EXIT_USAGE),
        (&["split", "x^5-2", "--cap", "10"], "cap", EXIT_CAP),
    ] {
        let (c, v) = json(args);
        assert_eq!(c, code, "{args:?}");
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["input"], args[1]);
        assert_eq!(v["error"]["kind"], kind);
        assert!(v["error"]["message"].as_str().is_some_and(|m| !m.is_empty()));
        assert!(v.get("result").is_none());
    }
}

#[test]
fn factor_output_reparses() {
    for src in ["x^4+4", "x^6-1", "2*x^3 - 2*x", "x^5-80*x+5"] {
        let out = invoke(&["factor", src]);
        let parsed = parse_poly(out.stdout.trim(), &Rationals).unwrap();
        assert_eq!(parsed, parse_poly(src, &Rationals).unwrap(), "{src}");
    }
    let f7 = PrimeField::new(7).unwrap();
    let out = invoke(&["factor", "x^3 + 3*x + 2", "--mod", "7"]);
    let body = out.stdout.trim().trim_end_matches("(mod 7)").trim();
    assert_eq!(parse_poly(body, &f7).unwrap(), Poly::from_ints(f7, &[2, 3, 0, 1]));
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(c in prop::collection::vec((-50i64..=50, 1i64..=7), 1..=7)) {
        let coeffs = c
            .iter()
            .map(|&(n, d)| galoiskit::exactnum::Rat::new(n.into(), d.into()))
            .collect();
        let p = QPoly::from_rats(coeffs);
        let text = p.to_string();
        let back = parse_poly(&text, &Rationals).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }
}
