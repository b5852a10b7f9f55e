use std::io::Write;

use mirrorkit::ainfty::fixtures;
use mirrorkit_cli::main_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mirrorkit").chain(args.iter().copied());
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn quintic_rows_are_integral() {
    let rows = json(&["quintic", "--dmax", "5", "--json"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["n_int"], "2875");
    assert_eq!(rows[1]["n_virt"], "4876875/8");
    assert_eq!(rows[1]["n_int"], "609250");
    for row in rows {
        assert!(row["n_int"].as_str().unwrap().chars().all(|c| c.is_ascii_digit()));
    }
}

#[test]
fn empty_result_is_an_empty_array() {
    assert_eq!(run(&["quintic", "--dmax", "0", "--json"]).1, "[]\n");
    assert_eq!(json(&["plane-curves", "--dmax", "0", "--json"]), Value::Array(vec![]));
}

#[test]
fn eisenstein_text() {
    assert_eq!(run(&["eisenstein", "--k", "2", "--order", "2"]), (0, "1, -24, -72\n".into(), String::new()));
    let e4 = json(&["eisenstein", "--k", "4", "--order", "1", "--json"]);
    assert_eq!(e4["coeffs"], serde_json::json!(["1", "240"]));
}

#[test]
fn output_is_deterministic() {
    let args = ["hurwitz", "--genus", "2", "--dmax", "6", "--bruteforce", "--json"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let three = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.0, 0);
    assert_eq!(one, three);
    assert_eq!(run(&["fukaya-torus", "--json"]), run(&["fukaya-torus", "--json"]));
}

#[test]
fn hurwitz_fit_and_bruteforce() {
    let v = json(&["hurwitz", "--genus", "2", "--dmax", "10", "--fit", "--json"]);
    assert_eq!(v["g"], 2);
    assert_eq!(v["coeffs"][1], "2");
    assert_eq!(v["fit"]["E2^3"], "1/5184");
    assert_eq!(v["fit"]["E2*E4"], "-1/8640");
    assert_eq!(v["fit"]["E6"], "-1/12960");
    let v = json(&["hurwitz", "--dmax", "7", "--bruteforce", "--json"]);
    assert_eq!(v["bruteforce_agrees"], true);
    assert_eq!(v["bruteforce"][6], Value::Null);
}

#[test]
fn fit_needs_enough_coefficients() {
    let (code, _, err) = run(&["hurwitz", "--genus", "2", "--dmax", "4", "--fit"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn plane_curves_residual_audit() {
    let (code, out, _) = run(&["plane-curves", "--dmax", "5", "--residual"]);
    assert_eq!(code, 0);
    assert!(out.contains("87304"));
    assert!(out.contains("all 81 associativity residuals vanish"));
    let v = json(&["plane-curves", "--dmax", "3", "--residual", "--json"]);
    assert_eq!(v["rows"][2]["N_d"], "12");
    assert_eq!(v["residuals"], Value::Array(vec![]));
}

#[test]
fn ainfty_check_on_fixtures() {
    let good = temp_json(&fixtures::dual_numbers_twisted().to_json());
    let path = good.path().to_str().unwrap();
    let (code, out, _) = run(&["ainfty", "check", "--input", path, "--arity", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    let v = json(&["ainfty", "check", "--input", path, "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["twisted_cohomology"]["dims"]["P->Ce"], 1);

    let (name, bad) = fixtures::failing().into_iter().find(|(n, _)| *n == "missing_homotopy").unwrap();
    let bad = temp_json(&bad.to_json());
    let (code, out, _) = run(&["ainfty", "check", "--input", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1, "{name}: {out}");
    assert!(out.contains("FAIL  stasheff"));
}

#[test]
fn usage_errors_exit_two() {
    let garbage = temp_json("{ not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["eisenstein", "--k", "3"],
        vec!["quintic", "--dmax", "x"],
        vec!["hurwitz", "--genus", "1"],
        vec!["ainfty"],
        vec!["ainfty", "check"],
        vec!["ainfty", "check", "--input", "/nonexistent/doc.json"],
        vec!["ainfty", "check", "--input", garbage.path().to_str().unwrap()],
        vec!["fukaya-torus", "--slopes", "1/0,0/1"],
        vec!["fukaya-torus", "--slopes", "1/0,2/0,1/1"],
        vec!["fukaya-torus", "--slopes", "1/0,1/0,1/1"],
        vec!["fukaya-torus", "--offsets", "0,a,0"],
        vec!["fukaya-torus", "--area", "-1"],
        vec!["fukaya-torus", "--tol", "0"],
    ];
    for args in cases {
        let (code, out, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("fukaya-torus"));
}

#[test]
fn fukaya_tensor_has_bounds() {
    let v = json(&[
        "fukaya-torus",
        "--slopes",
        "1/0,0/1,1/1",
        "--offsets",
        "0,0,1/2",
        "--area",
        "1.0",
        "--tol",
        "1e-12",
        "--json",
    ]);
    let entries = v["m2"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    let e = &entries[0];
    assert!(e["value"]["bound"].as_f64().unwrap() < 1e-11);
    assert_eq!(v["m2"]["hom13"]["points"][0], serde_json::json!(["1/2", "0"]));
}

#[test]
fn selftests_pass() {
    for module in ["quintic", "plane-curves", "hurwitz", "eisenstein", "fukaya-torus", "ainfty"] {
        let (code, out, err) = run(&[module, "--selftest"]);
        assert_eq!(code, 0, "{module}: {out}{err}");
        assert!(!out.contains("FAIL"), "{out}");
    }
    let v = json(&["ainfty", "check", "--selftest", "--json"]);
    assert_eq!(v["pass"], true);
}
