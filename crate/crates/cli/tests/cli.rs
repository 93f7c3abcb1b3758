use std::process::{Command, Output};

fn mwcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwcalc"))
        .args(args)
        .env_remove("MWCALC_SEED")
        .env_remove("MWCALC_FIELD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn eval_product() {
    let o = mwcalc(&["eval", "--field", "F5", "[2]*[3]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[2,3]");
}

#[test]
fn eval_normal_form_vanishes_in_degree_two() {
    let o = mwcalc(&["eval", "--field", "F5", "--normal", "[2]*[3]"]);
    assert_eq!(stdout(&o), "0");
}

#[test]
fn residue_with_pi() {
    let o = mwcalc(&["residue", "--field", "F3(t)", "--at", "t", "--pi", "t", "[t,-1]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[-1] @ t*");
}

#[test]
fn residue_plain_depends_on_uniformizer() {
    let o = mwcalc(&["residue", "--field", "F5(t)", "--at", "t", "--pi", "2*t", "--plain", "[t,-1]"]);
    assert_eq!(stdout(&o), "[-1] + eta*[-1,3]");
}

#[test]
fn reciprocity_run() {
    let o = mwcalc(&["reciprocity", "--field", "F3(t)", "--samples", "100", "--seed", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "PASS 100/100");
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = mwcalc(&["suite", "split-exactness", "--seed", "9"]);
    let b = mwcalc(&["suite", "split-exactness", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_mwcalc"))
        .args(["suite", "split-exactness"])
        .env("MWCALC_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn named_suites_pass() {
    for s in ["mw-relations", "split-exactness", "d-squared-p1"] {
        let o = mwcalc(&["suite", s, "--seed", "42"]);
        assert!(o.status.success(), "{s}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mwcalc(&["eval", "--field", "F5", "[0]"]).status.code(), Some(2));
    assert_eq!(mwcalc(&["eval", "--field", "F4", "1"]).status.code(), Some(2));
    assert_eq!(mwcalc(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(mwcalc(&["eval", "1"]).status.code(), Some(2));
    let o = mwcalc(&["eval", "--field", "F5", "[2] + 1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}

#[test]
fn field_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mwcalc"))
        .args(["eval", "eta*h"])
        .env("MWCALC_FIELD", "F7")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn complex_json_schema() {
    let o = mwcalc(&[
        "complex", "--format", "json", "--field", "F5", "--scheme", "P1", "--twist", "O(-1)", "d",
        "{generic: [t]}",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "mwcalc/1");
    assert_eq!(v["scheme"], "P1");
    assert_eq!(v["twist"], "O(-1)");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts[0]["point"], "t");
    assert_eq!(pts[0]["expr"], "1");
    assert_eq!(pts[0]["twistWord"], "t* ⊗ O(-1)");
}

#[test]
fn degree_of_quadratic_point() {
    let o = mwcalc(&["degree", "--field", "F3", "{t^2+1: 1}"]);
    assert_eq!(stdout(&o), "2 + eta*[-1]");
}

#[test]
fn euler_class() {
    let o = mwcalc(&["euler", "--field", "F3", "--d", "2", "--section", "t^2+1"]);
    let s = stdout(&o);
    assert!(s.contains("chow degree: 2"), "{s}");
    assert!(s.contains("mw degree: 2 + eta*[-1]"), "{s}");
}

#[test]
fn h0_membership_exit_codes() {
    let closed = mwcalc(&["complex", "--field", "F5", "--scheme", "A1", "h0", "{generic: [2]}"]);
    assert_eq!(stdout(&closed), "[2]");
    let open = mwcalc(&["complex", "--field", "F5", "--scheme", "A1", "h0", "{generic: [t]}"]);
    assert_eq!(open.status.code(), Some(1));
}

#[test]
fn transfer_from_f9() {
    let o = mwcalc(&["transfer", "--field", "F3", "--ext", "t^2+1", "1"]);
    assert_eq!(stdout(&o), "2 + eta*[-1]");
}
