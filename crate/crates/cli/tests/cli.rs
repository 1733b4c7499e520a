use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn proof(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "proofs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cmv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    cmv(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = cmv(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn four_elements_give_one_algebra() {
    let (c, v) = json(&["enumerate", "--size", "4"]);
    assert_eq!(c, 0);
    assert_eq!(v["count"], 1);
    let (_, v) = json(&["enumerate", "--size", "3"]);
    assert_eq!(v["count"], 0);
}

#[test]
fn tautology_verdicts() {
    let a4 = fixture("a4.json");
    assert_eq!(code(&["logic", "taut", "--algebra", &a4, "--formula", "(v <| v) -> v"]), 0);
    assert_eq!(code(&["logic", "taut", "--algebra", &a4, "--formula", "v -> !v"]), 1);
    assert_eq!(code(&["logic", "taut", "--algebra", "mcnaughton", "--formula", "v + !v"]), 0);
    assert_eq!(code(&["logic", "taut", "--algebra", "mcnaughton", "--formula", "v + v"]), 1);
}

#[test]
fn broken_file_reports_witness() {
    let (c, v) = json(&["validate", &fixture("broken.json")]);
    assert_eq!(c, 1);
    assert_eq!(v["valid"], false);
    assert!(v["violation"]["witness"].is_array());
    let (c, v) = json(&["validate", &fixture("a4.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["kind"], "cmv");
    assert!(v["incomparable_pair"].is_array());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["enumerate", "--size", "4", "--frobnicate"]), 2);
    assert_eq!(code(&["validate", "/nonexistent/algebra.json"]), 2);
    assert_eq!(code(&["logic", "taut", "--algebra", "a4", "--formula", "v ->"]), 2);
    assert_eq!(code(&["chain", "1"]), 2);
    assert_eq!(code(&["simple", "chain:3"]), 2);
    assert_eq!(code(&["quotient", "a4", "--ideal", "1"]), 2);
    assert_eq!(code(&["enumerate", "--size", "4", "--format", "tsv"]), 2);
    let out = cmv(&["validate", "/nonexistent/algebra.json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/algebra.json"));
}

#[test]
fn reports_are_reproducible() {
    let args = ["logic", "lindenbaum", "--algebra", "a4", "--samples", "20", "--format", "json"];
    assert_eq!(cmv(&args).stdout, cmv(&args).stdout);
    let seeded = ["mcn", "closure", "--ideal", "boundary", "--seed", "7", "--format", "json"];
    assert_eq!(cmv(&seeded).stdout, cmv(&seeded).stdout);
    let seq = ["ideals", "restricted:3", "--format", "json", "--sequential"];
    let par = ["ideals", "restricted:3", "--format", "json"];
    assert_eq!(cmv(&seq).stdout, cmv(&par).stdout);
}

#[test]
fn structure_commands() {
    let (c, v) = json(&["simple", "func:3"]);
    assert_eq!((c, v["cmv_ideals"].as_array().unwrap().len()), (0, 2));
    assert_eq!(code(&["simple", "restricted:3"]), 1);

    let (_, v) = json(&["stabilizer", "func:3", "--b", "boolean"]);
    assert_eq!(v["report"]["quotient_size"], 4);
    let (_, v) = json(&["stabilizer", "func:3", "--b", "constants"]);
    assert_eq!(v["report"]["quotient_size"], 27);

    let (c, v) = json(&["classify-subset", "a4", "--subset", "0"]);
    assert_eq!((c, v["is_cmv_ideal"].clone()), (0, Value::Bool(true)));
    let (c, _) = json(&["classify-subset", "a4", "--subset", "0,1"]);
    assert_eq!(c, 1);

    let (_, v) = json(&["tilde", "chain:3"]);
    assert_eq!((v["size"].clone(), v["full"].clone()), (27.into(), true.into()));
    let (_, v) = json(&["funcalg", "chain:4", "--preserve", "0,3"]);
    assert_eq!(v["size"], 64);
    assert_eq!(code(&["cayley", "a4"]), 0);
    assert_eq!(code(&["zeros", "func:3"]), 0);
}

#[test]
fn mcnaughton_commands() {
    let out = cmv(&["mcn", "eval", "v + v", "--at", "1/3"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2/3");
    let inline = r#"{"points":[["0","0"],["1/2","1"],["1","1"]]}"#;
    let (_, v) = json(&["mcn", "compose", inline, "v . v"]);
    assert_eq!(v["membership"]["in_m1"], true);
    assert_eq!(code(&["mcn", "member", r#"{"points":[["0","1/2"],["1","1/2"]]}"#]), 1);
    assert_eq!(code(&["mcn", "member", "v . !v", "--ideal", "boundary"]), 0);
    assert_eq!(code(&["mcn", "op", "frobnicate", "v", "v"]), 2);

    let out = cmv(&["mcn", "plot", "v", "--resolution", "2", "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "x\ty\tx_decimal\ty_decimal\n0\t0\t0.000000\t0.000000\n1/2\t1/2\t0.500000\t0.500000\n1\t1\t1.000000\t1.000000\n"
    );
}

#[test]
fn module_commands() {
    assert_eq!(code(&["module", "a4", "power:2:2"]), 0);
    assert_eq!(code(&["module", "a4", "chain:3"]), 1);
    for kind in ["reduct", "evaluation", "constants", "power", "restriction"] {
        assert_eq!(code(&["module", "check", "--canonical", kind, "--algebra", "a4"]), 0, "{kind}");
    }
    assert_eq!(
        code(&["module", "check", "--canonical", "m1", "--algebra", "chain:5", "--samples", "20"]),
        0
    );
    assert_eq!(code(&["module", "check"]), 2);
}

#[test]
fn logic_commands() {
    for name in ["identity.prf", "distribute.prf", "negation.prf"] {
        assert_eq!(code(&["logic", "prove", &proof(name)]), 0, "{name}");
    }
    let (c, v) = json(&["logic", "prove", &fixture("bad_mp.prf")]);
    assert_eq!((c, v["failed_step"].clone()), (1, 4.into()));
    let (_, v) = json(&["logic", "match", "--formula", "v -> (v -> v)"]);
    assert_eq!(v["matches"][0]["axiom"], 1);
    assert_eq!(code(&["logic", "match", "--formula", "v"]), 1);
    assert_eq!(code(&["logic", "equiv", "--algebra", "mcnaughton", "v + v", "!(!v . !v)"]), 0);
    assert_eq!(code(&["logic", "equiv", "--algebra", "a4", "v", "!v"]), 1);
    let out = cmv(&["logic", "eval", "--algebra", "a4", "--formula", "v"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[0,1]");
}
