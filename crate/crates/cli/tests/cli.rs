use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psc-moduli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psc-moduli"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn rho_example() {
    let doc = json(&["rho", "--order", "2", "--q", "1", "--s", "1"]);
    assert_eq!(doc["results"]["values"][0]["value"], "1/4");
    assert_eq!(doc["command"], "rho");
}

#[test]
fn distinguish_example() {
    let doc = json(&["distinguish", "--p", "5", "--q", "1", "--qprime", "3"]);
    assert_eq!(doc["results"]["distinguishable"], true);
    assert_eq!(doc["results"]["matches"], Value::Array(vec![]));
}

#[test]
fn swtot_example() {
    let doc = json(&["swtot", "--scenario", "paper-default"]);
    assert_eq!(doc["results"]["total"], 1);
    assert_eq!(doc["results"]["stabilized"], true);
    assert_eq!(doc["results"]["crossings"].as_object().unwrap().len(), 1);
    let doc = json(&["swtot", "--power", "3"]);
    assert_eq!(doc["results"]["power_total"], 1);
}

#[test]
fn eta_formulas_through_the_cli() {
    for formula in ["direct", "half-roots", "odd-p"] {
        let doc = json(&[
            "eta",
            "--p",
            "3",
            "--q",
            "1",
            "--s",
            "1",
            "--formula",
            formula,
        ]);
        assert_eq!(doc["results"]["values"][0]["value"], "-1/4", "{formula}");
    }
    let doc = json(&["eta", "--p", "5", "--q", "3", "--fourier"]);
    let fourier = doc["results"]["fourier"].as_array().unwrap();
    assert_eq!(fourier.len(), 4);
    assert!(fourier.iter().all(|f| f["all_equal"] == true));
}

#[test]
fn approximate_fields_are_marked() {
    let doc = json(&["rho", "--order", "5", "--q", "2", "--approx"]);
    let row = &doc["results"]["values"][1];
    assert_eq!(row["value"], "2/5");
    assert!((row["value_approx"].as_f64().unwrap() - 0.4).abs() < 1e-12);
    assert_eq!(doc["provenance"]["approximate_fields"], true);
    let exact = json(&["rho", "--order", "5", "--q", "2"]);
    assert!(exact["results"]["values"][1].get("value_approx").is_none());
}

#[test]
fn documents_round_trip() {
    let commands: [&[&str]; 9] = [
        &["rho", "--order", "7", "--q", "3"],
        &["eta", "--p", "5", "--q", "1", "--fourier"],
        &["distinguish", "--p", "7", "--q", "3", "--qprime", "5"],
        &["sweep", "--p", "5"],
        &["components", "--p", "7"],
        &["swtot"],
        &["orbit", "--approx"],
        &[
            "metabolizer",
            "--vectors",
            "1,0,1,0,0,0;0,1,0,0,1,0;1,0,1,1,0,1",
        ],
        &[
            "dimension",
            "--c1-square",
            "-1",
            "--euler",
            "5",
            "--signature",
            "-1",
        ],
    ];
    for args in commands {
        let out = run(args);
        assert!(out.status.success(), "{args:?}");
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(
            run(args).stdout,
            out.stdout,
            "{args:?} is not deterministic"
        );
    }
}

#[test]
fn paper_metabolizer_and_dimensions() {
    let doc = json(&[
        "metabolizer",
        "--vectors",
        "1,0,1,0,0,0;0,1,0,0,1,0;1,0,1,1,0,1",
    ]);
    assert_eq!(doc["results"]["is_metabolizer"], true);
    let doc = json(&["metabolizer", "--bound", "1"]);
    assert_eq!(doc["results"]["is_metabolizer"], true);
    let doc = json(&[
        "dimension",
        "--c1-square",
        "-1",
        "--euler",
        "5",
        "--signature",
        "-1",
    ]);
    assert_eq!(doc["results"]["dimension"], -2);
}

#[test]
fn sweep_is_symmetric_with_matching_diagonal() {
    let doc = json(&["sweep", "--p", "7"]);
    let related = doc["results"]["related"].as_array().unwrap();
    for (i, row) in related.iter().enumerate() {
        assert_eq!(row[i], true);
        for (j, cell) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(cell, &related[j][i]);
        }
    }
}

#[test]
fn exit_status_contract() {
    let parameter: [&[&str]; 8] = [
        &["distinguish", "--p", "4", "--q", "1", "--qprime", "3"],
        &["distinguish", "--p", "5", "--q", "5", "--qprime", "1"],
        &["eta", "--p", "5", "--q", "2"],
        &["rho", "--order", "6", "--q", "4"],
        &["eta", "--p", "4", "--q", "1", "--formula", "odd-p"],
        &[
            "dimension",
            "--c1-square",
            "0",
            "--euler",
            "5",
            "--signature",
            "-1",
        ],
        &["swtot", "--omega0", "1,1,1"],
        &["rho", "--order", "5", "--q", "1", "--bogus", "1"],
    ];
    for args in parameter {
        assert_eq!(code(args), 2, "{args:?}");
    }
    assert_eq!(code(&["swtot", "--omega0", "1,1/2,1/2"]), 3);
    assert_eq!(
        code(&["swtot", "--omega0", "1,14/1000,9999/10000", "--n-max", "40"]),
        3
    );
    assert_eq!(code(&["swtot", "--omega0", "1,1/2,x"]), 2);
    let out = run_env(
        &["eta", "--p", "11", "--q", "1"],
        "PSC_MODULI_MAX_ORDER",
        "12",
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PSC_MODULI_MAX_ORDER"));
    let out = run_env(
        &["metabolizer", "--bound", "2"],
        "PSC_MODULI_SEARCH_BUDGET",
        "5",
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn experimental_even_p() {
    let doc = json(&[
        "--experimental",
        "distinguish",
        "--p",
        "4",
        "--q",
        "1",
        "--qprime",
        "1",
    ]);
    assert_eq!(doc["inputs"]["experimental"], true);
    assert!(doc["results"]["matches"]
        .as_array()
        .unwrap()
        .contains(&Value::from(1)));
}

#[test]
fn scenario_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shifted.toml");
    std::fs::write(
        &path,
        r#"
gram = [[1, 0, 0], [0, -1, 0], [0, 0, -1]]
positive_class = [1, 0, 0]
isometry = [[9, -4, -8], [-4, 1, 4], [8, -4, -7]]
c1 = [1, 1, 1]
omega0 = ["1", "1/5", "1/3"]
sw_x = 3
window = 8
"#,
    )
    .unwrap();
    let doc = json(&["swtot", "--scenario", path.to_str().unwrap()]);
    // The inverse map reverses the orbit.
    assert_eq!(doc["results"]["total"], -3);
    assert_eq!(doc["inputs"]["window"], 8);
    assert_eq!(
        code(&["swtot", "--scenario", "/nonexistent/scenario.toml"]),
        2
    );
}

#[test]
fn plot_disc_svg() {
    let out = run(&["plot-disc", "--from", "-3", "--to", "3"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches(r#"class="point""#).count(), 7);
    assert_eq!(svg.matches(r#"class="crossing""#).count(), 1);
    assert_eq!(
        run(&["plot-disc", "--from", "-3", "--to", "3"]).stdout,
        out.stdout
    );

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("disc.svg");
    let doc = json(&["plot-disc", "--output", path.to_str().unwrap()]);
    assert_eq!(doc["results"]["crossings"], serde_json::json!([-1]));
    assert_eq!(
        std::fs::read(&path).unwrap().len() as u64,
        doc["results"]["bytes"].as_u64().unwrap()
    );
}

/// Floats only appear under `*_approx` keys; the schema's top-level shape holds.
fn check_shape(doc: &Value) {
    fn walk(v: &Value, key: &str) {
        match v {
            Value::Number(n) if !key.ends_with("_approx") => {
                assert!(n.is_i64() || n.is_u64(), "float under {key}")
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, key)),
            Value::Object(m) => m.iter().for_each(|(k, x)| walk(x, k)),
            _ => {}
        }
    }
    let top: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(top, ["command", "inputs", "provenance", "results"]);
    let prov: Vec<&String> = doc["provenance"].as_object().unwrap().keys().collect();
    assert_eq!(
        prov,
        ["approximate_fields", "formulas", "toolkit", "version"]
    );
    walk(&doc["results"], "results");
}

#[test]
fn exact_values_are_never_floats() {
    for args in [
        &["rho", "--order", "12", "--q", "5", "--approx"][..],
        &["eta", "--p", "5", "--q", "3", "--approx"],
        &["orbit", "--approx"],
        &["swtot"],
        &["sweep", "--p", "3"],
    ] {
        check_shape(&json(args));
    }
}
