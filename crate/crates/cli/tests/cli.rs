use std::process::{Command, Output};

use serde_json::Value;

fn commhier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commhier"))
        .args(args)
        .env_remove("COMMHIER_LATTICE_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = commhier(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

#[test]
fn count_dihedral() {
    let (v, code) = json(&["count", "--group", "dihedral(6)", "--r", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["hom"], "2016");
    assert_eq!(v["group"], "dihedral(6)");
    assert_eq!(v["order"], 12);
}

#[test]
fn count_range_with_oracle() {
    let (v, code) = json(&[
        "count",
        "--group",
        "symmetric(3)",
        "--r",
        "1..4",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    let homs: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["hom"].as_str().unwrap())
        .collect();
    assert_eq!(homs, ["6", "18", "48", "126"]);
}

#[test]
fn prob_of_cyclic_is_one() {
    let (v, _) = json(&["prob", "--group", "cyclic(5)", "--r", "9"]);
    assert_eq!(v["P_r"], "1");
}

#[test]
fn spectrum_of_s3() {
    let (v, _) = json(&["spectrum", "--group", "symmetric(3)"]);
    assert_eq!(
        v["spectrum"],
        serde_json::json!([{"m": 2, "c": 1}, {"m": 3, "c": 3}, {"m": 6, "c": -3}])
    );
    assert_eq!(v["m_star"], 2);
    assert_eq!(v["pole_coeff"], "1/2");
}

#[test]
fn abelian_series_is_symbolic() {
    let (v, _) = json(&["spectrum", "--group", "abelian([2,2])"]);
    assert_eq!(v["spectrum"], serde_json::json!([]));
    assert_eq!(v["series"], "1/(1-z)");
    let (v, _) = json(&["series", "--group", "cyclic(3)", "--z", "1/2"]);
    assert_eq!(v["value"], "2");
}

#[test]
fn series_special_values() {
    let (v, _) = json(&["series", "--group", "symmetric(3)", "--z", "-1"]);
    assert_eq!(v["value"], "29/84");
    assert_eq!(v["Sigma"], "9/10");
    assert_eq!(v["dirichlet_value"], "-7");
}

#[test]
fn kappa_and_recurrence() {
    let (v, _) = json(&["kappa", "--group", "quaternion8", "--r", "2", "--oracle"]);
    assert_eq!(v["kappa"], "22");
    let (v, _) = json(&["recurrence", "--group", "symmetric(3)"]);
    assert_eq!(v["sigma"], serde_json::json!(["1", "11/36", "1/36"]));
    assert_eq!(v["hankel_rank"], 3);
}

#[test]
fn invert_round_trip() {
    // P_2..P_5 of Q8
    let (v, code) = json(&["invert", "--values", "5/8,11/32,23/128,47/512"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(
        v["spectrum"],
        serde_json::json!([{"m": 2, "c": 3}, {"m": 4, "c": -2}])
    );
}

#[test]
fn stats_report() {
    let (v, _) = json(&["stats", "--group", "heisenberg(3)"]);
    assert_eq!(
        (v["m"].as_u64(), v["N_max"].as_u64(), v["M"].as_u64()),
        (Some(9), Some(4), Some(4))
    );
    let (v, code) = json(&[
        "report",
        "--group",
        "semidirect(abelian(7); cyclic(3); [[2]])",
        "--r",
        "1..3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], 21);
    assert_eq!(v["rows"][1]["hom"], "105");
}

#[test]
fn structured_errors_and_exit_codes() {
    let (v, code) = json(&["count", "--group", "dihedral(6", "--r", "2"]);
    assert_eq!((code, v["code"].as_str()), (1, Some("ParseError")));
    assert!(v["error"].as_str().unwrap().contains("byte 10"));

    let (v, code) = json(&["count", "--group", "cyclic(30000)"]);
    assert_eq!((code, v["code"].as_str()), (2, Some("OrderCap")));

    let (v, code) = json(&["stats", "--group", "symmetric(6)"]);
    assert_eq!((code, v["code"].as_str()), (2, Some("OrderCap")));

    let (_, code) = json(&["stats", "--group", "symmetric(6)", "--lattice-cap", "720"]);
    assert_eq!(code, 0);

    let (v, code) = json(&[
        "count",
        "--group",
        "symmetric(5)",
        "--r",
        "5",
        "--oracle",
        "--brute-cap",
        "1000",
    ]);
    assert_eq!((code, v["code"].as_str()), (2, Some("Infeasible")));

    let (v, code) = json(&["series", "--group", "symmetric(3)", "--z", "2"]);
    assert_eq!((code, v["code"].as_str()), (1, Some("PoleHit")));

    let (v, code) = json(&["invert", "--values", "1/2,1/3"]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn lattice_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_commhier"))
        .args(["stats", "--group", "symmetric(6)"])
        .env("COMMHIER_LATTICE_CAP", "720")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_output() {
    let out = commhier(&[
        "prob",
        "--group",
        "symmetric(3)",
        "--r",
        "2..3",
        "--format",
        "csv",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "group,order,P_r,r\nsymmetric(3),6,1/2,2\nsymmetric(3),6,2/9,3\n"
    );
}

#[test]
fn verify_default_run_passes_and_is_reproducible() {
    let a = commhier(&["verify"]);
    let b = commhier(&["verify"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["unexpected"], 0);
    let records = v["records"].as_array().unwrap();
    let stated: Vec<&Value> = records
        .iter()
        .filter(|r| r["check"] == "pgroup-congruence-stated")
        .collect();
    assert_eq!(stated.len(), 1);
    assert_eq!(stated[0]["status"], "FAIL");
    assert_eq!(stated[0]["group"], "quaternion8");
}

#[test]
fn verify_single_checks() {
    let (v, code) = json(&["verify", "--check", "pgroup-congruence-stated"]);
    assert_eq!(code, 0);
    assert!(v["records"][0]["detail"]
        .as_str()
        .unwrap()
        .starts_with("kappa_1 = 5, |Z| = 2, p = 2"));

    let (v, code) = json(&["verify", "--check", "spectral-identity", "--max-r", "12"]);
    assert_eq!(code, 0);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 18);
    assert!(records
        .iter()
        .all(|r| r["status"] == "PASS" && r["params"] == "r=2..12"));

    let (_, code) = json(&["verify", "--check", "bogus"]);
    assert_eq!(code, 1);
}

#[test]
fn emit_plot_writes_tables() {
    let dir = std::env::temp_dir().join(format!("commhier-plot-{}", std::process::id()));
    let out = commhier(&[
        "spectrum",
        "--group",
        "quaternion8",
        "--r",
        "1..3",
        "--emit-plot",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let pr = std::fs::read_to_string(dir.join("pr.csv")).unwrap();
    assert!(pr.starts_with("r,P_r,P_r_float\n1,1,1\n2,5/8,0.625\n"));
    assert_eq!(
        std::fs::read_to_string(dir.join("spectrum.csv")).unwrap(),
        "m,c\n2,3\n4,-2\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unknown_verb_is_rejected() {
    let out = commhier(&["frobnicate"]);
    assert_ne!(out.status.code(), Some(0));
}
