use std::path::Path;
use std::process::{Command, Output};

use hpnc::io::format_number;

fn hpnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpnc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FOCK1: &str = r#"{"kind":"fock","params":{"n":1}}"#;
const CAT: &str = r#"{"kind":"cat","params":{"components":[
    {"weight":{"re":1,"im":0},"alpha":{"re":2,"im":0}},
    {"weight":{"re":1,"im":0},"alpha":{"re":-2,"im":0}}]}}"#;

#[test]
fn criteria_for_single_photon() {
    let o = hpnc(&["criteria", "--spec", FOCK1, "--dim", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("criterion,ell,value,nonclassical,tolerance\n"));
    let r = rows(&o);
    let got: Vec<(&str, &str, f64)> = r.iter().map(|c| (c[0].as_str(), c[1].as_str(), c[2].parse().unwrap())).collect();
    assert_eq!(got.len(), 4);
    assert_eq!((got[0].0, got[0].2), ("mandel", 1.0));
    assert_eq!((got[1].0, got[1].1, got[1].2), ("higher_order", "3", 1.0));
    assert_eq!(got[2].0, "first_order");
    assert!((got[2].2 + 1.0).abs() < 1e-12);
    assert_eq!(got[3].0, "squeezing");
    assert!((got[3].2 + 1.0).abs() < 1e-12);
}

#[test]
fn schmidt_rank_of_two_component_cat() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(dir.path(), "cat.json", CAT);
    let o = hpnc(&["schmidt", "--spec", &cat, "--dim", "40", "--t", "0.7071", "--phi", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&o)[0][0], "2");
    let at = hpnc(&["schmidt", "--spec", &format!("@{cat}"), "--dim", "40", "--t", "0.7071"]);
    assert_eq!(stdout(&at), stdout(&o));
}

#[test]
fn dicke_sweep_rows_sorted_by_n() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write(dir.path(), "fock1.json", FOCK1);
    let o = hpnc(&["dicke-sweep", "--spec", &f1, "--N", "400,50,200,100", "--mode", "hz"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    let ns: Vec<&str> = r.iter().map(|c| c[0].as_str()).collect();
    assert_eq!(ns, ["50", "100", "200", "400"]);
    // the single photon is reproduced exactly at every N
    assert!(r.iter().all(|c| c[3].parse::<f64>().unwrap() < 1e-12));

    let coh = r#"{"kind":"coherent","params":{"alpha":{"re":1,"im":0}}}"#;
    let o = hpnc(&["dicke-sweep", "--spec", coh, "--N", "50,100,200,400", "--mode", "hz"]);
    let errs: Vec<f64> = rows(&o).iter().map(|c| c[3].parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let sq = r#"{"kind":"squeezed_vacuum","params":{"r_sq":0.5}}"#;
    let mut files = Vec::new();
    for (i, threads) in ["1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("run{i}.csv"));
        let o = Command::new(env!("CARGO_BIN_EXE_hpnc"))
            .env("HPNC_THREADS", threads)
            .args(["dicke-sweep", "--spec", sq, "--N", "50,100,200", "--mode", "xi2", "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        files.push(std::fs::read(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn printed_numbers_round_trip() {
    let o = hpnc(&["bs-entangle", "--spec", CAT, "--dim", "40", "--t", "0.6", "--phi", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    for cell in rows(&o).concat() {
        if let Ok(x) = cell.parse::<f64>() {
            assert_eq!(format_number(x), cell);
        }
    }
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.json",
        r#"{"spec":{"kind":"coherent","params":{"alpha":{"re":1,"im":0}}},"N":[100,1000],"mode":"fidelity"}"#,
    );
    let o = hpnc(&["dicke-sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&o);
    assert_eq!(r.len(), 2);
    assert!(r[1][1].parse::<f64>().unwrap() > 0.99);
    // command-line flags win over the file
    let o = hpnc(&["dicke-sweep", "--config", &cfg, "--N", "100"]);
    assert_eq!(rows(&o).len(), 1);
}

#[test]
fn table_format_is_aligned() {
    let o = hpnc(&["rank-eq", "--r", "1,2,3", "--N", "400", "--dim", "40", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[1].chars().all(|c| c == '-' || c == ' '));
    assert!(lines.iter().all(|l| l.len() == lines[0].len()));
}

#[test]
fn verify_reports_small_deviations() {
    let o = hpnc(&["verify", "--t", "0.6", "--phi", "1.1", "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    for row in rows(&o) {
        assert!(row[1].parse::<f64>().unwrap() < 1e-10, "{row:?}");
    }
}

#[test]
fn potential_fixed_and_searched() {
    let f1 = FOCK1;
    let searched = hpnc(&["potential", "--spec", f1, "--dim", "6"]);
    assert_eq!(searched.status.code(), Some(0));
    let e: f64 = rows(&searched)[0][0].parse().unwrap();
    assert!((e - 1.0).abs() < 1e-6);
    let fixed = hpnc(&["potential", "--spec", f1, "--dim", "6", "--t", "1"]);
    assert_eq!(rows(&fixed)[0][0], "0");
}

#[test]
fn exit_codes() {
    let bad_json = hpnc(&["criteria", "--spec", "{\"kind\":\"fock\""]);
    assert_eq!(bad_json.status.code(), Some(2));
    let stderr = String::from_utf8(bad_json.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);

    let unknown_kind = hpnc(&["criteria", "--spec", r#"{"kind":"laser","params":{}}"#]);
    assert_eq!(unknown_kind.status.code(), Some(2));
    let missing_spec = hpnc(&["criteria"]);
    assert_eq!(missing_spec.status.code(), Some(2));
    let bad_flag = hpnc(&["criteria", "--bogus"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_t = hpnc(&["schmidt", "--spec", FOCK1, "--t", "1.5"]);
    assert_eq!(bad_t.status.code(), Some(2));

    let truncated = hpnc(&["criteria", "--spec", r#"{"kind":"coherent","params":{"alpha":{"re":5,"im":0}}}"#, "--dim", "10"]);
    assert_eq!(truncated.status.code(), Some(3));
    let support = hpnc(&["dicke-sweep", "--spec", r#"{"kind":"fock","params":{"n":8}}"#, "--N", "5"]);
    assert_eq!(support.status.code(), Some(3));
    let degenerate = hpnc(&["bs-entangle", "--spec", FOCK1, "--t", "1"]);
    assert_eq!(degenerate.status.code(), Some(3));
}
