use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_entrobound"));
    c.env_remove("ENTROBOUND_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn entrobound")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write_diag(path: &Path, diag: &[f64]) {
    let d = diag.len();
    let mut re = vec![0.0; d * d];
    for (i, p) in diag.iter().enumerate() {
        re[i * d + i] = *p;
    }
    let v = serde_json::json!({ "d": d, "entries_re": re, "entries_im": vec![0.0; d * d] });
    std::fs::write(path, v.to_string()).unwrap();
}

fn geometric(mean: f64, d: usize) -> Vec<f64> {
    let q = mean / (1.0 + mean);
    let mut p: Vec<f64> = (0..d).map(|k| q.powi(k as i32) / (1.0 + mean)).collect();
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= s);
    p
}

fn report_value(v: &Value, kind: &str) -> (f64, bool) {
    let r = v["reports"].as_array().unwrap().iter().find(|r| r["kind"] == kind).unwrap();
    (r["value"].as_f64().unwrap(), r["in_validity_domain"].as_bool().unwrap())
}

#[test]
fn bound_vn_closed_form() {
    let o = run(&["bound", "vn", "--eps", "0.3", "--E", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let (v, ok) = report_value(&json(&o), "von-neumann");
    // 2 h(0.3), mpmath
    assert!((v - 1.2217286041097869).abs() < 1e-14, "{v}");
    assert!(ok);

    let o = run(&["bound", "vn", "--eps", "0.9", "--E", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(!report_value(&json(&o), "von-neumann").1);
}

#[test]
fn bound_log_base_bits() {
    let o = run(&["bound", "vn", "--eps", "0.3", "--E", "1", "--format", "json", "--log-base", "bits"]);
    assert_eq!(code(&o), 0);
    let (v, _) = report_value(&json(&o), "von-neumann");
    assert!((v - 1.2217286041097869 / std::f64::consts::LN_2).abs() < 1e-13, "{v}");
}

#[test]
fn winter3_above_tight() {
    let tight = report_value(&json(&run(&["bound", "vn", "--eps", "0.2", "--E", "2", "--format", "json"])), "von-neumann").0;
    let o = run(&["bound", "winter3", "--eps", "0.2", "--E", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let w = json(&o)["reports"][0]["value"].as_f64().unwrap();
    assert!(w > tight, "{w} vs {tight}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["bound", "nonsense"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["bound", "vn", "--eps", "0.1", "--E", "1", "--format", "xml"])), 64);
    assert_eq!(code(&run(&["bound", "vn", "--eps", "-0.1", "--E", "1"])), 2);
    assert_eq!(code(&run(&["bound", "vn", "--eps", "0.1", "--E", "-1"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["tightness", "--asymptotic"])), 3);
}

#[test]
fn sweep_header_and_order() {
    let o = run(&["sweep", "--grid", "0.1:0.3:3,1:2:2", "--alpha", "0.1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let hdr: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(hdr, ["epsilon", "E", "bound_tight", "bound_winter3", "bound_winter2_a0.1", "diff_w3", "diff_w2_a0.1"]);
    let rows: Vec<Vec<f64>> = rdr.records().map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 6);
    let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r[1], r[0])).collect();
    let want = [(1.0, 0.1), (1.0, 0.2), (1.0, 0.3), (2.0, 0.1), (2.0, 0.2), (2.0, 0.3)];
    for (g, w) in pairs.iter().zip(want) {
        assert!((g.0 - w.0).abs() < 1e-15 && (g.1 - w.1).abs() < 1e-15, "{g:?} vs {w:?}");
    }
    for r in &rows {
        assert!((r[5] - (r[3] - r[2])).abs() < 1e-15);
    }
}

#[test]
fn sweep_csv_json_agree_and_match_bound() {
    let args = ["sweep", "--E", "1", "--grid", "0.05:0.5:4,1:1:1", "--alpha", "0.2"];
    let c = run(&[&args[..], &["--format", "csv"]].concat());
    let j = run(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(code(&c), 0);
    assert_eq!(code(&j), 0);
    let mut rdr = csv::Reader::from_reader(c.stdout.as_slice());
    let hdr: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    let recs: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let arr = json(&j);
    let arr = arr.as_array().unwrap();
    assert_eq!(arr.len(), recs.len());
    for (rec, obj) in recs.iter().zip(arr) {
        for (h, cell) in hdr.iter().zip(rec.iter()) {
            assert_eq!(cell.parse::<f64>().unwrap(), obj[h].as_f64().unwrap(), "{h}");
        }
        let eps = obj["epsilon"].as_f64().unwrap().to_string();
        let b = run(&["bound", "vn", "--eps", &eps, "--E", "1", "--format", "json"]);
        assert_eq!(report_value(&json(&b), "von-neumann").0, obj["bound_tight"].as_f64().unwrap());
    }
}

#[test]
fn montecarlo_deterministic_by_seed() {
    let dir = tempfile::tempdir().unwrap();
    let go = |seed: &str, name: &str| {
        let p = dir.path().join(name);
        let o = run(&[
            "montecarlo", "fano", "--trials", "200", "--dim", "30", "--seed", seed, "--format", "csv", "--out",
            p.to_str().unwrap(), "--summary", dir.path().join(format!("{name}.json")).to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(p).unwrap()
    };
    let a = go("7", "a.csv");
    let b = go("7", "b.csv");
    let c = go("8", "c.csv");
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn seed_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let summary = |extra: &[&str], env: Option<&str>| -> Value {
        let p = dir.path().join("s.json");
        let mut cmd = bin();
        cmd.args(["montecarlo", "shannon", "--trials", "5", "--dim", "10", "--out"])
            .arg(dir.path().join("rows.csv"))
            .arg("--summary")
            .arg(&p)
            .args(extra);
        if let Some(e) = env {
            cmd.env("ENTROBOUND_SEED", e);
        }
        let o = cmd.output().unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    assert_eq!(summary(&[], None)["seed"], 20240601);
    assert_eq!(summary(&[], Some("11"))["seed"], 11);
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "seed = 12\ntrials = 5\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(summary(&["--config", c], Some("11"))["seed"], 12);
    assert_eq!(summary(&["--config", c, "--seed", "13"], Some("11"))["seed"], 13);

    std::fs::write(&cfg, "sed = 12\n").unwrap();
    let o = run(&["bound", "vn", "--config", c]);
    assert_eq!(code(&o), 64);
}

#[test]
fn tightness_and_fa_defaults_pass() {
    let o = run(&["tightness", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 401);
    let o = run(&["fa", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json(&o);
    let z: Vec<&Value> = rows.as_array().unwrap().iter().filter(|r| r["quantity"] == "beta_log_z").collect();
    assert_eq!(z.len(), 5);
    assert!(z.iter().all(|r| r["lower"].as_f64().unwrap() > 0.25));
}

fn analyze(rho: &[f64], sigma: &[f64], extra: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let (r, s) = (dir.path().join("rho.json"), dir.path().join("sigma.json"));
    write_diag(&r, rho);
    write_diag(&s, sigma);
    let o = run(&[&["analyze", "--rho", r.to_str().unwrap(), "--sigma", s.to_str().unwrap()], extra].concat());
    let v = if o.stdout.is_empty() { Value::Null } else { json(&o) };
    (code(&o), v)
}

fn bound_entry<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["bounds"].as_array().unwrap().iter().find(|b| b["bound"] == name).unwrap()
}

#[test]
fn analyze_identical_states() {
    let p = geometric(1.0, 20);
    let (c, v) = analyze(&p, &p, &[]);
    assert_eq!(c, 0);
    assert!(v["trace_distance"].as_f64().unwrap().abs() < 1e-15);
    assert!((v["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["fuchs_van_de_graaf"]["holds"].as_bool().unwrap());
}

#[test]
fn analyze_orthogonal_basis_states() {
    let (c, v) = analyze(&[1.0, 0.0], &[0.0, 1.0], &["--ham", "number"]);
    assert_eq!(c, 0);
    assert!((v["trace_distance"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let vn = bound_entry(&v, "vn");
    assert_eq!(vn["report"]["in_validity_domain"], false);
}

#[test]
fn analyze_geometric_pair_dominates() {
    let (c, v) = analyze(&geometric(1.0, 60), &geometric(2.0, 60), &["--ham", "number"]);
    assert_eq!(c, 0);
    for name in ["vn", "winter3", "tsallis_lip_a2"] {
        let b = bound_entry(&v, name);
        assert_eq!(b["dominates"], true, "{name}: {b}");
    }
}

#[test]
fn analyze_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"d\": 2,\n  \"entries_re\": [1, 0, 0,\n").unwrap();
    let o = run(&["analyze", "--rho", bad.to_str().unwrap(), "--sigma", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line") && err.contains("column") && err.contains("bad.json"), "{err}");
    assert_eq!(code(&run(&["analyze", "--rho", bad.to_str().unwrap()])), 64);
}
