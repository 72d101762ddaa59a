use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_hypershape");

fn spec(name: &str) -> String {
    format!("{}/specs/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .to_string()
}

fn num(text: &str, key: &str) -> f64 {
    field(text, key).parse().unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypershape-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Grid rows as header-keyed maps.
fn read_csv(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| {
            header
                .iter()
                .map(|h| h.to_string())
                .zip(l.split(',').map(String::from))
                .collect()
        })
        .collect()
}

#[test]
fn analyze_hyperbola_cylinder() {
    let o = run(&["analyze", &spec("hyperbola_cylinder"), "--at", "1,0,0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(num(&text, "K"), 0.0);
    assert!((num(&text, "H") - 1.0 / (3.0 * 2f64.sqrt())).abs() < 1e-12);
    assert!((num(&text, "k1") - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(num(&text, "k2"), 0.0);
    assert_eq!(field(&text, "class"), "planar_pair");
    assert_eq!(field(&text, "residual_eq16"), "n/a");
}

#[test]
fn analyze_hypersphere() {
    let o = run(&["analyze", &spec("hypersphere"), "--at", "1.5707963,0,1.5707963"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    // The ternary-product normal points inward here, so K = H = -1.
    assert!((num(&text, "K") + 1.0).abs() < 1e-9);
    assert!((num(&text, "H") + 1.0).abs() < 1e-9);
    assert_eq!(field(&text, "class"), "ellipsoidal");
    assert!(stderr(&o).contains("outside the sampled domain"));
}

#[test]
fn analyze_reports_the_failing_stage() {
    let o = run(&["analyze", &spec("hypersphere"), "--at", "0,0,0"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("error in regularity stage"), "{}", stderr(&o));

    let o = run(&["analyze", &spec("no_such_file"), "--at", "0,0,0"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("error in spec stage"), "{}", stderr(&o));

    let bad = temp_path("bad_expr.json");
    fs::write(&bad, r#"{"surface": {"x": "u", "y": "v +", "z": "w", "t": "0"}, "domain": {"u": [0, 1], "v": [0, 1], "w": [0, 1]}, "samples": [2, 2, 2]}"#).unwrap();
    let o = run(&["analyze", bad.to_str().unwrap(), "--at", "0.5,0.5,0.5"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("syntax error"), "{}", stderr(&o));

    let o = run(&["analyze", &spec("hypersphere"), "--at", "1,2"]);
    assert!(!o.status.success());
}

#[test]
fn analyze_machine_records() {
    let o = run(&[
        "analyze",
        &spec("hyperbola_cylinder"),
        "--at",
        "1,0,0",
        "--format",
        "jsonl",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let record: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(record["class"], "planar_pair");
    assert_eq!(record["status"], "ok");
    assert_eq!(record["residual_eq16"], serde_json::Value::Null);

    let o = run(&[
        "analyze",
        &spec("hyperbola_cylinder"),
        "--at",
        "1,0,0",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let tail: Vec<&str> = text.lines().rev().take(2).collect();
    assert!(tail[1].starts_with("u,v,w,x,y,z,t,"));
    assert!(tail[0].ends_with(",planar_pair,ok"));
}

#[test]
fn grid_hypersphere_is_deterministic() {
    let a = temp_path("sphere_a.csv");
    let b = temp_path("sphere_b.csv");
    for path in [&a, &b] {
        let o = run(&["grid", &spec("hypersphere"), "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert_eq!(
        text.lines().next().unwrap(),
        "u,v,w,x,y,z,t,n1,n2,n3,n4,g11,g12,g13,g22,g23,g33,b11,b12,b13,b22,b23,b33,K,H,k1,k2,k3,class,status"
    );
    let rows = read_csv(&text);
    assert_eq!(rows.len(), 125);
    for r in &rows {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["class"], "ellipsoidal");
        let k: f64 = r["K"].parse().unwrap();
        assert!((k + 1.0).abs() <= 1e-9);
    }
    // w fastest, then v, then u.
    assert_eq!(
        (rows[0]["u"].as_str(), rows[0]["v"].as_str(), rows[0]["w"].as_str()),
        ("0.3", "0.3", "0.3")
    );
    assert_eq!(
        (rows[1]["u"].as_str(), rows[1]["v"].as_str(), rows[1]["w"].as_str()),
        ("0.3", "0.3", "0.925")
    );
    assert_eq!(
        (rows[5]["u"].as_str(), rows[5]["v"].as_str(), rows[5]["w"].as_str()),
        ("0.3", "0.925", "0.3")
    );
    assert_eq!(rows[124]["u"], "2.8");
}

#[test]
fn grid_flat_and_hyperbola() {
    let o = run(&["grid", &spec("flat_slab"), "--out", "-"]);
    assert!(o.status.success());
    for r in read_csv(&stdout(&o)) {
        assert_eq!(r["class"], "flat");
        assert_eq!(r["K"], "0.0");
        assert_eq!(r["H"], "0.0");
    }

    let o = run(&["grid", &spec("hyperbola_cylinder"), "--out", "-"]);
    assert!(o.status.success());
    let rows = read_csv(&stdout(&o));
    assert_eq!(rows.len(), 63);
    for r in rows {
        let u: f64 = r["u"].parse().unwrap();
        let get = |k: &str| r[k].parse::<f64>().unwrap();
        assert_eq!(get("K"), 0.0);
        assert!(get("k2").abs() <= 1e-9 && get("k3").abs() <= 1e-9);
        assert!((get("k1") - 2.0 * u.powi(3) / (1.0 + u.powi(4)).powf(1.5)).abs() <= 1e-9);
    }
}

#[test]
fn grid_jsonl() {
    let o = run(&["grid", &spec("sphere_cylinder"), "--out", "-", "--format", "jsonl"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 48);
    assert!(lines.iter().all(|v| v["class"] == "elliptic_cylinder"));
}

#[test]
fn grid_without_regular_points_fails() {
    let out = temp_path("degenerate.csv");
    let o = run(&["grid", &spec("degenerate"), "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    let rows = read_csv(&fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 27);
    assert!(rows.iter().all(|r| r["status"] == "singular" && r["K"].is_empty()));
}

#[test]
fn threshold_overrides() {
    let o = run(&["--eps-k", "1", "analyze", &spec("hyperbola_cylinder"), "--at", "1,0,0"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "class"), "flat");

    // No frame can beat the Hadamard bound Δ ≤ G11 G22 G33.
    let o = run(&["grid", &spec("flat_slab"), "--out", "-", "--eps-reg", "2"]);
    assert!(!o.status.success());

    let o = run(&["check", &spec("flat_slab"), "--eps-k", "-1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("eps_k"), "{}", stderr(&o));
}

#[test]
fn check_exit_codes() {
    for name in [
        "hypersphere",
        "hyperbola_cylinder",
        "sphere_cylinder",
        "sheared",
        "saddle",
        "product_saddle",
    ] {
        let o = run(&["check", &spec(name)]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(stdout(&o).contains("all checks passed"));
    }

    let o = run(&["check", &spec("flat_slab")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let ch = text.lines().find(|l| l.contains("cayley-hamilton")).unwrap();
    assert!(ch.trim_start().starts_with("n/a"), "{ch}");
    let ternary = text.lines().find(|l| l.contains("ternary identities")).unwrap();
    assert!(ternary.contains("0.000e0"), "{ternary}");

    let o = run(&["check", &spec("degenerate")]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("regular 0, singular 27"));
}
