use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use manet_sim::mobility::{read_trace, validate_trace, Region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn manet_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manet-sim"))
        .args(args)
        .env_remove("MANET_SIM_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn gen_trace(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["gen-trace", "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    manet_sim(&args)
}

#[test]
fn gen_trace_writes_one_row_per_node_and_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let flags = [
        "--model", "rwp", "--nodes", "50", "--velocity", "2.5", "--duration", "1000",
        "--interval", "0.25", "--seed", "7",
    ];
    let res = gen_trace(&out, &flags);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("snapshot,time_s,node_id,x_m,y_m"));
    assert_eq!(lines.count(), 50 * 4000);
    assert!(dir.path().join("t.json").exists());

    let again = dir.path().join("u.csv");
    assert!(gen_trace(&again, &flags).status.success());
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn manhattan_trace_stays_on_streets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let flags = ["--model", "manhattan", "--nodes", "10", "--velocity", "12.5", "--duration", "200"];
    assert!(gen_trace(&out, &flags).status.success());
    let text = fs::read_to_string(&out).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let on_line = |v: f64| (v - (v / 100.0).round() * 100.0).abs() <= 1e-9;
        assert!(on_line(f[3]) || on_line(f[4]), "off street: {line}");
        assert!((0.0..=1000.0).contains(&f[3]) && (0.0..=1000.0).contains(&f[4]));
    }
}

#[test]
fn validate_reports_clean_and_broken_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    assert!(gen_trace(&out, &["--model", "city", "--nodes", "6", "--velocity", "10", "--duration", "5"])
        .status
        .success());
    let ok = manet_sim(&["validate", out.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    // Move node 4 of file snapshot 3 out of the region.
    let text = fs::read_to_string(&out).unwrap();
    let edited: Vec<String> = text
        .lines()
        .map(|l| {
            if l.starts_with("3,") && l.split(',').nth(2) == Some("4") {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{},{},1500.0,{}", f[0], f[1], f[2], f[4])
            } else {
                l.to_string()
            }
        })
        .collect();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, edited.join("\n") + "\n").unwrap();
    fs::copy(dir.path().join("t.json"), dir.path().join("bad.json")).unwrap();
    let res = manet_sim(&["validate", bad.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&res.stderr);
    assert!(msg.contains("node 4") && msg.contains("snapshot"), "{msg}");
    assert!(msg.contains("file snapshot index 3"), "{msg}");

    let missing = manet_sim(&["validate", dir.path().join("none.csv").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn validate_verdict_matches_library_checker_on_fuzzed_traces() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.csv");
    assert!(gen_trace(&base, &["--model", "manhattan", "--nodes", "5", "--velocity", "5", "--duration", "5"])
        .status
        .success());
    let text = fs::read_to_string(&base).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures = 0;
    for k in 0..30 {
        let mut edited: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        for _ in 0..rng.gen_range(0..3) {
            let row = rng.gen_range(1..edited.len());
            let mut f: Vec<String> = edited[row].split(',').map(str::to_string).collect();
            let col = rng.gen_range(3..5);
            let v: f64 = f[col].parse().unwrap();
            let delta = [0.5, 3.0, 100.0, 2000.0][rng.gen_range(0..4)];
            f[col] = format!("{:.12}", (v + delta * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).max(-5000.0));
            edited[row] = f.join(",");
        }
        let csv = dir.path().join(format!("f{k}.csv"));
        fs::write(&csv, edited.join("\n") + "\n").unwrap();
        fs::copy(dir.path().join("base.json"), csv.with_extension("json")).unwrap();

        let expected = match read_trace(&csv, None) {
            Ok(trace) => {
                assert_eq!(trace.region, Region::default());
                if validate_trace(&trace).is_ok() { 0 } else { 2 }
            }
            Err(_) => 2,
        };
        let code = manet_sim(&["validate", csv.to_str().unwrap()]).status.code();
        assert_eq!(code, Some(expected), "fuzz case {k}");
        failures += (expected != 0) as usize;
    }
    assert!(failures > 5, "fuzzing should produce invalid traces");
}

#[test]
fn run_only_writes_single_cell_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res");
    let res = Command::new(env!("CARGO_BIN_EXE_manet-sim"))
        .args(["run", "--only", "model=rwp,density=50,velocity=2.5", "--traces", "1", "--sessions", "5"])
        .env("MANET_SIM_OUT_DIR", &out)
        .output()
        .unwrap();
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(out.join("results.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "model,density,velocity_mps,metric,ora,lora,percent_increase");
    assert_eq!(lines.len(), 7);
    assert!(lines[1..].iter().all(|l| l.starts_with("rwp,50,2.500000,")));
    assert!(out.join("results.json").exists());
    assert!(out.join("plot_hop_count_by_density.csv").exists());
}

#[test]
fn invalid_plan_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    fs::write(&plan, r#"{"densities": [50], "sessions_per_trace": 0}"#).unwrap();
    let res = manet_sim(&["run", "--plan", plan.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("sessions_per_trace"));

    fs::write(&plan, r#"{"velocitys": [5]}"#).unwrap();
    let res = manet_sim(&["run", "--plan", plan.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("velocitys"));
}
