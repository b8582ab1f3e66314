use std::path::Path;
use std::process::{Command, Output};

fn cognet(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cognet"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("COGNET_OUT")
        .output()
        .expect("run cognet")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cognet(&["validate"], dir.path()).status.code(), Some(0));
    let bad = cognet(&["validate", "--set", "path_loss_alpha=2"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("path loss must exceed 2"));
}

#[test]
fn config_file_and_unknown_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("net.toml");
    std::fs::write(&cfg, "path_loss_alpha = 3.5\nper_radius_R0 = 1.5\n").unwrap();
    let ok = cognet(&["validate", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    std::fs::write(&cfg, "alpha = 3.5\n").unwrap();
    let bad = cognet(&["validate", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cognet(&["bounds", "figure8", "--no-such-flag"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn figure8_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cognet(&["bounds", "figure8", "--r0", "1,2"], dir.path())
        .status
        .success());
    let csv = read(dir.path(), "figure8.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("R0,lb1,lb2,ub,exact"));
    let row: Vec<f64> = lines
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    let pi = std::f64::consts::PI;
    assert_eq!(row[0], 2.0);
    assert!((row[1] - pi / 36.0).abs() < 1e-15);
    assert!((row[3] - pi / 4.0).abs() < 1e-15);
    assert!((row[4] - pi / 9.0).abs() < 1e-15);
    assert!(!csv.contains('\r'));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "bounds-figure8.manifest.json")).unwrap();
    assert_eq!(manifest["subcommand"], "bounds-figure8");
    assert_eq!(manifest["outputs"][0], "figure8.csv");
    assert_eq!(manifest["config"]["path_loss_alpha"], 4.0);
}

#[test]
fn same_seed_same_bytes_and_replay() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let r = tempfile::tempdir().unwrap();
    let args = [
        "interference",
        "mc",
        "--trials",
        "200",
        "--seed",
        "5",
        "--dump-raw",
    ];
    assert!(cognet(&args, a.path()).status.success());
    assert!(cognet(&args, b.path()).status.success());
    for f in ["interference_mc.csv", "interference_mc_raw.csv"] {
        assert_eq!(read(a.path(), f), read(b.path(), f));
    }
    let manifest = a.path().join("interference-mc.manifest.json");
    assert!(cognet(&["replay", manifest.to_str().unwrap()], r.path())
        .status
        .success());
    assert_eq!(
        read(a.path(), "interference_mc.csv"),
        read(r.path(), "interference_mc.csv")
    );
    let other = tempfile::tempdir().unwrap();
    let mut changed = args.to_vec();
    changed[5] = "6";
    assert!(cognet(&changed, other.path()).status.success());
    assert_ne!(
        read(a.path(), "interference_mc_raw.csv"),
        read(other.path(), "interference_mc_raw.csv")
    );
}

#[test]
fn replay_uses_recorded_config() {
    let a = tempfile::tempdir().unwrap();
    let r = tempfile::tempdir().unwrap();
    assert!(cognet(
        &["per-radius", "solve", "--set", "outage_rate_C0=2"],
        a.path()
    )
    .status
    .success());
    let manifest = a.path().join("per-radius-solve.manifest.json");
    assert!(cognet(&["replay", manifest.to_str().unwrap()], r.path())
        .status
        .success());
    assert_eq!(
        read(a.path(), "per_solution.csv"),
        read(r.path(), "per_solution.csv")
    );
    let solution = read(a.path(), "per_solution.csv");
    let free: f64 = solution
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((free - (100.0f64 / 3.0).powf(0.25)).abs() < 1e-12);
}

#[test]
fn placement_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = cognet(&["place", "--n", "6000"], dir.path());
    assert_eq!(
        out.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn placement_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cognet(&["place", "--n", "25"], dir.path()).status.success());
    let csv = read(dir.path(), "placement.csv");
    assert!(csv.starts_with("role,pair_id,x,y\n"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("ctx,")).count(), 25);
    assert_eq!(csv.lines().filter(|l| l.starts_with("crx,")).count(), 25);
    assert_eq!(csv.lines().filter(|l| l.starts_with("ptx,")).count(), 1);
    let filled = tempfile::tempdir().unwrap();
    assert!(
        cognet(&["place", "--n", "25", "--fill-pers"], filled.path())
            .status
            .success()
    );
    let more = read(filled.path(), "placement.csv");
    assert!(more.lines().filter(|l| l.starts_with("ctx,")).count() > 25);
    assert!(more.starts_with(&csv[..csv.find("ctx,24,").unwrap()]));
}

#[test]
fn tradeoff_curves_emit_both_variants() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cognet(
        &["per-radius", "curve-fig10", "--c0", "2,3", "--eps-p", "1,2"],
        dir.path()
    )
    .status
    .success());
    assert_eq!(read(dir.path(), "fig10_markov.csv").lines().count(), 5);
    assert!(read(dir.path(), "fig10_implicit.csv").starts_with("C0,eps_p,R0\n"));
    // Without α = 4 the implicit variant is skipped, or refused when asked for.
    let d3 = tempfile::tempdir().unwrap();
    assert!(cognet(
        &["per-radius", "curve-fig11", "--set", "path_loss_alpha=3"],
        d3.path()
    )
    .status
    .success());
    assert!(d3.path().join("fig11_markov.csv").exists());
    assert!(!d3.path().join("fig11_implicit.csv").exists());
    let refused = cognet(
        &[
            "per-radius",
            "curve-fig11",
            "--set",
            "path_loss_alpha=3",
            "--method",
            "implicit",
        ],
        d3.path(),
    );
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn scaling_and_concentration_tables() {
    let dir = tempfile::tempdir().unwrap();
    let s = cognet(
        &[
            "scaling", "--n-grid", "20,40", "--seeds", "2", "--mode", "scaled", "--gamma", "1",
        ],
        dir.path(),
    );
    assert!(s.status.success(), "{}", String::from_utf8_lossy(&s.stderr));
    assert!(read(dir.path(), "scaling.csv").starts_with("n,T_n,S_n,std,C1bar\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "scaling.manifest.json")).unwrap();
    assert_eq!(manifest["config"]["mode"], "DistanceScaledPower");
    let c = cognet(
        &[
            "concentration",
            "--n-grid",
            "10,20",
            "--trials",
            "100",
            "--delta",
            "0.05",
        ],
        dir.path(),
    );
    assert!(c.status.success());
    assert_eq!(read(dir.path(), "concentration.csv").lines().count(), 3);
    let few = cognet(&["concentration", "--trials", "10"], dir.path());
    assert_eq!(few.status.code(), Some(2));
}

#[test]
fn lattice_and_average_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cognet(
        &[
            "interference",
            "lattice",
            "--truncation",
            "20",
            "--theta-grid",
            "12"
        ],
        dir.path()
    )
    .status
    .success());
    let scan = read(dir.path(), "lattice_scan.csv");
    assert!(scan.starts_with("theta,value,tail_bound\n"));
    assert_eq!(scan.lines().count(), 13);
    assert!(
        cognet(&["interference", "avg", "--trials", "100"], dir.path())
            .status
            .success()
    );
    let avg = read(dir.path(), "interference_avg.csv");
    assert!(avg.lines().nth(2).unwrap().starts_with("inf,"));
}
