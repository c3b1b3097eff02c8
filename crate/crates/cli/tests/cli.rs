use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FREE: &str = r#"
[potential]
kind = "zero"

[source]
delta = 1.0
[source.j]
kind = "gaussian"
a = 1.0
[source.rho]
kind = "gaussian"
width = 1.0
"#;

fn kgscat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgscat"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Rows of a CSV file, header included.
fn table(p: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(p).unwrap();
    r.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect()
}

fn report_value(p: &Path, key: &str) -> Option<f64> {
    table(p).into_iter().find(|r| r[1] == key).map(|r| r[2].parse().unwrap())
}

fn run(dir: &TempDir, cfg: &Path, cmd: &str, out: &str) -> Output {
    kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", out, cmd])
}

#[test]
fn free_forward_writes_nonzero_z_and_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "free.toml", FREE);
    let o = run(&dir, &cfg, "forward", "out");
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = dir.path().join("out");
    for f in ["z.csv", "F_trace.csv", "diagnostics.csv", "context.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let z = table(&out.join("z.csv"));
    assert_eq!(z[0], ["k", "re", "im"]);
    assert_eq!(z.len(), 257);
    let peak = z[1..].iter().map(|r| r[1].parse::<f64>().unwrap().hypot(r[2].parse().unwrap())).fold(0.0, f64::max);
    assert!(peak > 0.1);
    let d = table(&out.join("diagnostics.csv"));
    assert_eq!(d[0], ["check_name", "parameter", "residual", "threshold", "pass"]);
    assert!(d[1..].iter().all(|r| r[4] == "pass"), "{d:?}");
    let trace = table(&out.join("F_trace.csv"));
    assert_eq!(trace[0], ["t", "re", "im"]);
    assert_eq!(trace.len(), 42);
}

#[test]
fn gaussian_forward_passes_default_tolerances() {
    let dir = TempDir::new().unwrap();
    let o = kgscat(dir.path(), &["--out", "out", "forward"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ctx = table(&dir.path().join("out/context.csv"));
    assert!(ctx.iter().any(|r| r[0] == "T_max" && r[1] == "3e1"));
}

#[test]
fn forward_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for out in ["a", "b"] {
        assert_eq!(code(&kgscat(dir.path(), &["--n", "128", "--out", out, "forward"])), 0);
    }
    for f in ["z.csv", "F_trace.csv", "diagnostics.csv", "context.csv"] {
        let a = fs::read(dir.path().join("a").join(f)).unwrap();
        let b = fs::read(dir.path().join("b").join(f)).unwrap();
        assert!(a == b, "{f} differs between identical runs");
    }
}

#[test]
fn overrides_reach_the_pipeline() {
    let dir = TempDir::new().unwrap();
    let o = kgscat(dir.path(), &["--n", "128", "--Tmax", "25", "--out", "out", "forward"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ctx = table(&dir.path().join("out/context.csv"));
    assert!(ctx.iter().any(|r| r[0] == "n" && r[1] == "128"));
    assert!(ctx.iter().any(|r| r[0] == "T_max" && r[1] == "2.5e1"));
    assert_eq!(table(&dir.path().join("out/z.csv")).len(), 129);
}

#[test]
fn malformed_configs_exit_two() {
    let dir = TempDir::new().unwrap();
    for (text, needle) in [
        ("mass = -1.0\n", "mass"),
        ("mas = 1.0\n", "unknown field"),
        ("[pipeline]\ncook_tolerance = 0.0\n", "cook_tolerance"),
        ("[pipeline]\nband_momenta = [1.0, 30.0]\n", "Nyquist"),
        ("[grid]\ndimension = 3\n", "dimension"),
        ("[potential]\nkind = \"cubic\"\n", "cubic"),
    ] {
        let cfg = config(dir.path(), "bad.toml", text);
        let o = run(&dir, &cfg, "forward", "out");
        assert_eq!(code(&o), 2, "{text}");
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
    }
    assert_eq!(code(&kgscat(dir.path(), &["--config", "missing.toml", "forward"])), 2);
    assert_eq!(code(&kgscat(dir.path(), &["frobnicate"])), 2);
}

#[test]
fn forward_output_feeds_both_inversions() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "free.toml", FREE);
    assert_eq!(code(&run(&dir, &cfg, "forward", "out")), 0);
    let o = run(&dir, &cfg, "invert-rho", "out");
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = dir.path().join("out");
    let e = report_value(&out.join("rho_report.csv"), "rho_relative_l2").unwrap();
    assert!(e <= 1e-6, "{e:e}");
    let rho = table(&out.join("rho_rec.csv"));
    assert_eq!(rho[0], ["x", "re", "im"]);
    assert_eq!(rho.len(), 257);

    let o = run(&dir, &cfg, "invert-j", "out");
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let e = report_value(&out.join("j_report.csv"), "j_hat_sup_relative").unwrap();
    assert!(e <= 1e-3, "{e:e}");
    assert!(report_value(&out.join("j_report.csv"), "gap_steps").unwrap() <= 4.0);
    assert_eq!(table(&out.join("j_rec.csv"))[0], ["t", "re", "im"]);
}

#[test]
fn gaussian_rho_round_trip_is_recorded() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&kgscat(dir.path(), &["--out", "out", "forward"])), 0);
    let o = kgscat(dir.path(), &["--out", "out", "invert-rho"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let e = report_value(&dir.path().join("out/rho_report.csv"), "rho_relative_l2").unwrap();
    assert!(e <= 1e-2, "{e:e}");
}

fn zero_z(dir: &Path, n: usize) -> PathBuf {
    let dk = std::f64::consts::TAU / 40.0;
    let mut text = String::from("k,re,im\n");
    for j in 0..n {
        text.push_str(&format!("{:e},0,0\n", (j as f64 - (n / 2) as f64) * dk));
    }
    config(dir, "zero_z.csv", &text)
}

#[test]
fn zero_z_gives_zero_reconstructions() {
    let dir = TempDir::new().unwrap();
    let z = zero_z(dir.path(), 256);
    let cfg = config(
        dir.path(),
        "given.toml",
        "[source]\ndelta = 1.0\n[source.j]\nkind = \"gaussian\"\na = 1.0\n",
    );
    let o = kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "out", "invert-rho", "--z", z.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rho = table(&dir.path().join("out/rho_rec.csv"));
    assert!(rho[1..].iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0 && r[2].parse::<f64>().unwrap() == 0.0));

    let cfg = config(
        dir.path(),
        "given_rho.toml",
        "[source]\ndelta = 1.0\n[source.rho]\nkind = \"gaussian\"\nwidth = 1.0\n",
    );
    let o = kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "out", "invert-j", "--z", z.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let j = table(&dir.path().join("out/j_rec.csv"));
    assert!(j[1..].iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0 && r[2].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn invert_j_without_delta_exits_two() {
    let dir = TempDir::new().unwrap();
    let z = zero_z(dir.path(), 256);
    let o = kgscat(dir.path(), &["--out", "out", "invert-j", "--z", z.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("delta"));
}

#[test]
fn invert_rho_without_j_exits_two() {
    let dir = TempDir::new().unwrap();
    let z = zero_z(dir.path(), 256);
    let cfg = config(dir.path(), "rho_only.toml", "[source.rho]\nkind = \"gaussian\"\nwidth = 1.0\n");
    let o = kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "out", "invert-rho", "--z", z.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn schema_violations_exit_two() {
    let dir = TempDir::new().unwrap();
    let cfg = config(dir.path(), "free.toml", FREE);
    let cases = [
        ("header.csv", "q,re,im\n0,0,0\n".to_string()),
        ("short.csv", "k,re,im\n0,0,0\n".to_string()),
        ("nan.csv", fs::read_to_string(zero_z(dir.path(), 256)).unwrap().replacen(",0,0", ",nan,0", 1)),
        ("offgrid.csv", fs::read_to_string(zero_z(dir.path(), 256)).unwrap().replacen("-2.0106", "-2.0206", 1)),
    ];
    for (name, text) in cases {
        let z = config(dir.path(), name, &text);
        for cmd in ["invert-rho", "invert-j"] {
            let o = kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "out", cmd, "--z", z.to_str().unwrap()]);
            assert_eq!(code(&o), 2, "{name} {cmd}: {}", stderr(&o));
        }
    }
    let o = kgscat(dir.path(), &["--config", cfg.to_str().unwrap(), "--out", "nowhere", "invert-rho"]);
    assert_eq!(code(&o), 2, "missing z.csv");
}

#[test]
fn rejected_continuation_exits_one_with_report() {
    let dir = TempDir::new().unwrap();
    let cfg = config(
        dir.path(),
        "gauss.toml",
        "[source]\ndelta = 1.0\n[source.j]\nkind = \"gaussian\"\na = 1.0\n[source.rho]\nkind = \"gaussian\"\nwidth = 1.0\n",
    );
    assert_eq!(code(&run(&dir, &cfg, "forward", "out")), 0);
    let o = run(&dir, &cfg, "invert-j", "out");
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("Taylor remainder"));
    let report = table(&dir.path().join("out/j_report.csv"));
    assert!(report.iter().any(|r| r[0] == "error" && r[2].contains("radius of convergence")));
}

#[test]
fn fock_check_is_exact() {
    let dir = TempDir::new().unwrap();
    let o = kgscat(dir.path(), &["--out", "out", "fock-check"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = table(&dir.path().join("out/fock_check.csv"));
    assert_eq!(rows[0], ["identity", "parameters", "residual"]);
    assert!(rows.len() > 10);
    for r in &rows[1..] {
        assert!(r[1].contains("d=2 N_max=6"));
        assert!(r[2].parse::<f64>().unwrap() <= 1e-12, "{r:?}");
    }
    let cfg = config(dir.path(), "big.toml", "[fock]\nmodes = 9\nn_max = 4\n");
    assert_eq!(code(&run(&dir, &cfg, "fock-check", "out")), 2);
}

#[test]
fn default_diagnostics_pass() {
    let dir = TempDir::new().unwrap();
    let o = kgscat(dir.path(), &["--out", "out", "diagnose"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let d = table(&dir.path().join("out/diagnostics.csv"));
    assert!(d[1..].iter().all(|r| r[4] == "pass"), "{:?}", d.iter().filter(|r| r[4] != "pass").collect::<Vec<_>>());
    for check in ["hs_norm", "hs_refinement", "balakrishnan_vs_spectral", "geometric_decay", "cook", "s_unitarity", "transfer_matrix", "s_intertwining"] {
        assert!(d.iter().any(|r| r[0] == check), "{check}");
    }
}

#[test]
fn coarse_grid_refinement_only_warns() {
    let dir = TempDir::new().unwrap();
    let cfg = config(
        dir.path(),
        "coarse.toml",
        "[grid]\nn = 64\n[pipeline]\nband_momenta = [1.5, 2.0]\nrefinement_tolerance = 1e-4\n",
    );
    let o = run(&dir, &cfg, "diagnose", "out");
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let d = table(&dir.path().join("out/diagnostics.csv"));
    let refinement: Vec<_> = d.iter().filter(|r| r[0].ends_with("refinement")).collect();
    assert!(!refinement.is_empty());
    assert!(refinement.iter().all(|r| r[4] == "warn"), "{refinement:?}");
}

#[test]
fn thread_cap_is_validated() {
    let dir = TempDir::new().unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_kgscat"))
        .current_dir(dir.path())
        .env("KGSCAT_THREADS", "zero")
        .args(["--out", "out", "fock-check"])
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    let one = Command::new(env!("CARGO_BIN_EXE_kgscat"))
        .current_dir(dir.path())
        .env("KGSCAT_THREADS", "1")
        .args(["--n", "128", "--out", "single", "forward"])
        .output()
        .unwrap();
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    assert_eq!(code(&kgscat(dir.path(), &["--n", "128", "--out", "many", "forward"])), 0);
    let a = fs::read(dir.path().join("single/z.csv")).unwrap();
    let b = fs::read(dir.path().join("many/z.csv")).unwrap();
    assert!(a == b, "z.csv depends on the thread count");
}
