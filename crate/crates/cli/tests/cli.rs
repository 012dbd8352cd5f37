use std::process::{Command, Output};

fn mindlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mindlin")).args(args).output().expect("run mindlin")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_reports_coefficients() {
    let o = mindlin(&["validate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("c1 = 5.0125628933800452e-3"));
}

#[test]
fn invalid_parameters_exit_1_and_name_the_inequality() {
    let o = mindlin(&["validate", "--a", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gamma*B - A^2 > 0"));
}

#[test]
fn bad_flags_exit_1() {
    assert_eq!(mindlin(&["simulate", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(mindlin(&["simulate", "--set", "grid_n=4"]).status.code(), Some(1));
    assert_eq!(mindlin(&["simulate", "--set", "nonsense"]).status.code(), Some(1));
    assert_eq!(mindlin(&["simulate", "--preset", "nope"]).status.code(), Some(1));
    assert_eq!(mindlin(&["--help"]).status.code(), Some(0));
}

#[test]
fn blow_up_exits_2() {
    let o = mindlin(&["simulate", "--grid-n", "8", "--b", "1e12", "--t-end", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("blow-up"));
}

#[test]
fn exact_prints_frequencies_and_samples() {
    let o = mindlin(&["exact", "--grid-n", "8"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("xi = 7.03411667383507"), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "t,x,u,chi,u_t,chi_t,u_x,chi_x");
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn simulate_writes_snapshots_and_flags_override_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        r#"mode = "exact"
grid_n = 32
t_end = 5.0
snapshot_times = [0.5]

[material]
rho = 1.0
i_mu = 1.0
gamma = 0.99
a = -0.01
b = 10.0
c = 1.0

[[exact.modes]]
omega = "2pi"
k = [1, 1, 1, 1]
"#,
    )
    .unwrap();
    let out = dir.path().join("snap.csv");
    let o = mindlin(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--t-end",
        "0.5",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("err(u) = "));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,x,u,chi,v,w,ux");
    assert_eq!(text.lines().count(), 33);
    assert!(text.lines().nth(1).unwrap().starts_with("5.0000000000000000e-1,"));
}

#[test]
fn simulate_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "mode = \"exact\"\ngrid_n = 32\ncolour = 3\n").unwrap();
    let o = mindlin(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"), "{}", stderr(&o));
}

#[test]
fn convergence_prints_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("conv.csv");
    let o = mindlin(&["convergence", "--ns", "16,32", "--t-end", "0.5", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = stdout(&o);
    assert!(table.lines().next().unwrap().contains("err(chi)"));
    assert_eq!(table.lines().count(), 3);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("n,err_u,order_u,err_chi,order_chi\n16,"));
}

#[test]
fn inhomogeneous_with_waterfall() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pulse.csv");
    let o = mindlin(&[
        "inhomogeneous",
        "--grid-n",
        "128",
        "--t-end",
        "0.2",
        "--snapshot-times",
        "0.1,0.2",
        "--h",
        "1",
        "--kappa",
        "0.5",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 1 + 2 * 128);
    let wf = std::fs::read_to_string(dir.path().join("pulse.waterfall.csv")).unwrap();
    assert_eq!(wf.lines().next().unwrap(), "t,x,ux_shifted");
    // exact config handed to the inhomogeneous subcommand
    let o = mindlin(&["inhomogeneous", "--preset", "test-a"]);
    assert_eq!(o.status.code(), Some(1));
}
