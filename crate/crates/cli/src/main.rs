use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mindlin::config::{preset, string_literal};
use mindlin::driver::{self, format_csv, format_table, RunOutput};
use mindlin::exact::characteristic_roots;
use mindlin::snapshot::{write_snapshots, write_text, write_waterfall};
use mindlin::{parse_config, parse_config_str, DerivedCoefficients, Error, Grid, RunMode, SimConfig};

const EXIT_INVALID: u8 = 1;
const EXIT_BLOW_UP: u8 = 2;

/// Mindlin microstructure model: exact solutions and WENO5 / RK3 simulation.
#[derive(Parser, Debug)]
#[command(name = "mindlin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check material parameters and print the derived coefficients.
    Validate(ConfigArgs),
    /// Print the characteristic frequencies and sample the exact solution.
    Exact {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Sampling time.
        #[arg(long, default_value_t = 0.0)]
        t: f64,
    },
    /// Run one configuration and write its snapshots.
    Simulate(ConfigArgs),
    /// Error table over a sequence of grid sizes (exact mode).
    Convergence {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Grid sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024,2048")]
        ns: Vec<usize>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pulse experiment in the two-material profile.
    Inhomogeneous {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Waterfall file (`t, x, u_x + kappa t`); defaults next to the output when kappa != 0.
        #[arg(long)]
        waterfall: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// Configuration file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in configuration: test-a, test-b, inhomogeneous.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Generic override `key=value` (dotted keys, TOML values), repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    grid_n: Option<i64>,
    #[arg(long)]
    length: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    /// periodic, null_inflow or strain_excitation.
    #[arg(long)]
    regime: Option<String>,
    /// jiang_shu or optimal.
    #[arg(long)]
    weno_weights: Option<String>,
    /// Comma-separated output times.
    #[arg(long, value_delimiter = ',')]
    snapshot_times: Option<Vec<f64>>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    i_mu: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Coupling constant A.
    #[arg(long = "a", allow_hyphen_values = true)]
    a_coupling: Option<f64>,
    /// Microstructure constant B.
    #[arg(long = "b")]
    b_micro: Option<f64>,
    /// Microstructure constant C.
    #[arg(long = "c")]
    c_micro: Option<f64>,
    /// Profile bump height h.
    #[arg(long)]
    h: Option<f64>,
    /// pulse or none.
    #[arg(long)]
    excitation: Option<String>,
    /// Waterfall shift.
    #[arg(long)]
    kappa: Option<f64>,
}

impl ConfigArgs {
    fn overrides(&self) -> Result<Vec<(String, String)>, Error> {
        let mut o: Vec<(String, String)> = Vec::new();
        let mut num = |k: &str, v: Option<f64>| {
            if let Some(v) = v {
                o.push((k.into(), format!("{v:?}")));
            }
        };
        num("length", self.length);
        num("t_end", self.t_end);
        num("cfl", self.cfl);
        num("material.rho", self.rho);
        num("material.i_mu", self.i_mu);
        num("material.gamma", self.gamma);
        num("material.a", self.a_coupling);
        num("material.b", self.b_micro);
        num("material.c", self.c_micro);
        num("inhomogeneous.h", self.h);
        num("inhomogeneous.kappa", self.kappa);
        if let Some(n) = self.grid_n {
            o.push(("grid_n".into(), n.to_string()));
        }
        let mut text = |k: &str, v: &Option<String>| {
            if let Some(v) = v {
                o.push((k.into(), string_literal(v)));
            }
        };
        text("regime", &self.regime);
        text("weno_weights", &self.weno_weights);
        text("inhomogeneous.excitation", &self.excitation);
        if let Some(p) = &self.output {
            o.push(("output".into(), string_literal(&p.to_string_lossy())));
        }
        if let Some(ts) = &self.snapshot_times {
            let items: Vec<String> = ts.iter().map(|t| format!("{t:?}")).collect();
            o.push(("snapshot_times".into(), format!("[{}]", items.join(", "))));
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
            o.push((k.trim().into(), v.trim().into()));
        }
        Ok(o)
    }

    fn load(&self, default_preset: &str) -> Result<SimConfig, Error> {
        let overrides = self.overrides()?;
        match (&self.config, &self.preset) {
            (Some(path), _) => parse_config(path, &overrides),
            (None, p) => parse_config_str(preset(p.as_deref().unwrap_or(default_preset))?, &overrides),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BlowUp { .. } => EXIT_BLOW_UP,
        _ => EXIT_INVALID,
    }
}

fn validate(args: &ConfigArgs) -> Result<(), Error> {
    let cfg = args.load("test-a")?;
    let c = DerivedCoefficients::from_params(&cfg.params)?;
    println!("parameters valid");
    println!("a1 = {:.16e}\na2 = {:.16e}\na3 = {:.16e}\na4 = {:.16e}\na5 = {:.16e}", c.a1, c.a2, c.a3, c.a4, c.a5);
    println!("c1 = {:.16e}\nc2 = {:.16e}", c.c1, c.c2);
    println!("speeds: sqrt(a1) = {:.16e}, sqrt(a3) = {:.16e}", c.sqrt_a1(), c.sqrt_a3());
    Ok(())
}

fn exact(args: &ConfigArgs, t: f64) -> Result<(), Error> {
    let mut cfg = args.load("test-a")?;
    if cfg.mode != RunMode::ExactVerify {
        return Err(Error::Config("mode: `exact` needs an exact-mode configuration".into()));
    }
    let sol = driver::exact_solution(&cfg)?;
    for m in &cfg.modes {
        let (xi, eta) = characteristic_roots(&sol.coeffs, m.omega)?;
        eprintln!("{:?} omega = {:.16e}: xi = {xi:.16e}, eta = {eta:.16e}", m.family, m.omega);
    }
    let grid = Grid::new(cfg.grid_n, cfg.length)?;
    let mut out = String::from("t,x,u,chi,u_t,chi_t,u_x,chi_x\n");
    for x in grid.points() {
        let p = sol.eval(t, x);
        out.push_str(&format!(
            "{t:.16e},{x:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            p.u, p.chi, p.u_t, p.chi_t, p.u_x, p.chi_x
        ));
    }
    match cfg.output.take() {
        Some(path) => write_text(&path, &out),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn simulate(args: &ConfigArgs, default_preset: &str, require: Option<RunMode>, waterfall: Option<&Path>) -> Result<(), Error> {
    let cfg = args.load(default_preset)?;
    if require.is_some_and(|m| m != cfg.mode) {
        return Err(Error::Config("mode: this subcommand needs mode = inhomogeneous".into()));
    }
    let out = driver::run(&cfg)?;
    match &out {
        RunOutput::Exact(r) => {
            println!("N = {}, steps = {}", r.report.n, r.steps);
            println!("err(u) = {:.6e}\nerr(chi) = {:.6e}", r.report.err_u, r.report.err_chi);
            println!("relative energy drift = {:.3e}", r.energy_drift());
        }
        RunOutput::Inhomogeneous(r) => {
            println!("N = {}, steps = {}, h = {}", cfg.grid_n, r.steps, cfg.bump_height);
        }
    }
    if let Some(path) = &cfg.output {
        write_snapshots(path, out.snapshots())?;
        println!("wrote {} snapshot(s) to {}", out.snapshots().len(), path.display());
    }
    let wf = match (waterfall, &cfg.output) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(o)) if cfg.kappa != 0.0 => Some(o.with_extension("waterfall.csv")),
        _ => None,
    };
    if let Some(p) = wf {
        write_waterfall(&p, out.snapshots(), cfg.kappa)?;
        println!("wrote waterfall (kappa = {}) to {}", cfg.kappa, p.display());
    }
    Ok(())
}

fn convergence(args: &ConfigArgs, ns: &[usize], csv: Option<&Path>) -> Result<(), Error> {
    let cfg = args.load("test-a")?;
    let rows = mindlin::convergence_study(&cfg, ns)?;
    print!("{}", format_table(&rows));
    if let Some(p) = csv {
        write_text(p, &format_csv(&rows))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Exact { cfg, t } => exact(cfg, *t),
        Command::Simulate(a) => simulate(a, "test-a", None, None),
        Command::Convergence { cfg, ns, csv } => convergence(cfg, ns, csv.as_deref()),
        Command::Inhomogeneous { cfg, waterfall } => simulate(cfg, "inhomogeneous", Some(RunMode::Inhomogeneous), waterfall.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
