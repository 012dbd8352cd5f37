//! Run orchestration: initial data, time loop, error measurement, snapshots.

use std::fmt::Write as _;

use crate::config::{RunMode, SimConfig};
use crate::error::{Error, Result};
use crate::exact::{ExactSolution, Family};
use crate::grid::Grid;
use crate::material::{total_energy, DerivedCoefficients, EnergyFields, ParameterProfile};
use crate::snapshot::Snapshot;
use crate::solver::Solver;
use crate::time::StepControl;
use crate::transform::{forward_transform, inverse_transform, GaugeFields, PhysicalFields, State};

/// Accumulated errors of one exact-verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub err_u: f64,
    pub err_chi: f64,
    /// `log2(err_prev / err)` against the previous, coarser entry.
    pub order_u: Option<f64>,
    pub order_chi: Option<f64>,
}

/// `max_i |exact_i - num_i| / (1 + |exact_i|)`.
pub fn relative_max_error(exact: &[f64], num: &[f64]) -> f64 {
    exact.iter().zip(num).fold(0.0, |m, (e, q)| f64::max(m, (e - q).abs() / (1.0 + e.abs())))
}

#[derive(Debug, Clone)]
pub struct ExactRun {
    pub report: ErrorReport,
    pub snapshots: Vec<Snapshot>,
    /// `(t, E)` at `t = 0` and at every snapshot time.
    pub energy: Vec<(f64, f64)>,
    pub final_state: State,
    pub steps: usize,
}

impl ExactRun {
    /// `max |E(t) - E(0)| / |E(0)|` over the recorded times.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy[0].1;
        self.energy.iter().fold(0.0, |m, &(_, e)| f64::max(m, (e - e0).abs() / e0.abs()))
    }
}

#[derive(Debug, Clone)]
pub struct InhomogeneousRun {
    pub snapshots: Vec<Snapshot>,
    pub final_state: State,
    pub steps: usize,
}

#[derive(Debug, Clone)]
pub enum RunOutput {
    Exact(ExactRun),
    Inhomogeneous(InhomogeneousRun),
}

impl RunOutput {
    pub fn snapshots(&self) -> &[Snapshot] {
        match self {
            RunOutput::Exact(r) => &r.snapshots,
            RunOutput::Inhomogeneous(r) => &r.snapshots,
        }
    }
}

pub fn run(cfg: &SimConfig) -> Result<RunOutput> {
    match cfg.mode {
        RunMode::ExactVerify => run_exact(cfg).map(RunOutput::Exact),
        RunMode::Inhomogeneous => run_inhomogeneous(cfg).map(RunOutput::Inhomogeneous),
    }
}

pub fn exact_solution(cfg: &SimConfig) -> Result<ExactSolution> {
    let coeffs = DerivedCoefficients::from_params(&cfg.params)?;
    let specs: Vec<(Family, f64, [f64; 4])> = cfg.modes.iter().map(|m| (m.family, m.omega, m.k)).collect();
    ExactSolution::new(coeffs, &specs)
}

/// Exact fields at `t` on the grid, with analytic derivatives.
pub fn exact_fields(sol: &ExactSolution, grid: &Grid, t: f64) -> PhysicalFields {
    let mut q = PhysicalFields::default();
    for x in grid.points() {
        let p = sol.eval(t, x);
        q.u.push(p.u);
        q.chi.push(p.chi);
        q.u_t.push(p.u_t);
        q.chi_t.push(p.chi_t);
        q.u_x.push(p.u_x);
        q.chi_x.push(p.chi_x);
    }
    q
}

fn snapshot(solver: &mut Solver, s: &State, t: f64) -> Result<Snapshot> {
    let [ux, ..] = solver.spatial_derivatives(s, t)?;
    Ok(Snapshot {
        t,
        x: s.grid().points(),
        u: s.u().to_vec(),
        chi: s.chi().to_vec(),
        v: s.v().to_vec(),
        w: s.w().to_vec(),
        ux,
    })
}

/// Total energy of a numerical state, with `u_x`, `chi_x` from the
/// solver's WENO derivatives and `u_t`, `chi_t` from the inverse transform.
pub fn state_energy(solver: &mut Solver, s: &State, t: f64, cfg: &SimConfig) -> Result<f64> {
    let [ux, cx, ..] = solver.spatial_derivatives(s, t)?;
    let (ut, ct) = inverse_transform(s, &ux, &cx, solver.gauge())?;
    let f = EnergyFields { u: s.u(), u_t: &ut, u_x: &ux, chi: s.chi(), chi_t: &ct, chi_x: &cx };
    total_energy(&f, &cfg.params, s.grid().dx())
}

/// Step from `t0` through the sorted `stops`, landing exactly on each.
/// `on_step(state, t)` runs after every accepted step, `on_stop` at each stop
/// (including `t0` itself when it is listed).
fn march(
    solver: &mut Solver,
    state: &mut State,
    control: StepControl,
    stops: &[f64],
    mut on_step: impl FnMut(&State, f64),
    mut on_stop: impl FnMut(&mut Solver, &State, f64) -> Result<()>,
) -> Result<usize> {
    let dx = state.grid().dx();
    let mut t = 0.0;
    let mut steps = 0;
    let mut targets: Vec<f64> = stops.to_vec();
    if targets.last().is_none_or(|&l| l < control.t_end) {
        targets.push(control.t_end);
    }
    let listed = |t: f64| stops.contains(&t);
    if listed(t) {
        on_stop(solver, state, t)?;
    }
    for &target in &targets {
        if target <= t {
            continue;
        }
        let seg = StepControl { t_end: target, ..control };
        for (t0, dt, t1) in seg.steps(dx, t)? {
            solver.step(state, t0, dt)?;
            on_step(state, t1);
            steps += 1;
        }
        t = target;
        if listed(t) {
            on_stop(solver, state, t)?;
        }
    }
    Ok(steps)
}

/// Exact-solution run with errors, snapshots and energy history.
pub fn run_exact(cfg: &SimConfig) -> Result<ExactRun> {
    if cfg.mode != RunMode::ExactVerify {
        return Err(Error::Config("mode: exact verification requires mode = exact".into()));
    }
    cfg.validate()?;
    let grid = Grid::new(cfg.grid_n, cfg.length)?;
    let sol = exact_solution(cfg)?;
    let gauge = GaugeFields::constant(&sol.coeffs, grid.len());
    let control = StepControl { cfl: cfg.cfl, t_end: cfg.t_end, max_speed: gauge.max_speed() };
    let mut state = forward_transform(&exact_fields(&sol, &grid, 0.0), &gauge, grid)?;
    let mut solver = Solver::new(grid, gauge, cfg.regime, cfg.weighting)?;
    solver.reset_memory(&state);

    let sampler = sol.sampler(&grid.points());
    let (mut eu, mut ec) = (vec![0.0; grid.len()], vec![0.0; grid.len()]);
    let (mut err_u, mut err_chi) = (0.0f64, 0.0f64);
    let mut measure = |s: &State, t: f64| {
        sampler.fields_into(t, &mut eu, &mut ec);
        err_u = err_u.max(relative_max_error(&eu, s.u()));
        err_chi = err_chi.max(relative_max_error(&ec, s.chi()));
    };
    measure(&state, 0.0);

    let mut snapshots = Vec::new();
    let mut energy = vec![(0.0, state_energy(&mut solver, &state, 0.0, cfg)?)];
    let stops = cfg.stops();
    let steps = march(&mut solver, &mut state, control, &stops, &mut measure, |solver, s, t| {
        snapshots.push(snapshot(solver, s, t)?);
        if t > 0.0 {
            energy.push((t, state_energy(solver, s, t, cfg)?));
        }
        Ok(())
    })?;
    Ok(ExactRun {
        report: ErrorReport { n: cfg.grid_n, err_u, err_chi, order_u: None, order_chi: None },
        snapshots,
        energy,
        final_state: state,
        steps,
    })
}

pub fn run_exact_verification(cfg: &SimConfig) -> Result<ErrorReport> {
    run_exact(cfg).map(|r| r.report)
}

/// Rest initial data in the two-material profile, driven from `x = 0`.
pub fn run_inhomogeneous(cfg: &SimConfig) -> Result<InhomogeneousRun> {
    if cfg.mode != RunMode::Inhomogeneous {
        return Err(Error::Config("mode: inhomogeneous run requires mode = inhomogeneous".into()));
    }
    cfg.validate()?;
    let grid = Grid::new(cfg.grid_n, cfg.length)?;
    let profile = ParameterProfile::new(cfg.params, cfg.bump_height).sample(&grid)?;
    let gauge = GaugeFields::variable(&profile);
    let control = StepControl { cfl: cfg.cfl, t_end: cfg.t_end, max_speed: gauge.max_speed() };
    let mut state = State::zeros(grid);
    let mut solver = Solver::new(grid, gauge, cfg.regime, cfg.weighting)?;
    solver.reset_memory(&state);
    let mut snapshots = Vec::new();
    let steps = march(&mut solver, &mut state, control, &cfg.stops(), |_, _| {}, |solver, s, t| {
        snapshots.push(snapshot(solver, s, t)?);
        Ok(())
    })?;
    Ok(InhomogeneousRun { snapshots, final_state: state, steps })
}

/// Run the exact-verification template at each `N` (concurrently) and fill
/// in observed orders between consecutive entries.
pub fn convergence_study(template: &SimConfig, ns: &[usize]) -> Result<Vec<ErrorReport>> {
    if template.mode != RunMode::ExactVerify {
        return Err(Error::Config("mode: convergence study requires mode = exact".into()));
    }
    let cfgs: Vec<SimConfig> =
        ns.iter().map(|&n| SimConfig { grid_n: n, snapshot_times: Vec::new(), ..template.clone() }).collect();
    for c in &cfgs {
        c.validate()?;
    }
    let results: Vec<Result<ErrorReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cfgs.iter().map(|c| scope.spawn(move || run_exact_verification(c))).collect();
        handles.into_iter().map(|h| h.join().expect("convergence worker panicked")).collect()
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    fill_orders(&mut reports);
    Ok(reports)
}

/// Observed orders `log2(e_prev / e) / log2(n / n_prev)`.
pub fn fill_orders(reports: &mut [ErrorReport]) {
    for i in 1..reports.len() {
        let (p, c) = (reports[i - 1], reports[i]);
        let ratio = (c.n as f64 / p.n as f64).log2();
        reports[i].order_u = Some((p.err_u / c.err_u).log2() / ratio);
        reports[i].order_chi = Some((p.err_chi / c.err_chi).log2() / ratio);
    }
}

fn order_text(o: Option<f64>) -> String {
    o.map(|o| format!("{o:.2}")).unwrap_or_default()
}

/// Aligned text table of a convergence study.
pub fn format_table(reports: &[ErrorReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>6}  {:>12}  {:>7}  {:>12}  {:>7}", "N", "err(u)", "order", "err(chi)", "order");
    for r in reports {
        let _ = writeln!(
            s,
            "{:>6}  {:>12.4e}  {:>7}  {:>12.4e}  {:>7}",
            r.n,
            r.err_u,
            order_text(r.order_u),
            r.err_chi,
            order_text(r.order_chi)
        );
    }
    s
}

/// CSV form: `n,err_u,order_u,err_chi,order_chi`, orders blank when absent.
pub fn format_csv(reports: &[ErrorReport]) -> String {
    let mut s = String::from("n,err_u,order_u,err_chi,order_chi\n");
    let o = |o: Option<f64>| o.map(|o| format!("{o:.16e}")).unwrap_or_default();
    for r in reports {
        let _ = writeln!(s, "{},{:.16e},{},{:.16e},{}", r.n, r.err_u, o(r.order_u), r.err_chi, o(r.order_chi));
    }
    s
}
