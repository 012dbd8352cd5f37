//! Semi-discrete operator (ghosts + WENO5 + Riemann-invariant right-hand
//! side) and the time loop around it.

use crate::boundary::{apply_regime, BoundaryMemory, BoundaryRegime};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::time::Rk3;
use crate::transform::{rhs_into, Derivatives, GaugeFields, State};
use crate::weno::{derivative_into, fill_ghosts_into, StencilDirection, Weighting, GHOSTS};

/// Upwind direction of `u, chi, v, w`.
pub const DIRECTIONS: [StencilDirection; 4] = [
    StencilDirection::Leftward,
    StencilDirection::Leftward,
    StencilDirection::Rightward,
    StencilDirection::Rightward,
];

#[derive(Debug, Clone)]
struct Operator {
    grid: Grid,
    gauge: GaugeFields,
    regime: BoundaryRegime,
    weighting: Weighting,
    memory: BoundaryMemory,
    padded: Vec<f64>,
    flux: Vec<f64>,
    derivs: Vec<f64>,
}

impl Operator {
    fn derivatives(&mut self, y: &[f64], t: f64) -> Result<()> {
        let n = self.grid.len();
        let dx = self.grid.dx();
        let ghosts = apply_regime(&self.regime, t, &self.gauge, &self.memory)?;
        for k in 0..4 {
            fill_ghosts_into(&y[k * n..(k + 1) * n], ghosts[k].left, ghosts[k].right, &mut self.padded)?;
            derivative_into(
                &self.padded,
                dx,
                DIRECTIONS[k],
                self.weighting,
                &mut self.derivs[k * n..(k + 1) * n],
                &mut self.flux,
            );
        }
        Ok(())
    }

    fn eval(&mut self, y: &[f64], t: f64, out: &mut [f64]) -> Result<()> {
        self.derivatives(y, t)?;
        let n = self.grid.len();
        let d = &self.derivs;
        let d = Derivatives { u: &d[..n], chi: &d[n..2 * n], v: &d[2 * n..3 * n], w: &d[3 * n..] };
        rhs_into(y, &self.gauge, &d, out);
        Ok(())
    }
}

/// Method-of-lines solver for one configuration.
#[derive(Debug, Clone)]
pub struct Solver {
    op: Operator,
    rk: Rk3,
}

impl Solver {
    pub fn new(grid: Grid, gauge: GaugeFields, regime: BoundaryRegime, weighting: Weighting) -> Result<Self> {
        let n = grid.len();
        if n < 5 {
            return Err(Error::TooFewPoints { min: 5, got: n });
        }
        if gauge.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: gauge.len() });
        }
        Ok(Self {
            op: Operator {
                grid,
                gauge,
                regime,
                weighting,
                memory: BoundaryMemory::at_rest(),
                padded: vec![0.0; n + 2 * GHOSTS],
                flux: vec![0.0; n + 1],
                derivs: vec![0.0; 4 * n],
            },
            rk: Rk3::new(4 * n),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.op.grid
    }

    pub fn gauge(&self) -> &GaugeFields {
        &self.op.gauge
    }

    pub fn memory(&self) -> &BoundaryMemory {
        &self.op.memory
    }

    /// Seed the boundary memory from an initial state.
    pub fn reset_memory(&mut self, s: &State) {
        self.op.memory = BoundaryMemory { previous: None, u: s.u()[0], chi: s.chi()[0] };
    }

    /// `L(y, t)` for a flat `[u | chi | v | w]` buffer.
    pub fn eval_rhs(&mut self, y: &[f64], t: f64, out: &mut [f64]) -> Result<()> {
        let n = 4 * self.op.grid.len();
        if y.len() != n || out.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: y.len().min(out.len()) });
        }
        self.op.eval(y, t, out)
    }

    /// Upwinded WENO derivatives of the four fields at time `t`, as used in
    /// the right-hand side.
    pub fn spatial_derivatives(&mut self, s: &State, t: f64) -> Result<[Vec<f64>; 4]> {
        self.op.derivatives(s.as_slice(), t)?;
        let n = s.len();
        Ok(std::array::from_fn(|k| self.op.derivs[k * n..(k + 1) * n].to_vec()))
    }

    /// One accepted SSP-RK3 step; boundary memory advances afterwards.
    pub fn step(&mut self, s: &mut State, t: f64, dt: f64) -> Result<()> {
        let op = &mut self.op;
        self.rk.step(s.as_mut_slice(), t, dt, |y, t, out| op.eval(y, t, out))?;
        self.op.memory.advance(s.u()[0], s.chi()[0], dt);
        Ok(())
    }
}
