//! Third-order TVD (SSP) Runge-Kutta stepping in Shu–Osher form.

use crate::error::{Error, Result};

/// CFL-based step selection with exact landing on `t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub cfl: f64,
    pub t_end: f64,
    pub max_speed: f64,
}

impl StepControl {
    pub const DEFAULT_CFL: f64 = 0.4;

    /// `min(cfl dx / max_speed, t_end - t)`.
    pub fn compute_dt(&self, dx: f64, t: f64) -> Result<f64> {
        if !(self.max_speed > 0.0) || !self.max_speed.is_finite() {
            return Err(Error::InvalidStep(format!("max speed must be positive, got {}", self.max_speed)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidStep(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(dx > 0.0) {
            return Err(Error::InvalidStep(format!("dx must be positive, got {dx}")));
        }
        if !(t < self.t_end) {
            return Err(Error::InvalidStep(format!("t = {t} is not before t_end = {}", self.t_end)));
        }
        Ok((self.cfl * dx / self.max_speed).min(self.t_end - t))
    }

    /// Iterator over `(t, dt)` pairs from `t0` to `t_end`; the last step is
    /// truncated and the final time is exactly `t_end`.
    pub fn steps(&self, dx: f64, t0: f64) -> Result<Steps> {
        let nominal = if t0 < self.t_end { self.compute_dt(dx, t0)? } else { 0.0 };
        Ok(Steps { t: t0, t_end: self.t_end, nominal })
    }
}

#[derive(Debug, Clone)]
pub struct Steps {
    t: f64,
    t_end: f64,
    nominal: f64,
}

impl Iterator for Steps {
    /// `(t, dt, t_next)` with `t_next == t_end` on the final step.
    type Item = (f64, f64, f64);

    fn next(&mut self) -> Option<Self::Item> {
        if !(self.t < self.t_end) {
            return None;
        }
        let remaining = self.t_end - self.t;
        let next = if self.nominal >= remaining { self.t_end } else { self.t + self.nominal };
        let t = self.t;
        // the step actually taken, so the state time and the clock agree exactly
        let dt = next - t;
        self.t = next;
        Some((t, dt, next))
    }
}

/// Reusable stage buffers for [`Rk3::step`].
#[derive(Debug, Clone, Default)]
pub struct Rk3 {
    stage: Vec<f64>,
    rate: Vec<f64>,
}

impl Rk3 {
    pub fn new(len: usize) -> Self {
        Self { stage: vec![0.0; len], rate: vec![0.0; len] }
    }

    /// Advance `y` from `t` to `t + dt` in place.
    ///
    /// ```text
    /// y1 = y + dt L(y, t)
    /// y2 = 3/4 y + 1/4 (y1 + dt L(y1, t + dt))
    /// y+ = 1/3 y + 2/3 (y2 + dt L(y2, t + dt/2))
    /// ```
    ///
    /// `rhs(y, t, out)` must write `L(y, t)` into `out` and apply any
    /// boundary data for time `t`.
    pub fn step<F>(&mut self, y: &mut [f64], t: f64, dt: f64, mut rhs: F) -> Result<()>
    where
        F: FnMut(&[f64], f64, &mut [f64]) -> Result<()>,
    {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidStep(format!("dt must be positive, got {dt}")));
        }
        let n = y.len();
        self.stage.resize(n, 0.0);
        self.rate.resize(n, 0.0);
        let (stage, rate) = (&mut self.stage, &mut self.rate);

        rhs(y, t, rate)?;
        for i in 0..n {
            stage[i] = y[i] + dt * rate[i];
        }
        check_finite(stage, t)?;

        rhs(stage, t + dt, rate)?;
        for i in 0..n {
            stage[i] = 0.75 * y[i] + 0.25 * (stage[i] + dt * rate[i]);
        }
        check_finite(stage, t + dt)?;

        rhs(stage, t + 0.5 * dt, rate)?;
        for i in 0..n {
            y[i] = y[i] / 3.0 + 2.0 / 3.0 * (stage[i] + dt * rate[i]);
        }
        check_finite(y, t + dt)
    }
}

fn check_finite(y: &[f64], t: f64) -> Result<()> {
    if y.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::BlowUp { t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_operator_is_identity() {
        let mut y = vec![1.0, -2.5, 3.25];
        let before = y.clone();
        Rk3::new(3).step(&mut y, 0.0, 0.1, |_, _, out| {
            out.fill(0.0);
            Ok(())
        })
        .unwrap();
        assert_eq!(y, before);
    }

    #[test]
    fn one_step_is_cubic_taylor() {
        let mut y = vec![1.0];
        Rk3::new(1).step(&mut y, 0.0, 0.1, |y, _, out| {
            out[0] = -y[0];
            Ok(())
        })
        .unwrap();
        // 1 - 0.1 + 0.005 - 0.001/6
        assert!((y[0] - 0.9048333333333333).abs() < 1e-15);
    }

    #[test]
    fn blow_up_is_reported() {
        let mut y = vec![1.0];
        let r = Rk3::new(1).step(&mut y, 2.0, 0.1, |_, _, out| {
            out[0] = f64::INFINITY;
            Ok(())
        });
        assert!(matches!(r, Err(Error::BlowUp { t }) if t == 2.0));
    }

    #[test]
    fn dt_formula_and_truncation() {
        let c = StepControl { cfl: 0.4, t_end: 1.0, max_speed: 1.0 };
        assert_eq!(c.compute_dt(1.0 / 128.0, 0.0).unwrap(), 0.4 / 128.0);
        assert!((c.compute_dt(1.0 / 128.0, 0.0).unwrap() - 0.003125).abs() < 1e-18);
        assert_eq!(c.compute_dt(1.0 / 128.0, 1.0 - 1e-5).unwrap(), 1.0 - (1.0 - 1e-5));
        let bad = StepControl { max_speed: 0.0, ..c };
        assert!(bad.compute_dt(0.1, 0.0).is_err());
    }

    #[test]
    fn steps_land_on_t_end() {
        let c = StepControl { cfl: 0.4, t_end: 10.0, max_speed: 1.0 };
        let steps: Vec<_> = c.steps(1.0 / 128.0, 0.0).unwrap().collect();
        assert_eq!(steps.last().unwrap().2, 10.0);
        assert!(steps.iter().all(|&(_, dt, _)| dt > 0.0));
        assert!(steps.windows(2).all(|w| w[0].2 == w[1].0));
        assert_eq!(c.steps(0.1, 10.0).unwrap().count(), 0);
    }
}
