//! Boundary regimes for the Riemann-invariant system.
//!
//! `u`, `chi` travel leftward and take data at `x = L`; `v`, `w` travel
//! rightward and take data at `x = 0`. The other side of each field is an
//! outflow and is closed by zeroth-order extrapolation.

use crate::error::{Error, Result};
use crate::transform::GaugeFields;
use crate::weno::GhostRule;

/// Raised-cosine strain pulse: `(1 + cos(pi (1 - 50 t))) / 2` on `[0, 0.04]`.
pub fn excitation_eps(t: f64) -> f64 {
    if (0.0..=0.04).contains(&t) {
        0.5 * (1.0 + (std::f64::consts::PI * (1.0 - 50.0 * t)).cos())
    } else {
        0.0
    }
}

/// Strain history imposed at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Excitation {
    #[default]
    Pulse,
    None,
}

impl Excitation {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Excitation::Pulse => excitation_eps(t),
            Excitation::None => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryRegime {
    Periodic,
    /// All prescribed boundary values are zero.
    NullInflow,
    /// `u_x(t, 0-) = eps(t)`, imposed through the `v` inflow value.
    StrainExcitation(Excitation),
}

impl BoundaryRegime {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "periodic" => Ok(Self::Periodic),
            "null_inflow" => Ok(Self::NullInflow),
            "strain_excitation" => Ok(Self::StrainExcitation(Excitation::Pulse)),
            other => Err(Error::Config(format!(
                "regime: unknown boundary regime `{other}` (expected periodic, null_inflow or strain_excitation)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Periodic => "periodic",
            Self::NullInflow => "null_inflow",
            Self::StrainExcitation(_) => "strain_excitation",
        }
    }
}

/// Boundary-cell values at `x = 0` retained between accepted steps.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryMemory {
    /// `u` at the boundary cell one accepted step ago, with that step's size.
    pub previous: Option<(f64, f64)>,
    pub u: f64,
    pub chi: f64,
}

impl BoundaryMemory {
    pub fn at_rest() -> Self {
        Self::default()
    }

    /// Record the boundary values after an accepted step of size `dt`.
    pub fn advance(&mut self, u: f64, chi: f64, dt: f64) {
        self.previous = Some((self.u, dt));
        self.u = u;
        self.chi = chi;
    }

    /// Backward difference for `u_t` at the boundary; 0 before the first step.
    pub fn u_t(&self) -> Result<f64> {
        match self.previous {
            None => Ok(0.0),
            Some((_, 0.0)) => Err(Error::InvalidStep("boundary difference with dt = 0".into())),
            Some((prev, dt)) => Ok((self.u - prev) / dt),
        }
    }
}

/// Inflow value `v(t, 0-) = u_t - sqrt(a1(0)) eps + varphi1(0) u + varphi2(0) chi`.
pub fn inflow_v(memory: &BoundaryMemory, gauge: &GaugeFields, eps: f64) -> Result<f64> {
    if gauge.is_empty() {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    let u_t = memory.u_t()?;
    Ok(u_t - gauge.sqrt_a1[0] * eps + gauge.gauge[0][0] * memory.u + gauge.gauge[1][0] * memory.chi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGhosts {
    pub left: GhostRule,
    pub right: GhostRule,
}

/// Ghost rules for `[u, chi, v, w]` at time `t`.
pub fn apply_regime(
    regime: &BoundaryRegime,
    t: f64,
    gauge: &GaugeFields,
    memory: &BoundaryMemory,
) -> Result<[FieldGhosts; 4]> {
    let periodic = FieldGhosts { left: GhostRule::Periodic, right: GhostRule::Periodic };
    let leftward = FieldGhosts { left: GhostRule::Extrapolate, right: GhostRule::Dirichlet(0.0) };
    let rightward = |inflow: f64| FieldGhosts { left: GhostRule::Dirichlet(inflow), right: GhostRule::Extrapolate };
    Ok(match regime {
        BoundaryRegime::Periodic => [periodic; 4],
        BoundaryRegime::NullInflow => [leftward, leftward, rightward(0.0), rightward(0.0)],
        BoundaryRegime::StrainExcitation(exc) => {
            let v0 = inflow_v(memory, gauge, exc.eval(t))?;
            [leftward, leftward, rightward(v0), rightward(0.0)]
        }
    })
}
