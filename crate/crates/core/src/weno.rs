//! Fifth-order finite-difference WENO derivative for linear advection.
//!
//! Each Riemann variable is advected with a single signed speed, so the
//! reconstruction is a plain upwind-biased one; no flux splitting is needed.
//! The derivative at point `i` is `(F[i+1/2] - F[i-1/2]) / dx` with `F` the
//! WENO5 (Jiang–Shu) interface reconstruction of the point values.

use crate::error::{Error, Result};

/// Ghost cells per side: the radius of the five-point stencil plus one.
pub const GHOSTS: usize = 3;

const EPS: f64 = 1e-6;
const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

/// Upwind direction of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StencilDirection {
    /// For `q_t = +c q_x`, `c > 0`: information comes from the right.
    Leftward,
    /// For `q_t = -c q_x`, `c > 0`: information comes from the left.
    Rightward,
}

/// Weighting of the three candidate stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    /// Jiang–Shu nonlinear weights (`eps = 1e-6`, power 2).
    #[default]
    JiangShu,
    /// The linear (optimal) weights: the smooth limit of `JiangShu`, which
    /// makes the scheme a linear fifth-order upwind stencil.
    Optimal,
}

/// How to fill the ghost cells on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GhostRule {
    Periodic,
    /// Prescribed inflow value.
    Dirichlet(f64),
    /// Zeroth-order extrapolation of the boundary cell.
    Extrapolate,
}

/// Interior values with [`GHOSTS`] ghost cells on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedField {
    data: Vec<f64>,
}

impl PaddedField {
    /// `data` holds `GHOSTS + n + GHOSTS` values.
    pub fn from_padded(data: Vec<f64>) -> Result<Self> {
        if data.len() < 2 * GHOSTS {
            return Err(Error::TooFewPoints { min: 2 * GHOSTS, got: data.len() });
        }
        Ok(Self { data })
    }

    pub fn len(&self) -> usize {
        self.data.len() - 2 * GHOSTS
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn interior(&self) -> &[f64] {
        &self.data[GHOSTS..GHOSTS + self.len()]
    }

    pub fn left_ghosts(&self) -> &[f64] {
        &self.data[..GHOSTS]
    }

    pub fn right_ghosts(&self) -> &[f64] {
        &self.data[GHOSTS + self.len()..]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Copy `interior` into a padded field and fill the ghosts.
pub fn fill_ghosts(interior: &[f64], left: GhostRule, right: GhostRule) -> Result<PaddedField> {
    let mut data = vec![0.0; interior.len() + 2 * GHOSTS];
    fill_ghosts_into(interior, left, right, &mut data)?;
    Ok(PaddedField { data })
}

pub(crate) fn fill_ghosts_into(interior: &[f64], left: GhostRule, right: GhostRule, out: &mut [f64]) -> Result<()> {
    let n = interior.len();
    if n < GHOSTS {
        return Err(Error::TooFewPoints { min: GHOSTS, got: n });
    }
    if matches!(left, GhostRule::Periodic) != matches!(right, GhostRule::Periodic) {
        return Err(Error::OneSidedPeriodic);
    }
    debug_assert_eq!(out.len(), n + 2 * GHOSTS);
    out[GHOSTS..GHOSTS + n].copy_from_slice(interior);
    for g in 0..GHOSTS {
        out[g] = match left {
            GhostRule::Periodic => interior[n - GHOSTS + g],
            GhostRule::Dirichlet(v) => v,
            GhostRule::Extrapolate => interior[0],
        };
        out[GHOSTS + n + g] = match right {
            GhostRule::Periodic => interior[g],
            GhostRule::Dirichlet(v) => v,
            GhostRule::Extrapolate => interior[n - 1],
        };
    }
    Ok(())
}

/// Left-biased reconstruction at the interface between `f[2]` and `f[3]`
/// from the five values `f[0..5]` (interface `i+1/2` for `f = q[i-2..=i+2]`).
#[inline(always)]
fn reconstruct(f0: f64, f1: f64, f2: f64, f3: f64, f4: f64, weighting: Weighting) -> f64 {
    let q0 = (2.0 * f0 - 7.0 * f1 + 11.0 * f2) / 6.0;
    let q1 = (-f1 + 5.0 * f2 + 2.0 * f3) / 6.0;
    let q2 = (2.0 * f2 + 5.0 * f3 - f4) / 6.0;
    let [d0, d1, d2] = LINEAR_WEIGHTS;
    match weighting {
        Weighting::Optimal => d0 * q0 + d1 * q1 + d2 * q2,
        Weighting::JiangShu => {
            const C13: f64 = 13.0 / 12.0;
            let b0 = C13 * (f0 - 2.0 * f1 + f2).powi(2) + 0.25 * (f0 - 4.0 * f1 + 3.0 * f2).powi(2);
            let b1 = C13 * (f1 - 2.0 * f2 + f3).powi(2) + 0.25 * (f1 - f3).powi(2);
            let b2 = C13 * (f2 - 2.0 * f3 + f4).powi(2) + 0.25 * (3.0 * f2 - 4.0 * f3 + f4).powi(2);
            let w0 = d0 / (EPS + b0).powi(2);
            let w1 = d1 / (EPS + b1).powi(2);
            let w2 = d2 / (EPS + b2).powi(2);
            (w0 * q0 + w1 * q1 + w2 * q2) / (w0 + w1 + w2)
        }
    }
}

/// WENO5 approximation of `df/dx` on the interior points.
pub fn weno5_derivative(f: &PaddedField, dx: f64, dir: StencilDirection) -> Result<Vec<f64>> {
    weno5_derivative_with(f, dx, dir, Weighting::JiangShu)
}

pub fn weno5_derivative_with(f: &PaddedField, dx: f64, dir: StencilDirection, weighting: Weighting) -> Result<Vec<f64>> {
    let n = f.len();
    if n < 5 {
        return Err(Error::TooFewPoints { min: 5, got: n });
    }
    if !(dx > 0.0) {
        return Err(Error::InvalidStep(format!("dx must be positive, got {dx}")));
    }
    let mut out = vec![0.0; n];
    derivative_into(f.as_slice(), dx, dir, weighting, &mut out, &mut vec![0.0; n + 1]);
    Ok(out)
}

/// Kernel over a padded buffer; `flux` is scratch of length `n + 1`.
pub(crate) fn derivative_into(
    padded: &[f64],
    dx: f64,
    dir: StencilDirection,
    weighting: Weighting,
    out: &mut [f64],
    flux: &mut [f64],
) {
    let n = out.len();
    debug_assert_eq!(padded.len(), n + 2 * GHOSTS);
    debug_assert_eq!(flux.len(), n + 1);
    // flux[j] is the interface between interior points j-1 and j,
    // i.e. between padded[GHOSTS + j - 1] and padded[GHOSTS + j].
    match dir {
        StencilDirection::Rightward => {
            for (j, fl) in flux.iter_mut().enumerate() {
                let s = &padded[j..j + 5];
                *fl = reconstruct(s[0], s[1], s[2], s[3], s[4], weighting);
            }
        }
        StencilDirection::Leftward => {
            for (j, fl) in flux.iter_mut().enumerate() {
                let s = &padded[j + 1..j + 6];
                *fl = reconstruct(s[4], s[3], s[2], s[1], s[0], weighting);
            }
        }
    }
    let inv = 1.0 / dx;
    for i in 0..n {
        out[i] = (flux[i + 1] - flux[i]) * inv;
    }
}
