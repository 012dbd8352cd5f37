//! Closed-form trigonometric solutions of the constant-coefficient system.
//!
//! With `u = U(t) sin(omega x)`, `chi = X(t) cos(omega x)` the amplitudes obey
//! a linear fourth-order ODE whose characteristic polynomial is the biquadratic
//!
//! ```text
//! lambda^4 + S lambda^2 + P = 0,
//! S = (a1 + a3) omega^2 + a5,
//! P = omega^2 [a1 a3 omega^2 + (a1 a5 - a2 a4)].
//! ```
//!
//! For valid coefficients all four roots are purely imaginary, `±i xi`, `±i eta`.

use crate::error::{Error, Result};
use crate::material::DerivedCoefficients;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `u ~ sin(omega x)`, `chi ~ cos(omega x)`
    SinCos,
    /// `u ~ cos(omega x)`, `chi ~ sin(omega x)`
    CosSin,
}

/// Coefficients `(S, P, Delta)` of the characteristic biquadratic.
pub fn biquadratic(c: &DerivedCoefficients, omega: f64) -> (f64, f64, f64) {
    let w2 = omega * omega;
    let s = (c.a1 + c.a3) * w2 + c.a5;
    let p = w2 * (c.a1 * c.a3 * w2 + (c.a1 * c.a5 - c.a2 * c.a4));
    let q = (c.a3 - c.a1) * w2 + c.a5;
    let delta = q * q + 4.0 * c.a2 * c.a4 * w2;
    (s, p, delta)
}

/// Temporal frequencies `(xi, eta)`, `xi > eta > 0`.
///
/// `xi^2` comes from `(S + sqrt(Delta)) / 2` and `eta^2` from the product
/// `P / xi^2`; the difference form loses most digits when `a2 a4` is small.
pub fn characteristic_roots(c: &DerivedCoefficients, omega: f64) -> Result<(f64, f64)> {
    if omega == 0.0 {
        return Err(Error::ZeroOmega);
    }
    if !omega.is_finite() {
        return Err(Error::NonFinite("omega"));
    }
    // re-run the coefficient checks
    DerivedCoefficients::from_reduced(c.a1, c.a2, c.a3, c.a4, c.a5)?;
    let (s, p, delta) = biquadratic(c, omega);
    assert!(delta > 0.0, "degenerate biquadratic: Delta = {delta}");
    let xi2 = 0.5 * (s + delta.sqrt());
    let eta2 = p / xi2;
    Ok((xi2.sqrt(), eta2.sqrt()))
}

/// Temporal factors of one mode and their time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub u: f64,
    pub x: f64,
    pub u_t: f64,
    pub x_t: f64,
    pub u_tt: f64,
    pub x_tt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactMode {
    pub family: Family,
    pub omega: f64,
    pub k: [f64; 4],
    pub xi: f64,
    pub eta: f64,
    // X(t) = ratio_xi (k1 cos + k2 sin)(xi t) + ratio_eta (k3 cos + k4 sin)(eta t)
    ratio_xi: f64,
    ratio_eta: f64,
}

impl ExactMode {
    pub fn new(family: Family, omega: f64, k: [f64; 4], c: &DerivedCoefficients) -> Result<Self> {
        let (xi, eta) = characteristic_roots(c, omega)?;
        let a2w = c.a2 * omega;
        let a1w2 = c.a1 * omega * omega;
        // SinCos: X = -(U'' + a1 w^2 U) / (a2 w).
        // CosSin: U'' = -a1 w^2 U + a2 w X, so X = +(U'' + a1 w^2 U) / (a2 w).
        let sign = match family {
            Family::SinCos => 1.0,
            Family::CosSin => -1.0,
        };
        Ok(Self {
            family,
            omega,
            k,
            xi,
            eta,
            ratio_xi: sign * (xi * xi - a1w2) / a2w,
            ratio_eta: sign * (eta * eta - a1w2) / a2w,
        })
    }

    pub fn amplitudes(&self, t: f64) -> Amplitudes {
        let [k1, k2, k3, k4] = self.k;
        let (sx, cx) = (self.xi * t).sin_cos();
        let (se, ce) = (self.eta * t).sin_cos();
        let p = k1 * cx + k2 * sx;
        let p_t = self.xi * (-k1 * sx + k2 * cx);
        let q = k3 * ce + k4 * se;
        let q_t = self.eta * (-k3 * se + k4 * ce);
        let (xi2, eta2) = (self.xi * self.xi, self.eta * self.eta);
        Amplitudes {
            u: p + q,
            x: self.ratio_xi * p + self.ratio_eta * q,
            u_t: p_t + q_t,
            x_t: self.ratio_xi * p_t + self.ratio_eta * q_t,
            u_tt: -xi2 * p - eta2 * q,
            x_tt: -xi2 * self.ratio_xi * p - eta2 * self.ratio_eta * q,
        }
    }

    pub fn eval(&self, t: f64, x: f64) -> PointValue {
        let a = self.amplitudes(t);
        let w = self.omega;
        let (s, c) = (w * x).sin_cos();
        // (spatial factor of u, of chi) with first and second x-derivatives
        let (fu, fu_x, fc, fc_x) = match self.family {
            Family::SinCos => (s, w * c, c, -w * s),
            Family::CosSin => (c, -w * s, s, w * c),
        };
        let w2 = w * w;
        PointValue {
            u: a.u * fu,
            chi: a.x * fc,
            u_t: a.u_t * fu,
            chi_t: a.x_t * fc,
            u_x: a.u * fu_x,
            chi_x: a.x * fc_x,
            u_tt: a.u_tt * fu,
            chi_tt: a.x_tt * fc,
            u_tx: a.u_t * fu_x,
            chi_tx: a.x_t * fc_x,
            u_xx: -w2 * a.u * fu,
            chi_xx: -w2 * a.x * fc,
        }
    }
}

/// Values and derivatives of `u` and `chi` at one point in space-time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointValue {
    pub u: f64,
    pub chi: f64,
    pub u_t: f64,
    pub chi_t: f64,
    pub u_x: f64,
    pub chi_x: f64,
    pub u_tt: f64,
    pub chi_tt: f64,
    pub u_tx: f64,
    pub chi_tx: f64,
    pub u_xx: f64,
    pub chi_xx: f64,
}

impl std::ops::AddAssign for PointValue {
    fn add_assign(&mut self, o: Self) {
        self.u += o.u;
        self.chi += o.chi;
        self.u_t += o.u_t;
        self.chi_t += o.chi_t;
        self.u_x += o.u_x;
        self.chi_x += o.chi_x;
        self.u_tt += o.u_tt;
        self.chi_tt += o.chi_tt;
        self.u_tx += o.u_tx;
        self.chi_tx += o.chi_tx;
        self.u_xx += o.u_xx;
        self.chi_xx += o.chi_xx;
    }
}

/// Superposition of modes sharing one set of coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub coeffs: DerivedCoefficients,
    pub modes: Vec<ExactMode>,
}

impl ExactSolution {
    pub fn new(coeffs: DerivedCoefficients, specs: &[(Family, f64, [f64; 4])]) -> Result<Self> {
        let modes = specs
            .iter()
            .map(|&(family, omega, k)| ExactMode::new(family, omega, k, &coeffs))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs, modes })
    }

    pub fn eval(&self, t: f64, x: f64) -> PointValue {
        let mut out = PointValue::default();
        for m in &self.modes {
            out += m.eval(t, x);
        }
        out
    }

    /// Precompute the spatial factors on fixed points for fast repeated
    /// evaluation of `u` and `chi`.
    pub fn sampler(&self, xs: &[f64]) -> ExactSampler {
        let factors = self
            .modes
            .iter()
            .map(|m| {
                xs.iter()
                    .map(|&x| {
                        let (s, c) = (m.omega * x).sin_cos();
                        match m.family {
                            Family::SinCos => (s, c),
                            Family::CosSin => (c, s),
                        }
                    })
                    .collect()
            })
            .collect();
        ExactSampler { modes: self.modes.clone(), factors }
    }
}

/// [`ExactSolution`] restricted to a fixed set of points.
#[derive(Debug, Clone)]
pub struct ExactSampler {
    modes: Vec<ExactMode>,
    factors: Vec<Vec<(f64, f64)>>,
}

impl ExactSampler {
    pub fn len(&self) -> usize {
        self.factors.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `u(t, x_i)` and `chi(t, x_i)`; agrees with [`ExactSolution::eval`].
    pub fn fields_into(&self, t: f64, u: &mut [f64], chi: &mut [f64]) {
        u.fill(0.0);
        chi.fill(0.0);
        for (m, f) in self.modes.iter().zip(&self.factors) {
            let a = m.amplitudes(t);
            for ((u, chi), &(fu, fc)) in u.iter_mut().zip(chi.iter_mut()).zip(f) {
                *u += a.u * fu;
                *chi += a.x * fc;
            }
        }
    }
}
