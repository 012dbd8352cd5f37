//! Physical parameters of the 1D Mindlin model, the positivity conditions on
//! the potential energy, reduced coefficients and energy densities.
//!
//! The model has macroscopic displacement `u` and microdeformation `chi` with
//!
//! ```text
//! K = 1/2 rho u_t^2 + 1/2 I_mu chi_t^2
//! W = 1/2 gamma u_x^2 + A u_x chi + 1/2 B chi^2 + 1/2 C chi_x^2
//! ```
//!
//! `W` is strictly positive definite iff `gamma, B, C > 0` and `gamma B - A^2 > 0`.

use std::fmt;

use crate::error::{check_len, Error, Result};
use crate::grid::Grid;
use crate::jet::Jet;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MaterialParams {
    pub rho: f64,
    pub i_mu: f64,
    pub gamma: f64,
    pub a_coupling: f64,
    pub b_micro: f64,
    pub c_micro: f64,
}

/// One of the strict inequalities a valid parameter set must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    RhoPositive,
    IMuPositive,
    GammaPositive,
    BPositive,
    CPositive,
    /// `gamma B - A^2 > 0`
    CouplingDefinite,
    /// `A != 0`
    CouplingNonzero,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Inequality::RhoPositive => "rho > 0",
            Inequality::IMuPositive => "i_mu > 0",
            Inequality::GammaPositive => "gamma > 0",
            Inequality::BPositive => "B > 0",
            Inequality::CPositive => "C > 0",
            Inequality::CouplingDefinite => "gamma*B - A^2 > 0",
            Inequality::CouplingNonzero => "A != 0",
        })
    }
}

impl MaterialParams {
    /// Parameter set used for the exact-solution benchmarks (arbitrary units).
    pub const REFERENCE: MaterialParams = MaterialParams {
        rho: 1.0,
        i_mu: 1.0,
        gamma: 0.99,
        a_coupling: -0.01,
        b_micro: 10.0,
        c_micro: 1.0,
    };

    pub fn new(rho: f64, i_mu: f64, gamma: f64, a_coupling: f64, b_micro: f64, c_micro: f64) -> Self {
        Self { rho, i_mu, gamma, a_coupling, b_micro, c_micro }
    }

    fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("rho", self.rho),
            ("i_mu", self.i_mu),
            ("gamma", self.gamma),
            ("a_coupling", self.a_coupling),
            ("b_micro", self.b_micro),
            ("c_micro", self.c_micro),
        ]
    }

    /// Every inequality that fails, in declaration order. Comparisons are strict.
    pub fn violations(&self) -> Vec<Inequality> {
        let mut out = Vec::new();
        let checks = [
            (self.rho > 0.0, Inequality::RhoPositive),
            (self.i_mu > 0.0, Inequality::IMuPositive),
            (self.gamma > 0.0, Inequality::GammaPositive),
            (self.b_micro > 0.0, Inequality::BPositive),
            (self.c_micro > 0.0, Inequality::CPositive),
            (
                self.gamma * self.b_micro - self.a_coupling * self.a_coupling > 0.0,
                Inequality::CouplingDefinite,
            ),
            (self.a_coupling != 0.0, Inequality::CouplingNonzero),
        ];
        for (ok, which) in checks {
            if !ok {
                out.push(which);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((name, _)) = self.named().into_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(name));
        }
        let violated = self.violations();
        if violated.is_empty() {
            Ok(())
        } else {
            Err(Error::Violated(violated))
        }
    }

    pub fn kinetic_density(&self, u_t: f64, chi_t: f64) -> f64 {
        0.5 * self.rho * u_t * u_t + 0.5 * self.i_mu * chi_t * chi_t
    }

    pub fn potential_density(&self, u_x: f64, chi: f64, chi_x: f64) -> f64 {
        0.5 * self.gamma * u_x * u_x
            + self.a_coupling * u_x * chi
            + 0.5 * self.b_micro * chi * chi
            + 0.5 * self.c_micro * chi_x * chi_x
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rho: self.rho * factor,
            i_mu: self.i_mu * factor,
            gamma: self.gamma * factor,
            a_coupling: self.a_coupling * factor,
            b_micro: self.b_micro * factor,
            c_micro: self.c_micro * factor,
        }
    }
}

/// Reduced coefficients of the second-order system
///
/// ```text
/// u_tt   = a1 u_xx + a2 chi_x
/// chi_tt = a3 chi_xx - a4 u_x - a5 chi
/// ```
///
/// together with the constants `c1`, `c2` that remove `u_x`, `chi_x` from the
/// characteristic equations of the Riemann-invariant form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub c1: f64,
    pub c2: f64,
}

impl DerivedCoefficients {
    pub fn from_params(p: &MaterialParams) -> Result<Self> {
        p.validate()?;
        Self::from_reduced(
            p.gamma / p.rho,
            p.a_coupling / p.rho,
            p.c_micro / p.i_mu,
            p.a_coupling / p.i_mu,
            p.b_micro / p.i_mu,
        )
    }

    /// Build directly from `a1..a5`, checking `a1, a3, a5 > 0`, `a2 a4 > 0`
    /// and `a2 a4 - a1 a5 < 0`.
    pub fn from_reduced(a1: f64, a2: f64, a3: f64, a4: f64, a5: f64) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3), ("a4", a4), ("a5", a5)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        let mut violated = Vec::new();
        if !(a1 > 0.0) {
            violated.push(Inequality::GammaPositive);
        }
        if !(a3 > 0.0) {
            violated.push(Inequality::CPositive);
        }
        if !(a5 > 0.0) {
            violated.push(Inequality::BPositive);
        }
        if !(a2 * a4 - a1 * a5 < 0.0) {
            violated.push(Inequality::CouplingDefinite);
        }
        if !(a2 * a4 > 0.0) {
            violated.push(Inequality::CouplingNonzero);
        }
        if !violated.is_empty() {
            return Err(Error::Violated(violated));
        }
        let (c1, c2) = coupling_constants(a1, a2, a3, a4);
        Ok(Self { a1, a2, a3, a4, a5, c1, c2 })
    }

    pub fn sqrt_a1(&self) -> f64 {
        self.a1.sqrt()
    }

    pub fn sqrt_a3(&self) -> f64 {
        self.a3.sqrt()
    }

    /// Largest characteristic speed.
    pub fn max_speed(&self) -> f64 {
        self.sqrt_a1().max(self.sqrt_a3())
    }
}

pub(crate) fn coupling_constants(a1: f64, a2: f64, a3: f64, a4: f64) -> (f64, f64) {
    let den = a1.sqrt() + a3.sqrt();
    (-a2 / den, a4 / den)
}

// Logistic step 1 / (1 + exp(400 (x0 - x))) and its first two x-derivatives.
const PROFILE_SLOPE: f64 = 400.0;
const EXP_CLAMP: f64 = 700.0;

fn logistic_jet(x: f64, x0: f64) -> Jet {
    let z = (PROFILE_SLOPE * (x0 - x)).clamp(-EXP_CLAMP, EXP_CLAMP);
    let s = 1.0 / (1.0 + z.exp());
    let d1 = PROFILE_SLOPE * s * (1.0 - s);
    let d2 = PROFILE_SLOPE * d1 * (1.0 - 2.0 * s);
    Jet::new(s, d1, d2)
}

/// Two-material profile: every parameter is `base * (1 + psi(x))` with
///
/// ```text
/// psi(x) = h [ 1/(1 + exp(400 (0.5 - x))) - 1/(1 + exp(400 (0.7 - x))) ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterProfile {
    pub base: MaterialParams,
    pub bump_height: f64,
}

/// Jets (value, d/dx, d²/dx²) of the six physical parameters at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub rho: Jet,
    pub i_mu: Jet,
    pub gamma: Jet,
    pub a_coupling: Jet,
    pub b_micro: Jet,
    pub c_micro: Jet,
}

impl ProfilePoint {
    pub fn constant(p: &MaterialParams) -> Self {
        Self {
            rho: Jet::constant(p.rho),
            i_mu: Jet::constant(p.i_mu),
            gamma: Jet::constant(p.gamma),
            a_coupling: Jet::constant(p.a_coupling),
            b_micro: Jet::constant(p.b_micro),
            c_micro: Jet::constant(p.c_micro),
        }
    }

    pub fn params(&self) -> MaterialParams {
        MaterialParams {
            rho: self.rho.v,
            i_mu: self.i_mu.v,
            gamma: self.gamma.v,
            a_coupling: self.a_coupling.v,
            b_micro: self.b_micro.v,
            c_micro: self.c_micro.v,
        }
    }

    pub fn a1(&self) -> Jet {
        self.gamma / self.rho
    }
    pub fn a2(&self) -> Jet {
        self.a_coupling / self.rho
    }
    pub fn a3(&self) -> Jet {
        self.c_micro / self.i_mu
    }
    pub fn a4(&self) -> Jet {
        self.a_coupling / self.i_mu
    }
    pub fn a5(&self) -> Jet {
        self.b_micro / self.i_mu
    }
    /// `gamma' / rho`
    pub fn b1(&self) -> f64 {
        self.gamma.d1 / self.rho.v
    }
    /// `A' / rho`
    pub fn b2(&self) -> f64 {
        self.a_coupling.d1 / self.rho.v
    }
    /// `C' / I_mu`
    pub fn b3(&self) -> f64 {
        self.c_micro.d1 / self.i_mu.v
    }
}

impl ParameterProfile {
    pub fn new(base: MaterialParams, bump_height: f64) -> Self {
        Self { base, bump_height }
    }

    pub fn psi(&self, x: f64) -> Jet {
        (logistic_jet(x, 0.5) - logistic_jet(x, 0.7)).scale(self.bump_height)
    }

    pub fn point(&self, x: f64) -> ProfilePoint {
        let factor = Jet::constant(1.0) + self.psi(x);
        let b = &self.base;
        ProfilePoint {
            rho: factor.scale(b.rho),
            i_mu: factor.scale(b.i_mu),
            gamma: factor.scale(b.gamma),
            a_coupling: factor.scale(b.a_coupling),
            b_micro: factor.scale(b.b_micro),
            c_micro: factor.scale(b.c_micro),
        }
    }

    pub fn params_at(&self, x: f64) -> MaterialParams {
        self.point(x).params()
    }

    pub fn sample(&self, grid: &Grid) -> Result<SampledProfile> {
        self.sample_points(&grid.points())
    }

    /// Sample at explicit coordinates, which must be strictly increasing and
    /// uniformly spaced.
    pub fn sample_points(&self, xs: &[f64]) -> Result<SampledProfile> {
        check_uniform(xs)?;
        let mut points = Vec::with_capacity(xs.len());
        for &x in xs {
            let pt = self.point(x);
            let violated = pt.params().violations();
            if !violated.is_empty() {
                return Err(Error::Profile { x, violated });
            }
            points.push(pt);
        }
        Ok(SampledProfile::from_points(xs.to_vec(), points))
    }
}

fn check_uniform(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonUniformGrid);
    }
    if xs.len() < 2 {
        return Ok(());
    }
    let h = xs[1] - xs[0];
    if !(h > 0.0) {
        return Err(Error::NonUniformGrid);
    }
    let scale = xs.iter().fold(h, |m, x| m.max(x.abs()));
    let uniform = xs.windows(2).all(|w| {
        let d = w[1] - w[0];
        d > 0.0 && (d - h).abs() <= 1e-12 * scale
    });
    if uniform {
        Ok(())
    } else {
        Err(Error::NonUniformGrid)
    }
}

/// Coefficient fields of a profile on a grid.
///
/// `d_rho_sqrt_a1` and `d_imu_sqrt_a3` are `d/dx (rho sqrt(a1))` and
/// `d/dx (I_mu sqrt(a3))`; `points` keeps the full jets for the gauge builder.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub x: Vec<f64>,
    pub points: Vec<ProfilePoint>,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub a3: Vec<f64>,
    pub a4: Vec<f64>,
    pub a5: Vec<f64>,
    pub b2: Vec<f64>,
    pub d_rho_sqrt_a1: Vec<f64>,
    pub d_imu_sqrt_a3: Vec<f64>,
}

impl SampledProfile {
    pub fn from_points(x: Vec<f64>, points: Vec<ProfilePoint>) -> Self {
        let col = |f: &dyn Fn(&ProfilePoint) -> f64| points.iter().map(f).collect::<Vec<_>>();
        Self {
            a1: col(&|p| p.a1().v),
            a2: col(&|p| p.a2().v),
            a3: col(&|p| p.a3().v),
            a4: col(&|p| p.a4().v),
            a5: col(&|p| p.a5().v),
            b2: col(&|p| p.b2()),
            d_rho_sqrt_a1: col(&|p| (p.rho * p.a1().sqrt()).d1),
            d_imu_sqrt_a3: col(&|p| (p.i_mu * p.a3().sqrt()).d1),
            x,
            points,
        }
    }

    /// Constant parameters on `grid`.
    pub fn uniform(p: &MaterialParams, grid: &Grid) -> Result<Self> {
        p.validate()?;
        let pt = ProfilePoint::constant(p);
        Ok(Self::from_points(grid.points(), vec![pt; grid.len()]))
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Fields entering the energy integral, all on the same grid.
#[derive(Debug, Clone, Copy)]
pub struct EnergyFields<'a> {
    pub u: &'a [f64],
    pub u_t: &'a [f64],
    pub u_x: &'a [f64],
    pub chi: &'a [f64],
    pub chi_t: &'a [f64],
    pub chi_x: &'a [f64],
}

/// `∫ (K + W) dx` by the midpoint rule on a cell-centred grid (exact for
/// constants, second order, rectangle rule on periodic domains).
///
/// `u` itself does not enter the densities; it is only length-checked.
/// Summation runs left to right so results are reproducible.
pub fn total_energy(f: &EnergyFields<'_>, p: &MaterialParams, dx: f64) -> Result<f64> {
    let n = f.u.len();
    for len in [f.u_t.len(), f.u_x.len(), f.chi.len(), f.chi_t.len(), f.chi_x.len()] {
        check_len(n, len)?;
    }
    let mut sum = 0.0;
    for i in 0..n {
        sum += p.kinetic_density(f.u_t[i], f.chi_t[i]) + p.potential_density(f.u_x[i], f.chi[i], f.chi_x[i]);
    }
    Ok(sum * dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_params_are_valid() {
        assert!(MaterialParams::REFERENCE.validate().is_ok());
    }

    #[test]
    fn negative_gamma_is_named() {
        let p = MaterialParams::new(1.0, 1.0, -1.0, 0.1, 1.0, 1.0);
        match p.validate() {
            Err(Error::Violated(v)) => assert!(v.contains(&Inequality::GammaPositive)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn indefinite_coupling_is_named() {
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.5, 1.0, 1.0);
        match p.validate() {
            Err(Error::Violated(v)) => assert_eq!(v, vec![Inequality::CouplingDefinite]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boundary_case_is_rejected() {
        // gamma B = A^2 exactly
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        assert!(matches!(p.validate(), Err(Error::Violated(v)) if v == vec![Inequality::CouplingDefinite]));
        let zero_a = MaterialParams { a_coupling: 0.0, ..MaterialParams::REFERENCE };
        assert!(matches!(zero_a.validate(), Err(Error::Violated(v)) if v == vec![Inequality::CouplingNonzero]));
    }

    #[test]
    fn non_finite_is_distinct() {
        let p = MaterialParams { b_micro: f64::NAN, ..MaterialParams::REFERENCE };
        assert!(matches!(p.validate(), Err(Error::NonFinite("b_micro"))));
        let p = MaterialParams { rho: f64::INFINITY, ..MaterialParams::REFERENCE };
        assert!(matches!(p.validate(), Err(Error::NonFinite("rho"))));
    }

    #[test]
    fn reference_coefficients() {
        let c = DerivedCoefficients::from_params(&MaterialParams::REFERENCE).unwrap();
        assert_eq!((c.a1, c.a2, c.a3, c.a4, c.a5), (0.99, -0.01, 1.0, -0.01, 10.0));
        // 40-digit evaluation of -a2/(sqrt(a1)+sqrt(a3))
        let c1 = 0.005012562893380045;
        assert!((c.c1 - c1).abs() < 1e-17);
        assert!((c.c2 + c1).abs() < 1e-17);
    }

    #[test]
    fn doubling_rho_halves_a1_a2() {
        let p = MaterialParams::REFERENCE;
        let c = DerivedCoefficients::from_params(&p).unwrap();
        let d = DerivedCoefficients::from_params(&MaterialParams { rho: 2.0 * p.rho, ..p }).unwrap();
        assert_eq!(d.a1, c.a1 / 2.0);
        assert_eq!(d.a2, c.a2 / 2.0);
        assert_eq!((d.a3, d.a4, d.a5), (c.a3, c.a4, c.a5));
    }

    #[test]
    fn invalid_params_do_not_derive() {
        let p = MaterialParams::new(1.0, 1.0, 1.0, 1.5, 1.0, 1.0);
        assert!(DerivedCoefficients::from_params(&p).is_err());
    }

    #[test]
    fn flat_profile_is_constant() {
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 0.0);
        let s = prof.sample(&Grid::unit(64)).unwrap();
        let c = SampledProfile::uniform(&MaterialParams::REFERENCE, &Grid::unit(64)).unwrap();
        assert_eq!(s, c);
        assert!(s.d_rho_sqrt_a1.iter().all(|&d| d == 0.0));
        assert!(s.d_imu_sqrt_a3.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn bump_values() {
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 0.1);
        // 40-digit evaluation: psi(0.6) = 0.1 - 8.5e-19, psi(0) = 1.4e-88, psi(1) = 0
        assert!((prof.psi(0.6).v - 0.1).abs() < 1e-16);
        assert!(prof.psi(0.0).v.abs() < 1e-80);
        assert!(prof.psi(1.0).v.abs() < 1e-80);
        let big = ParameterProfile::new(MaterialParams::REFERENCE, 1.0);
        assert!((big.params_at(0.6).gamma - 1.98).abs() < 1e-15);
    }

    #[test]
    fn psi_derivatives_match_finite_differences() {
        // smooth region so a small step resolves the 400-slope logistic
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 1.0);
        let h = 1e-6;
        for x in [0.49, 0.5, 0.505, 0.69, 0.71] {
            let j = prof.psi(x);
            let fd1 = (prof.psi(x + h).v - prof.psi(x - h).v) / (2.0 * h);
            let fd2 = (prof.psi(x + h).d1 - prof.psi(x - h).d1) / (2.0 * h);
            assert!((j.d1 - fd1).abs() < 1e-5 * (1.0 + j.d1.abs()), "x={x}");
            assert!((j.d2 - fd2).abs() < 1e-5 * (1.0 + j.d2.abs()), "x={x}");
        }
    }

    #[test]
    fn logistic_saturates_without_overflow() {
        let far_left = logistic_jet(-10.0, 0.5);
        let far_right = logistic_jet(10.0, 0.5);
        assert!(far_left.v.is_finite() && far_left.v < 1e-300);
        assert_eq!(far_right.v, 1.0);
        assert!(far_left.d1.is_finite() && far_right.d1 == 0.0);
    }

    #[test]
    fn invalid_profile_reports_x() {
        // h = -1 drives every parameter to zero on the plateau
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, -1.0);
        match prof.sample(&Grid::unit(100)) {
            Err(Error::Profile { x, .. }) => assert!(x > 0.5 && x < 0.7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_uniform_points_rejected() {
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 0.1);
        assert!(matches!(prof.sample_points(&[0.0, 0.1, 0.3]), Err(Error::NonUniformGrid)));
        assert!(matches!(prof.sample_points(&[0.2, 0.1, 0.0]), Err(Error::NonUniformGrid)));
    }

    #[test]
    fn energy_of_constant_velocity() {
        let n = 10;
        let one = vec![1.0; n];
        let zero = vec![0.0; n];
        let f = EnergyFields { u: &zero, u_t: &one, u_x: &zero, chi: &zero, chi_t: &zero, chi_x: &zero };
        let p = MaterialParams::REFERENCE;
        assert!((total_energy(&f, &p, 1.0 / n as f64).unwrap() - 0.5).abs() < 1e-15);
        let g = EnergyFields { u_t: &zero, ..f };
        assert_eq!(total_energy(&g, &p, 0.1).unwrap(), 0.0);
        let short = vec![0.0; n - 1];
        let bad = EnergyFields { chi_x: &short, ..f };
        assert!(matches!(total_energy(&bad, &p, 0.1), Err(Error::LengthMismatch { .. })));
    }
}
