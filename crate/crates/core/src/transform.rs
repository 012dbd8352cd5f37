//! Riemann-invariant form of the Mindlin system.
//!
//! With `alpha = u_t - sqrt(a1) u_x`, `beta = chi_t - sqrt(a3) chi_x` and
//!
//! ```text
//! v = alpha + varphi1 u + varphi2 chi
//! w = beta  + varphi3 u + varphi4 chi
//! ```
//!
//! the second-order system becomes four advection equations with zeroth-order
//! coupling:
//!
//! ```text
//! u_t   =  sqrt(a1) u_x   - varphi1 u - varphi2 chi + v
//! chi_t =  sqrt(a3) chi_x - varphi3 u - varphi4 chi + w
//! v_t   = -sqrt(a1) v_x + Phi1 u + Phi2 chi + varphi1 v + varphi2 w
//! w_t   = -sqrt(a3) w_x + Phi3 u + Phi4 chi + varphi3 v + varphi4 w
//! ```
//!
//! Naming: the `varphi_i` are called *gauge* coefficients (they are chosen so
//! that `u_x`, `chi_x` drop out of the `v`, `w` equations) and the `Phi_i`
//! *source* coefficients.

use crate::error::{check_len, Result};
use crate::grid::Grid;
use crate::jet::Jet;
use crate::material::{DerivedCoefficients, ProfilePoint, SampledProfile};

/// The four evolved fields `u, chi, v, w`, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    grid: Grid,
    data: Vec<f64>,
}

impl State {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, data: vec![0.0; 4 * grid.len()] }
    }

    pub fn from_fields(grid: Grid, u: Vec<f64>, chi: Vec<f64>, v: Vec<f64>, w: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        for f in [&u, &chi, &v, &w] {
            check_len(n, f.len())?;
        }
        let mut data = u;
        data.extend(chi);
        data.extend(v);
        data.extend(w);
        Ok(Self { grid, data })
    }

    /// Wrap a flat `[u | chi | v | w]` buffer.
    pub fn from_flat(grid: Grid, data: Vec<f64>) -> Result<Self> {
        check_len(4 * grid.len(), data.len())?;
        Ok(Self { grid, data })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn field(&self, k: usize) -> &[f64] {
        let n = self.len();
        &self.data[k * n..(k + 1) * n]
    }

    pub fn u(&self) -> &[f64] {
        self.field(0)
    }
    pub fn chi(&self) -> &[f64] {
        self.field(1)
    }
    pub fn v(&self) -> &[f64] {
        self.field(2)
    }
    pub fn w(&self) -> &[f64] {
        self.field(3)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_flat(self) -> Vec<f64> {
        self.data
    }
}

/// Physical description of the motion on a grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhysicalFields {
    pub u: Vec<f64>,
    pub chi: Vec<f64>,
    pub u_t: Vec<f64>,
    pub chi_t: Vec<f64>,
    pub u_x: Vec<f64>,
    pub chi_x: Vec<f64>,
}

/// Gauge (`varphi`) and source (`Phi`) coefficients plus the two
/// characteristic speeds, sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFields {
    pub gauge: [Vec<f64>; 4],
    pub source: [Vec<f64>; 4],
    pub sqrt_a1: Vec<f64>,
    pub sqrt_a3: Vec<f64>,
}

// -0.0 -> +0.0, everything else unchanged
fn canon(x: f64) -> f64 {
    x + 0.0
}

impl GaugeFields {
    pub fn len(&self) -> usize {
        self.sqrt_a1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sqrt_a1.is_empty()
    }

    pub fn max_speed(&self) -> f64 {
        self.sqrt_a1.iter().chain(&self.sqrt_a3).fold(0.0, |m, &s| m.max(s))
    }

    /// Constant coefficients: `varphi = (0, c1, c2, 0)`,
    /// `Phi = (-c1 c2, 0, 0, -(c1 c2 + a5))`.
    pub fn constant(c: &DerivedCoefficients, n: usize) -> Self {
        let fill = |x: f64| vec![canon(x); n];
        Self {
            gauge: [fill(0.0), fill(c.c1), fill(c.c2), fill(0.0)],
            source: [fill(-(c.c1 * c.c2)), fill(0.0), fill(0.0), fill(-(c.c1 * c.c2 + c.a5))],
            sqrt_a1: fill(c.a1.sqrt()),
            sqrt_a3: fill(c.a3.sqrt()),
        }
    }

    /// Pointwise coefficients from a sampled (possibly variable) profile.
    ///
    /// The `varphi_i'` entering `Phi_i` are obtained by differentiating the
    /// closed forms through the profile jets; nothing is differenced
    /// numerically.
    pub fn variable(profile: &SampledProfile) -> Self {
        let n = profile.len();
        let mut g: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
        let mut s: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(n));
        let mut s1v = Vec::with_capacity(n);
        let mut s3v = Vec::with_capacity(n);
        for p in &profile.points {
            let c = PointGauge::new(p);
            for k in 0..4 {
                g[k].push(canon(c.gauge[k].v));
                s[k].push(canon(c.source[k]));
            }
            s1v.push(c.sqrt_a1.v);
            s3v.push(c.sqrt_a3.v);
        }
        Self { gauge: g, source: s, sqrt_a1: s1v, sqrt_a3: s3v }
    }

    fn check(&self, n: usize) -> Result<()> {
        check_len(n, self.len())
    }
}

// Gauge and source coefficients at one point, gauge kept as jets.
struct PointGauge {
    gauge: [Jet; 4],
    source: [f64; 4],
    sqrt_a1: Jet,
    sqrt_a3: Jet,
}

impl PointGauge {
    fn new(p: &ProfilePoint) -> Self {
        let s1 = p.a1().sqrt();
        let s3 = p.a3().sqrt();
        let sum = s1 + s3;
        let g1 = -((p.rho * s1).derivative() / p.rho).scale(0.5);
        let g2 = -(p.a2() / sum);
        let g3 = p.a4() / sum;
        let g4 = -((s3 * p.i_mu).derivative() / p.i_mu).scale(0.5);
        let a5 = p.a5().v;
        let src1 = s1.v * g1.d1 - g1.v * g1.v - g2.v * g3.v;
        let src2 = s1.v * g2.d1 + p.b2() - g1.v * g2.v - g2.v * g4.v;
        let src3 = s3.v * g3.d1 - g3.v * g1.v - g4.v * g3.v;
        let src4 = s3.v * g4.d1 - a5 - g3.v * g2.v - g4.v * g4.v;
        Self { gauge: [g1, g2, g3, g4], source: [src1, src2, src3, src4], sqrt_a1: s1, sqrt_a3: s3 }
    }
}

/// Coefficients of `u_x`, `chi_x` in the `v` and `w` equations before the
/// gauge is substituted: `[v: u_x, v: chi_x, w: u_x, w: chi_x]`.
/// The gauge choice makes all four vanish.
pub fn uneliminated_coefficients(p: &ProfilePoint) -> [f64; 4] {
    let c = PointGauge::new(p);
    let (s1, s3) = (c.sqrt_a1.v, c.sqrt_a3.v);
    let [g1, g2, g3, g4] = c.gauge.map(|j| j.v);
    let (a1, a3) = (p.a1(), p.a3());
    let k1 = a1.v / p.rho.v * p.rho.d1 + 0.5 * a1.d1;
    let k3 = a3.v / p.i_mu.v * p.i_mu.d1 + 0.5 * a3.d1;
    [
        s1 * g1 + k1 + g1 * s1,
        s1 * g2 + p.a2().v + g2 * s3,
        s3 * g3 - p.a4().v + g3 * s1,
        s3 * g4 + k3 + g4 * s3,
    ]
}

/// `(u, chi, u_t, chi_t, u_x, chi_x) -> (u, chi, v, w)`.
pub fn forward_transform(q: &PhysicalFields, gauge: &GaugeFields, grid: Grid) -> Result<State> {
    let n = grid.len();
    for f in [&q.u, &q.chi, &q.u_t, &q.chi_t, &q.u_x, &q.chi_x] {
        check_len(n, f.len())?;
    }
    gauge.check(n)?;
    let [g1, g2, g3, g4] = &gauge.gauge;
    let mut v = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let alpha = q.u_t[i] - gauge.sqrt_a1[i] * q.u_x[i];
        let beta = q.chi_t[i] - gauge.sqrt_a3[i] * q.chi_x[i];
        v.push(alpha + g1[i] * q.u[i] + g2[i] * q.chi[i]);
        w.push(beta + g3[i] * q.u[i] + g4[i] * q.chi[i]);
    }
    State::from_fields(grid, q.u.clone(), q.chi.clone(), v, w)
}

/// Recover `(u_t, chi_t)` from the invariants and the spatial derivatives.
pub fn inverse_transform(s: &State, u_x: &[f64], chi_x: &[f64], gauge: &GaugeFields) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = s.len();
    check_len(n, u_x.len())?;
    check_len(n, chi_x.len())?;
    gauge.check(n)?;
    let [g1, g2, g3, g4] = &gauge.gauge;
    let (u, chi, v, w) = (s.u(), s.chi(), s.v(), s.w());
    let mut u_t = Vec::with_capacity(n);
    let mut chi_t = Vec::with_capacity(n);
    for i in 0..n {
        u_t.push(gauge.sqrt_a1[i] * u_x[i] - g1[i] * u[i] - g2[i] * chi[i] + v[i]);
        chi_t.push(gauge.sqrt_a3[i] * chi_x[i] - g3[i] * u[i] - g4[i] * chi[i] + w[i]);
    }
    Ok((u_t, chi_t))
}

/// Upwinded spatial derivatives of the four fields.
#[derive(Debug, Clone, Copy)]
pub struct Derivatives<'a> {
    pub u: &'a [f64],
    pub chi: &'a [f64],
    pub v: &'a [f64],
    pub w: &'a [f64],
}

/// Time derivative of the state given the spatial derivatives.
pub fn rhs(s: &State, gauge: &GaugeFields, d: &Derivatives<'_>) -> Result<State> {
    let n = s.len();
    for f in [d.u, d.chi, d.v, d.w] {
        check_len(n, f.len())?;
    }
    gauge.check(n)?;
    let mut out = State::zeros(*s.grid());
    rhs_into(s.as_slice(), gauge, d, out.as_mut_slice());
    Ok(out)
}

/// Unchecked kernel of [`rhs`] over flat `[u | chi | v | w]` buffers.
pub(crate) fn rhs_into(y: &[f64], gauge: &GaugeFields, d: &Derivatives<'_>, out: &mut [f64]) {
    let n = gauge.len();
    let (u, rest) = y.split_at(n);
    let (chi, rest) = rest.split_at(n);
    let (v, w) = rest.split_at(n);
    let (ou, rest) = out.split_at_mut(n);
    let (ochi, rest) = rest.split_at_mut(n);
    let (ov, ow) = rest.split_at_mut(n);
    let [g1, g2, g3, g4] = &gauge.gauge;
    let [p1, p2, p3, p4] = &gauge.source;
    for i in 0..n {
        ou[i] = gauge.sqrt_a1[i] * d.u[i] - g1[i] * u[i] - g2[i] * chi[i] + v[i];
        ochi[i] = gauge.sqrt_a3[i] * d.chi[i] - g3[i] * u[i] - g4[i] * chi[i] + w[i];
        ov[i] = -gauge.sqrt_a1[i] * d.v[i] + p1[i] * u[i] + p2[i] * chi[i] + g1[i] * v[i] + g2[i] * w[i];
        ow[i] = -gauge.sqrt_a3[i] * d.w[i] + p3[i] * u[i] + p4[i] * chi[i] + g3[i] * v[i] + g4[i] * w[i];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::{MaterialParams, ParameterProfile};

    fn coeffs() -> DerivedCoefficients {
        DerivedCoefficients::from_params(&MaterialParams::REFERENCE).unwrap()
    }

    #[test]
    fn constant_gauge_reference_values() {
        let g = GaugeFields::constant(&coeffs(), 3);
        // 40-digit evaluation of -(c1 c2 + a5)
        assert!((g.source[3][0] + 9.99997487421324).abs() < 1e-14);
        assert_eq!(g.source[1], vec![0.0; 3]);
        assert_eq!(g.source[2], vec![0.0; 3]);
        assert_eq!(g.gauge[0], vec![0.0; 3]);
        assert_eq!(g.gauge[3], vec![0.0; 3]);
        assert_eq!(g.max_speed(), 1.0);
    }

    #[test]
    fn unit_velocity_transforms_to_unit_v() {
        let grid = Grid::unit(4);
        let z = vec![0.0; 4];
        let q = PhysicalFields { u_t: vec![1.0; 4], u: z.clone(), chi: z.clone(), chi_t: z.clone(), u_x: z.clone(), chi_x: z.clone() };
        let g = GaugeFields::constant(&coeffs(), 4);
        let s = forward_transform(&q, &g, grid).unwrap();
        assert_eq!(s.v(), &[1.0; 4]);
        assert_eq!(s.w(), &[0.0; 4]);
        let zero = PhysicalFields { u_t: z.clone(), ..q.clone() };
        assert_eq!(forward_transform(&zero, &g, grid).unwrap(), State::zeros(grid));
        let (ut, ct) = inverse_transform(&State::zeros(grid), &z, &z, &g).unwrap();
        assert_eq!((ut, ct), (z.clone(), z.clone()));
        let short = PhysicalFields { chi_x: vec![0.0; 3], ..q };
        assert!(forward_transform(&short, &g, grid).is_err());
    }

    #[test]
    fn rhs_reads_off_constant_system() {
        let c = coeffs();
        let grid = Grid::unit(5);
        let g = GaugeFields::constant(&c, 5);
        let z = vec![0.0; 5];
        let v0 = 0.75;
        let s = State::from_fields(grid, z.clone(), z.clone(), vec![v0; 5], z.clone()).unwrap();
        let d = Derivatives { u: &z, chi: &z, v: &z, w: &z };
        let r = rhs(&s, &g, &d).unwrap();
        assert_eq!(r.u(), &[v0; 5]);
        assert_eq!(r.chi(), &[0.0; 5]);
        assert_eq!(r.v(), &[0.0; 5]);
        assert_eq!(r.w(), &[c.c2 * v0; 5]);
        assert_eq!(rhs(&State::zeros(grid), &g, &d).unwrap(), State::zeros(grid));
    }

    #[test]
    fn flat_profile_gauge_is_constant_gauge() {
        let grid = Grid::unit(32);
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 0.0).sample(&grid).unwrap();
        let var = GaugeFields::variable(&prof);
        let con = GaugeFields::constant(&coeffs(), 32);
        let bits = |g: &GaugeFields| -> Vec<u64> {
            g.gauge.iter().chain(&g.source).chain([&g.sqrt_a1, &g.sqrt_a3]).flatten().map(|x| x.to_bits()).collect()
        };
        assert_eq!(bits(&var), bits(&con));
    }

    #[test]
    fn plateau_gauge_matches_base() {
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 0.1);
        let sampled = prof.sample_points(&[0.6]).unwrap();
        let g = GaugeFields::variable(&sampled);
        let c = coeffs();
        assert!((g.gauge[1][0] - c.c1).abs() < 1e-17);
        assert!((g.gauge[2][0] - c.c2).abs() < 1e-17);
        // psi'(0.6) ~ 1e-15: gauge derivatives vanish on the plateau
        let p = PointGauge::new(&sampled.points[0]);
        for j in p.gauge {
            assert!(j.d1.abs() < 1e-12, "{j:?}");
        }
    }

    #[test]
    fn elimination_leaves_no_derivative_terms() {
        let prof = ParameterProfile::new(MaterialParams::REFERENCE, 1.0);
        for x in [0.3, 0.495, 0.5, 0.51, 0.6, 0.7, 0.703] {
            let r = uneliminated_coefficients(&prof.point(x));
            for c in r {
                assert!(c.abs() < 1e-12, "x={x}: {r:?}");
            }
        }
    }
}
