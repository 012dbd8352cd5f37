//! Run configuration and its TOML file format.
//!
//! ```toml
//! mode = "exact"            # or "inhomogeneous"
//! grid_n = 128
//! # length = 1.0, cfl = 0.4, t_end = 10 (exact) / 0.8 (inhomogeneous)
//! regime = "periodic"       # periodic | null_inflow | strain_excitation
//! snapshot_times = [10.0]
//! output = "test_a.csv"
//!
//! [material]
//! rho = 1
//! i_mu = 1
//! gamma = 0.99
//! a = -0.01
//! b = 10
//! c = 1
//!
//! [[exact.modes]]
//! family = "sincos"         # or "cossin"
//! omega = "2pi"             # number, or a multiple of pi
//! k = [1, 1, 1, 1]
//!
//! [inhomogeneous]
//! h = 0.1
//! excitation = "pulse"      # or "none"
//! kappa = 0.0
//! ```
//!
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::boundary::{BoundaryRegime, Excitation};
use crate::error::{Error, Result};
use crate::exact::Family;
use crate::material::MaterialParams;
use crate::time::StepControl;
use crate::weno::Weighting;

pub const MIN_GRID_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    ExactVerify,
    Inhomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSpec {
    pub family: Family,
    pub omega: f64,
    pub k: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub mode: RunMode,
    pub params: MaterialParams,
    /// Bump height `h` of the two-material profile (inhomogeneous runs).
    pub bump_height: f64,
    pub grid_n: usize,
    pub length: f64,
    pub t_end: f64,
    pub cfl: f64,
    pub modes: Vec<ModeSpec>,
    pub regime: BoundaryRegime,
    pub weighting: Weighting,
    pub snapshot_times: Vec<f64>,
    pub output: Option<PathBuf>,
    /// Waterfall shift: `u_x + kappa t` is written when `kappa != 0`.
    pub kappa: f64,
}

impl SimConfig {
    pub const DEFAULT_T_END_EXACT: f64 = 10.0;
    pub const DEFAULT_T_END_INHOMOGENEOUS: f64 = 0.8;

    /// Single mode, `omega = 2 pi`, `k = (1, 1, 1, 1)`, `t` in `[0, 10]`.
    pub fn test_a(grid_n: usize) -> Self {
        Self::exact_with_modes(grid_n, &[2.0 * std::f64::consts::PI])
    }

    /// Sum of the `2 pi` and `4 pi` modes.
    pub fn test_b(grid_n: usize) -> Self {
        Self::exact_with_modes(grid_n, &[2.0 * std::f64::consts::PI, 4.0 * std::f64::consts::PI])
    }

    fn exact_with_modes(grid_n: usize, omegas: &[f64]) -> Self {
        Self {
            mode: RunMode::ExactVerify,
            params: MaterialParams::REFERENCE,
            bump_height: 0.0,
            grid_n,
            length: 1.0,
            t_end: Self::DEFAULT_T_END_EXACT,
            cfl: StepControl::DEFAULT_CFL,
            modes: omegas.iter().map(|&omega| ModeSpec { family: Family::SinCos, omega, k: [1.0; 4] }).collect(),
            regime: BoundaryRegime::Periodic,
            weighting: Weighting::JiangShu,
            snapshot_times: Vec::new(),
            output: None,
            kappa: 0.0,
        }
    }

    /// Rest initial data, pulse at `x = 0`, two-material profile of height `h`.
    pub fn inhomogeneous(h: f64, grid_n: usize) -> Self {
        Self {
            mode: RunMode::Inhomogeneous,
            params: MaterialParams::REFERENCE,
            bump_height: h,
            grid_n,
            length: 1.0,
            t_end: Self::DEFAULT_T_END_INHOMOGENEOUS,
            cfl: StepControl::DEFAULT_CFL,
            modes: Vec::new(),
            regime: BoundaryRegime::StrainExcitation(Excitation::Pulse),
            weighting: Weighting::JiangShu,
            snapshot_times: vec![Self::DEFAULT_T_END_INHOMOGENEOUS],
            output: None,
            kappa: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.grid_n < MIN_GRID_N {
            return bad(format!("grid_n: must be at least {MIN_GRID_N}, got {}", self.grid_n));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return bad(format!("length: must be positive, got {}", self.length));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end: must be positive, got {}", self.t_end));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl: must lie in (0, 1], got {}", self.cfl));
        }
        if let Some(t) = self.snapshot_times.iter().find(|t| !(**t >= 0.0 && **t <= self.t_end)) {
            return bad(format!("snapshot_times: {t} is outside [0, {}]", self.t_end));
        }
        if !self.kappa.is_finite() {
            return bad("kappa: must be finite".into());
        }
        self.params.validate().map_err(|e| Error::Config(format!("material: {e}")))?;
        match self.mode {
            RunMode::ExactVerify => {
                if self.modes.is_empty() {
                    return bad("exact.modes: at least one mode is required".into());
                }
                if self.regime != BoundaryRegime::Periodic {
                    return bad(format!("regime: exact verification needs periodic, got {}", self.regime.name()));
                }
                for m in &self.modes {
                    if m.omega == 0.0 || !m.omega.is_finite() {
                        return bad("exact.modes.omega: must be finite and nonzero".into());
                    }
                    let periods = m.omega * self.length / (2.0 * std::f64::consts::PI);
                    if (periods - periods.round()).abs() > 1e-9 {
                        return bad(format!(
                            "exact.modes.omega: {} is not periodic on a domain of length {}",
                            m.omega, self.length
                        ));
                    }
                    if m.k.iter().any(|k| !k.is_finite()) {
                        return bad("exact.modes.k: must be finite".into());
                    }
                }
            }
            RunMode::Inhomogeneous => {
                if self.regime == BoundaryRegime::Periodic {
                    return bad("regime: inhomogeneous runs need null_inflow or strain_excitation".into());
                }
                if !self.bump_height.is_finite() {
                    return bad("inhomogeneous.h: must be finite".into());
                }
            }
        }
        Ok(())
    }

    /// Snapshot times sorted and deduplicated.
    pub fn stops(&self) -> Vec<f64> {
        let mut s = self.snapshot_times.clone();
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: RawMode,
    grid_n: i64,
    length: Option<f64>,
    t_end: Option<f64>,
    cfl: Option<f64>,
    regime: Option<String>,
    weno_weights: Option<Weighting>,
    snapshot_times: Option<Vec<f64>>,
    output: Option<PathBuf>,
    material: RawMaterial,
    exact: Option<RawExact>,
    inhomogeneous: Option<RawInhomogeneous>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawMode {
    Exact,
    Inhomogeneous,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    rho: f64,
    i_mu: f64,
    gamma: f64,
    a: f64,
    b: f64,
    c: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExact {
    modes: Vec<RawModeSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModeSpec {
    family: Option<Family>,
    omega: RawOmega,
    k: [f64; 4],
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawOmega {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInhomogeneous {
    h: f64,
    excitation: Option<Excitation>,
    kappa: Option<f64>,
}

/// Parse `2pi`, `2*pi`, `-pi`, `0.5 pi` or a plain number.
pub fn parse_omega(text: &str) -> Result<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let err = || Error::Config(format!("omega: cannot parse `{text}`"));
    if let Some(coef) = s.strip_suffix("pi").or_else(|| s.strip_suffix('π')) {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let k = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| err())?,
        };
        Ok(k * std::f64::consts::PI)
    } else {
        s.parse::<f64>().map_err(|_| err())
    }
}

/// Parse a config document, then apply `key = value` overrides where `key`
/// is a dotted path (`grid_n`, `material.rho`, `inhomogeneous.h`) and
/// `value` a TOML literal (bare words are taken as strings).
pub fn parse_config_str(text: &str, overrides: &[(String, String)]) -> Result<SimConfig> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
    for (key, value) in overrides {
        set_path(&mut table, key, parse_literal(value))?;
    }
    from_table(table)
}

pub fn parse_config(path: &Path, overrides: &[(String, String)]) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_config_str(&text, overrides).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Quote `s` as a TOML string, for building overrides from free text.
pub fn string_literal(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn parse_literal(value: &str) -> toml::Value {
    let doc = format!("v = {value}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(value.to_string())),
        Err(_) => toml::Value::String(value.to_string()),
    }
}

fn set_path(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<()> {
    let mut parts: Vec<&str> = key.split('.').collect();
    let last = parts.pop().filter(|s| !s.is_empty()).ok_or_else(|| Error::Config(format!("bad override key `{key}`")))?;
    let mut cur = table;
    for p in parts {
        let entry = cur.entry(p.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("override `{key}`: `{p}` is not a section")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

fn from_table(table: toml::Table) -> Result<SimConfig> {
    let raw: RawConfig = toml::Value::Table(table).try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
    let mode = match raw.mode {
        RawMode::Exact => RunMode::ExactVerify,
        RawMode::Inhomogeneous => RunMode::Inhomogeneous,
    };
    let grid_n = usize::try_from(raw.grid_n).map_err(|_| Error::Config(format!("grid_n: must be positive, got {}", raw.grid_n)))?;
    let m = raw.material;
    let params = MaterialParams::new(m.rho, m.i_mu, m.gamma, m.a, m.b, m.c);
    let default_t_end = match mode {
        RunMode::ExactVerify => SimConfig::DEFAULT_T_END_EXACT,
        RunMode::Inhomogeneous => SimConfig::DEFAULT_T_END_INHOMOGENEOUS,
    };
    let t_end = raw.t_end.unwrap_or(default_t_end);
    let excitation = raw.inhomogeneous.as_ref().and_then(|i| i.excitation).unwrap_or_default();
    let regime = match raw.regime.as_deref() {
        Some(name) => match BoundaryRegime::parse(name)? {
            BoundaryRegime::StrainExcitation(_) => BoundaryRegime::StrainExcitation(excitation),
            r => r,
        },
        None => match mode {
            RunMode::ExactVerify => BoundaryRegime::Periodic,
            RunMode::Inhomogeneous => BoundaryRegime::StrainExcitation(excitation),
        },
    };
    let modes = match (&raw.exact, mode) {
        (Some(e), _) => e
            .modes
            .iter()
            .map(|m| {
                let omega = match &m.omega {
                    RawOmega::Number(x) => *x,
                    RawOmega::Text(s) => parse_omega(s)?,
                };
                Ok(ModeSpec { family: m.family.unwrap_or(Family::SinCos), omega, k: m.k })
            })
            .collect::<Result<Vec<_>>>()?,
        (None, _) => Vec::new(),
    };
    let (bump_height, kappa) = match (&raw.inhomogeneous, mode) {
        (Some(i), _) => (i.h, i.kappa.unwrap_or(0.0)),
        (None, RunMode::Inhomogeneous) => return Err(Error::Config("missing section `inhomogeneous` (key `h`)".into())),
        (None, RunMode::ExactVerify) => (0.0, 0.0),
    };
    let cfg = SimConfig {
        mode,
        params,
        bump_height,
        grid_n,
        length: raw.length.unwrap_or(1.0),
        t_end,
        cfl: raw.cfl.unwrap_or(StepControl::DEFAULT_CFL),
        modes,
        regime,
        weighting: raw.weno_weights.unwrap_or_default(),
        snapshot_times: raw.snapshot_times.unwrap_or_else(|| vec![t_end]),
        output: raw.output,
        kappa,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Built-in configurations for the benchmark problems.
pub fn preset(name: &str) -> Result<&'static str> {
    match name {
        "test-a" => Ok(PRESET_TEST_A),
        "test-b" => Ok(PRESET_TEST_B),
        "inhomogeneous" => Ok(PRESET_INHOMOGENEOUS),
        other => Err(Error::Config(format!("unknown preset `{other}` (expected test-a, test-b, inhomogeneous)"))),
    }
}

const PRESET_TEST_A: &str = "mode = \"exact\"
grid_n = 128

[material]
rho = 1.0
i_mu = 1.0
gamma = 0.99
a = -0.01
b = 10.0
c = 1.0

[[exact.modes]]
omega = \"2pi\"
k = [1, 1, 1, 1]
";

const PRESET_TEST_B: &str = "mode = \"exact\"
grid_n = 128

[material]
rho = 1.0
i_mu = 1.0
gamma = 0.99
a = -0.01
b = 10.0
c = 1.0

[[exact.modes]]
omega = \"2pi\"
k = [1, 1, 1, 1]

[[exact.modes]]
omega = \"4pi\"
k = [1, 1, 1, 1]
";

const PRESET_INHOMOGENEOUS: &str = "mode = \"inhomogeneous\"
grid_n = 1024
snapshot_times = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]

[material]
rho = 1.0
i_mu = 1.0
gamma = 0.99
a = -0.01
b = 10.0
c = 1.0

[inhomogeneous]
h = 0.1
";

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_A: &str = r#"
mode = "exact"
grid_n = 128

[material]
rho = 1
i_mu = 1
gamma = 0.99
a = -0.01
b = 10
c = 1

[[exact.modes]]
omega = "2pi"
k = [1, 1, 1, 1]
"#;

    #[test]
    fn minimal_file_gets_defaults() {
        let c = parse_config_str(MINIMAL_A, &[]).unwrap();
        assert_eq!(c.length, 1.0);
        assert_eq!(c.cfl, 0.4);
        assert_eq!(c.t_end, 10.0);
        assert_eq!(c.regime, BoundaryRegime::Periodic);
        assert_eq!(c.modes[0].omega, 2.0 * std::f64::consts::PI);
        assert_eq!(c, SimConfig { snapshot_times: vec![10.0], ..SimConfig::test_a(128) });
    }

    #[test]
    fn omega_syntax() {
        let pi = std::f64::consts::PI;
        assert_eq!(parse_omega("2pi").unwrap(), 2.0 * pi);
        assert_eq!(parse_omega("4 * pi").unwrap(), 4.0 * pi);
        assert_eq!(parse_omega("-pi").unwrap(), -pi);
        assert_eq!(parse_omega("6.5").unwrap(), 6.5);
        assert!(parse_omega("two pi").is_err());
    }

    #[test]
    fn small_grid_rejected() {
        let e = parse_config_str(MINIMAL_A, &[("grid_n".into(), "4".into())]).unwrap_err();
        assert!(e.to_string().contains("grid_n"), "{e}");
    }

    #[test]
    fn unknown_and_missing_keys_are_named() {
        let e = parse_config_str(&format!("{MINIMAL_A}\nbogus = 1\n"), &[]).unwrap_err();
        // `bogus` lands in the last table, the mode entry
        assert!(e.to_string().contains("bogus"), "{e}");
        let e = parse_config_str(&MINIMAL_A.replace("gamma = 0.99\n", ""), &[]).unwrap_err();
        assert!(e.to_string().contains("gamma"), "{e}");
        let e = parse_config_str("mode = \"exact\"\ngrid_n = 64\n", &[]).unwrap_err();
        assert!(e.to_string().contains("material"), "{e}");
    }

    #[test]
    fn overrides_apply() {
        let c = parse_config_str(
            MINIMAL_A,
            &[("grid_n".into(), "256".into()), ("cfl".into(), "0.2".into()), ("material.b".into(), "12".into())],
        )
        .unwrap();
        assert_eq!((c.grid_n, c.cfl, c.params.b_micro), (256, 0.2, 12.0));
    }

    #[test]
    fn invalid_material_rejected() {
        let e = parse_config_str(MINIMAL_A, &[("material.a".into(), "5".into())]).unwrap_err();
        assert!(e.to_string().contains("gamma*B - A^2"), "{e}");
    }

    #[test]
    fn presets_parse() {
        assert_eq!(parse_config_str(preset("test-a").unwrap(), &[]).unwrap().modes.len(), 1);
        assert_eq!(parse_config_str(preset("test-b").unwrap(), &[]).unwrap().modes.len(), 2);
        let i = parse_config_str(preset("inhomogeneous").unwrap(), &[]).unwrap();
        assert_eq!(i.regime, BoundaryRegime::StrainExcitation(Excitation::Pulse));
        assert_eq!(i.t_end, 0.8);
        let off = parse_config_str(preset("inhomogeneous").unwrap(), &[("inhomogeneous.excitation".into(), "none".into())]).unwrap();
        assert_eq!(off.regime, BoundaryRegime::StrainExcitation(Excitation::None));
    }

    #[test]
    fn non_periodic_mode_rejected() {
        let e = parse_config_str(&MINIMAL_A.replace("\"2pi\"", "3.0"), &[]).unwrap_err();
        assert!(e.to_string().contains("omega"), "{e}");
        let e = parse_config_str(MINIMAL_A, &[("regime".into(), "null_inflow".into())]).unwrap_err();
        assert!(e.to_string().contains("regime"), "{e}");
    }
}
