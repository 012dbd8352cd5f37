//! One-dimensional Mindlin microstructure model.
//!
//! Material model and exact plane-wave solutions, the Riemann-invariant form
//! of the equations, a WENO5 / SSP-RK3 method-of-lines solver, and the run
//! driver behind the `mindlin` command-line tool.

// `!(x > 0.0)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod config;
pub mod driver;
mod error;
pub mod exact;
mod grid;
mod jet;
pub mod material;
pub mod snapshot;
pub mod solver;
pub mod time;
pub mod transform;
pub mod weno;

pub use boundary::{BoundaryRegime, Excitation};
pub use config::{parse_config, parse_config_str, ModeSpec, RunMode, SimConfig};
pub use driver::{convergence_study, run_exact_verification, run_inhomogeneous, ErrorReport};
pub use error::{Error, Result};
pub use exact::{ExactMode, ExactSolution, Family};
pub use grid::Grid;
pub use jet::Jet;
pub use material::{DerivedCoefficients, MaterialParams, ParameterProfile};
pub use solver::Solver;
pub use transform::{GaugeFields, State};
