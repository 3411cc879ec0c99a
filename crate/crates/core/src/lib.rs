//! Energy error identities for obstacle problems.
//!
//! For an approximation `v` of the minimizer `u`, the energy gap splits
//! exactly into a norm part and a nonnegative free-boundary measure:
//!
//! ```text
//! ½ ‖∇(u − v)‖²_A + μ(v) = J(v) − J(u)
//! ```
//!
//! The crate evaluates every term on two manufactured benchmarks:
//!
//! * [`classical`]: the 2D obstacle problem on `(-1, 1)²` with a disk-shaped
//!   coincidence set and bump perturbations `v_ε = u + ε w`;
//! * [`two_phase`]: the 1D two-phase problem with piecewise-linear
//!   interpolants `v_N`.
//!
//! [`quadrature`] supplies the Gauss–Legendre and polar rules behind the 2D
//! integrals, and [`harness`] runs sweeps and compares against the published
//! tables.
//!
//! ```
//! use obstacle_identities::two_phase::{identity_report_two_phase, TwoPhaseProblem};
//!
//! let r = identity_report_two_phase(8, &TwoPhaseProblem::BENCHMARK).unwrap();
//! assert!(r.identity_holds(1e-12));
//! assert!((r.kappa_percent.unwrap() - 10.82).abs() < 0.01);
//! ```

pub mod classical;
pub mod cli;
mod error;
pub mod harness;
pub mod intervals;
pub mod quadrature;
pub mod report;
pub mod two_phase;

pub use error::{Error, Result};
pub use intervals::IntervalSet;
pub use quadrature::{GaussRule, QuadratureConfig, RadialRegion};
pub use report::IdentityReport;
