//! Gravitationally induced Wigner rotation of two spin-½ particles on
//! circular orbits around a static spherically symmetric (charged) black
//! hole, and the resulting decay of Bell-state spin entanglement.
//!
//! Units throughout are `c = r_s = m = 1`: radii are `z = r/r_s`, momenta
//! are `p³/mc`, and proper times are given as `τ/τ_s`.
//!
//! ```
//! use gravent::experiments::{figure_preset, evaluate_point};
//!
//! let spec = figure_preset(4).unwrap();
//! let zero = gravent::wigner::theta_zeros(0.16)[0];
//! let row = evaluate_point(&spec, zero);
//! assert!((row.e - 1.0).abs() < 1e-9);
//! ```

// `!(a < b)` is used on purpose so that NaN inputs fall into the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod numeric;
pub mod quadrature;
pub mod spacetime;
pub mod wigner;

pub use entanglement::{BellState, DensityMatrix4, MomentumDistribution, TrigMoments};
pub use error::{Error, Result};
pub use experiments::{SweepRow, SweepSpec, SweepVariable};
pub use quadrature::QuadConfig;
pub use spacetime::{ChargedBlackHole, MetricModel};
pub use wigner::OrbitParams;
