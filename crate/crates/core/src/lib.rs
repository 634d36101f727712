//! Forward and inverse solvers for obstacles that are small perturbations of
//! the unit disk.
//!
//! The boundary is `r = 1 + eps f(theta)`. The crate provides
//!
//! * Bessel/Hankel functions ([`special_functions`]),
//! * truncated Fourier series in both real and complex conventions ([`fourier`]),
//! * the perturbed-disk geometry ([`geometry`]),
//! * Fourier-multiplier Dirichlet-to-Neumann operators and their first-order
//!   shape correction ([`dtn`]),
//! * a multipole least-squares collocation solver used as ground truth
//!   ([`forward_oracle`]),
//! * closed-form first-order fields and far-field patterns ([`asymptotic_forward`]),
//! * probe-based reconstruction of the Fourier coefficients of `f` from
//!   far-field data, for both the electric (Laplace) and acoustic
//!   (Helmholtz) problems ([`scattering_inversion`]).

pub mod asymptotic_forward;
pub mod dtn;
mod error;
pub mod forward_oracle;
pub mod fourier;
pub mod geometry;
pub mod linalg;
pub mod par;
pub mod scattering_inversion;
pub mod special_functions;

pub use dtn::Physics;
pub use error::{Error, Result};
pub use fourier::{ComplexFourierSeries, RealTrigSeries, SampledPeriodicFn};
pub use geometry::PerturbedDisk;
pub use par::Execution;

/// Crate version, recorded in experiment manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
