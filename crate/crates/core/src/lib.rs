//! Degenerate gamma and beta functions on the complex plane.
//!
//! The degenerate gamma function
//!
//! ```text
//! Γ_λ(s) = ∫_0^∞ (1 + λt)^{-1/λ} t^{s-1} dt,   0 < λ < 1,  0 < Re(s) < 1/λ,
//! ```
//!
//! continues to a meromorphic function with simple poles at `0, -1, -2, …`
//! and `1/λ, 1/λ + 1, …`. This crate evaluates it along several
//! independent routes so they can be checked against each other:
//!
//! * [`degenerate::degenerate_gamma`]: the closed form through classical
//!   log-gammas (the reference path);
//! * [`quadrature::direct_integral_gamma`]: the defining integral;
//! * [`quadrature::hankel_gamma`]: a Hankel-contour integral, valid beyond
//!   the strip;
//! * [`representations::weierstrass_gamma`] and
//!   [`representations::euler_limit_gamma`]: truncated infinite products.
//!
//! [`verify`] runs every identity between these paths over random samples.

pub mod classical;
pub mod cmath;
pub mod degenerate;
pub mod error;
pub mod quadrature;
pub mod representations;
pub mod result;
pub mod verify;

pub use num_complex::Complex64;

pub use classical::{beta, gamma, log_gamma, LogGammaResult};
pub use degenerate::{degenerate_beta, degenerate_gamma, DegenerateParameter};
pub use error::{Error, PoleArgument, Result};
pub use result::{EvalResult, Method, PoleFamily, PoleInfo, Status};

/// Complex argument or value in double precision.
pub type ComplexValue = Complex64;

/// Absolute distance from a pole inside which evaluation reports the pole
/// instead of a value.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// Outer radius of the near-pole band, where values are returned with an
/// inflated error estimate.
pub const NEAR_POLE_RADIUS: f64 = 1e-4;

/// Largest `log |value|` that is exponentiated.
pub const OVERFLOW_LOG_THRESHOLD: f64 = 709.0;
