//! Integral representations of `Γ_λ`: the defining integral on its strip
//! and the Hankel-contour integral that reaches past it.

mod direct;
mod engine;
mod hankel;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use direct::direct_integral_gamma;
pub use engine::{de_quadrature, de_quadrature_interval, QuadratureResult};
pub use hankel::{hankel_cutoff_for, hankel_gamma, hankel_gamma_reflected};

/// Tolerances and contour geometry for the integral paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Stop refining once successive levels agree to this relative size.
    pub rel_tolerance: f64,
    /// Maximum number of step halvings.
    pub max_level: u32,
    /// Radius `δ < 1` of the circle around the origin on the Hankel contour.
    pub hankel_radius: f64,
    /// Where the contour edges are cut off. `None` picks the smallest `R`
    /// whose neglected tail is below `rel_tolerance`; `Some(f64::INFINITY)`
    /// keeps the whole edge.
    pub hankel_cutoff: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-10,
            max_level: 10,
            hankel_radius: 0.5,
            hankel_cutoff: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerance(rel_tolerance: f64) -> Self {
        Self {
            rel_tolerance,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance >= 1e-14 && self.rel_tolerance.is_finite()) {
            return Err(Error::ParameterRange(format!(
                "rel_tolerance = {} must be at least 1e-14",
                self.rel_tolerance
            )));
        }
        if self.max_level == 0 || self.max_level > engine::MAX_TABLE_LEVEL {
            return Err(Error::ParameterRange(format!(
                "max_level = {} must be in 1..={}",
                self.max_level,
                engine::MAX_TABLE_LEVEL
            )));
        }
        if !(self.hankel_radius > 0.0 && self.hankel_radius < 1.0) {
            return Err(Error::ParameterRange(format!(
                "hankel_radius = {} must lie in (0, 1)",
                self.hankel_radius
            )));
        }
        if let Some(r) = self.hankel_cutoff {
            if !(r > 1.0) {
                return Err(Error::ParameterRange(format!(
                    "hankel_cutoff = {r} must exceed 1"
                )));
            }
        }
        Ok(())
    }
}

/// Distance kept between `Re(s)` and the ends of the strip `0 < Re(s) < 1/λ`.
pub const STRIP_MARGIN: f64 = 0.01;
