//! The degenerate gamma function `Γ_λ(s) = ∫_0^∞ (1 + λt)^{-1/λ} t^{s-1} dt`
//! and the degenerate beta function built from it.
//!
//! Everything here goes through the closed form
//!
//! ```text
//! Γ_λ(s) = λ^{-s} Γ(s) Γ(1/λ - s) / Γ(1/λ)
//! ```
//!
//! evaluated as a sum of log-gammas and exponentiated once, since `Γ(1/λ)`
//! alone overflows for `λ < 1/171`.

mod beta;
mod exp_log;
mod poles;
mod recurrence;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::log_gamma;
use crate::error::{Error, Result};
use crate::result::{EvalResult, Method, Status};
use crate::{NEAR_POLE_RADIUS, POLE_TOLERANCE};

pub use beta::{
    degenerate_beta, degenerate_beta_classical_mixed, degenerate_beta_integer,
    log_degenerate_beta,
};
pub use exp_log::{degenerate_exp, degenerate_log};
pub use poles::{nearest_pole, pole_info, poles, NearestPole};
pub use recurrence::{
    degenerate_gamma_integer, difference_step, falling_factorial, lambda_shift_recurrence,
    GeneralizedFallingFactorial, IntegerValue, LambdaShift,
};

/// The deformation parameter `λ ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DegenerateParameter {
    lambda: f64,
    inv_lambda: f64,
    log_lambda: f64,
}

impl DegenerateParameter {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::ParameterRange(format!(
                "lambda = {lambda} must lie in the open interval (0, 1)"
            )));
        }
        Ok(Self {
            lambda,
            inv_lambda: 1.0 / lambda,
            log_lambda: lambda.ln(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn inv_lambda(&self) -> f64 {
        self.inv_lambda
    }

    pub fn log_lambda(&self) -> f64 {
        self.log_lambda
    }
}

impl TryFrom<f64> for DegenerateParameter {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        Self::new(lambda)
    }
}

impl From<DegenerateParameter> for f64 {
    fn from(p: DegenerateParameter) -> f64 {
        p.lambda
    }
}

/// `1/λ - s`: the argument paired with `s` by the symmetry
/// `λ^s Γ_λ(s) = λ^{1/λ-s} Γ_λ(1/λ-s)`.
pub fn symmetry_partner(s: Complex64, p: &DegenerateParameter) -> Complex64 {
    p.inv_lambda - s
}

/// Log of the closed form together with the sum of the magnitudes of its
/// terms (a scale for the rounding error).
pub(crate) fn log_closed_form(s: Complex64, p: &DegenerateParameter) -> Result<(Complex64, f64)> {
    let w = symmetry_partner(s, p);
    let scale_term = -s * p.log_lambda;
    let lg_s = log_gamma(s)?.to_complex();
    let lg_w = log_gamma(w)?.to_complex();
    let lg_inv = log_gamma(Complex64::new(p.inv_lambda, 0.0))?.to_complex();
    let magnitude = scale_term.norm() + lg_s.norm() + lg_w.norm() + lg_inv.norm() + 1.0;
    Ok((scale_term + lg_s + lg_w - lg_inv, magnitude))
}

/// `log Γ_λ(s)`; `Error::Pole` on either pole family.
pub fn log_degenerate_gamma(s: Complex64, p: &DegenerateParameter) -> Result<Complex64> {
    if let Some(near) = nearest_pole(s, p, POLE_TOLERANCE) {
        return Err(Error::Pole {
            arg: crate::error::PoleArgument::Z,
            at: s,
            pole: near.location,
        });
    }
    log_closed_form(s, p).map(|(v, _)| v)
}

pub(crate) const ROUNDING_FACTOR: f64 = 8.0 * f64::EPSILON;

/// `Γ_λ(s)` via the closed form, with pole and overflow status.
pub fn degenerate_gamma(s: Complex64, p: &DegenerateParameter) -> EvalResult {
    let near = nearest_pole(s, p, NEAR_POLE_RADIUS);
    if let Some(near) = near.filter(|n| n.distance < POLE_TOLERANCE) {
        return EvalResult::at_pole(pole_info(p, near.family, near.index), Method::ClosedForm);
    }
    let (log_value, magnitude) = match log_closed_form(s, p) {
        Ok(v) => v,
        // rounding put a classical pole inside the tolerance of its own check
        Err(Error::Pole { .. }) => {
            let near = nearest_pole(s, p, f64::INFINITY).expect("pole exists");
            return EvalResult::at_pole(pole_info(p, near.family, near.index), Method::ClosedForm);
        }
        Err(e) => unreachable!("closed form only fails at poles: {e}"),
    };
    let mut rel_error = ROUNDING_FACTOR * magnitude;
    let mut result_status = None;
    if let Some(near) = near {
        rel_error *= NEAR_POLE_RADIUS / near.distance;
        result_status = Some(Status::NearPole(pole_info(p, near.family, near.index)));
    }
    let mut result = EvalResult::from_log(log_value, rel_error, Method::ClosedForm);
    if let (Some(status), Status::Regular) = (result_status, result.status) {
        result.status = status;
    }
    if s.im == 0.0 && result.value.im.is_finite() {
        // real argument: the closed form is real
        result.value.im = 0.0;
    }
    result
}
