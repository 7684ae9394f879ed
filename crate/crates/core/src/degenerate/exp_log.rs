use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::POLE_TOLERANCE;

/// Degenerate exponential `e_λ^x(t) = (1 + λt)^{x/λ}`, principal branch.
///
/// Accepts any nonzero real `λ`; tends to `e^{xt}` as `λ → 0`.
pub fn degenerate_exp(x: Complex64, t: Complex64, lambda: f64) -> Result<Complex64> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("lambda must be a nonzero real number"));
    }
    let lt = t * lambda;
    if (lt + 1.0).norm() < POLE_TOLERANCE {
        return Err(Error::BranchPoint { t });
    }
    Ok((x / lambda * crate::cmath::log1p(lt)).exp())
}

/// Degenerate logarithm `log_λ(t) = (t^λ - 1) / λ`, principal branch.
pub fn degenerate_log(t: Complex64, lambda: f64) -> Result<Complex64> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("lambda must be a nonzero real number"));
    }
    if t.norm() == 0.0 {
        return Err(Error::Domain("log_lambda is undefined at t = 0"));
    }
    Ok(crate::cmath::expm1(t.ln() * lambda) / lambda)
}
