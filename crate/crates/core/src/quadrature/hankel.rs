//! Hankel-contour evaluation.
//!
//! After `t → t/λ` the defining integral is `λ^s Γ_λ(s) = ∫_0^∞ t^{s-1}
//! (1 + t)^{-1/λ} dt`. Replacing the segment `[0, δ]` by a circle of radius
//! `δ` around the origin gives
//!
//! ```text
//! λ^s Γ_λ(s) = ∫_δ^∞ t^{s-1} (1 + t)^{-1/λ} dt + C(s) / (2i sin πs),
//! C(s) = ∫_{-π}^{π} i δ^s e^{isθ} (1 - δe^{iθ})^{-1/λ} dθ,
//! ```
//!
//! which holds for every non-integer `s` with `Re(s) < 1/λ`, including the
//! half plane `Re(s) ≤ 0` where the defining integral diverges.
//!
//! The circle integrand is not periodic in `θ` unless `s` is an integer, so
//! it is integrated with the double-exponential rule, not the trapezoid rule.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::engine::{de_quadrature, de_quadrature_interval};
use super::{QuadratureSpec, STRIP_MARGIN};
use crate::cmath::{log1p, nearest_integer, sin_pi};
use crate::degenerate::{symmetry_partner, DegenerateParameter};
use crate::error::{Error, Result};
use crate::result::{EvalResult, Method};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest distance from an integer at which `1/sin(πs)` is used.
const INTEGER_GUARD: f64 = 1e-6;

/// Cutoff `R` at which the neglected edge `∫_R^∞ t^{Re s-1} (1+t)^{-1/λ} dt
/// ≤ R^{Re s - 1/λ} / (1/λ - Re s)` drops below `tol`; never less than 10.
pub fn hankel_cutoff_for(s: Complex64, p: &DegenerateParameter, tol: f64) -> f64 {
    let decay = p.inv_lambda() - s.re;
    (tol * decay).powf(-1.0 / decay).max(10.0)
}

fn check_argument(s: Complex64, p: &DegenerateParameter, spec: &QuadratureSpec) -> Result<()> {
    spec.validate()?;
    if !(s.re < p.inv_lambda() - STRIP_MARGIN) {
        return Err(Error::Strip {
            s,
            condition: format!("Re(s) < 1/lambda - {STRIP_MARGIN}"),
        });
    }
    let (_, dist) = nearest_integer(s);
    if dist < INTEGER_GUARD {
        return Err(Error::IntegerArgument { s });
    }
    Ok(())
}

/// `∫_δ^∞ t^{s-1} (1 + t)^{-1/λ} dt`, with the part beyond 1 folded onto
/// `(0, 1]` by `t = 1/u`.
fn edge_integral(s: Complex64, p: &DegenerateParameter, spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let inv = p.inv_lambda();
    let delta = spec.hankel_radius;
    let near = de_quadrature_interval(
        delta,
        1.0,
        |t, _, _| ((s - 1.0) * t.ln() - inv * t.ln_1p()).exp(),
        spec,
    )?;

    let a = symmetry_partner(s, p);
    // the tail bound is absolute; aim it at the size of the result
    let scale = near.value.norm().min(1.0);
    let cutoff = spec
        .hankel_cutoff
        .unwrap_or_else(|| hankel_cutoff_for(s, p, spec.rel_tolerance * scale));
    let tail_integrand = |u: f64| ((a - 1.0) * u.ln() - inv * u.ln_1p()).exp();
    let (far, far_err) = if cutoff.is_finite() && cutoff <= 1e300 {
        let r = de_quadrature_interval(1.0 / cutoff, 1.0, |u, _, _| tail_integrand(u), spec)?;
        let decay = a.re;
        let neglected = (-decay * cutoff.ln()).exp() / decay;
        (r.value, r.err + neglected)
    } else if a.re >= 1.0 {
        let r = de_quadrature(|u, _| tail_integrand(u), spec)?;
        (r.value, r.err)
    } else {
        // u^{a-1} is nearly non-integrable; integrate by parts once
        let r = de_quadrature(
            |u, _| (a * u.ln() - (inv + 1.0) * u.ln_1p()).exp() * inv,
            spec,
        )?;
        let boundary = Complex64::new(-inv * std::f64::consts::LN_2, 0.0).exp();
        ((boundary + r.value) / a, r.err / a.norm())
    };
    Ok((near.value + far, near.err + far_err))
}

fn finish(
    s: Complex64,
    p: &DegenerateParameter,
    scaled: Complex64,
    scaled_err: f64,
    method: Method,
) -> EvalResult {
    let log_scale = -s * p.log_lambda();
    let scale = log_scale.exp();
    let mut value = scaled * scale;
    let abs_err = (scaled_err + 16.0 * f64::EPSILON * scaled.norm()) * scale.norm();
    if s.im == 0.0 {
        value.im = 0.0;
    }
    EvalResult::from_value(value, abs_err, method)
}

/// The circle term `C(s)` of the Hankel representation, by quadrature.
pub(crate) fn circle_term(s: Complex64, p: &DegenerateParameter, spec: &QuadratureSpec) -> Result<(Complex64, f64)> {
    let inv = p.inv_lambda();
    let delta = spec.hankel_radius;
    let log_delta = delta.ln();
    let r = de_quadrature_interval(
        -PI,
        PI,
        |theta, _, _| {
            let e = Complex64::from_polar(1.0, theta);
            I * (s * Complex64::new(log_delta, theta) - inv * log1p(-delta * e)).exp()
        },
        spec,
    )?;
    Ok((r.value, r.err))
}

/// `Γ_λ(s)` from the Hankel-contour representation; valid for non-integer
/// `s` with `Re(s) < 1/λ - 0.01`.
pub fn hankel_gamma(s: Complex64, p: &DegenerateParameter, spec: &QuadratureSpec) -> Result<EvalResult> {
    check_argument(s, p, spec)?;
    let (edge, edge_err) = edge_integral(s, p, spec)?;
    let (circle, circle_err) = circle_term(s, p, spec)?;
    let denom = 2.0 * I * sin_pi(s);
    let scaled = edge + circle / denom;
    Ok(finish(s, p, scaled, edge_err + circle_err / denom.norm(), Method::Hankel))
}

/// `Γ_λ(s)` from the contour that starts at `+∞` above the axis, circles the
/// origin counterclockwise from angle 0 to `2π`, and returns below, applied
/// to `(-z)^{s-1} (1 + z)^{-1/λ}`:
///
/// ```text
/// λ^s Γ_λ(s) = i / (2 sin πs) · [2i sin(π(s-1)) ∫_δ^∞ t^{s-1}(1+t)^{-1/λ} dt + D(s)],
/// D(s) = ∫_0^{2π} i δ^s e^{i(s-1)(φ-π)} e^{iφ} (1 + δe^{iφ})^{-1/λ} dφ.
/// ```
pub fn hankel_gamma_reflected(
    s: Complex64,
    p: &DegenerateParameter,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    check_argument(s, p, spec)?;
    let inv = p.inv_lambda();
    let delta = spec.hankel_radius;
    let log_delta = delta.ln();
    let (edge, edge_err) = edge_integral(s, p, spec)?;
    let circle = de_quadrature_interval(
        0.0,
        2.0 * PI,
        |phi, _, _| {
            let e = Complex64::from_polar(1.0, phi);
            let log_term = s * log_delta + I * (s - 1.0) * (phi - PI) + I * phi - inv * log1p(delta * e);
            I * log_term.exp()
        },
        spec,
    )?;
    let edge_factor = 2.0 * I * sin_pi(s - 1.0);
    let contour = edge_factor * edge + circle.value;
    let factor = I / (2.0 * sin_pi(s));
    let scaled = factor * contour;
    let err = factor.norm() * (edge_factor.norm() * edge_err + circle.err);
    Ok(finish(s, p, scaled, err, Method::HankelReflected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degenerate::degenerate_gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(lambda: f64) -> DegenerateParameter {
        DegenerateParameter::new(lambda).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// `C(s) = 2i sin(πs) δ^s Σ_k (1/λ)_k / k! · (-δ)^k / (s + k)`.
    fn circle_series(s: Complex64, lambda: f64, delta: f64) -> Complex64 {
        let inv = 1.0 / lambda;
        let mut coeff = 1.0;
        let mut power = 1.0;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..400 {
            sum += coeff * power / (s + k as f64);
            coeff *= (inv + k as f64) / (k as f64 + 1.0);
            power *= -delta;
        }
        2.0 * I * sin_pi(s) * Complex64::new(delta, 0.0).powc(s) * sum
    }

    #[test]
    fn circle_term_matches_series() {
        for (s, lambda) in [(c(0.5, 0.0), 0.5), (c(-1.3, 0.8), 0.3), (c(2.2, -0.4), 0.2)] {
            let spec = QuadratureSpec::default();
            let (got, _) = circle_term(s, &p(lambda), &spec).unwrap();
            let want = circle_series(s, lambda, spec.hankel_radius);
            assert!(rel(got, want) < 1e-11, "{s}: {got} vs {want}");
        }
    }

    #[test]
    fn landmark_values() {
        let spec = QuadratureSpec::default();
        for (s, lambda) in [(c(0.5, 0.0), 0.5), (c(1.5, 0.0), 0.25)] {
            let h = hankel_gamma(s, &p(lambda), &spec).unwrap();
            let want = degenerate_gamma(s, &p(lambda)).value;
            assert!(rel(h.value, want) < 1e-8, "{s}: {} vs {want}", h.value);
        }
    }

    #[test]
    fn complex_argument() {
        let s = c(0.5, 0.5);
        let h = hankel_gamma(s, &p(0.3), &QuadratureSpec::default()).unwrap();
        let want = degenerate_gamma(s, &p(0.3)).value;
        assert!(rel(h.value, want) < 1e-7);
    }

    #[test]
    fn continues_into_left_half_plane() {
        for s in [c(-0.5, 0.0), c(-1.5, 0.3), c(-0.2, -1.0), c(-1.9, 0.0)] {
            let h = hankel_gamma(s, &p(0.4), &QuadratureSpec::default()).unwrap();
            let want = degenerate_gamma(s, &p(0.4)).value;
            assert!(rel(h.value, want) < 1e-6, "{s}: {} vs {want}", h.value);
        }
    }

    #[test]
    fn reflected_contour_agrees() {
        for (s, lambda) in [(c(0.5, 0.0), 0.5), (c(-0.7, 0.4), 0.3), (c(1.3, 2.0), 0.2)] {
            let spec = QuadratureSpec::default();
            let a = hankel_gamma(s, &p(lambda), &spec).unwrap().value;
            let b = hankel_gamma_reflected(s, &p(lambda), &spec).unwrap().value;
            assert!(rel(a, b) < 1e-10, "{s}: {a} vs {b}");
        }
    }

    #[test]
    fn radius_does_not_matter() {
        let s = c(0.3, 0.7);
        let values: Vec<_> = [0.1, 0.5, 0.9]
            .iter()
            .map(|&d| {
                let spec = QuadratureSpec {
                    hankel_radius: d,
                    ..QuadratureSpec::default()
                };
                hankel_gamma(s, &p(0.5), &spec).unwrap().value
            })
            .collect();
        assert!(rel(values[0], values[1]) < 1e-9);
        assert!(rel(values[2], values[1]) < 1e-9);
    }

    #[test]
    fn explicit_infinite_cutoff() {
        let spec = QuadratureSpec {
            hankel_cutoff: Some(f64::INFINITY),
            ..QuadratureSpec::default()
        };
        let s = c(1.9, 0.0);
        let h = hankel_gamma(s, &p(0.5), &spec).unwrap();
        assert!(rel(h.value, degenerate_gamma(s, &p(0.5)).value) < 1e-9);
    }

    #[test]
    fn integers_are_rejected() {
        let err = hankel_gamma(c(1.0, 0.0), &p(0.25), &QuadratureSpec::default()).unwrap_err();
        assert!(matches!(err, Error::IntegerArgument { .. }));
        let err = hankel_gamma(c(-2.0, 0.0), &p(0.25), &QuadratureSpec::default()).unwrap_err();
        assert!(matches!(err, Error::IntegerArgument { .. }));
    }
}
