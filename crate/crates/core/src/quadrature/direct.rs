use num_complex::Complex64;

use super::engine::de_quadrature;
use super::{QuadratureSpec, STRIP_MARGIN};
use crate::cmath::log1p;
use crate::degenerate::{symmetry_partner, DegenerateParameter};
use crate::error::{Error, Result};
use crate::result::{EvalResult, Method};

/// `∫_0^1 x^{e-1} g(x) dx` where `g` is smooth on `[0, 1]`.
///
/// For `Re(e) < 1` the integrand is nearly non-integrable at 0 and the
/// double-exponential nodes would need values far below `f64::MIN_POSITIVE`,
/// so one integration by parts first moves the singularity to `x^e`:
/// `g(1)/e - (1/e) ∫_0^1 x^e g'(x) dx`.
fn singular_at_zero<G, D>(e: Complex64, g: G, dg: D, spec: &QuadratureSpec) -> Result<(Complex64, f64)>
where
    G: Fn(f64) -> Complex64,
    D: Fn(f64) -> Complex64,
{
    if e.re >= 1.0 {
        let r = de_quadrature(|x, _| ((e - 1.0) * x.ln()).exp() * g(x), spec)?;
        return Ok((r.value, r.err));
    }
    let r = de_quadrature(|x, _| (e * x.ln()).exp() * dg(x), spec)?;
    Ok(((g(1.0) - r.value) / e, r.err / e.norm()))
}

/// `Γ_λ(s)` from the defining integral, split at `t = 1`:
///
/// ```text
/// ∫_0^1 t^{s-1} (1 + λt)^{-1/λ} dt + ∫_0^1 u^{1/λ-s-1} (u + λ)^{-1/λ} du
/// ```
///
/// Requires `0.01 < Re(s) < 1/λ - 0.01`.
pub fn direct_integral_gamma(
    s: Complex64,
    p: &DegenerateParameter,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    spec.validate()?;
    let inv = p.inv_lambda();
    let lambda = p.lambda();
    if !(s.re > STRIP_MARGIN && s.re < inv - STRIP_MARGIN) {
        return Err(Error::Strip {
            s,
            condition: format!("{STRIP_MARGIN} < Re(s) < 1/lambda - {STRIP_MARGIN}"),
        });
    }
    let a = symmetry_partner(s, p);

    let near = |t: f64, extra: f64| Complex64::new(-(inv + extra) * log1p(Complex64::new(lambda * t, 0.0)).re, 0.0).exp();
    let (part_a, err_a) = singular_at_zero(s, |t| near(t, 0.0), |t| -near(t, 1.0), spec)?;

    let far = |u: f64, extra: f64| Complex64::new(-(inv + extra) * (u + lambda).ln(), 0.0).exp();
    let (part_b, err_b) = singular_at_zero(a, |u| far(u, 0.0), |u| -inv * far(u, 1.0), spec)?;

    let mut value = part_a + part_b;
    let rounding = 16.0 * f64::EPSILON * (part_a.norm() + part_b.norm());
    if s.im == 0.0 {
        value.im = 0.0;
    }
    Ok(EvalResult::from_value(value, err_a + err_b + rounding, Method::DirectIntegral))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::degenerate::degenerate_gamma;

    fn p(lambda: f64) -> DegenerateParameter {
        DegenerateParameter::new(lambda).unwrap()
    }

    fn direct(s: Complex64, lambda: f64) -> EvalResult {
        direct_integral_gamma(s, &p(lambda), &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn landmark_values() {
        assert!((direct(Complex64::new(1.0, 0.0), 0.5).value.re - 2.0).abs() < 1e-10);
        let half = direct(Complex64::new(0.5, 0.0), 0.5).value.re;
        assert!((half - 2f64.sqrt() * PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn agrees_with_closed_form_across_strip() {
        for (s, lambda) in [
            (Complex64::new(2.5, 0.0), 0.25),
            (Complex64::new(0.02, 0.0), 0.5),
            (Complex64::new(1.97, 0.0), 0.5),
            (Complex64::new(0.7, 2.0), 0.3),
            (Complex64::new(5.0, -1.5), 0.15),
        ] {
            let d = direct(s, lambda);
            let c = degenerate_gamma(s, &p(lambda));
            let rel = (d.value - c.value).norm() / c.value.norm();
            assert!(rel < 1e-10, "s={s} λ={lambda}: {} vs {} ({rel:e})", d.value, c.value);
            assert!(d.abs_error_estimate < 1e-8 * c.value.norm());
        }
    }

    #[test]
    fn outside_strip_is_rejected() {
        let err = direct_integral_gamma(Complex64::new(2.0, 0.0), &p(0.5), &QuadratureSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::Strip { .. }));
        let err = direct_integral_gamma(Complex64::new(0.005, 0.0), &p(0.5), &QuadratureSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::Strip { .. }));
    }
}
