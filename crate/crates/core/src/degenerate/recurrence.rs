use num_complex::Complex64;

use super::DegenerateParameter;
use crate::classical::factorial;
use crate::error::{Error, PoleArgument, Result};
use crate::POLE_TOLERANCE;

/// The generalized falling factorial `(x)_{n,λ} = x (x - λ) ⋯ (x - (n-1)λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedFallingFactorial {
    pub x: Complex64,
    pub n: u32,
    pub lambda: f64,
    pub value: Complex64,
}

impl GeneralizedFallingFactorial {
    pub fn new(x: Complex64, n: u32, lambda: f64) -> Self {
        let value = (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (x - j as f64 * lambda));
        Self { x, n, lambda, value }
    }
}

/// `(x)_{n,λ}`; the empty product for `n = 0` is 1.
pub fn falling_factorial(x: Complex64, n: u32, lambda: f64) -> Complex64 {
    GeneralizedFallingFactorial::new(x, n, lambda).value
}

/// `Γ_λ(k)` for a positive integer `k` as the exact ratio
/// `(k-1)! / (1)_{k+1,λ}`, together with the factors it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerValue {
    pub k: u32,
    pub value: Complex64,
    /// `(k-1)!`
    pub numerator: f64,
    /// `1 - jλ` for `j = 1..=k`; their product is `(1)_{k+1,λ}`.
    pub denominator_factors: Vec<f64>,
}

pub fn degenerate_gamma_integer(k: u32, p: &DegenerateParameter) -> Result<IntegerValue> {
    if k == 0 {
        return Err(Error::ParameterRange("k must be a positive integer".into()));
    }
    let numerator = factorial(k - 1)
        .ok_or_else(|| Error::ParameterRange(format!("(k-1)! overflows for k = {k}")))?;
    let lambda = p.lambda();
    if let Some(j) = (2..=k).find(|&j| (lambda - 1.0 / j as f64).abs() < POLE_TOLERANCE) {
        return Err(Error::SingularParameter { lambda, j });
    }
    let denominator_factors: Vec<f64> = (1..=k).map(|j| 1.0 - j as f64 * lambda).collect();
    let denominator = falling_factorial(Complex64::new(1.0, 0.0), k + 1, lambda).re;
    Ok(IntegerValue {
        k,
        value: Complex64::new(numerator / denominator, 0.0),
        numerator,
        denominator_factors,
    })
}

/// The factor `s / (1 - λ(s+1))` with `Γ_λ(s+1) = factor · Γ_λ(s)`.
pub fn difference_step(s: Complex64, p: &DegenerateParameter) -> Result<Complex64> {
    let denominator = 1.0 - p.lambda() * (s + 1.0);
    if denominator.norm() < POLE_TOLERANCE {
        return Err(Error::Pole {
            arg: PoleArgument::Z,
            at: s + 1.0,
            pole: Complex64::new(p.inv_lambda(), 0.0),
        });
    }
    Ok(s / denominator)
}

/// Result of shifting `λ` by `k + 1` steps:
/// `Γ_λ(s+1) = factor · Γ_{shifted_lambda}(shifted_arg)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaShift {
    pub factor: Complex64,
    pub shifted_lambda: DegenerateParameter,
    pub shifted_arg: Complex64,
}

/// Trades `k + 1` unit steps in `s` for a larger parameter
/// `λ' = λ / (1 - (k+1)λ)`:
///
/// ```text
/// Γ_λ(s+1) = s(s-1)⋯(s-k) / ((1-λ)(1-2λ)⋯(1-kλ) (1-(k+1)λ)^{s-k+1}) · Γ_{λ'}(s-k)
/// ```
///
/// valid for `k < Re(s) < (1-λ)/λ`. `λ'` must itself lie in `(0, 1)`, which
/// needs `λ < 1/(k+2)`.
pub fn lambda_shift_recurrence(
    s: Complex64,
    k: u32,
    p: &DegenerateParameter,
) -> Result<LambdaShift> {
    let lambda = p.lambda();
    let kf = k as f64;
    let base = 1.0 - (kf + 1.0) * lambda;
    if base <= 0.0 {
        return Err(Error::ParameterRange(format!(
            "lambda = {lambda} must be below 1/(k+1) = {} for k = {k}",
            1.0 / (kf + 1.0)
        )));
    }
    let shifted_lambda = DegenerateParameter::new(lambda / base).map_err(|_| {
        Error::ParameterRange(format!(
            "shifted parameter lambda/(1-(k+1)lambda) = {} leaves (0, 1); need lambda < 1/(k+2) = {}",
            lambda / base,
            1.0 / (kf + 2.0)
        ))
    })?;
    let upper = (1.0 - lambda) / lambda;
    if !(s.re > kf && s.re < upper) {
        return Err(Error::Strip {
            s,
            condition: format!("{k} < Re(s) < (1-lambda)/lambda = {upper}"),
        });
    }
    let numerator = (0..=k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (s - j as f64));
    let fixed: f64 = (1..=k).map(|j| 1.0 - j as f64 * lambda).product();
    let power = ((s - kf + 1.0) * base.ln()).exp();
    Ok(LambdaShift {
        factor: numerator / (power * fixed),
        shifted_lambda,
        shifted_arg: s - kf,
    })
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

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(c(1.0, 0.0), 0, 0.3), c(1.0, 0.0));
        assert_eq!(falling_factorial(c(1.0, 0.0), 3, 0.25), c(0.375, 0.0));
        assert_eq!(falling_factorial(c(1.0, 0.0), 4, 0.25), c(0.09375, 0.0));
    }

    #[test]
    fn integer_values() {
        let v = degenerate_gamma_integer(1, &p(0.5)).unwrap();
        assert_eq!(v.value, c(2.0, 0.0));
        let v = degenerate_gamma_integer(3, &p(0.25)).unwrap();
        assert!((v.value.re - 64.0 / 3.0).abs() < 1e-13);
        assert_eq!(v.denominator_factors, vec![0.75, 0.5, 0.25]);
        let v = degenerate_gamma_integer(2, &p(0.1)).unwrap();
        assert!((v.value.re - 1.0 / (0.9 * 0.8)).abs() < 1e-15);
    }

    #[test]
    fn integer_value_rejects_reciprocal_lambda() {
        assert_eq!(
            degenerate_gamma_integer(2, &p(0.5)),
            Err(Error::SingularParameter { lambda: 0.5, j: 2 })
        );
        assert!(degenerate_gamma_integer(3, &p(1.0 / 3.0)).is_err());
        // λ = 1/3 only bites once k reaches 3
        assert!(degenerate_gamma_integer(2, &p(1.0 / 3.0)).is_ok());
    }

    #[test]
    fn difference_step_values() {
        assert_eq!(difference_step(c(1.0, 0.0), &p(0.25)).unwrap(), c(2.0, 0.0));
        assert!(matches!(difference_step(c(1.0, 0.0), &p(0.5)), Err(Error::Pole { .. })));
        let f = difference_step(c(2.0, 0.0), &p(0.25)).unwrap();
        assert_eq!(f, c(8.0, 0.0));
        // Γ_{1/4}(3) = 8 Γ_{1/4}(2) = 8 · 8/3
        assert!((f.re * 8.0 / 3.0 - 64.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn lambda_shift_k0_rational_case() {
        let shift = lambda_shift_recurrence(c(1.0, 0.0), 0, &p(0.25)).unwrap();
        assert!((shift.factor.re - 16.0 / 9.0).abs() < 1e-15);
        assert!((shift.shifted_lambda.lambda() - 1.0 / 3.0).abs() < 1e-16);
        let inner = degenerate_gamma(shift.shifted_arg, &shift.shifted_lambda);
        assert!((shift.factor.re * inner.value.re - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn lambda_shift_k0_half() {
        let q = p(0.25);
        let s = c(0.5, 0.0);
        let shift = lambda_shift_recurrence(s, 0, &q).unwrap();
        assert!((shift.factor.re - 0.5 / 0.75f64.powf(1.5)).abs() < 1e-15);
        let lhs = degenerate_gamma(s + 1.0, &q).value;
        let rhs = shift.factor * degenerate_gamma(shift.shifted_arg, &shift.shifted_lambda).value;
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-11);
    }

    #[test]
    fn lambda_shift_range_errors() {
        assert!(matches!(
            lambda_shift_recurrence(c(1.5, 0.0), 1, &p(0.4)),
            Err(Error::ParameterRange(_))
        ));
        // λ' = 0.35/(1-0.7) > 1
        assert!(matches!(
            lambda_shift_recurrence(c(1.2, 0.0), 1, &p(0.35)),
            Err(Error::ParameterRange(_))
        ));
        assert!(matches!(
            lambda_shift_recurrence(c(0.5, 0.0), 1, &p(0.1)),
            Err(Error::Strip { .. })
        ));
    }
}
