use num_complex::Complex64;

use super::{log_closed_form, nearest_pole, DegenerateParameter, ROUNDING_FACTOR};
use crate::classical::{factorial, log_beta, log_gamma};
use crate::degenerate::falling_factorial;
use crate::error::{Error, PoleArgument, Result};
use crate::result::{EvalResult, Method, Status};
use crate::{NEAR_POLE_RADIUS, POLE_TOLERANCE};

const ZERO_NOTE: &str = "a+b sits on a pole of the degenerate gamma function while a and b are regular; the ratio is taken as its limit 0";

fn check_argument(x: Complex64, arg: PoleArgument, p: &DegenerateParameter) -> Result<()> {
    match nearest_pole(x, p, POLE_TOLERANCE) {
        Some(near) => Err(Error::Pole {
            arg,
            at: x,
            pole: near.location,
        }),
        None => Ok(()),
    }
}

fn zero_result(method: Method) -> EvalResult {
    EvalResult {
        value: Complex64::new(0.0, 0.0),
        log_value: None,
        abs_error_estimate: 0.0,
        method,
        status: Status::Regular,
        note: Some(ZERO_NOTE.to_string()),
    }
}

fn near_pole_status(
    args: [Complex64; 3],
    p: &DegenerateParameter,
) -> Option<(Status, f64)> {
    args.iter()
        .filter_map(|&x| nearest_pole(x, p, NEAR_POLE_RADIUS))
        .min_by(|a, b| a.distance.total_cmp(&b.distance))
        .map(|near| {
            let info = super::pole_info(p, near.family, near.index);
            (Status::NearPole(info), NEAR_POLE_RADIUS / near.distance)
        })
}

fn finish(log_value: Complex64, magnitude: f64, args: [Complex64; 3], p: &DegenerateParameter, method: Method) -> EvalResult {
    let mut rel_error = ROUNDING_FACTOR * magnitude;
    let near = near_pole_status(args, p);
    if let Some((_, inflation)) = near {
        rel_error *= inflation;
    }
    let mut result = EvalResult::from_log(log_value, rel_error, method);
    if let (Some((status, _)), Status::Regular) = (near, result.status) {
        result.status = status;
    }
    if args.iter().all(|x| x.im == 0.0) && result.value.im.is_finite() {
        result.value.im = 0.0;
    }
    result
}

/// `log B_λ(a, b)`; `Error::Pole` if `a`, `b` or `a + b` is on a pole.
pub fn log_degenerate_beta(a: Complex64, b: Complex64, p: &DegenerateParameter) -> Result<Complex64> {
    check_argument(a, PoleArgument::A, p)?;
    check_argument(b, PoleArgument::B, p)?;
    check_argument(a + b, PoleArgument::APlusB, p)?;
    let (la, _) = log_closed_form(a, p)?;
    let (lb, _) = log_closed_form(b, p)?;
    let (lab, _) = log_closed_form(a + b, p)?;
    Ok(la + lb - lab)
}

/// `B_λ(a, b) = Γ_λ(a) Γ_λ(b) / Γ_λ(a + b)` from three closed-form
/// log evaluations.
///
/// When `a + b` is on a pole but `a` and `b` are not, the ratio vanishes;
/// the result is 0 with an explanatory note.
pub fn degenerate_beta(a: Complex64, b: Complex64, p: &DegenerateParameter) -> Result<EvalResult> {
    check_argument(a, PoleArgument::A, p)?;
    check_argument(b, PoleArgument::B, p)?;
    if nearest_pole(a + b, p, POLE_TOLERANCE).is_some() {
        return Ok(zero_result(Method::ClosedForm));
    }
    let (la, ma) = log_closed_form(a, p)?;
    let (lb, mb) = log_closed_form(b, p)?;
    let (lab, mab) = log_closed_form(a + b, p)?;
    Ok(finish(la + lb - lab, ma + mb + mab, [a, b, a + b], p, Method::ClosedForm))
}

/// `B_λ(a, b) = B(a, b) Γ(1/λ - a) Γ(1/λ - b) / (Γ(1/λ) Γ(1/λ - a - b))`,
/// which uses the classical beta function instead of three `Γ_λ` values.
pub fn degenerate_beta_classical_mixed(
    a: Complex64,
    b: Complex64,
    p: &DegenerateParameter,
) -> Result<EvalResult> {
    check_argument(a, PoleArgument::A, p)?;
    check_argument(b, PoleArgument::B, p)?;
    if nearest_pole(a + b, p, POLE_TOLERANCE).is_some() {
        return Ok(zero_result(Method::ClassicalMixed));
    }
    let inv = p.inv_lambda();
    let lg = |x: Complex64| log_gamma(x).map(|v| v.to_complex());
    let terms = [
        log_beta(a, b)?,
        lg(inv - a)?,
        lg(inv - b)?,
        -lg(Complex64::new(inv, 0.0))?,
        -lg(inv - a - b)?,
    ];
    let log_value: Complex64 = terms.iter().sum();
    let magnitude: f64 = terms.iter().map(|t| t.norm()).sum::<f64>() + 1.0;
    Ok(finish(log_value, magnitude, [a, b, a + b], p, Method::ClassicalMixed))
}

/// `B_λ(m, n) = (1)_{m+n+1,λ} / ((1)_{m+1,λ} (1)_{n+1,λ}) · B(m, n)` for
/// positive integers, by direct product arithmetic.
pub fn degenerate_beta_integer(m: u32, n: u32, p: &DegenerateParameter) -> Result<f64> {
    if m == 0 || n == 0 {
        return Err(Error::ParameterRange("m and n must be positive integers".into()));
    }
    let lambda = p.lambda();
    if let Some(j) = (2..=m + n).find(|&j| (lambda - 1.0 / j as f64).abs() < POLE_TOLERANCE) {
        return Err(Error::SingularParameter { lambda, j });
    }
    let ff = |k: u32| falling_factorial(Complex64::new(1.0, 0.0), k, lambda).re;
    let fact = |k: u32| {
        factorial(k).ok_or_else(|| Error::ParameterRange(format!("{k}! overflows")))
    };
    let classical = fact(m - 1)? * fact(n - 1)? / fact(m + n - 1)?;
    Ok(ff(m + n + 1) / (ff(m + 1) * ff(n + 1)) * classical)
}
