use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The two pole families of the degenerate gamma function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoleFamily {
    /// `s = -n`
    NonPositive,
    /// `s = 1/λ + n`
    ShiftedByInvLambda,
}

/// A pole of `Γ_λ` together with its residue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleInfo {
    pub family: PoleFamily,
    pub index: u32,
    pub location: Complex64,
    pub residue: Complex64,
    /// `log |residue|`, usable when the residue itself overflows.
    pub log_abs_residue: f64,
}

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    ClassicalMixed,
    DirectIntegral,
    Hankel,
    HankelReflected,
    WeierstrassProduct,
    EulerLimit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::ClassicalMixed => "classical-mixed",
            Method::DirectIntegral => "direct-integral",
            Method::Hankel => "hankel",
            Method::HankelReflected => "hankel-reflected",
            Method::WeierstrassProduct => "weierstrass-product",
            Method::EulerLimit => "euler-limit",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Status {
    Regular,
    /// Within the near-pole band; the error estimate has been inflated.
    NearPole(PoleInfo),
    /// On a pole; `value` is NaN and the residue is in the `PoleInfo`.
    AtPole(PoleInfo),
    /// `|value|` exceeds double range; `log_value` still holds the result.
    Overflow,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Regular => "regular",
            Status::NearPole(_) => "near-pole",
            Status::AtPole(_) => "pole",
            Status::Overflow => "overflow",
        }
    }

    pub fn pole(&self) -> Option<&PoleInfo> {
        match self {
            Status::NearPole(p) | Status::AtPole(p) => Some(p),
            _ => None,
        }
    }
}

/// Outcome of one evaluation of `Γ_λ` or `B_λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    /// Natural log of `value` (any branch), when one was computed.
    pub log_value: Option<Complex64>,
    pub abs_error_estimate: f64,
    pub method: Method,
    pub status: Status,
    pub note: Option<String>,
}

impl EvalResult {
    pub(crate) fn from_log(log_value: Complex64, rel_error: f64, method: Method) -> Self {
        let (value, status) = if log_value.re > crate::OVERFLOW_LOG_THRESHOLD {
            (Complex64::new(f64::INFINITY, f64::INFINITY), Status::Overflow)
        } else {
            (log_value.exp(), Status::Regular)
        };
        let abs_error_estimate = if value.norm().is_finite() {
            rel_error * value.norm()
        } else {
            f64::INFINITY
        };
        Self {
            value,
            log_value: Some(log_value),
            abs_error_estimate,
            method,
            status,
            note: None,
        }
    }

    pub(crate) fn from_value(value: Complex64, abs_error_estimate: f64, method: Method) -> Self {
        Self {
            value,
            log_value: None,
            abs_error_estimate,
            method,
            status: Status::Regular,
            note: None,
        }
    }

    pub(crate) fn at_pole(pole: PoleInfo, method: Method) -> Self {
        Self {
            value: Complex64::new(f64::NAN, f64::NAN),
            log_value: None,
            abs_error_estimate: 0.0,
            method,
            status: Status::AtPole(pole),
            note: None,
        }
    }

    pub fn is_at_pole(&self) -> bool {
        matches!(self.status, Status::AtPole(_))
    }

    /// Relative error estimate, `abs_error_estimate / |value|`.
    pub fn rel_error_estimate(&self) -> f64 {
        self.abs_error_estimate / self.value.norm()
    }
}
