//! Output rows and their JSON-lines / CSV writers.

use std::io::Write;

use degamma::{Complex64, EvalResult, PoleInfo, Status};
use serde::{Deserialize, Serialize};

/// One evaluation of `Γ_λ`. Non-finite numbers are written as JSON `null`
/// and as empty CSV fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub s_re: f64,
    pub s_im: f64,
    pub lambda: f64,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub abs_error: Option<f64>,
    pub method: String,
    pub status: String,
}

/// One evaluation of `B_λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaRecord {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub lambda: f64,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub abs_error: Option<f64>,
    pub method: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub family: String,
    pub index: u32,
    pub location_re: f64,
    pub location_im: f64,
    pub lambda: f64,
    pub residue_re: Option<f64>,
    pub residue_im: Option<f64>,
    pub log_abs_residue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub check_name: String,
    pub passed: bool,
    pub sample_count: usize,
    pub max_rel_err: Option<f64>,
    pub tolerance: f64,
    pub failures: usize,
}

pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub const SKIPPED: &str = "skipped";

impl OutputRecord {
    /// Record for a computed result; at a pole the value fields carry the
    /// residue when `residue_as_value` is set, and are empty otherwise.
    pub fn from_result(s: Complex64, lambda: f64, r: &EvalResult, residue_as_value: bool) -> Self {
        let value = match (&r.status, residue_as_value) {
            (Status::AtPole(info), true) => info.residue,
            _ => r.value,
        };
        Self {
            s_re: s.re,
            s_im: s.im,
            lambda,
            value_re: finite(value.re),
            value_im: finite(value.im),
            abs_error: finite(r.abs_error_estimate),
            method: r.method.as_str().to_string(),
            status: r.status.label().to_string(),
        }
    }

    pub fn skipped(s: Complex64, lambda: f64, method: &str) -> Self {
        Self {
            s_re: s.re,
            s_im: s.im,
            lambda,
            value_re: None,
            value_im: None,
            abs_error: None,
            method: method.to_string(),
            status: SKIPPED.to_string(),
        }
    }
}

impl PoleRecord {
    pub fn new(info: &PoleInfo, lambda: f64) -> Self {
        Self {
            family: match info.family {
                degamma::PoleFamily::NonPositive => "nonpositive",
                degamma::PoleFamily::ShiftedByInvLambda => "shifted",
            }
            .to_string(),
            index: info.index,
            location_re: info.location.re,
            location_im: info.location.im,
            lambda,
            residue_re: finite(info.residue.re),
            residue_im: finite(info.residue.im),
            log_abs_residue: info.log_abs_residue,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Streams records in the chosen format; CSV always starts with a header.
pub fn write_records<T: Serialize, W: Write>(out: W, format: Format, records: &[T]) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(out);
            for r in records {
                w.serialize(r).map_err(std::io::Error::other)?;
            }
            w.flush()
        }
    }
}
