//! Truncated infinite products for `Γ_λ`, `B_λ` and `πz / sin πz`.
//!
//! The Weierstrass-type product
//!
//! ```text
//! Γ_λ(z) = λ^{-z} / (z w Γ(1/λ)) · Π_{n≥1} (1 + 1/n)^{1/λ} (1 + z/n)^{-1} (1 + w/n)^{-1},   w = 1/λ - z,
//! ```
//!
//! is summed as logs. Its `n`-th log term is `c₂/n² + O(1/n³)` with
//! `c₂ = (z² + w² - 1/λ)/2`, so truncating after `N` factors leaves an error
//! of order `1/N`; the optional tail correction adds `c₂/(N + 1/2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classical::log_gamma;
use crate::cmath::{log1p, CompensatedSum};
use crate::degenerate::{nearest_pole, symmetry_partner, DegenerateParameter};
use crate::error::{Error, PoleArgument, Result};
use crate::result::{EvalResult, Method};
use crate::POLE_TOLERANCE;

/// Truncation control for the product paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductSpec {
    /// Number of factors `N`.
    pub n_terms: u64,
    /// Add the leading-order estimate of the neglected factors.
    pub use_tail_correction: bool,
    /// Fail with `Error::Convergence` when the a-priori relative error bound
    /// exceeds this.
    pub tolerance: Option<f64>,
}

impl Default for ProductSpec {
    fn default() -> Self {
        Self {
            n_terms: 100_000,
            use_tail_correction: false,
            tolerance: None,
        }
    }
}

impl ProductSpec {
    pub fn with_terms(n_terms: u64) -> Self {
        Self {
            n_terms,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_terms == 0 {
            return Err(Error::ParameterRange("n_terms must be at least 1".into()));
        }
        Ok(())
    }
}

/// The two displayed forms of the Weierstrass-type product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WeierstrassForm {
    /// Factors `(1 + 1/n)^{1/λ} (1 + z/n)^{-1} (1 + w/n)^{-1}`.
    #[default]
    Canonical,
    /// Prefactor `e^{-γ/λ}` and factors `e^{1/(nλ)} (1 + z/n)^{-1} (1 + w/n)^{-1}`.
    /// At finite `N`, `γ` is replaced by `γ_N = H_N - log(N + 1)`, which makes
    /// the partial products of both forms identical.
    EulerGamma,
}

fn check_pole(z: Complex64, arg: PoleArgument, p: &DegenerateParameter) -> Result<()> {
    match nearest_pole(z, p, POLE_TOLERANCE) {
        Some(near) => Err(Error::Pole {
            arg,
            at: z,
            pole: near.location,
        }),
        None => Ok(()),
    }
}

/// Partial sum of logs and the bookkeeping needed for its error.
struct LogProduct {
    log_value: Complex64,
    /// Bound on `|log(exact) - log_value|`.
    log_error: f64,
}

fn log_inv_gamma_inv_lambda(p: &DegenerateParameter) -> f64 {
    -log_gamma(Complex64::new(p.inv_lambda(), 0.0))
        .expect("1/lambda > 1")
        .log_abs
}

/// `(1/λ) log(1 + 1/n) - log(1 + z/n) - log(1 + w/n)`.
fn canonical_term(n: f64, z: Complex64, w: Complex64, inv: f64) -> Complex64 {
    let r = 1.0 / n;
    inv * (1.0 / n).ln_1p() - log1p(z * r) - log1p(w * r)
}

/// Bound on the neglected log-sum `Σ_{n>N}` of the canonical terms, and on
/// its remainder after the tail correction.
fn tail_bounds(n_terms: u64, z: Complex64, w: Complex64, inv: f64) -> (f64, f64) {
    let (za, wa) = (z.norm(), w.norm());
    // for n ≥ m every |x| = |z|/n, |w|/n, 1/n is at most 1/2
    let m = (2.0 * za.max(wa).max(1.0)).ceil();
    let nf = n_terms as f64;
    let second = inv + za * za + wa * wa;
    let mut explicit = 0.0;
    let mut k = nf + 1.0;
    while k < m {
        explicit += canonical_term(k, z, w, inv).norm();
        k += 1.0;
    }
    let start = nf.max(m - 1.0);
    let plain = explicit + second / start;
    let corrected = if nf >= m {
        let c2 = 0.5 * (z * z + w * w - inv).norm();
        let c3 = (inv + za.powi(3) + wa.powi(3)) / 3.0;
        let c4 = 0.5 * (inv + za.powi(4) + wa.powi(4));
        (c2 / nf + c3 + c4) / (nf * nf)
    } else {
        plain
    };
    (plain, corrected)
}

fn weierstrass_log(
    z: Complex64,
    p: &DegenerateParameter,
    spec: &ProductSpec,
    form: WeierstrassForm,
) -> LogProduct {
    let inv = p.inv_lambda();
    let w = symmetry_partner(z, p);
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let prefactor = -z * p.log_lambda() - z.ln() - w.ln() + log_inv_gamma_inv_lambda(p);
    acc.add(prefactor);
    magnitude += prefactor.norm();
    match form {
        WeierstrassForm::Canonical => {
            for n in 1..=spec.n_terms {
                let t = canonical_term(n as f64, z, w, inv);
                magnitude += t.norm();
                acc.add(t);
            }
        }
        WeierstrassForm::EulerGamma => {
            let mut harmonic = CompensatedSum::new();
            for n in 1..=spec.n_terms {
                let r = 1.0 / n as f64;
                harmonic.add(Complex64::new(r, 0.0));
                let t = inv * r - log1p(z * r) - log1p(w * r);
                magnitude += t.norm();
                acc.add(t);
            }
            let gamma_n = harmonic.value().re - (spec.n_terms as f64).ln_1p();
            let g = Complex64::new(-gamma_n * inv, 0.0);
            magnitude += g.norm();
            acc.add(g);
        }
    }
    let (plain, corrected) = tail_bounds(spec.n_terms, z, w, inv);
    let mut log_value = acc.value();
    let tail = if spec.use_tail_correction {
        let c2 = 0.5 * (z * z + w * w - inv);
        log_value += c2 / (spec.n_terms as f64 + 0.5);
        corrected
    } else {
        plain
    };
    LogProduct {
        log_value,
        log_error: tail + 8.0 * f64::EPSILON * magnitude,
    }
}

fn result_from_log(lp: LogProduct, real: bool, method: Method) -> EvalResult {
    // |e^{ε} - 1| ≤ e^{|ε|} - 1
    let rel = lp.log_error.exp_m1();
    let mut r = EvalResult::from_log(lp.log_value, rel, method);
    if real && r.value.im.is_finite() {
        r.value.im = 0.0;
    }
    r
}

fn check_tolerance(log_error: f64, spec: &ProductSpec) -> Result<()> {
    match spec.tolerance {
        Some(tol) if log_error.exp_m1() > tol => Err(Error::Convergence {
            estimate: log_error.exp_m1(),
            tolerance: tol,
        }),
        _ => Ok(()),
    }
}

/// `Γ_λ(z)` from the `N`-factor Weierstrass-type product.
///
/// `abs_error_estimate` comes from an a-priori bound on the neglected
/// factors: `|log term_n| ≤ (1/λ + |z|² + |w|²)/n²` once
/// `n ≥ 2 max(|z|, |w|, 1)`.
pub fn weierstrass_gamma(z: Complex64, p: &DegenerateParameter, spec: &ProductSpec) -> Result<EvalResult> {
    weierstrass_gamma_with_form(z, p, spec, WeierstrassForm::Canonical)
}

pub fn weierstrass_gamma_with_form(
    z: Complex64,
    p: &DegenerateParameter,
    spec: &ProductSpec,
    form: WeierstrassForm,
) -> Result<EvalResult> {
    spec.validate()?;
    check_pole(z, PoleArgument::Z, p)?;
    let lp = weierstrass_log(z, p, spec, form);
    check_tolerance(lp.log_error, spec)?;
    Ok(result_from_log(lp, z.im == 0.0, Method::WeierstrassProduct))
}

/// `Γ_λ(z)` from the Euler-type limit
///
/// ```text
/// λ^{-z} / Γ(1/λ) · n^{1/λ} ((n-1)!)² / (z(1+z)⋯(n-1+z) · w(1+w)⋯(n-1+w))
/// ```
///
/// at `n = spec.n_terms`. Written as `n^{1/λ} Π_{k<n} (1+z/k)^{-1}(1+w/k)^{-1}
/// / (zw)` so that no factorial is formed. The error estimate is
/// `2 |v(n) - v(n/2)|`, which bounds the `O(1/n)` truncation error when
/// the leading term dominates.
pub fn euler_limit_gamma(z: Complex64, p: &DegenerateParameter, spec: &ProductSpec) -> Result<EvalResult> {
    spec.validate()?;
    check_pole(z, PoleArgument::Z, p)?;
    let inv = p.inv_lambda();
    let w = symmetry_partner(z, p);
    let n = spec.n_terms;
    let half = (n / 2).max(1);
    let prefactor = -z * p.log_lambda() - z.ln() - w.ln() + log_inv_gamma_inv_lambda(p);
    let mut acc = CompensatedSum::new();
    let mut magnitude = prefactor.norm();
    let mut at_half = None;
    for k in 1..n {
        if k == half {
            at_half = Some(acc.value());
        }
        let r = 1.0 / k as f64;
        let t = -log1p(z * r) - log1p(w * r);
        magnitude += t.norm();
        acc.add(t);
    }
    let log_at = |sum: Complex64, m: u64| prefactor + sum + inv * (m as f64).ln();
    let log_value = log_at(acc.value(), n);
    let log_half = log_at(at_half.unwrap_or(acc.value()), half);
    let log_error = if half < n {
        2.0 * (log_value - log_half).norm()
    } else {
        f64::INFINITY
    };
    let lp = LogProduct {
        log_value,
        log_error: log_error + 8.0 * f64::EPSILON * (magnitude + inv * (n as f64).ln()),
    };
    check_tolerance(lp.log_error, spec)?;
    Ok(result_from_log(lp, z.im == 0.0, Method::EulerLimit))
}

/// Partial product `Π_{n=1}^{N} (1 - z²/n²)^{-1}`, which tends to
/// `πz / sin πz`.
pub fn sine_product(z: Complex64, n_terms: u64) -> Result<Complex64> {
    if n_terms == 0 {
        return Err(Error::ParameterRange("n_terms must be at least 1".into()));
    }
    let (k, dist) = crate::cmath::nearest_integer(z);
    if k != 0.0 && dist < POLE_TOLERANCE {
        return Err(Error::Pole {
            arg: PoleArgument::Z,
            at: z,
            pole: Complex64::new(k, 0.0),
        });
    }
    let z2 = z * z;
    let mut acc = CompensatedSum::new();
    for n in 1..=n_terms {
        let nf = n as f64;
        acc.add(-log1p(-z2 / (nf * nf)));
    }
    let mut v = acc.value().exp();
    if z.im == 0.0 {
        v.im = 0.0;
    }
    Ok(v)
}

/// `B_λ(a, b)` from the product form
///
/// ```text
/// e^{-γ/λ} (a+b)(1/λ-a-b) / (Γ(1/λ) ab(1/λ-a)(1/λ-b))
///   · Π e^{1/(nλ)} (1+(a+b)/n)(1+(1/λ-a-b)/n) / ((1+a/n)(1+(1/λ-a)/n)(1+b/n)(1+(1/λ-b)/n)),
/// ```
///
/// evaluated as the ratio of three `N`-factor Weierstrass partial products,
/// which is the same partial product with `γ` paired to `H_N - log(N+1)`.
pub fn degenerate_beta_product(
    a: Complex64,
    b: Complex64,
    p: &DegenerateParameter,
    spec: &ProductSpec,
) -> Result<EvalResult> {
    spec.validate()?;
    check_pole(a, PoleArgument::A, p)?;
    check_pole(b, PoleArgument::B, p)?;
    check_pole(a + b, PoleArgument::APlusB, p)?;
    let la = weierstrass_log(a, p, spec, WeierstrassForm::Canonical);
    let lb = weierstrass_log(b, p, spec, WeierstrassForm::Canonical);
    let lab = weierstrass_log(a + b, p, spec, WeierstrassForm::Canonical);
    let lp = LogProduct {
        log_value: la.log_value + lb.log_value - lab.log_value,
        log_error: la.log_error + lb.log_error + lab.log_error,
    };
    check_tolerance(lp.log_error, spec)?;
    let real = a.im == 0.0 && b.im == 0.0;
    Ok(result_from_log(lp, real, Method::WeierstrassProduct))
}
