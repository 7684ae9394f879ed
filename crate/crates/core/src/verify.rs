//! Consistency harness: samples parameter space, evaluates every path and
//! checks every identity against the closed form.
//!
//! Each check draws its own deterministic stream from the seed, so reports
//! are reproducible byte for byte and independent of scheduling.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{beta, gamma};
use crate::cmath::{log_rel_diff, nearest_integer};
use crate::degenerate::{
    degenerate_beta, degenerate_beta_classical_mixed, degenerate_beta_integer, degenerate_exp,
    degenerate_gamma, degenerate_gamma_integer, difference_step, lambda_shift_recurrence,
    log_degenerate_gamma, nearest_pole, pole_info, DegenerateParameter,
};
use crate::quadrature::{direct_integral_gamma, hankel_gamma, hankel_gamma_reflected, QuadratureSpec};
use crate::representations::{
    degenerate_beta_product, euler_limit_gamma, sine_product, weierstrass_gamma,
    weierstrass_gamma_with_form, ProductSpec, WeierstrassForm,
};
use crate::result::{EvalResult, PoleFamily, Status};

/// Points closer than this to a pole are redrawn.
pub const POLE_REJECTION_RADIUS: f64 = 0.05;

/// Factor applied to the observed path of the faulted check.
pub const FAULT_FACTOR: f64 = 1.0 + 1e-6;

/// Every identity check, in report order.
pub const IDENTITY_CHECKS: &[&str] = &[
    "beta_form",
    "beta_integer",
    "beta_product",
    "beta_ratio_vs_classical_mixed",
    "difference_equation",
    "direct_integral",
    "euler_limit",
    "hankel",
    "hankel_continuation",
    "hankel_radius_independence",
    "hankel_reflected",
    "integer_values",
    "lambda_shift_k0",
    "lambda_shift_k1",
    "lambda_shift_k2",
    "residues_nonpositive",
    "residues_shifted",
    "sine_product",
    "symmetry_reflection",
    "weierstrass_euler_gamma",
    "weierstrass_product",
];

pub const LIMIT_CHECKS: &[&str] = &["degenerate_exp_limit", "limit_lambda_to_one", "limit_lambda_to_zero"];

pub const CROSS_PATH_CHECK: &str = "cross_path_scan";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub s: Complex64,
    pub lambda: f64,
    pub path: String,
    pub observed: Complex64,
    pub expected: Complex64,
}

/// Per-path outcome of a multi-path check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSummary {
    pub path: String,
    pub tolerance: f64,
    pub evaluated: usize,
    /// Cells where the path's preconditions fail.
    pub skipped: usize,
    pub not_applicable: bool,
    pub max_rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub sample_count: usize,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub failures: Vec<Failure>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<PathSummary>,
}

/// Parameters of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub lambda_range: (f64, f64),
    /// Name of a check whose observed path is multiplied by [`FAULT_FACTOR`].
    pub fault: Option<String>,
}

impl SuiteConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self {
            seed,
            samples,
            lambda_range: (0.1, 0.9),
            fault: None,
        }
    }
}

/// Uniform sampler over a rectangle of `s` and an interval of `λ`, with
/// rejection of unwanted points. Queued candidates are tried first.
pub struct Sampler {
    rng: ChaCha8Rng,
    forced: VecDeque<(Complex64, f64)>,
    rejected: usize,
}

impl Sampler {
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(fnv1a(stream));
        Self {
            rng,
            forced: VecDeque::new(),
            rejected: 0,
        }
    }

    pub fn force(&mut self, s: Complex64, lambda: f64) {
        self.forced.push_back((s, lambda));
    }

    pub fn rejected(&self) -> usize {
        self.rejected
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            lo
        } else {
            self.rng.gen_range(lo..hi)
        }
    }

    /// Draws `(s, λ)` with `λ` from `lambda`, `Re s` from `re(λ)` and
    /// `Im s` from `im`, until `accept` holds.
    pub fn draw<R, A>(&mut self, lambda: (f64, f64), re: R, im: (f64, f64), accept: A) -> (Complex64, DegenerateParameter)
    where
        R: Fn(f64) -> (f64, f64),
        A: Fn(Complex64, &DegenerateParameter) -> bool,
    {
        loop {
            let (s, l) = match self.forced.pop_front() {
                Some(c) => c,
                None => {
                    let l = self.uniform(lambda.0, lambda.1);
                    let (lo, hi) = re(l);
                    let x = self.uniform(lo, hi);
                    let y = self.uniform(im.0, im.1);
                    (Complex64::new(x, y), l)
                }
            };
            if let Ok(p) = DegenerateParameter::new(l) {
                if accept(s, &p) {
                    return (s, p);
                }
            }
            self.rejected += 1;
        }
    }
}

fn fnv1a(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// `true` when `s` is at least [`POLE_REJECTION_RADIUS`] from every pole.
pub fn clear_of_poles(s: Complex64, p: &DegenerateParameter) -> bool {
    nearest_pole(s, p, POLE_REJECTION_RADIUS).is_none()
}

fn clear_of_integers(s: Complex64) -> bool {
    nearest_integer(s).1 >= POLE_REJECTION_RADIUS
}

fn rel_diff(observed: Complex64, expected: Complex64) -> f64 {
    let d = (observed - expected).norm();
    if d == 0.0 {
        0.0
    } else {
        d / expected.norm()
    }
}

/// Accumulates comparisons for one check.
struct Recorder {
    name: &'static str,
    tolerance: f64,
    perturb: bool,
    samples: usize,
    max_rel_err: f64,
    failures: Vec<Failure>,
    paths: Vec<PathSummary>,
}

impl Recorder {
    fn new(name: &'static str, tolerance: f64, fault: Option<&str>) -> Self {
        Self {
            name,
            tolerance,
            perturb: fault == Some(name),
            samples: 0,
            max_rel_err: 0.0,
            failures: Vec::new(),
            paths: Vec::new(),
        }
    }

    fn observed(&self, v: Complex64) -> Complex64 {
        if self.perturb {
            v * FAULT_FACTOR
        } else {
            v
        }
    }

    fn observed_log(&self, v: Complex64) -> Complex64 {
        if self.perturb {
            v + FAULT_FACTOR.ln()
        } else {
            v
        }
    }

    /// Records a comparison whose error has already been measured; `ok`
    /// overrides the plain tolerance test when the check also demands an
    /// honest error estimate.
    fn record(&mut self, s: Complex64, lambda: f64, path: &str, observed: Complex64, expected: Complex64, err: f64, ok: bool) {
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.max_rel_err = self.max_rel_err.max(err);
        if !ok {
            self.failures.push(Failure {
                s,
                lambda,
                path: path.to_string(),
                observed,
                expected,
            });
        }
    }

    fn compare(&mut self, s: Complex64, lambda: f64, path: &str, observed: Complex64, expected: Complex64) {
        let observed = self.observed(observed);
        let err = rel_diff(observed, expected);
        let ok = err <= self.tolerance;
        self.record(s, lambda, path, observed, expected, err, ok);
    }

    fn compare_log(&mut self, s: Complex64, lambda: f64, path: &str, observed: Complex64, expected: Complex64) {
        let observed = self.observed_log(observed);
        let err = log_rel_diff(observed, expected);
        let ok = err <= self.tolerance;
        self.record(s, lambda, path, observed, expected, err, ok);
    }

    /// Like `compare`, and also requires the reported error estimate to
    /// cover the actual error.
    fn compare_honest(&mut self, s: Complex64, lambda: f64, path: &str, observed: &EvalResult, expected: &EvalResult) {
        let value = self.observed(observed.value);
        let diff = (value - expected.value).norm();
        let err = rel_diff(value, expected.value);
        let allowed = observed.abs_error_estimate + expected.abs_error_estimate;
        let ok = err <= self.tolerance && diff <= allowed;
        self.record(s, lambda, path, value, expected.value, err, ok);
    }

    fn fail(&mut self, s: Complex64, lambda: f64, path: &str) {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        self.record(s, lambda, path, nan, nan, f64::INFINITY, false);
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            check_name: self.name.to_string(),
            sample_count: self.samples,
            max_rel_err: self.max_rel_err,
            tolerance: self.tolerance,
            passed: self.failures.is_empty(),
            failures: self.failures,
            paths: self.paths,
        }
    }
}

struct Ctx<'a> {
    config: &'a SuiteConfig,
}

impl Ctx<'_> {
    fn sampler(&self, name: &str) -> Sampler {
        Sampler::new(self.config.seed, name)
    }

    fn recorder(&self, name: &'static str, tolerance: f64) -> Recorder {
        Recorder::new(name, tolerance, self.config.fault.as_deref())
    }

    fn lambda(&self) -> (f64, f64) {
        self.config.lambda_range
    }

    /// The configured `λ` range cut to `[lo, hi]`, or `[lo, hi]` itself when
    /// the two do not overlap.
    fn lambda_within(&self, lo: f64, hi: f64) -> (f64, f64) {
        let (a, b) = self.config.lambda_range;
        let (a, b) = (a.max(lo), b.min(hi));
        if a < b {
            (a, b)
        } else {
            (lo, hi)
        }
    }
}

const PRODUCT_TERMS: u64 = 100_000;
const PRODUCT_LAMBDA: (f64, f64) = (0.3, 0.8);

fn product_region(l: f64) -> (f64, f64) {
    (0.1, 1.0 / l - 0.1)
}

fn general_region(l: f64) -> (f64, f64) {
    (-4.0, (1.0 / l + 4.0).min(14.0))
}

fn closed_log(s: Complex64, p: &DegenerateParameter) -> Complex64 {
    log_degenerate_gamma(s, p).expect("sampled point is regular")
}

fn difference_equation(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("difference_equation", 1e-10);
    let mut sampler = ctx.sampler(rec.name);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(ctx.lambda(), general_region, (-4.0, 4.0), |s, p| {
            clear_of_poles(s, p) && clear_of_poles(s + 1.0, p)
        });
        let step = difference_step(s, &p).expect("1 - λ(s+1) is nonzero off the poles");
        let lhs = closed_log(s + 1.0, &p);
        let rhs = step.ln() + closed_log(s, &p);
        rec.compare_log(s, p.lambda(), "closed-form", lhs, rhs);
        rec.samples += 1;
    }
    rec.finish()
}

fn symmetry_reflection(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("symmetry_reflection", 1e-10);
    let mut sampler = ctx.sampler(rec.name);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(ctx.lambda(), general_region, (-4.0, 4.0), clear_of_poles);
        let w = p.inv_lambda() - s;
        let lhs = s * p.log_lambda() + closed_log(s, &p);
        let rhs = w * p.log_lambda() + closed_log(w, &p);
        rec.compare_log(s, p.lambda(), "closed-form", lhs, rhs);
        rec.samples += 1;
    }
    rec.finish()
}

fn beta_form(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("beta_form", 1e-10);
    let mut sampler = ctx.sampler(rec.name);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(ctx.lambda(), general_region, (-3.0, 3.0), clear_of_poles);
        let w = p.inv_lambda() - s;
        let observed = (-s * p.log_lambda()).exp() * beta(s, w).expect("s and 1/λ - s are regular");
        let expected = degenerate_gamma(s, &p).value;
        rec.compare(s, p.lambda(), "classical-beta", observed, expected);
        rec.samples += 1;
    }
    rec.finish()
}

fn lambda_shift(ctx: &Ctx, k: u32) -> CheckReport {
    let name = match k {
        0 => "lambda_shift_k0",
        1 => "lambda_shift_k1",
        _ => "lambda_shift_k2",
    };
    let mut rec = ctx.recorder(name, 1e-10);
    let mut sampler = ctx.sampler(name);
    let kf = k as f64;
    let range = ctx.lambda_within(0.02, 1.0 / (kf + 2.0) - 0.02);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(
            range,
            |l| (kf + 0.05, (1.0 - l) / l - 0.05),
            (-3.0, 3.0),
            |s, p| clear_of_poles(s + 1.0, p),
        );
        let shift = lambda_shift_recurrence(s, k, &p).expect("sampled inside the strip");
        let lhs = degenerate_gamma(s + 1.0, &p).value;
        let rhs = shift.factor * degenerate_gamma(shift.shifted_arg, &shift.shifted_lambda).value;
        rec.compare(s, p.lambda(), "closed-form", lhs, rhs);
        rec.samples += 1;
    }
    rec.finish()
}

fn integer_values(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("integer_values", 1e-12);
    let mut sampler = ctx.sampler(rec.name);
    for i in 0..ctx.config.samples {
        let k = (i % 10) as u32 + 1;
        let s = Complex64::new(k as f64, 0.0);
        let (_, p) = sampler.draw(ctx.lambda(), |_| (0.0, 0.0), (0.0, 0.0), |_, p| {
            clear_of_poles(s, p) && (2..=k + 1).all(|j| (p.lambda() - 1.0 / j as f64).abs() > 1e-3)
        });
        let exact = degenerate_gamma_integer(k, &p).expect("λ avoids 1/j").value;
        rec.compare(s, p.lambda(), "closed-form", degenerate_gamma(s, &p).value, exact);
        rec.samples += 1;
    }
    rec.finish()
}

fn residues(ctx: &Ctx, family: PoleFamily) -> CheckReport {
    let name = match family {
        PoleFamily::NonPositive => "residues_nonpositive",
        PoleFamily::ShiftedByInvLambda => "residues_shifted",
    };
    let mut rec = ctx.recorder(name, 1e-6);
    let mut sampler = ctx.sampler(name);
    for i in 0..ctx.config.samples {
        let n = (i % 6) as u32;
        // the two families only meet when 1/λ is an integer
        let (_, p) = sampler.draw(ctx.lambda(), |_| (0.0, 0.0), (0.0, 0.0), |_, p| {
            nearest_integer(Complex64::new(p.inv_lambda(), 0.0)).1 > 0.01
        });
        let info = pole_info(&p, family, n);
        let numeric = numeric_residue(info.location, &p, 1e-4);
        rec.compare(info.location, p.lambda(), "contour-average", numeric, info.residue);
        rec.samples += 1;
    }
    rec.finish()
}

/// Mean of `(s - s₀) Γ_λ(s)` over four points on the circle `|s - s₀| = r`,
/// a discrete Cauchy integral that cancels the first three Laurent terms
/// beyond the residue.
pub fn numeric_residue(s0: Complex64, p: &DegenerateParameter, r: f64) -> Complex64 {
    let offsets = [
        Complex64::new(r, 0.0),
        Complex64::new(0.0, r),
        Complex64::new(-r, 0.0),
        Complex64::new(0.0, -r),
    ];
    offsets
        .iter()
        .map(|&d| d * degenerate_gamma(s0 + d, p).value)
        .sum::<Complex64>()
        / 4.0
}

fn weierstrass_product(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("weierstrass_product", 1e-4);
    let mut sampler = ctx.sampler(rec.name);
    let spec = ProductSpec::with_terms(PRODUCT_TERMS);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(PRODUCT_LAMBDA, product_region, (-1.5, 1.5), clear_of_poles);
        let expected = degenerate_gamma(s, &p);
        match weierstrass_gamma(s, &p, &spec) {
            Ok(v) => rec.compare_honest(s, p.lambda(), "weierstrass-product", &v, &expected),
            Err(_) => rec.fail(s, p.lambda(), "weierstrass-product"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn weierstrass_euler_gamma(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("weierstrass_euler_gamma", 1e-12);
    let mut sampler = ctx.sampler(rec.name);
    let spec = ProductSpec::with_terms(10_000);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(PRODUCT_LAMBDA, product_region, (-1.5, 1.5), clear_of_poles);
        let a = weierstrass_gamma_with_form(s, &p, &spec, WeierstrassForm::EulerGamma);
        let b = weierstrass_gamma_with_form(s, &p, &spec, WeierstrassForm::Canonical);
        match (a, b) {
            (Ok(a), Ok(b)) => rec.compare(s, p.lambda(), "euler-gamma-form", a.value, b.value),
            _ => rec.fail(s, p.lambda(), "euler-gamma-form"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn euler_limit(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("euler_limit", 1e-3);
    let mut sampler = ctx.sampler(rec.name);
    let spec = ProductSpec::with_terms(PRODUCT_TERMS);
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(PRODUCT_LAMBDA, product_region, (-1.5, 1.5), clear_of_poles);
        let expected = degenerate_gamma(s, &p);
        match euler_limit_gamma(s, &p, &spec) {
            Ok(v) => rec.compare_honest(s, p.lambda(), "euler-limit", &v, &expected),
            Err(_) => rec.fail(s, p.lambda(), "euler-limit"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn sine_product_check(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("sine_product", 1e-4);
    let mut sampler = ctx.sampler(rec.name);
    for _ in 0..ctx.config.samples {
        let (z, p) = sampler.draw((0.5, 0.5), |_| (-2.5, 2.5), (-1.0, 1.0), |z, _| clear_of_integers(z) || z.norm() < 0.5);
        let expected = if z.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            PI * z / crate::cmath::sin_pi(z)
        };
        match sine_product(z, PRODUCT_TERMS) {
            Ok(v) => rec.compare(z, p.lambda(), "sine-product", v, expected),
            Err(_) => rec.fail(z, p.lambda(), "sine-product"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn beta_pair_regular(a: Complex64, b: Complex64, p: &DegenerateParameter) -> bool {
    clear_of_poles(a, p) && clear_of_poles(b, p) && clear_of_poles(a + b, p)
}

fn beta_ratio_vs_classical_mixed(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("beta_ratio_vs_classical_mixed", 1e-11);
    let mut sampler = ctx.sampler(rec.name);
    for _ in 0..ctx.config.samples {
        let (a, p) = sampler.draw(ctx.lambda(), |l| (-2.0, 1.0 / l), (-2.0, 2.0), clear_of_poles);
        let (b, _) = sampler.draw((p.lambda(), p.lambda()), |l| (-2.0, 1.0 / l), (-2.0, 2.0), |b, q| {
            beta_pair_regular(a, b, q)
        });
        let ratio = degenerate_beta(a, b, &p);
        let mixed = degenerate_beta_classical_mixed(a, b, &p);
        match (ratio, mixed) {
            (Ok(r), Ok(m)) => rec.compare(a, p.lambda(), "classical-mixed", m.value, r.value),
            _ => rec.fail(a, p.lambda(), "classical-mixed"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn beta_product_check(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("beta_product", 1e-4);
    let mut sampler = ctx.sampler(rec.name);
    let spec = ProductSpec::with_terms(PRODUCT_TERMS);
    for _ in 0..ctx.config.samples {
        let (a, p) = sampler.draw(PRODUCT_LAMBDA, |l| (0.1, 0.5 / l - 0.1), (-0.75, 0.75), clear_of_poles);
        let (b, _) = sampler.draw((p.lambda(), p.lambda()), |l| (0.1, 0.5 / l - 0.1), (-0.75, 0.75), |b, q| {
            beta_pair_regular(a, b, q)
        });
        let ratio = degenerate_beta(a, b, &p).expect("regular pair");
        match degenerate_beta_product(a, b, &p, &spec) {
            Ok(v) => rec.compare_honest(a, p.lambda(), "beta-product", &v, &ratio),
            Err(_) => rec.fail(a, p.lambda(), "beta-product"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn beta_integer(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("beta_integer", 1e-12);
    let mut sampler = ctx.sampler(rec.name);
    for i in 0..ctx.config.samples {
        let m = (i % 5) as u32 + 1;
        let n = (i / 5 % 5) as u32 + 1;
        let (a, b) = (Complex64::new(m as f64, 0.0), Complex64::new(n as f64, 0.0));
        let (_, p) = sampler.draw(ctx.lambda(), |_| (0.0, 0.0), (0.0, 0.0), |_, p| {
            beta_pair_regular(a, b, p) && (2..=m + n + 1).all(|j| (p.lambda() - 1.0 / j as f64).abs() > 1e-3)
        });
        let exact = degenerate_beta_integer(m, n, &p).expect("λ avoids 1/j");
        let ratio = degenerate_beta(a, b, &p).expect("regular pair").value;
        rec.compare(a, p.lambda(), "integer-formula", Complex64::new(exact, 0.0), ratio);
        rec.samples += 1;
    }
    rec.finish()
}

fn direct_integral(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("direct_integral", 1e-10);
    let mut sampler = ctx.sampler(rec.name);
    let spec = QuadratureSpec::default();
    for _ in 0..ctx.config.samples {
        let (s, p) = sampler.draw(ctx.lambda(), |l| (0.1, 1.0 / l - 0.1), (-3.0, 3.0), clear_of_poles);
        let expected = degenerate_gamma(s, &p).value;
        match direct_integral_gamma(s, &p, &spec) {
            Ok(v) => {
                let value = rec.observed(v.value);
                let err = rel_diff(value, expected);
                let ok = err <= rec.tolerance.max(10.0 * v.rel_error_estimate());
                rec.record(s, p.lambda(), "direct-integral", value, expected, err, ok);
            }
            Err(_) => rec.fail(s, p.lambda(), "direct-integral"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn hankel_sample(sampler: &mut Sampler, lambda: (f64, f64), re: impl Fn(f64) -> (f64, f64)) -> (Complex64, DegenerateParameter) {
    sampler.draw(lambda, re, (-2.0, 2.0), |s, p| clear_of_poles(s, p) && clear_of_integers(s))
}

fn hankel(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("hankel", 1e-7);
    let mut sampler = ctx.sampler(rec.name);
    let spec = QuadratureSpec::default();
    for _ in 0..ctx.config.samples {
        let (s, p) = hankel_sample(&mut sampler, ctx.lambda(), |l| (0.1, 1.0 / l - 0.5));
        let expected = degenerate_gamma(s, &p).value;
        match hankel_gamma(s, &p, &spec) {
            Ok(v) => rec.compare(s, p.lambda(), "hankel", v.value, expected),
            Err(_) => rec.fail(s, p.lambda(), "hankel"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn hankel_continuation(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("hankel_continuation", 1e-6);
    let mut sampler = ctx.sampler(rec.name);
    let spec = QuadratureSpec::default();
    for _ in 0..ctx.config.samples {
        let (s, p) = hankel_sample(&mut sampler, ctx.lambda(), |_| (-2.0, 0.0));
        let expected = degenerate_gamma(s, &p).value;
        match hankel_gamma(s, &p, &spec) {
            Ok(v) => rec.compare(s, p.lambda(), "hankel", v.value, expected),
            Err(_) => rec.fail(s, p.lambda(), "hankel"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn hankel_radius_independence(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("hankel_radius_independence", 1e-8);
    let mut sampler = ctx.sampler(rec.name);
    let values = |s, p: &DegenerateParameter| -> Option<Vec<Complex64>> {
        [0.1, 0.3, 0.5]
            .iter()
            .map(|&d| {
                let spec = QuadratureSpec {
                    hankel_radius: d,
                    ..QuadratureSpec::default()
                };
                hankel_gamma(s, p, &spec).ok().map(|r| r.value)
            })
            .collect()
    };
    for _ in 0..ctx.config.samples {
        let (s, p) = hankel_sample(&mut sampler, ctx.lambda(), |l| (-1.5, 1.0 / l - 0.5));
        match values(s, &p) {
            Some(v) => {
                rec.compare(s, p.lambda(), "delta=0.1", v[0], v[2]);
                rec.compare(s, p.lambda(), "delta=0.3", v[1], v[2]);
            }
            None => rec.fail(s, p.lambda(), "hankel"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

fn hankel_reflected(ctx: &Ctx) -> CheckReport {
    let mut rec = ctx.recorder("hankel_reflected", 1e-7);
    let mut sampler = ctx.sampler(rec.name);
    let spec = QuadratureSpec::default();
    for _ in 0..ctx.config.samples {
        let (s, p) = hankel_sample(&mut sampler, ctx.lambda(), |l| (-1.5, 1.0 / l - 0.5));
        let expected = degenerate_gamma(s, &p).value;
        match (hankel_gamma_reflected(s, &p, &spec), hankel_gamma(s, &p, &spec)) {
            (Ok(r), Ok(h)) => {
                rec.compare(s, p.lambda(), "hankel-reflected", r.value, expected);
                let v = rec.observed(r.value);
                let err = rel_diff(v, h.value);
                rec.record(s, p.lambda(), "hankel-reflected-vs-hankel", v, h.value, err, err <= 1e-10);
            }
            _ => rec.fail(s, p.lambda(), "hankel-reflected"),
        }
        rec.samples += 1;
    }
    rec.finish()
}

type CheckFn = fn(&Ctx) -> CheckReport;

fn identity_roster() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("beta_form", beta_form),
        ("beta_integer", beta_integer),
        ("beta_product", beta_product_check),
        ("beta_ratio_vs_classical_mixed", beta_ratio_vs_classical_mixed),
        ("difference_equation", difference_equation),
        ("direct_integral", direct_integral),
        ("euler_limit", euler_limit),
        ("hankel", hankel),
        ("hankel_continuation", hankel_continuation),
        ("hankel_radius_independence", hankel_radius_independence),
        ("hankel_reflected", hankel_reflected),
        ("integer_values", integer_values),
        ("lambda_shift_k0", |c| lambda_shift(c, 0)),
        ("lambda_shift_k1", |c| lambda_shift(c, 1)),
        ("lambda_shift_k2", |c| lambda_shift(c, 2)),
        ("residues_nonpositive", |c| residues(c, PoleFamily::NonPositive)),
        ("residues_shifted", |c| residues(c, PoleFamily::ShiftedByInvLambda)),
        ("sine_product", sine_product_check),
        ("symmetry_reflection", symmetry_reflection),
        ("weierstrass_euler_gamma", weierstrass_euler_gamma),
        ("weierstrass_product", weierstrass_product),
    ]
}

/// One report per identity, sorted by name. Deterministic in `seed`.
pub fn run_identity_suite(seed: u64, samples: usize, lambda_range: (f64, f64)) -> Vec<CheckReport> {
    run_identity_suite_with(&SuiteConfig {
        lambda_range,
        ..SuiteConfig::new(seed, samples)
    })
}

pub fn run_identity_suite_with(config: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = Ctx { config };
    let mut reports: Vec<CheckReport> = identity_roster()
        .into_par_iter()
        .map(|(_, check)| check(&ctx))
        .collect();
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    reports
}

/// Identity suite, limit checks and the default cross-path scan, sorted by
/// check name.
pub fn run_all(config: &SuiteConfig) -> Vec<CheckReport> {
    let mut reports = run_identity_suite_with(config);
    reports.extend(run_limit_checks_with(config.fault.as_deref()));
    let scan_lambda = DegenerateParameter::new(0.5).expect("0.5 is in range");
    reports.push(run_cross_path_scan_with(&ScanGrid::default(), &scan_lambda, config.fault.as_deref()));
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    reports
}

/// Rectangle of `s` values: `Re s` from `re_start` to `re_end` in steps of
/// `re_step`, crossed with each listed imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub re_start: f64,
    pub re_end: f64,
    pub re_step: f64,
    pub im_values: Vec<f64>,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            re_start: 0.2,
            re_end: 1.8,
            re_step: 0.4,
            im_values: vec![0.0],
        }
    }
}

impl ScanGrid {
    pub fn points(&self) -> Vec<Complex64> {
        let count = if self.re_step > 0.0 && self.re_end >= self.re_start {
            ((self.re_end - self.re_start) / self.re_step).round() as usize + 1
        } else {
            0
        };
        self.im_values
            .iter()
            .flat_map(|&im| (0..count).map(move |i| Complex64::new(self.re_start + i as f64 * self.re_step, im)))
            .collect()
    }
}

pub fn run_cross_path_scan(grid: &ScanGrid, p: &DegenerateParameter) -> CheckReport {
    run_cross_path_scan_with(grid, p, None)
}

fn run_cross_path_scan_with(grid: &ScanGrid, p: &DegenerateParameter, fault: Option<&str>) -> CheckReport {
    type PathEval = Box<dyn Fn(Complex64, &DegenerateParameter) -> crate::error::Result<EvalResult>>;
    let quad = QuadratureSpec::default();
    let prod = ProductSpec::default();
    let paths: Vec<(&str, f64, PathEval)> = vec![
        ("direct-integral", 1e-10, Box::new(move |s, p| direct_integral_gamma(s, p, &quad))),
        ("hankel", 1e-7, Box::new(move |s, p| hankel_gamma(s, p, &quad))),
        ("weierstrass-product", 1e-4, Box::new(move |s, p| weierstrass_gamma(s, p, &prod))),
        ("euler-limit", 1e-4, Box::new(move |s, p| euler_limit_gamma(s, p, &prod))),
    ];
    let mut rec = Recorder::new("cross_path_scan", 1e-4, fault);
    let points = grid.points();
    for (name, tolerance, eval) in &paths {
        let mut summary = PathSummary {
            path: name.to_string(),
            tolerance: *tolerance,
            evaluated: 0,
            skipped: 0,
            not_applicable: false,
            max_rel_err: 0.0,
        };
        for &s in &points {
            let reference = degenerate_gamma(s, p);
            if matches!(reference.status, Status::AtPole(_)) {
                summary.skipped += 1;
                continue;
            }
            match eval(s, p) {
                Ok(v) => {
                    let value = rec.observed(v.value);
                    let err = rel_diff(value, reference.value);
                    summary.evaluated += 1;
                    summary.max_rel_err = summary.max_rel_err.max(err);
                    rec.record(s, p.lambda(), name, value, reference.value, err, err <= *tolerance);
                }
                Err(_) => summary.skipped += 1,
            }
        }
        summary.not_applicable = summary.evaluated == 0;
        rec.paths.push(summary);
    }
    rec.samples = points.len();
    rec.finish()
}

pub fn run_limit_checks() -> Vec<CheckReport> {
    run_limit_checks_with(None)
}

/// Records one sequence of approximations: errors must strictly decrease
/// and the last (finest) one must be within the check's tolerance.
fn limit_sequence(rec: &mut Recorder, s: Complex64, lambdas: &[f64], observed: &[Complex64], expected: Complex64) {
    let mut previous = f64::INFINITY;
    for (i, (&l, &v)) in lambdas.iter().zip(observed).enumerate() {
        let value = rec.observed(v);
        let err = rel_diff(value, expected);
        let finest = i + 1 == lambdas.len();
        let ok = err < previous && (!finest || err <= rec.tolerance);
        rec.record(s, l, "closed-form", value, expected, err, ok);
        previous = err;
        rec.samples += 1;
    }
}

fn run_limit_checks_with(fault: Option<&str>) -> Vec<CheckReport> {
    let small = [1e-2, 1e-4, 1e-6];
    let gamma_at = |s: Complex64, l: f64| degenerate_gamma(s, &DegenerateParameter::new(l).expect("in range")).value;

    let mut to_zero = Recorder::new("limit_lambda_to_zero", 1e-4, fault);
    for s in [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(2.5, 0.0),
        Complex64::new(1.0, 1.0),
    ] {
        let observed: Vec<_> = small.iter().map(|&l| gamma_at(s, l)).collect();
        let expected = gamma(s).expect("regular");
        limit_sequence(&mut to_zero, s, &small, &observed, expected);
    }

    let mut to_one = Recorder::new("limit_lambda_to_one", 1e-3, fault);
    let near_one: Vec<f64> = small.iter().map(|d| 1.0 - d).collect();
    for z in [Complex64::new(0.3, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.5)] {
        let observed: Vec<_> = near_one.iter().map(|&l| gamma_at(z, l)).collect();
        let expected = PI / crate::cmath::sin_pi(z);
        limit_sequence(&mut to_one, z, &near_one, &observed, expected);
    }

    let mut exp_limit = Recorder::new("degenerate_exp_limit", 1e-4, fault);
    for (x, t) in [(1.0, 1.0), (-0.5, 2.0), (2.0, 0.25)] {
        let (x, t) = (Complex64::new(x, 0.0), Complex64::new(t, 0.0));
        let observed: Vec<_> = small
            .iter()
            .map(|&l| degenerate_exp(x, t, l).expect("1 + λt > 0"))
            .collect();
        limit_sequence(&mut exp_limit, x * t, &small, &observed, (x * t).exp());
    }

    vec![exp_limit.finish(), to_one.finish(), to_zero.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roster_matches_constant() {
        let names: Vec<_> = identity_roster().iter().map(|(n, _)| *n).collect();
        assert_eq!(names, IDENTITY_CHECKS);
    }

    #[test]
    fn rejection_resamples_forced_draw() {
        let mut sampler = Sampler::new(0, "test");
        sampler.force(Complex64::new(-1.01, 0.0), 0.5);
        let (s, p) = sampler.draw((0.5, 0.5), |_| (0.2, 0.8), (0.0, 0.0), clear_of_poles);
        assert_eq!(sampler.rejected(), 1);
        assert!(s.re >= 0.2);
        assert!(clear_of_poles(s, &p));
    }

    #[test]
    fn sampler_is_deterministic() {
        let draw = || {
            let mut s = Sampler::new(7, "x");
            (0..5).map(|_| s.uniform(0.0, 1.0)).collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
        let mut other = Sampler::new(7, "y");
        assert_ne!(draw()[0], other.uniform(0.0, 1.0));
    }

    #[test]
    fn numeric_residue_at_zero() {
        let p = DegenerateParameter::new(0.5).unwrap();
        let r = numeric_residue(Complex64::new(0.0, 0.0), &p, 1e-4);
        assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn scan_grid_points() {
        let g = ScanGrid::default();
        let pts = g.points();
        assert_eq!(pts.len(), 5);
        assert!((pts[4].re - 1.8).abs() < 1e-12);
    }
}
