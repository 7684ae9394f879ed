//! Classical gamma, log-gamma and beta functions on the complex plane.
//!
//! `log_gamma` returns the principal branch: analytic on the plane cut
//! along the non-positive real axis, real on the positive axis, with the
//! cut approached from above (so `log_gamma(-0.5)` has argument `-pi`).
//! For `Re(z) >= 0.5` it shifts the argument up by the recurrence until
//! `|z| >= 12` and sums a ten-term Stirling series; the left half uses the
//! reflection formula written as
//!
//! ```text
//! log Γ(z) = log 2π + iπ(z - 1/2) - log(1 - e^{2πiz}) - log Γ(1 - z),  Im z >= 0,
//! ```
//!
//! which is analytic in the closed upper half plane and therefore tracks the
//! branch without any explicit 2πi bookkeeping. The lower half plane follows
//! from conjugate symmetry.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::cmath::{self, CompensatedSum};
use crate::error::{Error, PoleArgument, Result};
use crate::{OVERFLOW_LOG_THRESHOLD, POLE_TOLERANCE};

/// Euler's constant, to double precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_2PI: f64 = 1.837_877_066_409_345_5;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k-1))` for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const STIRLING_MIN_MODULUS: f64 = 12.0;

/// `n!` for n = 0..=170.
fn factorials() -> &'static [f64; 171] {
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; 171];
        for n in 1..171 {
            t[n] = t[n - 1] * n as f64;
        }
        t
    })
}

/// `n!` as a double; `None` when it overflows.
pub fn factorial(n: u32) -> Option<f64> {
    factorials().get(n as usize).copied()
}

/// Logarithm of `Γ(z)` split into modulus and argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGammaResult {
    /// `ln |Γ(z)|`
    pub log_abs: f64,
    /// Continuous imaginary part of `log Γ(z)`, radians.
    pub arg: f64,
}

impl LogGammaResult {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.log_abs, self.arg)
    }

    fn from_complex(z: Complex64) -> Self {
        Self {
            log_abs: z.re,
            arg: z.im,
        }
    }
}

/// Returns the non-positive integer `-n` if `z` is within `POLE_TOLERANCE` of it.
pub(crate) fn gamma_pole_near(z: Complex64) -> Option<f64> {
    if z.re > 0.5 {
        return None;
    }
    let (n, dist) = cmath::nearest_integer(z);
    (n <= 0.0 && dist < POLE_TOLERANCE).then_some(n)
}

fn check_pole(z: Complex64, arg: PoleArgument) -> Result<()> {
    match gamma_pole_near(z) {
        Some(n) => Err(Error::Pole {
            arg,
            at: z,
            pole: Complex64::new(n, 0.0),
        }),
        None => Ok(()),
    }
}

fn positive_integer(z: Complex64) -> Option<u32> {
    if z.im == 0.0 && z.re >= 1.0 && z.re <= 171.0 && z.re.fract() == 0.0 {
        Some(z.re as u32)
    } else {
        None
    }
}

/// Stirling series for `log Γ(z)`, `|z| >= 12`, `Re z > 0`.
fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(STIRLING[STIRLING.len() - 1], 0.0);
    for &c in STIRLING.iter().rev().skip(1) {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv
}

/// Principal `log Γ(z)` for `Re z >= 0.5`.
fn log_gamma_right(z: Complex64) -> Complex64 {
    let mut shifted = z;
    let mut logs = CompensatedSum::new();
    while shifted.norm() < STIRLING_MIN_MODULUS {
        logs.add(shifted.ln());
        shifted += 1.0;
    }
    stirling(shifted) - logs.value()
}

/// Principal `log Γ(z)` for `Im z >= 0`, any real part.
fn log_gamma_upper(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return log_gamma_right(z);
    }
    let reflected = log_gamma_right(Complex64::new(1.0, 0.0) - z);
    let i_pi = Complex64::new(0.0, PI);
    LN_2PI + i_pi * (z - 0.5) - cmath::one_minus_exp_2pi_i(z).ln() - reflected
}

/// Principal branch of `log Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<LogGammaResult> {
    check_pole(z, PoleArgument::Z)?;
    if let Some(n) = positive_integer(z) {
        return Ok(LogGammaResult {
            log_abs: factorials()[(n - 1) as usize].ln(),
            arg: 0.0,
        });
    }
    let value = if z.im >= 0.0 {
        log_gamma_upper(z)
    } else {
        log_gamma_upper(z.conj()).conj()
    };
    Ok(LogGammaResult::from_complex(value))
}

/// Exponentiates a complex logarithm, mapping an oversized modulus to
/// `Error::Overflow`.
pub fn exp_checked(log_value: Complex64) -> Result<Complex64> {
    if log_value.re > OVERFLOW_LOG_THRESHOLD {
        return Err(Error::Overflow {
            log_abs: log_value.re,
        });
    }
    Ok(log_value.exp())
}

/// `Γ(z)`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z, PoleArgument::Z)?;
    if let Some(n) = positive_integer(z) {
        return Ok(Complex64::new(factorials()[(n - 1) as usize], 0.0));
    }
    let lg = log_gamma(z)?;
    if z.im == 0.0 {
        // real axis: keep the result exactly real
        if lg.log_abs > OVERFLOW_LOG_THRESHOLD {
            return Err(Error::Overflow {
                log_abs: lg.log_abs,
            });
        }
        let sign = lg.arg.cos().signum();
        return Ok(Complex64::new(sign * lg.log_abs.exp(), 0.0));
    }
    exp_checked(lg.to_complex())
}

/// `log B(a, b) = log Γ(a) + log Γ(b) - log Γ(a + b)`.
pub fn log_beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    check_pole(a, PoleArgument::A)?;
    check_pole(b, PoleArgument::B)?;
    check_pole(a + b, PoleArgument::APlusB)?;
    Ok(log_gamma(a)?.to_complex() + log_gamma(b)?.to_complex() - log_gamma(a + b)?.to_complex())
}

/// `B(a, b) = Γ(a) Γ(b) / Γ(a + b)`, evaluated in log space.
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    let value = exp_checked(log_beta(a, b)?)?;
    if a.im == 0.0 && b.im == 0.0 {
        return Ok(Complex64::new(value.re, 0.0));
    }
    Ok(value)
}

/// `Γ(z) Γ(1 - z) = π / sin(πz)`, computed directly.
pub fn reflection_product(z: Complex64) -> Result<Complex64> {
    let (n, dist) = cmath::nearest_integer(z);
    if dist < POLE_TOLERANCE {
        return Err(Error::Pole {
            arg: PoleArgument::Z,
            at: z,
            pole: Complex64::new(n, 0.0),
        });
    }
    Ok(Complex64::new(PI, 0.0) / cmath::sin_pi(z))
}

/// Partial product
/// `(a+b)/(ab) · Π_{n=1}^{N} (1 + (a+b)/n) / ((1 + a/n)(1 + b/n))`,
/// which tends to `B(a, b)` as `N → ∞`.
pub fn beta_product(a: Complex64, b: Complex64, n_terms: u64) -> Result<Complex64> {
    if n_terms == 0 {
        return Err(Error::ParameterRange("n_terms must be at least 1".into()));
    }
    for (x, arg) in [(a, PoleArgument::A), (b, PoleArgument::B), (a + b, PoleArgument::APlusB)] {
        check_pole(x, arg)?;
    }
    let ab = a + b;
    let mut acc = CompensatedSum::new();
    acc.add(ab.ln() - a.ln() - b.ln());
    for n in 1..=n_terms {
        let inv = 1.0 / n as f64;
        acc.add(cmath::log1p(ab * inv) - cmath::log1p(a * inv) - cmath::log1p(b * inv));
    }
    exp_checked(acc.value())
}
