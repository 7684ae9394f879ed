use num_complex::Complex64;

use super::DegenerateParameter;
use crate::classical::log_gamma;
use crate::result::{PoleFamily, PoleInfo};

/// The pole closest to some point, and how far away it is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestPole {
    pub family: PoleFamily,
    pub index: u32,
    pub location: Complex64,
    pub distance: f64,
}

/// Nearest pole of `Γ_λ` to `s` if it lies strictly within `radius`.
///
/// Both families are located analytically from `Re(s)`, never from the size
/// of the function value.
pub fn nearest_pole(s: Complex64, p: &DegenerateParameter, radius: f64) -> Option<NearestPole> {
    let mut best: Option<NearestPole> = None;
    let mut consider = |family, n: f64, location: Complex64| {
        if n < 0.0 || n > u32::MAX as f64 {
            return;
        }
        let distance = (s - location).norm();
        if distance < radius && best.map_or(true, |b| distance < b.distance) {
            best = Some(NearestPole {
                family,
                index: n as u32,
                location,
                distance,
            });
        }
    };
    let n = (-s.re).round().max(0.0);
    consider(PoleFamily::NonPositive, n, Complex64::new(-n, 0.0));
    let n = (s.re - p.inv_lambda()).round().max(0.0);
    consider(
        PoleFamily::ShiftedByInvLambda,
        n,
        Complex64::new(p.inv_lambda() + n, 0.0),
    );
    best
}

/// Location and residue of the `n`-th pole of a family, residue computed in
/// log space:
///
/// ```text
/// res_{s=-n}     = (-1)^n     λ^n        Γ(1/λ+n) / (n! Γ(1/λ))
/// res_{s=1/λ+n}  = (-1)^{n-1} λ^{-n-1/λ} Γ(1/λ+n) / (n! Γ(1/λ))
/// ```
pub fn pole_info(p: &DegenerateParameter, family: PoleFamily, n: u32) -> PoleInfo {
    let nf = n as f64;
    let lg = |x: f64| {
        log_gamma(Complex64::new(x, 0.0))
            .expect("positive real argument")
            .log_abs
    };
    // identical calls at n = 0 cancel exactly
    let gamma_ratio = lg(p.inv_lambda() + nf) - lg(p.inv_lambda()) - lg(nf + 1.0);
    let (location, log_abs, negative) = match family {
        PoleFamily::NonPositive => (0.0 - nf, nf * p.log_lambda() + gamma_ratio, n % 2 == 1),
        PoleFamily::ShiftedByInvLambda => (
            p.inv_lambda() + nf,
            (-nf - p.inv_lambda()) * p.log_lambda() + gamma_ratio,
            n % 2 == 0,
        ),
    };
    let magnitude = log_abs.exp();
    PoleInfo {
        family,
        index: n,
        location: Complex64::new(location, 0.0),
        residue: Complex64::new(if negative { -magnitude } else { magnitude }, 0.0),
        log_abs_residue: log_abs,
    }
}

/// The `2(n_max + 1)` poles `-n` and `1/λ + n`, `n = 0..=n_max`.
pub fn poles(p: &DegenerateParameter, n_max: u32) -> Vec<PoleInfo> {
    [PoleFamily::NonPositive, PoleFamily::ShiftedByInvLambda]
        .into_iter()
        .flat_map(|family| (0..=n_max).map(move |n| pole_info(p, family, n)))
        .collect()
}
