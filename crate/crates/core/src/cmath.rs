//! Small complex-arithmetic helpers that keep digits where the obvious
//! formula would cancel.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `log(1 + u)`, principal branch, accurate for small `|u|`.
pub fn log1p(u: Complex64) -> Complex64 {
    let (x, y) = (u.re, u.im);
    if x.abs() < 0.5 && y.abs() < 0.5 {
        // |1+u|^2 - 1 = 2x + x^2 + y^2
        let re = 0.5 * (2.0 * x + x * x + y * y).ln_1p();
        let im = y.atan2(1.0 + x);
        Complex64::new(re, im)
    } else {
        (Complex64::new(1.0, 0.0) + u).ln()
    }
}

/// `exp(u) - 1`, accurate for small `|u|`.
pub fn expm1(u: Complex64) -> Complex64 {
    let (x, y) = (u.re, u.im);
    let half = (0.5 * y).sin();
    // cos y - 1 = -2 sin^2(y/2)
    let re = x.exp_m1() * y.cos() - 2.0 * half * half;
    let im = x.exp() * y.sin();
    Complex64::new(re, im)
}

/// `(sin(pi x), cos(pi x))` for real `x`, reduced exactly modulo 2.
pub fn sincos_pi(x: f64) -> (f64, f64) {
    let r = x % 2.0;
    // r in (-2, 2); pull into [-1, 1]
    let r = if r > 1.0 {
        r - 2.0
    } else if r < -1.0 {
        r + 2.0
    } else {
        r
    };
    let (s, c) = if r.abs() <= 0.25 {
        (PI * r).sin_cos()
    } else if r > 0.75 {
        let (s, c) = (PI * (1.0 - r)).sin_cos();
        (s, -c)
    } else if r < -0.75 {
        let (s, c) = (PI * (1.0 + r)).sin_cos();
        (-s, -c)
    } else if r > 0.0 {
        let (s, c) = (PI * (0.5 - r)).sin_cos();
        (c, s)
    } else {
        let (s, c) = (PI * (-0.5 - r)).sin_cos();
        (-c, -s)
    };
    (s, c)
}

/// `sin(pi z)` with the real part reduced exactly.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi(z.re);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// `1 - exp(2 pi i z)`, accurate near integer `z`.
pub fn one_minus_exp_2pi_i(z: Complex64) -> Complex64 {
    let r = z.re - z.re.round();
    -expm1(Complex64::new(-2.0 * PI * z.im, 2.0 * PI * r))
}

/// Distance from `z` to the nearest integer, and that integer.
pub fn nearest_integer(z: Complex64) -> (f64, f64) {
    let n = z.re.round();
    (n, Complex64::new(z.re - n, z.im).norm())
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta % two_pi;
    if t <= -PI {
        t += two_pi;
    } else if t > PI {
        t -= two_pi;
    }
    t
}

/// Relative distance between two numbers given by their logarithms,
/// `|exp(a - b) - 1|`, insensitive to the `2 pi i` ambiguity of either log.
pub fn log_rel_diff(a: Complex64, b: Complex64) -> f64 {
    let d = a - b;
    expm1(Complex64::new(d.re, wrap_angle(d.im))).norm()
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.carry.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn two_sum(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log1p_small_argument_keeps_digits() {
        let u = Complex64::new(1e-12, 3e-13);
        let v = log1p(u);
        assert!((v.re - (1e-12 - 0.5 * (1e-24 - 9e-26))).abs() < 1e-27);
        assert!((v.im - 3e-13 / (1.0 + 1e-12)).abs() < 1e-27);
    }

    #[test]
    fn expm1_matches_exp_for_large_arguments() {
        let u = Complex64::new(1.3, -2.1);
        assert!((expm1(u) - (u.exp() - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn sincos_pi_exact_at_landmarks() {
        assert_eq!(sincos_pi(0.5), (1.0, 0.0));
        assert_eq!(sincos_pi(-0.5).0, -1.0);
        assert_eq!(sincos_pi(3.0).0, 0.0);
        assert_eq!(sincos_pi(1e6 + 0.25).0, sincos_pi(0.25).0);
        let (s, c) = sincos_pi(0.3);
        assert!((s - (0.3 * PI).sin()).abs() < 1e-16);
        assert!((c - (0.3 * PI).cos()).abs() < 1e-16);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(Complex64::new(1e16, 0.0));
        for _ in 0..1000 {
            acc.add(Complex64::new(1.0, 0.0));
        }
        acc.add(Complex64::new(-1e16, 0.0));
        assert_eq!(acc.value().re, 1000.0);
    }
}
