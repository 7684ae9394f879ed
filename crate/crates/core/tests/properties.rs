use std::f64::consts::PI;

use degamma::cmath::{log_rel_diff, sin_pi, sincos_pi};
use degamma::degenerate::{difference_step, log_degenerate_gamma};
use degamma::verify::clear_of_poles;
use degamma::{degenerate_gamma, log_gamma, Complex64, DegenerateParameter};
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = f64> {
    0.1f64..0.9
}

fn point() -> impl Strategy<Value = (f64, f64)> {
    (-4.0f64..12.0, -4.0f64..4.0)
}

proptest! {
    #[test]
    fn classical_recurrence(re in -6.0f64..20.0, im in -8.0f64..8.0) {
        let z = Complex64::new(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = log_gamma(z + 1.0).unwrap().to_complex();
        let rhs = log_gamma(z).unwrap().to_complex() + z.ln();
        prop_assert!(log_rel_diff(lhs, rhs) < 1e-12);
    }

    #[test]
    fn classical_reflection(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = Complex64::new(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = log_gamma(z).unwrap().to_complex() + log_gamma(1.0 - z).unwrap().to_complex();
        let rhs = (Complex64::new(PI, 0.0) / sin_pi(z)).ln();
        prop_assert!(log_rel_diff(lhs, rhs) < 1e-12);
    }

    #[test]
    fn sincos_pi_is_unit_and_exact_on_halves(x in -1e6f64..1e6, k in -1000i32..1000) {
        let (s, c) = sincos_pi(x);
        prop_assert!((s * s + c * c - 1.0).abs() < 4.0 * f64::EPSILON);
        let (s, c) = sincos_pi(k as f64);
        prop_assert_eq!(s, 0.0);
        prop_assert_eq!(c.abs(), 1.0);
        let (s, c) = sincos_pi(k as f64 + 0.5);
        prop_assert_eq!(c, 0.0);
        prop_assert_eq!(s.abs(), 1.0);
    }

    #[test]
    fn degenerate_difference_equation(l in lambda(), (re, im) in point()) {
        let p = DegenerateParameter::new(l).unwrap();
        let s = Complex64::new(re, im);
        prop_assume!(clear_of_poles(s, &p) && clear_of_poles(s + 1.0, &p));
        let lhs = log_degenerate_gamma(s + 1.0, &p).unwrap();
        let rhs = difference_step(s, &p).unwrap().ln() + log_degenerate_gamma(s, &p).unwrap();
        prop_assert!(log_rel_diff(lhs, rhs) < 1e-10);
    }

    #[test]
    fn degenerate_symmetry(l in lambda(), (re, im) in point()) {
        let p = DegenerateParameter::new(l).unwrap();
        let s = Complex64::new(re, im);
        prop_assume!(clear_of_poles(s, &p));
        let w = p.inv_lambda() - s;
        let lhs = s * p.log_lambda() + log_degenerate_gamma(s, &p).unwrap();
        let rhs = w * p.log_lambda() + log_degenerate_gamma(w, &p).unwrap();
        prop_assert!(log_rel_diff(lhs, rhs) < 1e-10);
    }

    #[test]
    fn degenerate_conjugate_symmetry(l in lambda(), (re, im) in point()) {
        let p = DegenerateParameter::new(l).unwrap();
        let s = Complex64::new(re, im);
        prop_assume!(clear_of_poles(s, &p));
        let a = degenerate_gamma(s, &p).value;
        let b = degenerate_gamma(s.conj(), &p).value;
        prop_assert!((a.conj() - b).norm() <= 1e-13 * a.norm());
    }

    #[test]
    fn degenerate_real_on_real_axis(l in lambda(), re in -4.0f64..12.0) {
        let p = DegenerateParameter::new(l).unwrap();
        let s = Complex64::new(re, 0.0);
        prop_assume!(clear_of_poles(s, &p));
        prop_assert_eq!(degenerate_gamma(s, &p).value.im, 0.0);
    }
}
