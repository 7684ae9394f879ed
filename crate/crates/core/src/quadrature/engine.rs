//! Tanh-sinh (double-exponential) quadrature on `(0, 1)`.
//!
//! The substitution `x = (1 + tanh(π/2 · sinh t)) / 2` sends the open unit
//! interval to the real line and makes the transformed integrand decay
//! double-exponentially, so algebraic endpoint singularities cost nothing
//! extra. The trapezoid rule in `t` is refined by halving the step; every
//! level reuses the previous nodes.
//!
//! Integrands receive both `x` and `1 - x`, each computed without
//! cancellation, so singular factors like `(1 - x)^{-1/2}` stay accurate
//! next to the right endpoint.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::QuadratureSpec;
use crate::cmath::CompensatedSum;
use crate::error::{Error, Result};

const FIRST_STEP: f64 = 0.5;
const T_MAX: f64 = 6.0;
pub(crate) const MAX_TABLE_LEVEL: u32 = 14;
const MIN_LEVEL: u32 = 3;

#[derive(Debug, Clone, Copy)]
struct Node {
    x: f64,
    one_minus_x: f64,
    weight: f64,
}

fn push_pair(nodes: &mut Vec<Node>, t: f64) {
    let u = 0.5 * PI * t.sinh();
    let e = (-2.0 * u).exp();
    let denom = 1.0 + e;
    let weight = PI * t.cosh() * e / (denom * denom);
    if weight == 0.0 || e == 0.0 {
        return;
    }
    let near_one = 1.0 / denom;
    let near_zero = e / denom;
    nodes.push(Node {
        x: near_one,
        one_minus_x: near_zero,
        weight,
    });
    nodes.push(Node {
        x: near_zero,
        one_minus_x: near_one,
        weight,
    });
}

fn build_level(level: u32) -> Vec<Node> {
    let mut nodes = Vec::new();
    if level == 0 {
        nodes.push(Node {
            x: 0.5,
            one_minus_x: 0.5,
            weight: PI / 4.0,
        });
        let mut j = 1;
        while j as f64 * FIRST_STEP <= T_MAX {
            push_pair(&mut nodes, j as f64 * FIRST_STEP);
            j += 1;
        }
    } else {
        let h = FIRST_STEP / (1u64 << level) as f64;
        let mut j = 1u64;
        while j as f64 * h <= T_MAX {
            push_pair(&mut nodes, j as f64 * h);
            j += 2;
        }
    }
    nodes
}

fn level_nodes(level: u32) -> &'static [Node] {
    static TABLES: [OnceLock<Vec<Node>>; (MAX_TABLE_LEVEL + 1) as usize] =
        [const { OnceLock::new() }; (MAX_TABLE_LEVEL + 1) as usize];
    TABLES[level as usize].get_or_init(|| build_level(level))
}

/// Value of an integral and the size of the last refinement step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub err: f64,
    pub levels: u32,
}

/// Integrates `f(x, 1 - x)` over `(0, 1)`.
///
/// Refines until two successive levels differ by less than
/// `spec.rel_tolerance` relative to the current value (or the difference
/// reaches the rounding floor of the sum), or fails with
/// `Error::Convergence` once `spec.max_level` is exhausted.
pub fn de_quadrature<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let max_level = spec.max_level.min(MAX_TABLE_LEVEL);
    let mut sum = CompensatedSum::new();
    let mut l1 = 0.0;
    let mut previous: Option<Complex64> = None;
    let mut last_diff = f64::INFINITY;
    for level in 0..=max_level {
        for node in level_nodes(level) {
            let term = f(node.x, node.one_minus_x) * node.weight;
            l1 += term.norm();
            sum.add(term);
        }
        let h = FIRST_STEP / (1u64 << level) as f64;
        let estimate = sum.value() * h;
        if !(estimate.re.is_finite() && estimate.im.is_finite()) {
            return Err(Error::Convergence {
                estimate: f64::INFINITY,
                tolerance: spec.rel_tolerance,
            });
        }
        if let Some(prev) = previous {
            last_diff = (estimate - prev).norm();
            let floor = 64.0 * f64::EPSILON * l1 * h;
            if level >= MIN_LEVEL
                && (last_diff <= spec.rel_tolerance * estimate.norm() || last_diff <= floor)
            {
                return Ok(QuadratureResult {
                    value: estimate,
                    err: last_diff,
                    levels: level,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::Convergence {
        estimate: last_diff / previous.map_or(1.0, |v| v.norm()),
        tolerance: spec.rel_tolerance,
    })
}

/// Integrates `f(t)` over `[a, b]` through the unit-interval engine; `f`
/// also receives the distances `t - a` and `b - t`.
pub fn de_quadrature_interval<F>(a: f64, b: f64, f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64, f64, f64) -> Complex64,
{
    let width = b - a;
    let mut r = de_quadrature(
        |x, omx| {
            let from_a = width * x;
            let to_b = width * omx;
            let t = if x <= 0.5 { a + from_a } else { b - to_b };
            f(t, from_a, to_b)
        },
        spec,
    )?;
    r.value *= width;
    r.err *= width.abs();
    Ok(r)
}
