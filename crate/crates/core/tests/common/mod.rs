//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Ellipse perimeter from the arithmetic–geometric mean (Gauss–Kummer form).
pub fn agm_perimeter(a: f64, b: f64) -> f64 {
    let (mut x, mut y) = (a.max(b), a.min(b));
    let mut sum = 0.5 * (x * x - y * y);
    let mut weight = 1.0;
    let big = x;
    for _ in 0..64 {
        let c = 0.5 * (x - y);
        let nx = 0.5 * (x + y);
        y = (x * y).sqrt();
        x = nx;
        sum += weight * c * c;
        weight *= 2.0;
        if c <= 4.0 * f64::EPSILON * big {
            break;
        }
    }
    2.0 * PI / x * (big * big - sum)
}

/// J_0 by its power series.
pub fn bessel_j0(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let (mut term, mut sum) = (1.0, 1.0);
    for m in 1..200 {
        term *= q / (m * m) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// First positive zero of J_0 by bisection on [2, 3].
pub fn j0_first_zero() -> f64 {
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bessel_j0(lo) * bessel_j0(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
