//! Small closed-form helpers shared across modules.

use std::f64::consts::PI;

/// Binomial coefficient C(n, k) as a float; zero when k > n.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Volume of the unit ball in R^n, via ω_n = 2π/n · ω_{n-2}.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// ∫_0^1 (1 - r²)^m r^{n-1} dr = B(n/2, m+1) / 2 for integer m.
pub fn paraboloid_moment(n: usize, m: usize) -> f64 {
    let half_n = n as f64 / 2.0;
    let mut beta = 1.0;
    for i in 1..=m {
        beta *= i as f64;
    }
    for i in 0..=m {
        beta /= half_n + i as f64;
    }
    beta / 2.0
}
