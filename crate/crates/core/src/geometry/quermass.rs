use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::body::SupportBody2D;
use crate::error::{Error, Result};
use crate::special::unit_ball_volume;

/// Quermassintegrals W_0..W_n of a body in ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuermassVector {
    pub n: usize,
    pub w: Vec<f64>,
}

impl QuermassVector {
    pub fn get(&self, i: usize) -> f64 {
        self.w[i]
    }

    /// Radius of the ball with the same W_i: (W_i/ω_n)^{1/(n−i)}.
    pub fn ball_radius(&self, i: usize) -> f64 {
        assert!(i < self.n, "W_n does not determine a radius");
        (self.w[i] / unit_ball_volume(self.n)).powf(1.0 / (self.n - i) as f64)
    }

    /// Whether (W_j/ω)^{1/(n−j)} ≥ (W_i/ω)^{1/(n−i)} − tol for all i < j < n.
    pub fn af_chain_holds(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.ball_radius(j) >= self.ball_radius(i) - tol))
    }
}

/// Area, half-perimeter and π for a planar body.
pub fn quermass_2d(k: &SupportBody2D) -> QuermassVector {
    QuermassVector { n: 2, w: vec![area(k), 0.5 * perimeter(k), PI] }
}

pub fn quermass_ball(n: usize, radius: f64) -> Result<QuermassVector> {
    if n < 2 {
        return Err(Error::arg(format!("dimension must be at least 2, got {n}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::arg(format!("radius must be positive, got {radius}")));
    }
    let om = unit_ball_volume(n);
    Ok(QuermassVector { n, w: (0..=n).map(|i| om * radius.powi((n - i) as i32)).collect() })
}

/// (W_j/ω_n)^{1/(n−j)} − (W_i/ω_n)^{1/(n−i)}.
pub fn af_deficit(w: &QuermassVector, i: usize, j: usize) -> Result<f64> {
    if !(i < j && j < w.n) {
        return Err(Error::arg(format!("need 0 <= i < j <= n-1, got ({i}, {j}) with n = {}", w.n)));
    }
    Ok(w.ball_radius(j) - w.ball_radius(i))
}

/// A(K) = ½∮(h² − h'²) split as A(P) + 2V(P, S) + A(S) when the body has a
/// polygon summand P; the smooth part S is integrated in Fourier space.
pub fn area(k: &SupportBody2D) -> f64 {
    let c = k.spectrum();
    let half = k.samples() / 2;
    let mut smooth = c[0].norm_sqr();
    for (m, cm) in c.iter().enumerate().take(half).skip(1) {
        smooth += 2.0 * cm.norm_sqr() * (1.0 - (m * m) as f64);
    }
    let nyq = c[half].re;
    smooth += 0.5 * nyq * nyq * (1.0 - (half * half) as f64);
    let mut total = PI * smooth;
    if let Some(p) = k.polygon() {
        total += p.area();
        total += p.edges().iter().map(|&(theta, len)| len * k.smooth_support(theta).0).sum::<f64>();
    }
    total
}

pub fn perimeter(k: &SupportBody2D) -> f64 {
    let smooth = 2.0 * PI * k.spectrum()[0].re;
    smooth + k.polygon().map_or(0.0, |p| p.perimeter())
}

/// Radius of the ball sharing W_{k−1} with a planar body: area radius for
/// k = 1, perimeter radius W_1/π for k = 2.
pub fn comparison_radius(w: &QuermassVector, k: usize) -> Result<f64> {
    match k {
        1 | 2 if w.n == 2 => Ok(w.ball_radius(k - 1)),
        _ => Err(Error::arg(format!("order k = {k} is not available for n = {}", w.n))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::body::{make_ellipse, make_smoothed_polygon, square_vertices};

    #[test]
    fn disk_values() {
        let q = quermass_2d(&make_ellipse(2.0, 2.0, 512).unwrap());
        for (got, want) in q.w.iter().zip([4.0 * PI, 2.0 * PI, PI]) {
            assert!((got - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn ball_formula() {
        let q = quermass_ball(3, 2.0).unwrap();
        let want = [32.0, 16.0, 8.0, 4.0].map(|v| v * PI / 3.0);
        for (g, w) in q.w.iter().zip(want) {
            assert!((g - w).abs() < 1e-12 * w);
        }
        assert!(quermass_ball(1, 1.0).is_err());
        assert!(quermass_ball(2, 0.0).is_err());
    }

    #[test]
    fn smoothed_square_steiner_formulas() {
        let q = quermass_2d(&make_smoothed_polygon(&square_vertices(1.0), 1.0, 512).unwrap());
        assert!((q.w[0] - (5.0 + PI)).abs() < 1e-12);
        assert!((2.0 * q.w[1] - (4.0 + 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn deficit_index_order() {
        let q = quermass_ball(2, 1.0).unwrap();
        assert!(af_deficit(&q, 1, 0).is_err());
        assert!(af_deficit(&q, 0, 2).is_err());
        assert!(af_deficit(&q, 0, 1).unwrap().abs() < 1e-15);
    }
}
