use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::grid::GridField2D;
use super::hessian::hessian_integral_2d;
use super::levels::{superlevel_metrics, LevelSetMetrics};
use crate::error::{Error, Result};
use crate::geometry::{comparison_radius, quermass_2d};
use crate::par::{self, Execution};
use crate::radial_spectra::{hessian_integral_radial, RadialProfile};

/// Default number of levels.
pub const DEFAULT_LEVELS: usize = 200;
/// Allowed relative growth of W_{k−1}(Ω_t) in t before the level sets are
/// declared inconsistent.
pub const MONOTONE_TOL: f64 = 5e-3;

/// u*_{k−1}: the radial function whose superlevel balls share W_{k−1} with
/// the superlevel sets of u.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RearrangedProfile {
    pub k: usize,
    pub r_star: f64,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl RearrangedProfile {
    pub fn as_radial(&self) -> RadialProfile {
        RadialProfile { radii: self.radii.clone(), values: self.values.clone(), slopes: None }
    }

    /// Largest |ρ'| over the sample intervals.
    pub fn lipschitz(&self) -> f64 {
        self.radii
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(r, v)| ((v[1] - v[0]) / (r[1] - r[0])).abs())
            .fold(0.0, f64::max)
    }
}

/// Equally spaced levels t_i = i·max(−u)/m, i = 0..m−1.
pub fn levels(u: &GridField2D, m: usize) -> Vec<f64> {
    let tmax = -u.min();
    (0..m).map(|i| tmax * i as f64 / m as f64).collect()
}

pub fn level_sweep(u: &GridField2D, ts: &[f64], exec: Execution) -> Result<Vec<LevelSetMetrics>> {
    par::map(exec, ts, |&t| superlevel_metrics(u, t)).into_iter().collect()
}

/// Radius matching W_{k−1}: √(A/π) for k = 1, P/(2π) for k = 2.
pub fn level_radius(m: &LevelSetMetrics, k: usize) -> f64 {
    if k == 1 { (m.area / PI).sqrt() } else { m.perimeter / (2.0 * PI) }
}

pub fn rearrange(u: &GridField2D, k: usize, m: usize) -> Result<RearrangedProfile> {
    rearrange_with(u, k, m, Execution::default())
}

pub fn rearrange_with(u: &GridField2D, k: usize, m: usize, exec: Execution) -> Result<RearrangedProfile> {
    if !(k == 1 || k == 2) {
        return Err(Error::arg(format!("planar rearrangement needs k in {{1, 2}}, got {k}")));
    }
    if m < 2 {
        return Err(Error::arg("need at least two levels"));
    }
    let tmax = -u.min();
    if !(tmax > 0.0) {
        return Err(Error::Inadmissible("field has no negative values".into()));
    }
    let r_star = comparison_radius(&quermass_2d(u.mesh().body()), k)?;
    let ts = levels(u, m);
    let metrics = level_sweep(u, &ts[1..], exec)?;

    // Radii for increasing t; the t = 0 level is Ω itself.
    let mut radii = vec![r_star];
    for (mt, t) in metrics.iter().zip(&ts[1..]) {
        let r = level_radius(mt, k);
        let prev = *radii.last().unwrap();
        if r > prev * (1.0 + MONOTONE_TOL) {
            return Err(Error::Inadmissible(format!(
                "W_{}(Ω_t) grows with t at t = {t:.4e} ({prev:.6e} -> {r:.6e})",
                k - 1
            )));
        }
        radii.push(r.min(prev));
    }
    let mut rs = vec![0.0];
    let mut vs = vec![-tmax];
    for (r, t) in radii.iter().zip(&ts).rev() {
        if *r > *rs.last().unwrap() {
            rs.push(*r);
            vs.push(-t);
        }
    }
    Ok(RearrangedProfile { k, r_star, radii: rs, values: vs })
}

/// ‖u‖_{L^p(Ω)} by the nodal rule; p = ∞ gives max|u|.
pub fn lp_norm(u: &GridField2D, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::arg(format!("p must be at least 1, got {p}")));
    }
    if p.is_infinite() {
        return Ok(u.values().iter().map(|v| v.abs()).fold(0.0, f64::max));
    }
    Ok(u.integrate(|v| v.abs().powf(p)).powf(1.0 / p))
}

/// (‖u‖_p, ‖u*_{k−1}‖_p).
pub fn norm_comparison(u: &GridField2D, k: usize, p: f64) -> Result<(f64, f64)> {
    let star = rearrange(u, k, DEFAULT_LEVELS)?;
    let lhs = lp_norm(u, p)?;
    Ok((lhs, star.as_radial().lp_norm(2, p)))
}

/// I_k[u, Ω] − I_k[u*_{k−1}, Ω*_{k−1}].
pub fn polya_szego_gap(u: &GridField2D, k: usize) -> Result<f64> {
    let star = rearrange(u, k, DEFAULT_LEVELS)?;
    let grid = hessian_integral_2d(u, k)?;
    Ok(grid - hessian_integral_radial(&star.as_radial(), 2, k)?)
}
