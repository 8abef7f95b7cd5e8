use std::f64::consts::PI;

use super::grid::GridField2D;
use super::levels::superlevel_metrics;
use super::rearrange::{level_sweep, levels, DEFAULT_LEVELS};
use crate::error::{Error, Result};
use crate::geometry::quermass_2d;
use crate::par::Execution;

/// Levels whose superlevel set holds fewer nodes than this are dropped from
/// level integrals.
pub const MIN_LEVEL_NODES: usize = 4;

/// W_{k−1}(Ω_δ) − W_{k−1}(Ω)·[1 − (n−k+1)·max{ε, 2δ|Ω|^{1/(k+1)}}] for a
/// normalized eigenfunction u (n = 2).
pub fn levelset_lemma_check(u: &GridField2D, eps: f64, delta: f64, k: usize) -> Result<f64> {
    if !(k == 1 || k == 2) {
        return Err(Error::arg(format!("planar lemma needs k in {{1, 2}}, got {k}")));
    }
    let w = quermass_2d(u.mesh().body());
    let vol = w.w[0];
    let kp = (k + 1) as f64;
    let limit = 0.5 * vol.powf(-1.0 / kp);
    if !(delta > 0.0 && delta < limit) {
        return Err(Error::arg(format!("delta must lie in (0, {limit:.6e}), got {delta}")));
    }
    let level = superlevel_metrics(u, delta)?;
    let w_delta = if k == 1 { level.area } else { 0.5 * level.perimeter };
    let factor = (3 - k) as f64 * eps.max(2.0 * delta * vol.powf(1.0 / kp));
    Ok(w_delta - w.w[k - 1] * (1.0 - factor))
}

pub fn integral_lemma_check(u: &GridField2D, eps: f64) -> Result<f64> {
    integral_lemma_check_with(u, eps, DEFAULT_LEVELS, Execution::default())
}

/// π·ε/3 − ∫₀^∞ t²(W_1(Ω_t)² − π|Ω_t|) dt for a normalized Monge–Ampère
/// eigenfunction, trapezoid rule on m uniform levels.
pub fn integral_lemma_check_with(u: &GridField2D, eps: f64, m: usize, exec: Execution) -> Result<f64> {
    let integral = eq3_integral(u, m, exec)?;
    Ok(PI * eps / 3.0 - integral)
}

/// ∫₀^∞ t²(P_t²/4 − π A_t) dt.
pub fn eq3_integral(u: &GridField2D, m: usize, exec: Execution) -> Result<f64> {
    let tmax = -u.min();
    if !(tmax > 0.0) {
        return Err(Error::Inadmissible("field has no negative values".into()));
    }
    let ts = levels(u, m);
    let metrics = level_sweep(u, &ts, exec)?;
    let mut g: Vec<f64> = metrics
        .iter()
        .map(|l| {
            if l.nodes < MIN_LEVEL_NODES {
                0.0
            } else {
                l.t * l.t * (0.25 * l.perimeter * l.perimeter - PI * l.area)
            }
        })
        .collect();
    g.push(0.0);
    let dt = tmax / m as f64;
    Ok(dt * (g.iter().sum::<f64>() - 0.5 * (g[0] + g[m])))
}
