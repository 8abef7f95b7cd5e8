use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::estimate::{EigenEstimate, EstimateKind};
use crate::error::{Error, Result};
use crate::field2d::{sk_at, GridField2D, GridMesh};
use crate::geometry::{area, make_ellipse, Point, SupportBody2D, DEFAULT_SAMPLES};
use crate::optim::{golden_section, nelder_mead};
use crate::radial_spectra::{ball_eigenpair, hessian_integral_radial, RadialProfile};

/// Relative slack added to Rayleigh upper bounds to cover quadrature error.
pub const QUADRATURE_MARGIN: f64 = 1e-7;

/// λ_2 of the ellipse with semi-axes a, b: (ab)^{−2} λ_2(B_1).
pub fn ma_eigen_ellipse(a: f64, b: f64) -> Result<EigenEstimate> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::arg(format!("ellipse axes must be positive, got ({a}, {b})")));
    }
    let pair = ball_eigenpair(2, 2)?;
    let s = (a * b).powi(-2);
    Ok(EigenEstimate {
        k: 2,
        value: s * pair.lambda1,
        kind: EstimateKind::Exact,
        error_estimate: s * pair.error_estimate,
        extrapolated: None,
        eigenfield: None,
    })
}

/// The normalized eigenfunction (ab)^{−1/3} ρ(√((x/a)² + (y/b)²)) sampled on
/// a grid of spacing h.
pub fn ma_ellipse_eigenfield(a: f64, b: f64, h: f64) -> Result<GridField2D> {
    let body = make_ellipse(a, b, DEFAULT_SAMPLES)?;
    let mesh = GridMesh::new(Arc::new(body), h)?;
    let pair = ball_eigenpair(2, 2)?;
    let amp = (a * b).powf(-1.0 / 3.0);
    Ok(GridField2D::from_fn(mesh, |p| {
        let s = ((p[0] / a).powi(2) + (p[1] / b).powi(2)).sqrt();
        amp * pair.profile.eval(s)
    }))
}

/// Root-mean-square of det D²u − λ(−u)² over nodes whose 3×3 stencil is
/// inside.
pub fn ma_residual(u: &GridField2D, lambda: f64) -> f64 {
    let mesh = u.mesh();
    let (mut sum, mut count) = (0.0, 0usize);
    for i in mesh.inside_indices() {
        if mesh.is_deep(i) {
            let r = sk_at(u, i, 2) - lambda * u.value(i).powi(2);
            sum += r * r;
            count += 1;
        }
    }
    (sum / count.max(1) as f64).sqrt()
}

/// Best member of the trial family u = ψ_w ∘ γ_{K−x0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaTrial {
    pub center: Point,
    /// Weight of the paraboloid in the profile blend.
    pub weight: f64,
    /// Rayleigh quotient of the radial profile on the unit disk.
    pub disk_quotient: f64,
    /// |(K − x0)°|.
    pub polar_area: f64,
    pub area: f64,
}

/// Radial profile (1 − w)ψ̂ + w(s² − 1) with ψ̂ the ball eigenfunction
/// scaled to ψ̂(0) = −1.
pub fn blended_profile(weight: f64) -> Result<RadialProfile> {
    let pair = ball_eigenpair(2, 2)?;
    let p = &pair.profile;
    let slopes = p.slopes.as_ref().ok_or_else(|| Error::solver("eigenprofile has no slopes"))?;
    let s0 = -1.0 / p.values[0];
    let values = p.radii.iter().zip(&p.values).map(|(r, v)| (1.0 - weight) * s0 * v + weight * (r * r - 1.0)).collect();
    let slopes = p.radii.iter().zip(slopes).map(|(r, d)| (1.0 - weight) * s0 * d + weight * 2.0 * r).collect();
    RadialProfile::new(p.radii.clone(), values, Some(slopes))
}

/// A radial profile gives a convex ψ∘γ when it is nondecreasing and convex.
fn profile_is_admissible(p: &RadialProfile) -> bool {
    let Some(d) = &p.slopes else { return false };
    d.iter().all(|&v| v >= -1e-12) && d.windows(2).all(|w| w[1] >= w[0] - 1e-9)
}

fn disk_quotient(p: &RadialProfile) -> Result<f64> {
    Ok(hessian_integral_radial(p, 2, 2)? / p.lp_norm(2, 3.0).powi(3))
}

/// ½∮(h(θ) − ⟨x0, u⟩)^{−2} dθ on m uniform angles, with the exact polygon
/// summand.
fn polar_area(values: &[f64], x0: Point) -> f64 {
    let m = values.len();
    let dt = 2.0 * PI / m as f64;
    let mut s = 0.0;
    for (i, &hv) in values.iter().enumerate() {
        let t = i as f64 * dt;
        let g = hv - x0[0] * t.cos() - x0[1] * t.sin();
        if g <= 0.0 {
            return f64::INFINITY;
        }
        s += 1.0 / (g * g);
    }
    0.5 * s * dt
}

fn dense_support(body: &SupportBody2D, m: usize) -> Vec<f64> {
    let (mut vals, _) = body.smooth_dense(m);
    if let Some(p) = body.polygon() {
        for (i, v) in vals.iter_mut().enumerate() {
            *v += p.support(2.0 * PI * i as f64 / m as f64).0;
        }
    }
    vals
}

/// Optimal trial and its upper bound on λ_2(K).
pub fn ma_rayleigh_trial(body: &SupportBody2D) -> Result<(MaTrial, f64)> {
    let n = body.samples();
    let dense = dense_support(body, 16 * n);
    let coarse = body.h();
    let s = body.steiner_point();
    let scale = coarse.iter().cloned().fold(0.0, f64::max);
    let (center, polar) = nelder_mead(|x: &[f64; 2]| polar_area(&dense, *x), s, 0.05 * scale, 1e-10 * scale, 4000);
    if !polar.is_finite() {
        return Err(Error::solver("polar body is unbounded for every trial center"));
    }
    let quad_err = (polar_area(coarse, center) - polar).abs() / polar;

    let quotient = |w: f64| -> f64 {
        match blended_profile(w) {
            Ok(p) if profile_is_admissible(&p) => disk_quotient(&p).unwrap_or(f64::INFINITY),
            _ => f64::INFINITY,
        }
    };
    let (weight, q) = golden_section(quotient, 0.0, 1.0, 1e-6);
    if !q.is_finite() {
        return Err(Error::Inadmissible("no admissible trial profile".into()));
    }
    let k_area = area(body);
    let bound = q * polar / k_area * (1.0 + QUADRATURE_MARGIN + quad_err);
    Ok((MaTrial { center, weight, disk_quotient: q, polar_area: polar, area: k_area }, bound))
}

/// Upper bound on λ_2(K) from the gauge trial family.
pub fn ma_rayleigh_upper(body: &SupportBody2D) -> Result<EigenEstimate> {
    let (trial, bound) = ma_rayleigh_trial(body)?;
    let raw = trial.disk_quotient * trial.polar_area / trial.area;
    Ok(EigenEstimate {
        k: 2,
        value: bound,
        kind: EstimateKind::UpperBound,
        error_estimate: bound - raw,
        extrapolated: None,
        eigenfield: None,
    })
}

/// The trial function ψ_w ∘ γ_{K−x0} on a grid, normalized in L³(Ω).
pub fn ma_trial_field(body: &SupportBody2D, trial: &MaTrial, h: f64) -> Result<GridField2D> {
    let mesh = GridMesh::new(Arc::new(body.clone()), h)?;
    let profile = blended_profile(trial.weight)?;
    let table = body.boundary_table();
    let c = trial.center;
    let gauge = |x: Point| -> f64 {
        let d = [x[0] - c[0], x[1] - c[1]];
        let r = d[0].hypot(d[1]);
        if r == 0.0 {
            return 0.0;
        }
        // Boundary distance along the ray from c by bisection on the
        // table gauge.
        let dir = [d[0] / r, d[1] / r];
        let (mut lo, mut hi) = (0.0, 1.0);
        while table.gauge([c[0] + hi * dir[0], c[1] + hi * dir[1]]) < 1.0 {
            hi *= 2.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if table.gauge([c[0] + mid * dir[0], c[1] + mid * dir[1]]) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        r / (0.5 * (lo + hi))
    };
    let raw = GridField2D::from_fn(mesh, |x| profile.eval(gauge(x)));
    let norm = raw.integrate(|v| (-v).max(0.0).powi(3)).cbrt();
    Ok(raw.scaled(1.0 / norm))
}
