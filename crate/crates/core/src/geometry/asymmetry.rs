use serde::{Deserialize, Serialize};

use super::body::SupportBody2D;
use super::enclosing::smallest_enclosing_disk;
use super::polygon::Point;
use super::quermass::{comparison_radius, quermass_2d};
use crate::error::{Error, Result};
use crate::lp;

/// Deficiency and asymmetry measures of a planar body for order k.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryReport {
    pub k: usize,
    pub d_k: f64,
    pub D_k: f64,
    pub Delta: f64,
    pub delta_H: f64,
    pub r_in: f64,
    pub R_circ: f64,
    pub R_star: f64,
    pub steiner: Point,
    /// Translation attaining δ_H.
    pub hausdorff_center: Point,
}

pub fn steiner_point(k: &SupportBody2D) -> Point {
    k.steiner_point()
}

/// Largest disk inside the sampled half-planes ⟨x, u_j⟩ ≤ h_j (Chebyshev
/// centre LP). Returns (radius, centre).
pub fn inradius_with_center(k: &SupportBody2D) -> Result<(f64, Point)> {
    let s = k.steiner_point();
    let n = k.samples();
    let mut rows = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for j in 0..n {
        let (c, si) = k.direction(j);
        rows.push(vec![c, -c, si, -si, 1.0]);
        b.push(k.h()[j] - s[0] * c - s[1] * si);
    }
    let sol = lp::maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &rows, &b)
        .map_err(|e| Error::solver(format!("inradius LP: {e}")))?;
    let x = &sol.x;
    Ok((sol.objective, [s[0] + x[0] - x[1], s[1] + x[2] - x[3]]))
}

pub fn inradius(k: &SupportBody2D) -> Result<f64> {
    Ok(inradius_with_center(k)?.0)
}

/// Radius of the smallest disk enclosing the sampled boundary points.
pub fn circumradius(k: &SupportBody2D) -> f64 {
    smallest_enclosing_disk(&k.boundary_points()).radius
}

/// max_j |h_j − R − ⟨x0, u_j⟩|, the Hausdorff distance to the ball B_R(x0)
/// on the sampled directions.
pub fn hausdorff_to_ball(k: &SupportBody2D, radius: f64, x0: Point) -> f64 {
    (0..k.samples())
        .map(|j| {
            let (c, s) = k.direction(j);
            (k.h()[j] - radius - x0[0] * c - x0[1] * s).abs()
        })
        .fold(0.0, f64::max)
}

/// inf over x0 of [`hausdorff_to_ball`]. The sampled objective is a
/// maximum of affine pieces, so the minimum is the LP
/// min τ s.t. |e_j − ⟨d, u_j⟩| ≤ τ, solved exactly around the Steiner point.
pub fn min_hausdorff_to_ball(k: &SupportBody2D, radius: f64) -> Result<(f64, Point)> {
    let s = k.steiner_point();
    let n = k.samples();
    let e: Vec<f64> = (0..n)
        .map(|j| {
            let (c, si) = k.direction(j);
            k.h()[j] - radius - s[0] * c - s[1] * si
        })
        .collect();
    let tau0 = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut rows = Vec::with_capacity(2 * n);
    let mut b = Vec::with_capacity(2 * n);
    for j in 0..n {
        let (c, si) = k.direction(j);
        // Variables (d⁺x, d⁻x, d⁺y, d⁻y, w) with τ = τ0 − w.
        rows.push(vec![-c, c, -si, si, 1.0]);
        b.push(tau0 - e[j]);
        rows.push(vec![c, -c, si, -si, 1.0]);
        b.push(tau0 + e[j]);
    }
    let sol = lp::maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &rows, &b)
        .map_err(|err| Error::solver(format!("Hausdorff LP: {err}")))?;
    let x = &sol.x;
    let center = [s[0] + x[0] - x[1], s[1] + x[2] - x[3]];
    Ok(((tau0 - sol.objective).max(0.0), center))
}

/// Deficiencies against Ω*_{k−1}. δ_H is measured against the perimeter
/// ball Ω*_{n−1} (radius W_1/π) for every k.
pub fn asymmetry_report(k: &SupportBody2D, order: usize) -> Result<AsymmetryReport> {
    if !(order == 1 || order == 2) {
        return Err(Error::arg(format!("planar asymmetry needs k in {{1, 2}}, got {order}")));
    }
    let w = quermass_2d(k);
    let r_star = comparison_radius(&w, order)?;
    let (r_in, _) = inradius_with_center(k)?;
    let r_circ = circumradius(k);
    let (delta_h, center) = min_hausdorff_to_ball(k, comparison_radius(&w, 2)?)?;
    Ok(AsymmetryReport {
        k: order,
        d_k: 1.0 - r_in / r_star,
        D_k: r_circ / r_star - 1.0,
        Delta: r_circ / r_in - 1.0,
        delta_H: delta_h,
        r_in,
        R_circ: r_circ,
        R_star: r_star,
        steiner: k.steiner_point(),
        hausdorff_center: center,
    })
}

/// P² − 4πA − π²(R − r)², nonnegative by Bonnesen's inequality.
pub fn bonnesen_gap(k: &SupportBody2D) -> Result<f64> {
    let w = quermass_2d(k);
    let p = 2.0 * w.w[1];
    let spread = circumradius(k) - inradius(k)?;
    Ok(p * p - 4.0 * std::f64::consts::PI * w.w[0] - (std::f64::consts::PI * spread).powi(2))
}

/// Both sides of the planar quantitative Aleksandrov–Fenchel bound, without
/// the unknown constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsPair {
    pub lhs: f64,
    pub rhs_core: f64,
    pub violation: bool,
}

impl GsPair {
    /// lhs/rhs_core, the empirical lower bound on the constant. `None`
    /// when both sides vanish.
    pub fn ratio(&self) -> Option<f64> {
        (self.rhs_core > 0.0).then(|| self.lhs / self.rhs_core)
    }
}

const GS_TOL: f64 = 1e-9;

pub fn gs_pair(k: &SupportBody2D) -> Result<GsPair> {
    let w = quermass_2d(k);
    let p = 2.0 * w.w[1];
    let pi = std::f64::consts::PI;
    let spread = (circumradius(k) - inradius(k)?).max(0.0);
    let lhs = spread.powf(2.5);
    let rhs_core = p.sqrt() * ((p / (2.0 * pi)).powi(2) - w.w[0] / pi);
    Ok(GsPair { lhs, rhs_core, violation: rhs_core <= 0.0 && lhs > GS_TOL })
}
