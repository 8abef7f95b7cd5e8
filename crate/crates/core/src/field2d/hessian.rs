use serde::{Deserialize, Serialize};

use super::grid::{GridField2D, GridMesh, NodeKind};
use crate::error::{Error, Result};

/// Relative slack of the admissibility test.
pub const ADMISSIBILITY_TOL: f64 = 1e-6;

/// Value one arm away in direction d together with the arm length (in units
/// of h); across ∂Ω the value is 0 at the boundary point.
fn arm_value(u: &GridField2D, i: usize, d: usize) -> (f64, f64) {
    let mesh = u.mesh();
    let j = mesh.neighbor(i, d);
    match mesh.kind(j) {
        NodeKind::Inside => (u.value(j), 1.0),
        NodeKind::Boundary => (0.0, 1.0),
        NodeKind::Outside => (0.0, mesh.arms(i)[d]),
    }
}

/// Unequal-arm second and first derivatives along one axis; exact for
/// quadratics.
fn axis_derivatives(u0: f64, plus: (f64, f64), minus: (f64, f64), h: f64) -> (f64, f64) {
    let ((up, a), (um, b)) = (plus, minus);
    let second = 2.0 / (h * h) * ((up - u0) / (a * (a + b)) + (um - u0) / (b * (a + b)));
    let first = (b * b * (up - u0) - a * a * (um - u0)) / (a * b * (a + b) * h);
    (second, first)
}

/// (u_xx, u_yy, u_xy, u_x, u_y) at an Inside node.
pub fn derivatives(u: &GridField2D, i: usize) -> [f64; 5] {
    let mesh = u.mesh();
    let h = mesh.h();
    let u0 = u.value(i);
    let (uxx, ux) = axis_derivatives(u0, arm_value(u, i, 0), arm_value(u, i, 1), h);
    let (uyy, uy) = axis_derivatives(u0, arm_value(u, i, 2), arm_value(u, i, 3), h);
    [uxx, uyy, mixed_derivative(u, mesh, i), ux, uy]
}

/// Average of the one-sided quadrant differences that stay inside; this is
/// the centred formula at deep nodes.
fn mixed_derivative(u: &GridField2D, mesh: &GridMesh, i: usize) -> f64 {
    let h = mesh.h();
    let nx = mesh.nx() as isize;
    let at = |o: isize| (i as isize + o) as usize;
    let mut sum = 0.0;
    let mut count = 0;
    for sx in [-1isize, 1] {
        for sy in [-1isize, 1] {
            let (a, b, c) = (at(sx), at(sy * nx), at(sx + sy * nx));
            if mesh.is_inside(a) && mesh.is_inside(b) && mesh.is_inside(c) {
                let q = u.value(c) - u.value(a) - u.value(b) + u.value(i);
                sum += (sx * sy) as f64 * q / (h * h);
                count += 1;
            }
        }
    }
    if count == 0 { 0.0 } else { sum / count as f64 }
}

/// Discrete S_k(D²u) at an Inside node, k ∈ {1, 2}.
pub fn sk_at(u: &GridField2D, i: usize, k: usize) -> f64 {
    let [uxx, uyy, uxy, _, _] = derivatives(u, i);
    match k {
        1 => uxx + uyy,
        _ => uxx * uyy - uxy * uxy,
    }
}

/// Sign and ellipticity diagnostics of a field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub k: usize,
    pub admissible: bool,
    pub max_value: f64,
    pub min_laplacian: f64,
    pub min_det: Option<f64>,
    pub violations: usize,
    pub worst_node: Option<usize>,
}

pub fn is_k_admissible(u: &GridField2D, k: usize) -> Result<AdmissibilityReport> {
    is_k_admissible_tol(u, k, ADMISSIBILITY_TOL)
}

/// S_j(D²u) ≥ −tol·max|S_j| for j ≤ k (Laplacian at every Inside node,
/// determinant at nodes whose 3×3 stencil is inside), and u ≤ tol·max|u|.
pub fn is_k_admissible_tol(u: &GridField2D, k: usize, tol: f64) -> Result<AdmissibilityReport> {
    if !(k == 1 || k == 2) {
        return Err(Error::arg(format!("planar admissibility needs k in {{1, 2}}, got {k}")));
    }
    let mesh = u.mesh();
    let inside = mesh.inside_indices();
    let umax = inside.iter().map(|&i| u.value(i).abs()).fold(0.0, f64::max);
    let lap: Vec<f64> = inside.iter().map(|&i| sk_at(u, i, 1)).collect();
    let lap_scale = lap.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let dets: Vec<(usize, f64)> = if k == 2 {
        inside.iter().filter(|&&i| mesh.is_deep(i)).map(|&i| (i, sk_at(u, i, 2))).collect()
    } else {
        Vec::new()
    };
    let det_scale = dets.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);

    let mut violations = 0;
    let mut worst: Option<(usize, f64)> = None;
    let mut note = |i: usize, excess: f64| {
        violations += 1;
        if worst.is_none_or(|(_, w)| excess > w) {
            worst = Some((i, excess));
        }
    };
    let mut max_value = 0.0f64;
    for (&i, &l) in inside.iter().zip(&lap) {
        max_value = max_value.max(u.value(i));
        if u.value(i) > tol * umax {
            note(i, u.value(i) / umax.max(f64::MIN_POSITIVE));
        }
        if l < -tol * lap_scale {
            note(i, -l / lap_scale.max(f64::MIN_POSITIVE));
        }
    }
    for &(i, d) in &dets {
        if d < -tol * det_scale {
            note(i, -d / det_scale.max(f64::MIN_POSITIVE));
        }
    }
    Ok(AdmissibilityReport {
        k,
        admissible: violations == 0,
        max_value,
        min_laplacian: lap.iter().cloned().fold(f64::INFINITY, f64::min),
        min_det: (k == 2).then(|| dets.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)),
        violations,
        worst_node: worst.map(|w| w.0),
    })
}

/// I_k[u, Ω] = ∫(−u) S_k(D²u) by the nodal rule; the unequal-arm stencils
/// carry the boundary layer.
pub fn hessian_integral_2d(u: &GridField2D, k: usize) -> Result<f64> {
    let report = is_k_admissible(u, k)?;
    if !report.admissible {
        return Err(Error::Inadmissible(format!(
            "{} stencil violations for k = {k} (worst at node {:?})",
            report.violations, report.worst_node
        )));
    }
    Ok(hessian_integral_unchecked(u, k))
}

pub(crate) fn hessian_integral_unchecked(u: &GridField2D, k: usize) -> f64 {
    let mesh = u.mesh();
    let h2 = mesh.h() * mesh.h();
    mesh.inside_indices().iter().map(|&i| -u.value(i) * sk_at(u, i, k)).sum::<f64>() * h2
}

/// ∫|∇u|² with unequal-arm first differences.
pub fn gradient_energy(u: &GridField2D) -> f64 {
    let mesh = u.mesh();
    let h2 = mesh.h() * mesh.h();
    mesh.inside_indices()
        .iter()
        .map(|&i| {
            let d = derivatives(u, i);
            d[3] * d[3] + d[4] * d[4]
        })
        .sum::<f64>()
        * h2
}
