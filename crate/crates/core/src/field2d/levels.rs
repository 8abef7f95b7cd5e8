use serde::{Deserialize, Serialize};

use super::grid::{GridField2D, NodeKind, DIRS};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, loop_length, shoelace, Point};

/// Geometry of the superlevel set Ω_t = {−u > t}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSetMetrics {
    pub t: f64,
    pub area: f64,
    pub perimeter: f64,
    /// Convex hull of the contour crossings, counter-clockwise.
    pub contour: Vec<Point>,
    /// Marching-squares area of the raw (un-hulled) set.
    pub raw_area: f64,
    /// Number of grid nodes in Ω_t.
    pub nodes: usize,
}

impl LevelSetMetrics {
    /// Relative area added by convexification.
    pub fn hull_excess(&self) -> f64 {
        if self.area > 0.0 { (self.area - self.raw_area) / self.area } else { 0.0 }
    }
}

pub fn superlevel_metrics(u: &GridField2D, t: f64) -> Result<LevelSetMetrics> {
    if !(t >= 0.0) {
        return Err(Error::arg(format!("level must be nonnegative, got {t}")));
    }
    let mesh = u.mesh();
    let h = mesh.h();
    let above = |i: usize| mesh.is_inside(i) && -u.value(i) > t;
    let members: Vec<usize> = (0..mesh.len()).filter(|&i| above(i)).collect();
    if members.is_empty() {
        return Err(Error::EmptyLevelSet(t));
    }
    let components = count_components(u, &members, &above);
    if components > 1 {
        return Err(Error::DisconnectedLevelSet { t, components });
    }

    let mut crossings: Vec<Point> = Vec::new();
    for &i in &members {
        let fi = -u.value(i) - t;
        let p = mesh.point(i);
        let arms = mesh.arms(i);
        for (d, &(dx, dy)) in DIRS.iter().enumerate() {
            let j = mesh.neighbor(i, d);
            // Along the edge the field is linear between u_i and the value at
            // the edge's far end: u_j for grid neighbours, 0 at ∂Ω.
            let (reach, fj) = match mesh.kind(j) {
                NodeKind::Inside => (1.0, -u.value(j) - t),
                NodeKind::Boundary => (1.0, -t),
                NodeKind::Outside => (arms[d], -t),
            };
            if fj <= 0.0 {
                let s = reach * fi / (fi - fj);
                crossings.push([p[0] + s * h * dx as f64, p[1] + s * h * dy as f64]);
            }
        }
    }
    let hull = convex_hull(&crossings);
    let (area, perimeter) = if hull.len() >= 3 { (shoelace(&hull), loop_length(&hull)) } else { (0.0, 0.0) };
    Ok(LevelSetMetrics {
        t,
        area,
        perimeter,
        contour: hull,
        raw_area: marching_squares_area(u, t),
        nodes: members.len(),
    })
}

fn count_components(u: &GridField2D, members: &[usize], above: &impl Fn(usize) -> bool) -> usize {
    let mesh = u.mesh();
    let mut seen = vec![false; mesh.len()];
    let mut components = 0;
    let mut stack = Vec::new();
    for &start in members {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for d in 0..4 {
                let j = mesh.neighbor(i, d);
                if !seen[j] && above(j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    components
}

/// Σ over cells of the area of {−u > t} with bilinear-edge interpolation;
/// corners off the Inside set count as u = 0.
fn marching_squares_area(u: &GridField2D, t: f64) -> f64 {
    let mesh = u.mesh();
    let (nx, ny) = (mesh.nx(), mesh.ny());
    let mut total = 0.0;
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let ids = [mesh.index(ix, iy), mesh.index(ix + 1, iy), mesh.index(ix + 1, iy + 1), mesh.index(ix, iy + 1)];
            let f = ids.map(|i| -u.value(i) - t);
            if f.iter().all(|&v| v <= 0.0) {
                continue;
            }
            if f.iter().all(|&v| v > 0.0) {
                total += 1.0;
                continue;
            }
            let corners: [Point; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
            let mut poly: Vec<Point> = Vec::with_capacity(8);
            for c in 0..4 {
                let n = (c + 1) % 4;
                if f[c] > 0.0 {
                    poly.push(corners[c]);
                }
                if (f[c] > 0.0) != (f[n] > 0.0) {
                    let s = f[c] / (f[c] - f[n]);
                    poly.push([
                        corners[c][0] + s * (corners[n][0] - corners[c][0]),
                        corners[c][1] + s * (corners[n][1] - corners[c][1]),
                    ]);
                }
            }
            total += shoelace(&poly).abs();
        }
    }
    total * mesh.h() * mesh.h()
}
