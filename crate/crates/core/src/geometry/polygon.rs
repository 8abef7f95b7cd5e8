use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [f64; 2];

/// Convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl ConvexPolygon {
    /// Accepts a strictly convex vertex loop in either orientation.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::NonConvex("a polygon needs at least three vertices".into()));
        }
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::arg("non-finite polygon vertex"));
        }
        let turns: Vec<f64> = (0..n)
            .map(|i| cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]))
            .collect();
        let scale = vertices.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        let eps = 1e-12 * scale * scale;
        let mut vertices = vertices;
        if turns.iter().all(|&t| t < -eps) {
            vertices.reverse();
        } else if !turns.iter().all(|&t| t > eps) {
            return Err(Error::NonConvex("vertex list is not strictly convex".into()));
        }
        let winding: f64 = (0..n)
            .map(|i| {
                let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                let e1 = (b[1] - a[1]).atan2(b[0] - a[0]);
                let e2 = (c[1] - b[1]).atan2(c[0] - b[0]);
                let mut d = e2 - e1;
                while d <= -PI {
                    d += 2.0 * PI;
                }
                while d > PI {
                    d -= 2.0 * PI;
                }
                d
            })
            .sum();
        if (winding - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::NonConvex("vertex loop winds more than once".into()));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        loop_length(&self.vertices)
    }

    /// h_P(θ) and h_P'(θ) = ⟨v*, u⊥⟩ at the maximizing vertex v*.
    pub fn support(&self, theta: f64) -> (f64, f64) {
        let (c, s) = (theta.cos(), theta.sin());
        let mut best = f64::NEG_INFINITY;
        let mut deriv = 0.0;
        for v in &self.vertices {
            let val = v[0] * c + v[1] * s;
            if val > best {
                best = val;
                deriv = -v[0] * s + v[1] * c;
            }
        }
        (best, deriv)
    }

    /// (outward normal angle, length) of every edge.
    pub fn edges(&self) -> Vec<(f64, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                (dy.atan2(dx) - PI / 2.0, dx.hypot(dy))
            })
            .collect()
    }

    /// Steiner point Σ_v (α_v / 2π) v with α_v the exterior angle at v.
    pub fn steiner_point(&self) -> Point {
        let edges = self.edges();
        let n = edges.len();
        let mut s = [0.0; 2];
        for i in 0..n {
            let mut alpha = edges[i].0 - edges[(i + n - 1) % n].0;
            while alpha < 0.0 {
                alpha += 2.0 * PI;
            }
            while alpha >= 2.0 * PI {
                alpha -= 2.0 * PI;
            }
            s[0] += alpha / (2.0 * PI) * self.vertices[i][0];
            s[1] += alpha / (2.0 * PI) * self.vertices[i][1];
        }
        s
    }

    pub fn regular(sides: usize, side_length: f64) -> Result<Self> {
        let circ = side_length / (2.0 * (PI / sides as f64).sin());
        let verts = (0..sides)
            .map(|i| {
                let a = PI / 2.0 + 2.0 * PI * i as f64 / sides as f64;
                [circ * a.cos(), circ * a.sin()]
            })
            .collect();
        Self::new(verts)
    }
}

/// Signed area of a closed vertex loop (positive when counter-clockwise).
pub fn shoelace(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

pub fn loop_length(pts: &[Point]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            (b[0] - a[0]).hypot(b[1] - a[1])
        })
        .sum()
}

/// Andrew's monotone chain; returns the hull counter-clockwise without
/// collinear points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap().then(a[1].partial_cmp(&b[1]).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::new(vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]).unwrap()
    }

    #[test]
    fn square_measures() {
        let sq = unit_square();
        assert!((sq.area() - 1.0).abs() < 1e-15);
        assert!((sq.perimeter() - 4.0).abs() < 1e-15);
        let s = sq.steiner_point();
        assert!(s[0].abs() < 1e-15 && s[1].abs() < 1e-15);
        assert!((sq.support(0.0).0 - 0.5).abs() < 1e-15);
        assert!((sq.support(PI / 4.0).0 - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn orientation_normalized_and_nonconvex_rejected() {
        let cw = ConvexPolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(cw.area() > 0.0);
        let dart = vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.3], [1.0, 2.0]];
        assert!(ConvexPolygon::new(dart).is_err());
        let collinear = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [1.0, 1.0]];
        assert!(ConvexPolygon::new(collinear).is_err());
    }

    #[test]
    fn steiner_point_of_triangle_translates() {
        let t = ConvexPolygon::regular(3, 1.0).unwrap();
        let s = t.steiner_point();
        assert!(s[0].abs() < 1e-14 && s[1].abs() < 1e-14);
        let shifted =
            ConvexPolygon::new(t.vertices().iter().map(|v| [v[0] + 0.3, v[1] - 0.2]).collect()).unwrap();
        let s2 = shifted.steiner_point();
        assert!((s2[0] - 0.3).abs() < 1e-14 && (s2[1] + 0.2).abs() < 1e-14);
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!((shoelace(&h) - 1.0).abs() < 1e-15);
    }
}
