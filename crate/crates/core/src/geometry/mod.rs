//! Planar convex bodies via support functions, and the n-ball.

mod asymmetry;
mod body;
mod enclosing;
mod polygon;
mod quermass;

pub use asymmetry::{
    asymmetry_report, bonnesen_gap, circumradius, gs_pair, hausdorff_to_ball, inradius, inradius_with_center,
    min_hausdorff_to_ball, steiner_point, AsymmetryReport, GsPair,
};
pub use body::{
    make_disk, make_ellipse, make_smoothed_polygon, square_vertices, BodySpec, BoundaryTable, EllipseParams,
    SampledBody, Shape, SmoothedPolygonParams, SupportBody2D, DEFAULT_SAMPLES, MIN_SAMPLES, TOL_CONV,
};
pub use enclosing::{smallest_enclosing_disk, Disk};
pub use polygon::{convex_hull, loop_length, shoelace, ConvexPolygon, Point};
pub use quermass::{af_deficit, area, comparison_radius, perimeter, quermass_2d, quermass_ball, QuermassVector};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Euclidean ball B_R ⊂ ℝⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallBody {
    pub n: usize,
    pub radius: f64,
}

impl BallBody {
    pub fn new(n: usize, radius: f64) -> Result<Self> {
        if n < 2 || !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::arg(format!("invalid ball (n = {n}, R = {radius})")));
        }
        Ok(Self { n, radius })
    }

    pub fn quermass(&self) -> QuermassVector {
        quermass_ball(self.n, self.radius).expect("validated at construction")
    }

    /// λ_k(B_R).
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        crate::radial_spectra::lambda_ball(self.n, k, self.radius)
    }
}
