use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{area, make_ellipse, make_smoothed_polygon, square_vertices, SupportBody2D, DEFAULT_SAMPLES};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Ellipses (a, 1/a); ab = 1 is held fixed.
    EllipseUnitProduct,
    /// Ellipses (sα, s/α) with s = π^{−1/2}; unit area is held fixed.
    EllipseArea,
    /// (unit square ⊕ ρB), rescaled to unit area.
    SmoothedPolygon,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::EllipseUnitProduct => "ellipse-unit-product",
            FamilyKind::EllipseArea => "ellipse-area",
            FamilyKind::SmoothedPolygon => "smoothed-polygon",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ellipse-unit-product" | "ellipse_unit_product" => Ok(FamilyKind::EllipseUnitProduct),
            "ellipse-area" | "ellipse_area" => Ok(FamilyKind::EllipseArea),
            "smoothed-polygon" | "smoothed_polygon" => Ok(FamilyKind::SmoothedPolygon),
            _ => Err(Error::arg(format!("unknown family '{s}'"))),
        }
    }
}

/// A one-parameter family of bodies plus the resolution used to evaluate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub k: usize,
    /// Shape parameter per body: the long semi-axis ratio for ellipses, ρ for
    /// smoothed polygons.
    pub params: Vec<f64>,
    /// Support samples per body.
    pub samples: usize,
    /// Grid spacing for finite differences and eigenfields, relative to the
    /// unscaled family.
    pub grid_h: f64,
    /// Levels for the level-set integrals.
    pub levels: usize,
    /// Uniform dilation applied to every body.
    pub scale: f64,
    #[serde(skip)]
    pub exec: Execution,
}

/// m points with p − offset log-spaced in [lo − offset, hi − offset].
pub fn log_spaced(lo: f64, hi: f64, m: usize, offset: f64) -> Vec<f64> {
    if m == 1 {
        return vec![lo];
    }
    let (a, b) = ((lo - offset).ln(), (hi - offset).ln());
    (0..m).map(|i| offset + (a + (b - a) * i as f64 / (m - 1) as f64).exp()).collect()
}

impl FamilySpec {
    /// The shipped parameter ranges: a − 1 ∈ [1e−3, 0.3] for ab = 1
    /// ellipses, α − 1 ∈ [5e−3, 0.5] for unit-area ellipses, ρ ∈ [1, 64]
    /// for smoothed squares; all log-spaced.
    pub fn new(kind: FamilyKind, k: usize, points: usize) -> Result<Self> {
        if !(k == 1 || k == 2) {
            return Err(Error::arg(format!("families are planar; k must be 1 or 2, got {k}")));
        }
        if points == 0 {
            return Err(Error::arg("a family needs at least one point"));
        }
        let (params, grid_h) = match kind {
            FamilyKind::EllipseUnitProduct => (log_spaced(1.001, 1.3, points, 1.0), 1.0 / 128.0),
            FamilyKind::EllipseArea => (log_spaced(1.005, 1.5, points, 1.0), 1.0 / 256.0),
            FamilyKind::SmoothedPolygon => (log_spaced(1.0, 64.0, points, 0.0), 1.0 / 256.0),
        };
        Ok(Self { kind, k, params, samples: DEFAULT_SAMPLES, grid_h, levels: 200, scale: 1.0, exec: Execution::default() })
    }

    pub fn with_params(mut self, params: Vec<f64>) -> Self {
        self.params = params;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_grid(mut self, grid_h: f64) -> Self {
        self.grid_h = grid_h;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k == 1 || self.k == 2) {
            return Err(Error::arg(format!("k must be 1 or 2, got {}", self.k)));
        }
        if !(self.scale > 0.0 && self.grid_h > 0.0) || self.levels < 2 {
            return Err(Error::arg("scale, grid spacing and level count must be positive"));
        }
        Ok(())
    }

    /// The body for one parameter value.
    pub fn body(&self, param: f64) -> Result<SupportBody2D> {
        let t = self.scale;
        match self.kind {
            FamilyKind::EllipseUnitProduct => make_ellipse(t * param, t / param, self.samples),
            FamilyKind::EllipseArea => {
                let s = t / PI.sqrt();
                make_ellipse(s * param, s / param, self.samples)
            }
            FamilyKind::SmoothedPolygon => {
                let raw = make_smoothed_polygon(&square_vertices(1.0), param, self.samples)?;
                raw.scaled(t / area(&raw).sqrt())
            }
        }
    }

    /// Grid spacing for the body at `param`.
    pub fn spacing(&self) -> f64 {
        self.grid_h * self.scale
    }
}
