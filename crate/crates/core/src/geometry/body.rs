use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::polygon::{ConvexPolygon, Point};
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 1024;
pub const MIN_SAMPLES: usize = 256;
/// Relative slack in the discrete convexity test.
pub const TOL_CONV: f64 = 1e-8;
/// Minimum number of points in the dense boundary table.
const DENSE_POINTS: usize = 16384;

/// Planar convex body described by its support function on a uniform
/// angular grid θ_j = 2πj/N.
///
/// Bodies built as `polygon ⊕ smooth` keep the polygon summand exactly so
/// that support values, mixed areas and boundary points between the grid
/// angles do not suffer from the kinks of h_P.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "BodySpec", into = "BodySpec")]
pub struct SupportBody2D {
    h: Vec<f64>,
    smooth: Vec<f64>,
    polygon: Option<ConvexPolygon>,
    shape: Shape,
    spectrum: Vec<Complex64>,
    table: OnceLock<Arc<BoundaryTable>>,
}

/// How a body was built; kept so that named bodies serialize back to their
/// constructor and the affine Monge–Ampère oracle can recognise ellipses.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Sampled,
    Ellipse { a: f64, b: f64 },
    SmoothedPolygon { vertices: Vec<Point>, rho: f64 },
}

impl SupportBody2D {
    /// Body from raw support samples.
    pub fn from_samples(h: Vec<f64>) -> Result<Self> {
        let smooth = h.clone();
        Self::assemble(h, smooth, None, Shape::Sampled)
    }

    fn assemble(h: Vec<f64>, smooth: Vec<f64>, polygon: Option<ConvexPolygon>, shape: Shape) -> Result<Self> {
        let n = h.len();
        if n < MIN_SAMPLES || !n.is_multiple_of(2) {
            return Err(Error::InvalidBody(format!("N = {n} must be even and at least {MIN_SAMPLES}")));
        }
        if h.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("non-finite support value".into()));
        }
        let spectrum = forward_spectrum(&smooth);
        let body = Self { h, smooth, polygon, shape, spectrum, table: OnceLock::new() };
        body.validate()?;
        Ok(body)
    }

    fn validate(&self) -> Result<()> {
        let n = self.h.len();
        let dt = self.dtheta();
        let scale = self.h.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..n {
            let (prev, next) = (self.h[(j + n - 1) % n], self.h[(j + 1) % n]);
            let d2 = next + prev - 2.0 * self.h[j] + dt * dt * self.h[j];
            if d2 < -TOL_CONV * scale {
                return Err(Error::NonConvex(format!("discrete h + h'' = {d2:.3e} at sample {j}")));
            }
        }
        let s = self.steiner_point();
        if let Some(j) = (0..n).find(|&j| {
            let (c, si) = self.direction(j);
            self.h[j] - s[0] * c - s[1] * si <= 0.0
        }) {
            return Err(Error::InvalidBody(format!("Steiner point not interior (sample {j})")));
        }
        Ok(())
    }

    pub fn samples(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.h.len() as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta()
    }

    pub fn direction(&self, j: usize) -> (f64, f64) {
        let t = self.theta(j);
        (t.cos(), t.sin())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        self.polygon.as_ref()
    }

    /// Samples of the smooth summand (the whole support function when the
    /// body has no polygon part).
    pub fn smooth_part(&self) -> &[f64] {
        &self.smooth
    }

    /// DFT coefficients c_m = (1/N) Σ_j s_j e^{−imθ_j} of the smooth summand.
    pub(crate) fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// Trigonometric interpolant of the smooth summand and its derivative.
    pub fn smooth_support(&self, theta: f64) -> (f64, f64) {
        let n = self.h.len();
        let half = n / 2;
        let c = &self.spectrum;
        let mut val = c[0].re;
        let mut der = 0.0;
        let step = Complex64::from_polar(1.0, theta);
        let mut e = step;
        for (m, cm) in c.iter().enumerate().take(half).skip(1) {
            let z = cm * e;
            val += 2.0 * z.re;
            der -= 2.0 * m as f64 * z.im;
            e *= step;
        }
        let nyq = c[half].re;
        let arg = half as f64 * theta;
        val += nyq * arg.cos();
        der -= half as f64 * nyq * arg.sin();
        (val, der)
    }

    /// h(θ) and h'(θ) at an arbitrary angle.
    pub fn support(&self, theta: f64) -> (f64, f64) {
        let (mut v, mut d) = self.smooth_support(theta);
        if let Some(p) = &self.polygon {
            let (pv, pd) = p.support(theta);
            v += pv;
            d += pd;
        }
        (v, d)
    }

    /// Boundary points x(θ_j) = h u + h' u⊥ on the sample grid.
    pub fn boundary_points(&self) -> Vec<Point> {
        (0..self.h.len())
            .map(|j| {
                let t = self.theta(j);
                let (hv, hd) = self.support(t);
                boundary_point(t, hv, hd)
            })
            .collect()
    }

    /// s = (1/π)∮ h u dθ, with the polygon summand handled exactly.
    pub fn steiner_point(&self) -> Point {
        let c1 = self.spectrum[1];
        let mut s = [2.0 * c1.re, -2.0 * c1.im];
        if let Some(p) = &self.polygon {
            let sp = p.steiner_point();
            s[0] += sp[0];
            s[1] += sp[1];
        }
        s
    }

    pub fn translated(&self, t: Point) -> Result<Self> {
        let n = self.h.len();
        let shift: Vec<f64> = (0..n)
            .map(|j| {
                let (c, s) = self.direction(j);
                t[0] * c + t[1] * s
            })
            .collect();
        let h = self.h.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let smooth = self.smooth.iter().zip(&shift).map(|(a, b)| a + b).collect();
        Self::assemble(h, smooth, self.polygon.clone(), Shape::Sampled)
    }

    /// The dilate tK about the origin.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::arg("scale factor must be positive"));
        }
        let h = self.h.iter().map(|v| t * v).collect();
        let smooth = self.smooth.iter().map(|v| t * v).collect();
        let polygon = match &self.polygon {
            Some(p) => Some(ConvexPolygon::new(p.vertices().iter().map(|v| [t * v[0], t * v[1]]).collect())?),
            None => None,
        };
        let shape = match &self.shape {
            Shape::Sampled => Shape::Sampled,
            Shape::Ellipse { a, b } => Shape::Ellipse { a: t * a, b: t * b },
            Shape::SmoothedPolygon { vertices, rho } => Shape::SmoothedPolygon {
                vertices: vertices.iter().map(|v| [t * v[0], t * v[1]]).collect(),
                rho: t * rho,
            },
        };
        Self::assemble(h, smooth, polygon, shape)
    }

    /// K ⊕ ρB.
    pub fn minkowski_ball(&self, rho: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::arg("rho must be nonnegative"));
        }
        let h = self.h.iter().map(|v| v + rho).collect();
        let smooth = self.smooth.iter().map(|v| v + rho).collect();
        let shape = match &self.shape {
            Shape::SmoothedPolygon { vertices, rho: r0 } => {
                Shape::SmoothedPolygon { vertices: vertices.clone(), rho: r0 + rho }
            }
            _ => Shape::Sampled,
        };
        Self::assemble(h, smooth, self.polygon.clone(), shape)
    }

    /// Dense boundary polygon ordered by polar angle about the Steiner
    /// point; backs the gauge function and grid classification.
    pub fn boundary_table(&self) -> Arc<BoundaryTable> {
        self.table.get_or_init(|| Arc::new(BoundaryTable::build(self))).clone()
    }

    /// Gauge γ(x) of the body about its Steiner point.
    pub fn gauge(&self, x: Point) -> f64 {
        self.boundary_table().gauge(x)
    }

    /// Values and derivatives of the smooth summand on M ≥ N uniform angles,
    /// by zero-padded inverse FFT of the interpolant.
    pub fn smooth_dense(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.h.len();
        let half = n / 2;
        assert!(m >= n && m.is_multiple_of(2));
        let mut vals = vec![Complex64::new(0.0, 0.0); m];
        let mut ders = vals.clone();
        for k in 0..half {
            vals[k] = self.spectrum[k];
            ders[k] = Complex64::new(0.0, k as f64) * self.spectrum[k];
            if k > 0 {
                vals[m - k] = self.spectrum[k].conj();
                ders[m - k] = Complex64::new(0.0, -(k as f64)) * self.spectrum[k].conj();
            }
        }
        let nyq = 0.5 * self.spectrum[half].re;
        vals[half] += nyq;
        vals[m - half] += nyq;
        ders[half] += Complex64::new(0.0, half as f64 * nyq);
        ders[m - half] += Complex64::new(0.0, -(half as f64) * nyq);
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_inverse(m);
        fft.process(&mut vals);
        fft.process(&mut ders);
        (vals.iter().map(|z| z.re).collect(), ders.iter().map(|z| z.re).collect())
    }

    pub fn to_spec(&self) -> BodySpec {
        let samples = self.h.len();
        match &self.shape {
            Shape::Ellipse { a, b } => BodySpec::Ellipse { ellipse: EllipseParams { a: *a, b: *b, samples } },
            Shape::SmoothedPolygon { vertices, rho } => BodySpec::SmoothedPolygon {
                smoothed_polygon: SmoothedPolygonParams { vertices: vertices.clone(), rho: *rho, samples },
            },
            Shape::Sampled => BodySpec::Sampled(SampledBody { n: 2, samples, h: self.h.clone() }),
        }
    }
}

pub(crate) fn boundary_point(theta: f64, h: f64, dh: f64) -> Point {
    let (c, s) = (theta.cos(), theta.sin());
    [h * c - dh * s, h * s + dh * c]
}

fn forward_spectrum(f: &[f64]) -> Vec<Complex64> {
    let n = f.len();
    let mut buf: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let inv = 1.0 / n as f64;
    buf.iter().map(|z| z * inv).collect()
}

/// h(θ) = sqrt(a²cos²θ + b²sin²θ).
pub fn make_ellipse(a: f64, b: f64, samples: usize) -> Result<SupportBody2D> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidBody(format!("ellipse axes must be positive, got ({a}, {b})")));
    }
    let h: Vec<f64> = (0..samples)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / samples as f64;
            (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt()
        })
        .collect();
    SupportBody2D::assemble(h.clone(), h, None, Shape::Ellipse { a, b })
}

pub fn make_disk(radius: f64, samples: usize) -> Result<SupportBody2D> {
    make_ellipse(radius, radius, samples)
}

/// Polygon ⊕ ρB, with h = h_P + ρ.
pub fn make_smoothed_polygon(vertices: &[Point], rho: f64, samples: usize) -> Result<SupportBody2D> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidBody(format!("rounding radius must be positive, got {rho}")));
    }
    let poly = ConvexPolygon::new(vertices.to_vec())?;
    let h = (0..samples)
        .map(|j| poly.support(2.0 * PI * j as f64 / samples as f64).0 + rho)
        .collect();
    let smooth = vec![rho; samples];
    let shape = Shape::SmoothedPolygon { vertices: poly.vertices().to_vec(), rho };
    SupportBody2D::assemble(h, smooth, Some(poly), shape)
}

/// Vertices of the axis-parallel square [−s/2, s/2]².
pub fn square_vertices(side: f64) -> Vec<Point> {
    let c = 0.5 * side;
    vec![[-c, -c], [c, -c], [c, c], [-c, c]]
}

/// Serialized form of a body: either raw samples or a named constructor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySpec {
    Ellipse { ellipse: EllipseParams },
    SmoothedPolygon { smoothed_polygon: SmoothedPolygonParams },
    Sampled(SampledBody),
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "N", default = "default_samples")]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothedPolygonParams {
    pub vertices: Vec<Point>,
    pub rho: f64,
    #[serde(rename = "N", default = "default_samples")]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledBody {
    pub n: usize,
    #[serde(rename = "N")]
    pub samples: usize,
    pub h: Vec<f64>,
}

impl TryFrom<BodySpec> for SupportBody2D {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        match spec {
            BodySpec::Ellipse { ellipse: p } => make_ellipse(p.a, p.b, p.samples),
            BodySpec::SmoothedPolygon { smoothed_polygon: p } => make_smoothed_polygon(&p.vertices, p.rho, p.samples),
            BodySpec::Sampled(s) => {
                if s.n != 2 {
                    return Err(Error::InvalidBody(format!("only planar bodies are supported, got n = {}", s.n)));
                }
                if s.samples != s.h.len() {
                    return Err(Error::InvalidBody(format!("N = {} but {} samples given", s.samples, s.h.len())));
                }
                SupportBody2D::from_samples(s.h)
            }
        }
    }
}

impl From<SupportBody2D> for BodySpec {
    fn from(body: SupportBody2D) -> Self {
        body.to_spec()
    }
}

/// Dense boundary polygon sorted by polar angle about `center`.
#[derive(Debug, Clone)]
pub struct BoundaryTable {
    center: Point,
    angles: Vec<f64>,
    points: Vec<Point>,
    bbox: [f64; 4],
}

impl BoundaryTable {
    fn build(body: &SupportBody2D) -> Self {
        let n = body.samples();
        let m = DENSE_POINTS.max(8 * n);
        let (sv, sd) = body.smooth_dense(m);
        let center = body.steiner_point();
        let mut raw: Vec<(f64, Point)> = (0..m)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / m as f64;
                let (mut hv, mut hd) = (sv[i], sd[i]);
                if let Some(p) = body.polygon() {
                    let (pv, pd) = p.support(t);
                    hv += pv;
                    hd += pd;
                }
                let x = boundary_point(t, hv, hd);
                ((x[1] - center[1]).atan2(x[0] - center[0]), x)
            })
            .collect();
        raw.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        raw.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14);
        let mut bbox = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for (_, p) in &raw {
            bbox[0] = bbox[0].min(p[0]);
            bbox[1] = bbox[1].min(p[1]);
            bbox[2] = bbox[2].max(p[0]);
            bbox[3] = bbox[3].max(p[1]);
        }
        let (angles, points) = raw.into_iter().unzip();
        Self { center, angles, points, bbox }
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// [xmin, ymin, xmax, ymax].
    pub fn bbox(&self) -> [f64; 4] {
        self.bbox
    }

    /// Distance from the centre to the boundary along polar angle φ.
    pub fn radial(&self, phi: f64) -> f64 {
        let n = self.points.len();
        let idx = self.angles.partition_point(|&a| a <= phi);
        let (i, j) = if idx == 0 || idx == n { (n - 1, 0) } else { (idx - 1, idx) };
        let (p, q) = (self.points[i], self.points[j]);
        let c = self.center;
        let (dx, dy) = (phi.cos(), phi.sin());
        // Solve c + s·d = p + τ(q − p).
        let (ex, ey) = (q[0] - p[0], q[1] - p[1]);
        let (wx, wy) = (p[0] - c[0], p[1] - c[1]);
        let den = dx * ey - dy * ex;
        if den.abs() < 1e-300 {
            return wx.hypot(wy);
        }
        (wx * ey - wy * ex) / den
    }

    pub fn gauge(&self, x: Point) -> f64 {
        let (dx, dy) = (x[0] - self.center[0], x[1] - self.center[1]);
        let r = dx.hypot(dy);
        if r == 0.0 {
            return 0.0;
        }
        r / self.radial(dy.atan2(dx))
    }
}
