use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BodySpec, Point, SupportBody2D};

/// Arms shorter than this fraction of h pin the node to the boundary.
pub const THETA_MIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Inside,
    /// On ∂Ω up to THETA_MIN·h; value pinned to 0.
    Boundary,
    Outside,
}

/// Direction order used by [`GridMesh::arms`].
pub const DIRS: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Cartesian grid classified against a convex body. Node (ix, iy) sits at
/// origin + h·(ix, iy); storage is row-major with x fastest.
#[derive(Debug)]
pub struct GridMesh {
    body: Arc<SupportBody2D>,
    h: f64,
    nx: usize,
    ny: usize,
    origin: Point,
    kind: Vec<NodeKind>,
    /// Fraction of h from each Inside node to the boundary in the DIRS
    /// directions; 1 when the neighbour is not across ∂Ω.
    arms: Vec<[f64; 4]>,
}

impl GridMesh {
    pub fn new(body: Arc<SupportBody2D>, h: f64) -> Result<Arc<Self>> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::arg(format!("grid spacing must be positive, got {h}")));
        }
        let table = body.boundary_table();
        let [xmin, ymin, xmax, ymax] = table.bbox();
        let ix0 = (xmin / h).floor() as i64 - 1;
        let iy0 = (ymin / h).floor() as i64 - 1;
        let nx = ((xmax / h).ceil() as i64 + 1 - ix0 + 1) as usize;
        let ny = ((ymax / h).ceil() as i64 + 1 - iy0 + 1) as usize;
        if nx * ny > 50_000_000 {
            return Err(Error::arg("grid too fine for this body"));
        }
        let origin = [ix0 as f64 * h, iy0 as f64 * h];
        let node = |ix: usize, iy: usize| [origin[0] + ix as f64 * h, origin[1] + iy as f64 * h];
        let mut kind: Vec<NodeKind> = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                let g = table.gauge(node(ix, iy));
                kind.push(if g < 1.0 { NodeKind::Inside } else { NodeKind::Outside });
            }
        }
        let mut arms = vec![[1.0; 4]; nx * ny];
        for iy in 0..ny {
            for ix in 0..nx {
                let i = iy * nx + ix;
                if kind[i] != NodeKind::Inside {
                    continue;
                }
                let p = node(ix, iy);
                for (d, &(dx, dy)) in DIRS.iter().enumerate() {
                    let (jx, jy) = (ix as isize + dx, iy as isize + dy);
                    let j = jy as usize * nx + jx as usize;
                    if kind[j] == NodeKind::Outside {
                        let q = node(jx as usize, jy as usize);
                        arms[i][d] = edge_crossing(|x| table.gauge(x), p, q);
                    }
                }
            }
        }
        for i in 0..nx * ny {
            if kind[i] == NodeKind::Inside && arms[i].iter().any(|&a| a < THETA_MIN) {
                kind[i] = NodeKind::Boundary;
            }
        }
        let interior = kind.iter().filter(|&&k| k == NodeKind::Inside).count();
        if interior == 0 {
            return Err(Error::arg("grid has no interior nodes"));
        }
        Ok(Arc::new(Self { body, h, nx, ny, origin, kind, arms }))
    }

    pub fn body(&self) -> &Arc<SupportBody2D> {
        &self.body
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn coords(&self, i: usize) -> (usize, usize) {
        (i % self.nx, i / self.nx)
    }

    pub fn point(&self, i: usize) -> Point {
        let (ix, iy) = self.coords(i);
        [self.origin[0] + ix as f64 * self.h, self.origin[1] + iy as f64 * self.h]
    }

    pub fn kind(&self, i: usize) -> NodeKind {
        self.kind[i]
    }

    pub fn is_inside(&self, i: usize) -> bool {
        self.kind[i] == NodeKind::Inside
    }

    pub fn arms(&self, i: usize) -> [f64; 4] {
        self.arms[i]
    }

    /// Neighbour index in direction d (nodes on the outer frame are never
    /// Inside, so interior lookups stay in range).
    pub fn neighbor(&self, i: usize, d: usize) -> usize {
        let (dx, dy) = DIRS[d];
        (i as isize + dx + dy * self.nx as isize) as usize
    }

    pub fn inside_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_inside(i)).collect()
    }

    /// Whether the node and all eight neighbours are Inside.
    pub fn is_deep(&self, i: usize) -> bool {
        if !self.is_inside(i) {
            return false;
        }
        let nx = self.nx as isize;
        [-nx - 1, -nx, -nx + 1, -1, 1, nx - 1, nx, nx + 1]
            .iter()
            .all(|&o| self.is_inside((i as isize + o) as usize))
    }
}

/// Fraction t ∈ (0, 1] at which the segment p→q leaves {γ < 1}, with
/// γ(p) < 1 ≤ γ(q).
fn edge_crossing(gauge: impl Fn(Point) -> f64, p: Point, q: Point) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let x = [p[0] + mid * (q[0] - p[0]), p[1] + mid * (q[1] - p[1])];
        if gauge(x) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Scalar field on a [`GridMesh`]; zero off the Inside nodes.
#[derive(Debug, Clone)]
pub struct GridField2D {
    mesh: Arc<GridMesh>,
    values: Vec<f64>,
}

impl GridField2D {
    pub fn zeros(mesh: Arc<GridMesh>) -> Self {
        let values = vec![0.0; mesh.len()];
        Self { mesh, values }
    }

    /// Samples f at Inside nodes.
    pub fn from_fn(mesh: Arc<GridMesh>, f: impl Fn(Point) -> f64) -> Self {
        let values = (0..mesh.len()).map(|i| if mesh.is_inside(i) { f(mesh.point(i)) } else { 0.0 }).collect();
        Self { mesh, values }
    }

    pub fn from_values(mesh: Arc<GridMesh>, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.len() {
            return Err(Error::arg(format!("expected {} values, got {}", mesh.len(), values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("non-finite field value"));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if !mesh.is_inside(i) {
                *v = 0.0;
            }
        }
        Ok(Self { mesh, values })
    }

    pub fn mesh(&self) -> &Arc<GridMesh> {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { mesh: self.mesh.clone(), values: self.values.iter().map(|v| s * v).collect() }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    /// ∫ f(u) over Ω by the nodal rule h² Σ f(u_i).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let h2 = self.mesh.h * self.mesh.h;
        (0..self.mesh.len()).filter(|&i| self.mesh.is_inside(i)).map(|i| f(self.values[i])).sum::<f64>() * h2
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            h_grid: self.mesh.h,
            nx: self.mesh.nx,
            ny: self.mesh.ny,
            origin: self.mesh.origin,
            values: self.values.clone(),
            body: self.mesh.body.to_spec(),
        }
    }

    pub fn from_json(js: FieldJson) -> Result<Self> {
        let body: SupportBody2D = js.body.try_into()?;
        let mesh = GridMesh::new(Arc::new(body), js.h_grid)?;
        let same_origin = (0..2).all(|c| (mesh.origin[c] - js.origin[c]).abs() <= 1e-12 * js.h_grid.max(1.0));
        if mesh.nx != js.nx || mesh.ny != js.ny || !same_origin {
            return Err(Error::arg("field grid does not match the grid of its body"));
        }
        Self::from_values(mesh, js.values)
    }
}

/// JSON form of a field: grid description, row-major values and the body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub h_grid: f64,
    pub nx: usize,
    pub ny: usize,
    pub origin: Point,
    pub values: Vec<f64>,
    pub body: BodySpec,
}

impl Serialize for GridField2D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridField2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let js = FieldJson::deserialize(d)?;
        Self::from_json(js).map_err(serde::de::Error::custom)
    }
}
