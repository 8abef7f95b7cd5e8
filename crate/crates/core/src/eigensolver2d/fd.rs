use std::sync::Arc;

use super::estimate::{EigenEstimate, EstimateKind};
use crate::error::{Error, Result};
use crate::field2d::{GridField2D, GridMesh, NodeKind};
use crate::geometry::SupportBody2D;

const NO_NODE: u32 = u32::MAX;

/// Minimum number of unknowns for a meaningful discretization.
pub const MIN_UNKNOWNS: usize = 1000;

#[derive(Debug, Clone, Copy)]
pub struct LaplaceOptions {
    /// Also solve at h/2 and extrapolate.
    pub richardson: bool,
    /// Relative tolerance on the eigenvalue.
    pub tol: f64,
    pub max_outer: usize,
    /// SSOR relaxation factor of the inner preconditioner.
    pub omega: f64,
}

impl Default for LaplaceOptions {
    fn default() -> Self {
        Self { richardson: true, tol: 1e-8, max_outer: 200, omega: 1.9 }
    }
}

/// h²·(−Δ) on the Inside nodes with unequal-arm boundary fluxes
/// (u_i − 0)/(θh); symmetric positive definite.
pub struct DirichletLaplacian {
    mesh: Arc<GridMesh>,
    nodes: Vec<usize>,
    diag: Vec<f64>,
    /// Unknown indices of the +x, −x, +y, −y neighbours.
    nbr: Vec<[u32; 4]>,
}

impl DirichletLaplacian {
    pub fn new(mesh: Arc<GridMesh>) -> Self {
        let nodes = mesh.inside_indices();
        let mut slot = vec![NO_NODE; mesh.len()];
        for (k, &i) in nodes.iter().enumerate() {
            slot[i] = k as u32;
        }
        let mut diag = Vec::with_capacity(nodes.len());
        let mut nbr = Vec::with_capacity(nodes.len());
        for &i in &nodes {
            let arms = mesh.arms(i);
            let mut d = 0.0;
            let mut row = [NO_NODE; 4];
            for (dir, &theta) in arms.iter().enumerate() {
                d += 1.0 / theta;
                let j = mesh.neighbor(i, dir);
                if mesh.kind(j) == NodeKind::Inside {
                    row[dir] = slot[j];
                }
            }
            diag.push(d);
            nbr.push(row);
        }
        Self { mesh, nodes, diag, nbr }
    }

    pub fn mesh(&self) -> &Arc<GridMesh> {
        &self.mesh
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for k in 0..self.nodes.len() {
            let mut s = self.diag[k] * x[k];
            for &j in &self.nbr[k] {
                if j != NO_NODE {
                    s -= x[j as usize];
                }
            }
            y[k] = s;
        }
    }

    /// z = M⁻¹r for the SSOR splitting; unknowns are ordered row-major, so
    /// −x/−y neighbours precede and +x/+y neighbours follow.
    fn ssor(&self, omega: f64, r: &[f64], z: &mut [f64]) {
        let n = self.nodes.len();
        for k in 0..n {
            let mut s = r[k];
            for &j in &self.nbr[k][..] {
                if j != NO_NODE && (j as usize) < k {
                    s += z[j as usize];
                }
            }
            z[k] = s * omega / self.diag[k];
        }
        for k in (0..n).rev() {
            let mut s = 0.0;
            for &j in &self.nbr[k][..] {
                if j != NO_NODE && (j as usize) > k {
                    s += z[j as usize];
                }
            }
            z[k] += omega / self.diag[k] * s;
        }
    }

    /// Preconditioned CG for A x = b from the given start. Returns the
    /// iteration count.
    pub fn solve(&self, b: &[f64], x: &mut [f64], rtol: f64, omega: f64) -> Result<usize> {
        let n = self.len();
        let bnorm = norm(b);
        if bnorm == 0.0 {
            x.iter_mut().for_each(|v| *v = 0.0);
            return Ok(0);
        }
        let mut r = vec![0.0; n];
        self.apply(x, &mut r);
        for k in 0..n {
            r[k] = b[k] - r[k];
        }
        let mut z = vec![0.0; n];
        self.ssor(omega, &r, &mut z);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut q = vec![0.0; n];
        let max_iter = 20 * (n as f64).sqrt() as usize + 1000;
        for it in 0..max_iter {
            if norm(&r) <= rtol * bnorm {
                return Ok(it);
            }
            self.apply(&p, &mut q);
            let alpha = rz / dot(&p, &q);
            for k in 0..n {
                x[k] += alpha * p[k];
                r[k] -= alpha * q[k];
            }
            self.ssor(omega, &r, &mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for k in 0..n {
                p[k] = z[k] + beta * p[k];
            }
        }
        Err(Error::solver(format!("CG did not reach {rtol:e} in {max_iter} iterations")))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Smallest discrete eigenpair on one mesh: (λ, eigenfield normalized in
/// L² and negative, outer iterations).
pub fn laplace_eigen_on_mesh(mesh: Arc<GridMesh>, opts: &LaplaceOptions) -> Result<(f64, GridField2D, usize)> {
    let op = DirichletLaplacian::new(mesh.clone());
    if op.len() < MIN_UNKNOWNS {
        return Err(Error::arg(format!("mesh has {} interior nodes, need at least {MIN_UNKNOWNS}", op.len())));
    }
    let h2 = mesh.h() * mesh.h();
    let table = mesh.body().boundary_table();
    // Distance-like seed 1 − γ².
    let mut x: Vec<f64> = op.nodes.iter().map(|&i| 1.0 - table.gauge(mesh.point(i)).powi(2)).collect();
    let xn = norm(&x);
    x.iter_mut().for_each(|v| *v /= xn);
    let mut ax = vec![0.0; op.len()];
    op.apply(&x, &mut ax);
    let mut mu = dot(&x, &ax);
    let mut y: Vec<f64> = x.iter().map(|v| v / mu).collect();
    let mut converged = false;
    let mut outer = 0;
    while outer < opts.max_outer {
        outer += 1;
        op.solve(&x, &mut y, 1e-2 * opts.tol, opts.omega)?;
        let yy = dot(&y, &y);
        let mu_new = dot(&y, &x) / yy;
        let yn = yy.sqrt();
        for k in 0..x.len() {
            x[k] = y[k] / yn;
        }
        let change = (mu_new - mu).abs() / mu_new;
        mu = mu_new;
        for k in 0..x.len() {
            y[k] = x[k] / mu;
        }
        if change < 1e-2 * opts.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::solver("inverse iteration stagnated"));
    }
    op.apply(&x, &mut ax);
    let mu = dot(&x, &ax);
    // Normalize ∫u² = 1 on the nodal rule and make the field negative.
    let scale = -1.0 / (h2.sqrt() * norm(&x)) * x.iter().sum::<f64>().signum();
    let mut values = vec![0.0; mesh.len()];
    for (k, &i) in op.nodes.iter().enumerate() {
        values[i] = x[k] * scale;
    }
    let field = GridField2D::from_values(mesh, values)?;
    Ok((mu / h2, field, outer))
}

/// First Dirichlet eigenvalue of −Δ on the body (k = 1).
pub fn laplace_eigen(body: &SupportBody2D, h: f64) -> Result<EigenEstimate> {
    laplace_eigen_with(body, h, &LaplaceOptions::default())
}

pub fn laplace_eigen_with(body: &SupportBody2D, h: f64, opts: &LaplaceOptions) -> Result<EigenEstimate> {
    let body = Arc::new(body.clone());
    let (lambda, field, _) = laplace_eigen_on_mesh(GridMesh::new(body.clone(), h)?, opts)?;
    let (extrapolated, error_estimate) = if opts.richardson {
        let (fine, _, _) = laplace_eigen_on_mesh(GridMesh::new(body, 0.5 * h)?, opts)?;
        let ext = (4.0 * fine - lambda) / 3.0;
        (Some(ext), (lambda - ext).abs())
    } else {
        (None, opts.tol * lambda)
    };
    Ok(EigenEstimate {
        k: 1,
        value: lambda,
        kind: EstimateKind::Discretized,
        error_estimate,
        extrapolated,
        eigenfield: Some(field),
    })
}
