use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::family::FamilySpec;
use crate::eigensolver2d::{
    epsilon_for, laplace_eigen_with, ma_ellipse_eigenfield, ma_eigen_ellipse, ma_rayleigh_upper, EigenEstimate,
    EstimateKind, LaplaceOptions,
};
use crate::error::{Error, Result};
use crate::field2d::{integral_lemma_check_with, levelset_lemma_check, superlevel_metrics, GridField2D};
use crate::geometry::{asymmetry_report, quermass_2d, Shape, SupportBody2D};
use crate::par::{self, Execution};
use crate::radial_spectra::lambda_ball;

/// Everything measured on one body of a family.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub param: f64,
    #[serde(default)]
    pub k: Option<usize>,
    pub eps: f64,
    pub d_k: f64,
    pub D_k: f64,
    pub Delta: f64,
    pub delta_H: f64,
    pub W0: f64,
    pub W1: f64,
    pub r_in: f64,
    pub R_circ: f64,
    pub R_star: f64,
    pub lemma_eq3_residual: Option<f64>,
    pub volume_bound_gap: Option<f64>,
    /// |Ω| / W_{k−1}^{2/(3−k)}.
    #[serde(default)]
    pub volume_ratio: Option<f64>,
    /// Level-set lemma residual at δ = |Ω|^{−1/(k+1)}/4.
    #[serde(default)]
    pub levelset_residual: Option<f64>,
    /// (P − 2πr)/P and (2πR − P)/P.
    #[serde(default)]
    pub perimeter_inner: Option<f64>,
    #[serde(default)]
    pub perimeter_outer: Option<f64>,
    /// Largest relative gap between hulled and raw superlevel areas.
    #[serde(default)]
    pub hull_excess: Option<f64>,
    #[serde(default)]
    pub eigen_kind: Option<EstimateKind>,
    #[serde(default)]
    pub eigenvalue: Option<f64>,
    #[serde(default)]
    pub eigen_error: Option<f64>,
}

impl SweepRecord {
    /// δ_H in units of the perimeter-ball radius W_1/π.
    pub fn delta_h_normalized(&self) -> f64 {
        self.delta_H * PI / self.W1
    }
}

/// A body that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub param: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<SweepFailure>,
}

/// Evaluates every body of the family. Failing bodies are collected in
/// `failures` and do not abort the sweep.
pub fn run_sweep(spec: &FamilySpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let results = par::map(spec.exec, &spec.params, |&p| evaluate(spec, p));
    let mut out = SweepOutcome { records: Vec::new(), failures: Vec::new() };
    for (&param, r) in spec.params.iter().zip(results) {
        match r {
            Ok(rec) => out.records.push(rec),
            Err(e) => out.failures.push(SweepFailure { param, message: e.to_string() }),
        }
    }
    Ok(out)
}

fn evaluate(spec: &FamilySpec, param: f64) -> Result<SweepRecord> {
    let body = spec.body(param)?;
    let k = spec.k;
    let h = spec.spacing();
    let (estimate, field) = strongest_estimate(&body, k, h)?;
    let eps = epsilon_for(&body, k, &estimate)?;
    let mut rec = record_for(&body, k, eps, spec.kind.as_str(), param)?;
    rec.eigen_kind = Some(estimate.kind);
    rec.eigenvalue = Some(estimate.best_value());
    rec.eigen_error = Some(estimate.error_estimate);
    if let Some(u) = field {
        attach_field_diagnostics(&mut rec, &u, eps, spec.levels, spec.exec)?;
    }
    Ok(rec)
}

/// Affine exact value for ellipses at k = 2, Rayleigh upper bound for other
/// bodies at k = 2, finite differences at k = 1. Returns the eigenfield when
/// one is available.
pub fn strongest_estimate(body: &SupportBody2D, k: usize, h: f64) -> Result<(EigenEstimate, Option<GridField2D>)> {
    match (k, body.shape()) {
        (2, Shape::Ellipse { a, b }) => Ok((ma_eigen_ellipse(*a, *b)?, Some(ma_ellipse_eigenfield(*a, *b, h)?))),
        (2, _) => Ok((ma_rayleigh_upper(body)?, None)),
        (1, _) => {
            let mut est = laplace_eigen_with(body, h, &LaplaceOptions::default())?;
            let field = est.eigenfield.take();
            Ok((est, field))
        }
        _ => Err(Error::arg(format!("k must be 1 or 2, got {k}"))),
    }
}

/// The geometric part of a record for a body with known ε.
pub fn record_for(body: &SupportBody2D, k: usize, eps: f64, family: &str, param: f64) -> Result<SweepRecord> {
    let w = quermass_2d(body);
    let rep = asymmetry_report(body, k)?;
    let p = 2.0 * w.w[1];
    let mut rec = SweepRecord {
        family: family.to_string(),
        param,
        k: Some(k),
        eps,
        d_k: rep.d_k,
        D_k: rep.D_k,
        Delta: rep.Delta,
        delta_H: rep.delta_H,
        W0: w.w[0],
        W1: w.w[1],
        r_in: rep.r_in,
        R_circ: rep.R_circ,
        R_star: rep.R_star,
        lemma_eq3_residual: None,
        volume_bound_gap: None,
        volume_ratio: None,
        levelset_residual: None,
        perimeter_inner: Some((p - 2.0 * PI * rep.r_in) / p),
        perimeter_outer: Some((2.0 * PI * rep.R_circ - p) / p),
        hull_excess: None,
        eigen_kind: None,
        eigenvalue: None,
        eigen_error: None,
    };
    let bound = volume_lower_bound_gap(&rec, 2, k)?;
    rec.volume_bound_gap = bound.gap;
    rec.volume_ratio = Some(bound.ratio);
    Ok(rec)
}

fn attach_field_diagnostics(
    rec: &mut SweepRecord,
    u: &GridField2D,
    eps: f64,
    levels: usize,
    exec: Execution,
) -> Result<()> {
    let k = rec.k.unwrap_or(2);
    if k == 2 {
        rec.lemma_eq3_residual = Some(integral_lemma_check_with(u, eps, levels, exec)?);
    }
    let delta = 0.25 * rec.W0.powf(-1.0 / (k + 1) as f64);
    rec.levelset_residual = Some(levelset_lemma_check(u, eps.max(0.0), delta, k)?);
    let tmax = -u.min();
    let mut excess = 0.0_f64;
    for frac in [0.1, 0.5, 0.9] {
        excess = excess.max(superlevel_metrics(u, frac * tmax)?.hull_excess());
    }
    rec.hull_excess = Some(excess);
    Ok(())
}

/// Volume lower bound check. `gap` is the explicit k = n bound
/// |Ω| − [2 ω₂^{−1/2} W₁ λ₂(B₁)^{−1/2} (1+ε)^{−1/2}]²; `ratio` is
/// |Ω| / W_{k−1}^{n/(n−k+1)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeBound {
    pub gap: Option<f64>,
    pub ratio: f64,
}

pub fn volume_lower_bound_gap(record: &SweepRecord, n: usize, k: usize) -> Result<VolumeBound> {
    if n != 2 || !(k == 1 || k == 2) {
        return Err(Error::arg(format!("records are planar with k in {{1, 2}}, got n = {n}, k = {k}")));
    }
    let w_km1 = if k == 1 { record.W0 } else { record.W1 };
    let ratio = record.W0 / w_km1.powf(2.0 / (3 - k) as f64);
    let gap = if k == 2 {
        let lam = lambda_ball(2, 2, 1.0)?;
        Some(record.W0 - 4.0 * record.W1 * record.W1 / (PI * lam * (1.0 + record.eps)))
    } else {
        None
    };
    Ok(VolumeBound { gap, ratio })
}
