use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sweep::SweepRecord;
use crate::error::{Error, Result};

pub const SLOPE_TOL: f64 = 0.05;
/// Relative band within which a deficit may rise while ε decreases.
pub const MONOTONE_BAND: f64 = 0.02;
/// Records with ε or deficit at or below this are excluded from fits.
pub const FIT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Number of smallest-ε records used in the slope fit.
    pub fit_points: usize,
    pub bootstrap: usize,
    pub seed: u64,
    pub slope_tol: f64,
    /// Minimum decades of ε spanned by the valid records.
    pub min_decades: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { fit_points: 5, bootstrap: 400, seed: 0x5eed, slope_tol: SLOPE_TOL, min_decades: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub quantity: String,
    pub exponent_required: f64,
    pub exponent_fitted: f64,
    /// 95% bootstrap band of the fitted slope.
    pub confidence: [f64; 2],
    /// max over records of deficit / ε^α.
    pub constant_estimate: f64,
    pub monotone: bool,
    pub pass: bool,
    pub records_used: usize,
}

/// Exponent α = max{1/(k+1), 2k/((k+1)(n+3))} of the interior deficiency.
pub fn hessian_exponent(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (1.0 / (k + 1.0)).max(2.0 * k / ((k + 1.0) * (n + 3.0)))
}

fn require_planar(n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::arg(format!("theorem checks run on planar records, got n = {n}")));
    }
    Ok(())
}

/// d_2 at 1/6, D_2 at 1/12, δ_H at 1/15 (δ_H in units of W_1/π).
pub fn check_theorem_main(records: &[SweepRecord], n: usize) -> Result<Vec<TheoremVerdict>> {
    check_theorem_main_with(records, n, &FitOptions::default())
}

pub fn check_theorem_main_with(records: &[SweepRecord], n: usize, opts: &FitOptions) -> Result<Vec<TheoremVerdict>> {
    require_planar(n)?;
    Ok(vec![
        fit_verdict("main", "d_2", 1.0 / 6.0, records, |r| r.d_k, opts)?,
        fit_verdict("main", "D_2", 1.0 / 12.0, records, |r| r.D_k, opts)?,
        fit_verdict("main", "delta_H", 1.0 / 15.0, records, SweepRecord::delta_h_normalized, opts)?,
    ])
}

/// d_k at α, D_k and δ_H at 2α/(n+3).
pub fn check_theorem_main2(records: &[SweepRecord], n: usize, k: usize) -> Result<Vec<TheoremVerdict>> {
    check_theorem_main2_with(records, n, k, &FitOptions::default())
}

pub fn check_theorem_main2_with(
    records: &[SweepRecord],
    n: usize,
    k: usize,
    opts: &FitOptions,
) -> Result<Vec<TheoremVerdict>> {
    require_planar(n)?;
    if !(1..=n).contains(&k) {
        return Err(Error::arg(format!("k must lie in 1..={n}, got {k}")));
    }
    let alpha = hessian_exponent(n, k);
    let outer = 2.0 * alpha / (n as f64 + 3.0);
    Ok(vec![
        fit_verdict("main2", &format!("d_{k}"), alpha, records, |r| r.d_k, opts)?,
        fit_verdict("main2", &format!("D_{k}"), outer, records, |r| r.D_k, opts)?,
        fit_verdict("main2", "delta_H", outer, records, SweepRecord::delta_h_normalized, opts)?,
    ])
}

/// Δ = R/r − 1 at 1/15.
pub fn check_remark_deficiency(records: &[SweepRecord]) -> Result<TheoremVerdict> {
    check_remark_deficiency_with(records, &FitOptions::default())
}

pub fn check_remark_deficiency_with(records: &[SweepRecord], opts: &FitOptions) -> Result<TheoremVerdict> {
    fit_verdict("remdef", "Delta", 1.0 / 15.0, records, |r| r.Delta, opts)
}

/// Least-squares slope of log(deficit) against log(ε) on the smallest-ε
/// records, with a bootstrap band.
pub fn fit_verdict<F>(
    theorem: &str,
    quantity: &str,
    alpha: f64,
    records: &[SweepRecord],
    deficit: F,
    opts: &FitOptions,
) -> Result<TheoremVerdict>
where
    F: Fn(&SweepRecord) -> f64,
{
    let mut pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.eps, deficit(r)))
        .filter(|&(e, d)| e.is_finite() && d.is_finite() && e > FIT_FLOOR && d > FIT_FLOOR)
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "{quantity}: {} records with positive ε and deficit, need 3",
            pts.len()
        )));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let decades = (pts[pts.len() - 1].0 / pts[0].0).log10();
    if decades < opts.min_decades {
        return Err(Error::DegenerateFit(format!(
            "{quantity}: ε spans {decades:.2} decades, need {}",
            opts.min_decades
        )));
    }

    let logs: Vec<(f64, f64)> = pts.iter().take(opts.fit_points.max(3)).map(|&(e, d)| (e.ln(), d.ln())).collect();
    let slope = ls_slope(&logs).ok_or_else(|| Error::DegenerateFit(format!("{quantity}: ε values coincide")))?;
    let confidence = bootstrap_band(&logs, opts.bootstrap, opts.seed).unwrap_or([slope, slope]);

    let constant_estimate = pts.iter().map(|&(e, d)| d / e.powf(alpha)).fold(0.0, f64::max);
    let monotone = pts.windows(2).all(|w| w[0].1 <= w[1].1 * (1.0 + MONOTONE_BAND));
    let pass = slope >= alpha - opts.slope_tol && constant_estimate.is_finite() && monotone;
    Ok(TheoremVerdict {
        theorem: theorem.to_string(),
        quantity: quantity.to_string(),
        exponent_required: alpha,
        exponent_fitted: slope,
        confidence,
        constant_estimate,
        monotone,
        pass,
        records_used: logs.len(),
    })
}

fn ls_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 1e-12 * n).then(|| sxy / sxx)
}

fn bootstrap_band(pts: &[(f64, f64)], reps: usize, seed: u64) -> Option<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slopes = Vec::with_capacity(reps);
    let mut sample = Vec::with_capacity(pts.len());
    for _ in 0..reps {
        sample.clear();
        sample.extend((0..pts.len()).map(|_| pts[rng.gen_range(0..pts.len())]));
        if let Some(s) = ls_slope(&sample) {
            slopes.push(s);
        }
    }
    if slopes.is_empty() {
        return None;
    }
    slopes.sort_by(f64::total_cmp);
    let q = |p: f64| slopes[((slopes.len() - 1) as f64 * p).round() as usize];
    Some([q(0.025), q(0.975)])
}
