//! Eigenvalues of the k-Hessian operator on balls.
//!
//! For radial functions the Hessian has eigenvalues u'' (once) and u'/r
//! (n-1 times), and S_k(D²u) takes the divergence form
//!
//! ```text
//! S_k(D²u) = C(n-1,k-1)/(k r^{n-1}) · (r^{n-k} u'^k)'
//! ```
//!
//! Shooting works on the state (u, w = r^{n-k} u'^k) with λ = 1 and
//! u(0) = -1; the first zero r* of u gives λ_k(B_1) = r*^{2k} by the
//! homogeneity of both sides of S_k(D²u) = λ(-u)^k.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{DormandPrince, Tolerance};
use crate::special::{binomial, paraboloid_moment, unit_ball_volume};

/// Tolerance used by [`lambda_ball`] and everything built on it.
pub const DEFAULT_TOL: f64 = 1e-10;

const SERIES_START: f64 = 1e-4;
const R_MAX: f64 = 20.0;
const PROFILE_POINTS: usize = 2001;

/// A radial profile ρ(r) sampled on increasing radii `[0, R]`.
///
/// `slopes` holds ρ'(r) when it is known analytically; without it the
/// profile is treated as piecewise linear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub slopes: Option<Vec<f64>>,
}

impl RadialProfile {
    pub fn new(radii: Vec<f64>, values: Vec<f64>, slopes: Option<Vec<f64>>) -> Result<Self> {
        if radii.len() < 2 || radii.len() != values.len() {
            return Err(Error::arg("profile needs at least two samples and matching lengths"));
        }
        if let Some(s) = &slopes {
            if s.len() != radii.len() {
                return Err(Error::arg("slope samples must match radii"));
            }
        }
        if radii[0] != 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::arg("profile radii must start at 0 and increase strictly"));
        }
        if values.iter().chain(slopes.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::arg("profile contains non-finite samples"));
        }
        Ok(Self { radii, values, slopes })
    }

    pub fn support_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            radii: self.radii.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
            slopes: self.slopes.as_ref().map(|s| s.iter().map(|v| v * factor).collect()),
        }
    }

    /// Value at radius `r` (cubic Hermite when slopes are present, linear
    /// otherwise). Zero beyond the support.
    pub fn eval(&self, r: f64) -> f64 {
        self.eval_with_slope(r).0
    }

    pub fn eval_with_slope(&self, r: f64) -> (f64, f64) {
        let n = self.radii.len();
        if r >= self.radii[n - 1] {
            return (0.0, 0.0);
        }
        let r = r.max(0.0);
        let i = match self.radii.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let (r0, r1) = (self.radii[i], self.radii[i + 1]);
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        let dr = r1 - r0;
        let s = (r - r0) / dr;
        match &self.slopes {
            Some(d) => {
                let (m0, m1) = (d[i] * dr, d[i + 1] * dr);
                let s2 = s * s;
                let s3 = s2 * s;
                let v = (2.0 * s3 - 3.0 * s2 + 1.0) * v0
                    + (s3 - 2.0 * s2 + s) * m0
                    + (-2.0 * s3 + 3.0 * s2) * v1
                    + (s3 - s2) * m1;
                let dv = ((6.0 * s2 - 6.0 * s) * v0
                    + (3.0 * s2 - 4.0 * s + 1.0) * m0
                    + (-6.0 * s2 + 6.0 * s) * v1
                    + (3.0 * s2 - 2.0 * s) * m1)
                    / dr;
                (v, dv)
            }
            None => (v0 + s * (v1 - v0), (v1 - v0) / dr),
        }
    }

    /// ∫_{B_R} |ρ(|x|)|^p dx in R^n.
    pub fn lp_norm(&self, n: usize, p: f64) -> f64 {
        if p.is_infinite() {
            return self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        }
        let area = n as f64 * unit_ball_volume(n);
        let integral = self.integrate_sub(8, |r| self.eval(r).abs().powf(p) * r.powi(n as i32 - 1));
        (area * integral).powf(1.0 / p)
    }

    /// Composite Simpson rule on every sample interval, subdivided `sub` times.
    fn integrate_sub(&self, sub: usize, f: impl Fn(f64) -> f64) -> f64 {
        let m = 2 * sub;
        self.radii
            .windows(2)
            .map(|w| {
                let h = (w[1] - w[0]) / m as f64;
                let mut s = f(w[0]) + f(w[1]);
                for j in 1..m {
                    let c = if j % 2 == 1 { 4.0 } else { 2.0 };
                    s += c * f(w[0] + j as f64 * h);
                }
                s * h / 3.0
            })
            .sum()
    }
}

/// Radial eigenpair for S_k on the unit ball of R^n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialEigenPair {
    pub n: usize,
    pub k: usize,
    pub lambda1: f64,
    pub r_star: f64,
    pub error_estimate: f64,
    /// Eigenfunction on [0, 1], normalized so that ∫_{B_1} (-u)^{k+1} = 1.
    pub profile: RadialProfile,
}

impl RadialEigenPair {
    /// The normalized eigenfunction of the ball of radius `radius`:
    /// u_R(r) = R^{-n/(k+1)} ρ(r/R).
    pub fn profile_on_ball(&self, radius: f64) -> RadialProfile {
        let amp = radius.powf(-(self.n as f64) / (self.k as f64 + 1.0));
        RadialProfile {
            radii: self.profile.radii.iter().map(|r| r * radius).collect(),
            values: self.profile.values.iter().map(|v| v * amp).collect(),
            slopes: self.profile.slopes.as_ref().map(|s| s.iter().map(|d| d * amp / radius).collect()),
        }
    }
}

/// S_k(D²u) for a radial function with u'(r) = `up`, u''(r) = `upp`.
/// At r = 0 the regular limit C(n,k)·u''^k is returned.
pub fn sk_radial(n: usize, k: usize, up: f64, upp: f64, r: f64) -> f64 {
    if r == 0.0 {
        return binomial(n, k) * upp.powi(k as i32);
    }
    let q = up / r;
    binomial(n - 1, k - 1) * upp * q.powi(k as i32 - 1) + binomial(n - 1, k) * q.powi(k as i32)
}

fn check_order(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < 1 || k > n {
        return Err(Error::arg(format!("need n >= 2 and 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// State: (u, w = r^{n-k} u'^k, ∫(-u)^{k+1} r^{n-1}, ∫ u'^{k+1} r^{n-k}).
struct RadialSystem {
    n: usize,
    k: usize,
    w_coeff: f64,
}

impl RadialSystem {
    fn new(n: usize, k: usize) -> Self {
        Self { n, k, w_coeff: k as f64 / binomial(n - 1, k - 1) }
    }

    fn slope(&self, r: f64, w: f64) -> f64 {
        let base = w.max(0.0) / r.powi((self.n - self.k) as i32);
        base.powf(1.0 / self.k as f64)
    }

    fn rhs(&self, r: f64, y: &[f64; 4]) -> [f64; 4] {
        let (n, k) = (self.n as i32, self.k as i32);
        let u = y[0];
        let up = self.slope(r, y[1]);
        let neg_u_k = (-u) * u.abs().powi(k - 1);
        [
            up,
            self.w_coeff * r.powi(n - 1) * neg_u_k,
            u.abs().powi(k + 1) * r.powi(n - 1),
            up.powi(k + 1) * r.powi(n - k),
        ]
    }

    /// Two-term series at small r: u = -1 + c r²/2 with c = C(n,k)^{-1/k}.
    fn series(&self, r: f64) -> [f64; 4] {
        let (n, k) = (self.n as i32, self.k as i32);
        let c = binomial(self.n, self.k).powf(-1.0 / self.k as f64);
        [
            -1.0 + 0.5 * c * r * r,
            c.powi(k) * r.powi(n),
            r.powi(n) / n as f64,
            c.powi(k + 1) * r.powi(n + 2) / (n + 2) as f64,
        ]
    }
}

struct Shot {
    r_star: f64,
    at_zero: [f64; 4],
    samples: Vec<(f64, f64, f64)>,
}

fn shoot_once(n: usize, k: usize, tol: f64, sample_profile: bool) -> Result<Shot> {
    let sys = RadialSystem::new(n, k);
    let ode_tol = Tolerance { rel: tol / 10.0, abs: tol / 10.0 };
    let dp = DormandPrince::new(|r, y: &[f64; 4]| sys.rhs(r, y), ode_tol);
    let y0 = sys.series(SERIES_START);
    let br = dp.integrate_until(SERIES_START, y0, R_MAX, 1e-3, |y| y[0] >= 0.0)?;

    let (mut lo, mut ylo, mut hi) = (br.t_before, br.y_before, br.t_after);
    while hi - lo > tol * lo {
        let mid = 0.5 * (lo + hi);
        let ymid = dp.integrate(lo, ylo, mid, (mid - lo) / 4.0)?;
        if ymid[0] < 0.0 {
            lo = mid;
            ylo = ymid;
        } else {
            hi = mid;
        }
    }
    let r_star = 0.5 * (lo + hi);
    let at_zero = dp.integrate(lo, ylo, r_star, (r_star - lo).max(1e-12))?;

    let mut samples = Vec::new();
    if sample_profile {
        let mut r = SERIES_START;
        let mut y = y0;
        for i in 0..PROFILE_POINTS {
            let ri = r_star * i as f64 / (PROFILE_POINTS - 1) as f64;
            if ri <= SERIES_START {
                let ys = sys.series(ri.max(0.0));
                samples.push((ri, ys[0], if ri == 0.0 { 0.0 } else { sys.slope(ri, ys[1]) }));
                continue;
            }
            y = dp.integrate(r, y, ri, (ri - r).max(1e-12))?;
            r = ri;
            samples.push((ri, y[0], sys.slope(ri, y[1])));
        }
    }
    Ok(Shot { r_star, at_zero, samples })
}

/// Shoots the radial eigenvalue problem on B_1 ⊂ R^n for S_k.
pub fn shoot_eigen(n: usize, k: usize, tol: f64) -> Result<RadialEigenPair> {
    check_order(n, k)?;
    if !(tol > 0.0 && tol <= 1e-4) {
        return Err(Error::arg(format!("tolerance must lie in (0, 1e-4], got {tol}")));
    }
    let shot = shoot_once(n, k, tol, true)?;
    let refined = shoot_once(n, k, tol / 4.0, false)?;
    let two_k = 2 * k as i32;
    let lambda1 = shot.r_star.powi(two_k);
    let lambda_fine = refined.r_star.powi(two_k);
    let error_estimate = 2.0 * (lambda1 - lambda_fine).abs() + 2.0 * k as f64 * lambda1 * tol;

    // Rescale r -> s = r / r* and normalize ∫_{B_1}(-ρ)^{k+1} = 1.
    let r_star = shot.r_star;
    let omega = unit_ball_volume(n);
    let j1 = shot.at_zero[2];
    let amp = (r_star.powi(n as i32) / (n as f64 * omega * j1)).powf(1.0 / (k as f64 + 1.0));
    let last = shot.samples.len() - 1;
    let mut radii = Vec::with_capacity(shot.samples.len());
    let mut values = Vec::with_capacity(shot.samples.len());
    let mut slopes = Vec::with_capacity(shot.samples.len());
    for (i, &(r, u, up)) in shot.samples.iter().enumerate() {
        radii.push(if i == last { 1.0 } else { r / r_star });
        values.push(if i == last { 0.0 } else { amp * u });
        slopes.push(amp * r_star * up);
    }
    let profile = RadialProfile::new(radii, values, Some(slopes))?;
    Ok(RadialEigenPair { n, k, lambda1, r_star, error_estimate, profile })
}

fn cache() -> &'static RwLock<HashMap<(usize, usize), Arc<RadialEigenPair>>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), Arc<RadialEigenPair>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized eigenpair at [`DEFAULT_TOL`]. Concurrent first calls may both
/// shoot; the results are identical so whichever write lands is kept.
pub fn ball_eigenpair(n: usize, k: usize) -> Result<Arc<RadialEigenPair>> {
    if let Some(p) = cache().read().unwrap().get(&(n, k)) {
        return Ok(Arc::clone(p));
    }
    let pair = Arc::new(shoot_eigen(n, k, DEFAULT_TOL)?);
    let mut guard = cache().write().unwrap();
    Ok(Arc::clone(guard.entry((n, k)).or_insert(pair)))
}

/// λ_k of the ball of radius `radius` in R^n: R^{-2k} λ_k(B_1).
pub fn lambda_ball(n: usize, k: usize, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::arg(format!("radius must be positive, got {radius}")));
    }
    let pair = ball_eigenpair(n, k)?;
    Ok(pair.lambda1 * radius.powi(-2 * k as i32))
}

/// I_k of a radial profile on its ball: C(n,k) ω_n ∫_0^R |ρ'|^{k+1} r^{n-k} dr.
pub fn hessian_integral_radial(profile: &RadialProfile, n: usize, k: usize) -> Result<f64> {
    check_order(n, k)?;
    let pref = binomial(n, k) * unit_ball_volume(n);
    let (kp, nk) = (k as i32 + 1, (n - k) as i32);
    let r = &profile.radii;
    let integral = match &profile.slopes {
        Some(d) => {
            let f: Vec<f64> = r.iter().zip(d).map(|(r, d)| d.abs().powi(kp) * r.powi(nk)).collect();
            let h0 = r[1] - r[0];
            let uniform = r.windows(2).all(|w| ((w[1] - w[0]) - h0).abs() <= 1e-9 * h0);
            if uniform && f.len() % 2 == 1 {
                let mut s = f[0] + f[f.len() - 1];
                for (i, v) in f.iter().enumerate().take(f.len() - 1).skip(1) {
                    s += if i % 2 == 1 { 4.0 } else { 2.0 } * v;
                }
                s * h0 / 3.0
            } else {
                r.windows(2).zip(f.windows(2)).map(|(w, g)| 0.5 * (w[1] - w[0]) * (g[0] + g[1])).sum()
            }
        }
        None => {
            let e = (n - k + 1) as i32;
            r.windows(2)
                .zip(profile.values.windows(2))
                .map(|(w, v)| {
                    let slope = (v[1] - v[0]) / (w[1] - w[0]);
                    slope.abs().powi(kp) * (w[1].powi(e) - w[0].powi(e)) / e as f64
                })
                .sum()
        }
    };
    Ok(pref * integral)
}

/// Rayleigh quotient of the paraboloid (|x|² - 1)/2 on B_1, an upper bound
/// for λ_k(B_1).
pub fn rayleigh_paraboloid(n: usize, k: usize) -> Result<f64> {
    check_order(n, k)?;
    let area = n as f64 * unit_ball_volume(n);
    // ∫(-u) S_k = C(n,k) |S^{n-1}| ∫ (1-r²)/2 r^{n-1}; ∫(-u)^{k+1} likewise.
    let num = binomial(n, k) * area * 0.5 * paraboloid_moment(n, 1);
    let den = area * 0.5f64.powi(k as i32 + 1) * paraboloid_moment(n, k + 1);
    Ok(num / den)
}
