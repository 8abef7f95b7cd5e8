//! Adaptive Dormand–Prince 5(4) integration for small fixed-size systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One adaptive integrator bound to a right-hand side.
pub struct DormandPrince<F, const N: usize> {
    rhs: F,
    tol: Tolerance,
    h_min: f64,
}

/// Outcome of [`DormandPrince::integrate_until`]: the accepted step across
/// which the stop predicate first became true.
#[derive(Debug, Clone, Copy)]
pub struct Bracket<const N: usize> {
    pub t_before: f64,
    pub y_before: [f64; N],
    pub t_after: f64,
    pub y_after: [f64; N],
}

impl<F, const N: usize> DormandPrince<F, N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    pub fn new(rhs: F, tol: Tolerance) -> Self {
        Self { rhs, tol, h_min: 1e-14 }
    }

    fn step(&self, t: f64, y: &[f64; N], h: f64) -> ([f64; N], f64) {
        let mut k = [[0.0; N]; 7];
        for s in 0..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = (self.rhs)(t + C[s] * h, &ys);
        }
        let mut y5 = *y;
        let mut err = 0.0f64;
        for i in 0..N {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            let scale = self.tol.abs + self.tol.rel * y[i].abs().max(y5[i].abs());
            err = err.max((h * (d5 - d4)).abs() / scale);
        }
        (y5, err)
    }

    fn next_h(h: f64, err: f64) -> f64 {
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h * fac
    }

    /// Integrates from `t0` to exactly `t1`.
    pub fn integrate(&self, t0: f64, y0: [f64; N], t1: f64, h0: f64) -> Result<[f64; N]> {
        let mut t = t0;
        let mut y = y0;
        let mut h = h0.min(t1 - t0);
        if t1 <= t0 {
            return Ok(y0);
        }
        while t < t1 {
            let last = t + h >= t1;
            let hs = if last { t1 - t } else { h };
            let (yn, err) = self.step(t, &y, hs);
            if !err.is_finite() {
                h = hs * 0.2;
            } else if err <= 1.0 {
                t = if last { t1 } else { t + hs };
                y = yn;
                h = Self::next_h(hs, err);
                continue;
            } else {
                h = Self::next_h(hs, err);
            }
            if h < self.h_min * t.abs().max(1.0) {
                return Err(Error::solver("ODE step size underflow"));
            }
        }
        Ok(y)
    }

    /// Integrates forward until `stop(y)` holds after an accepted step, or
    /// until `t_max` is passed.
    pub fn integrate_until(
        &self,
        t0: f64,
        y0: [f64; N],
        t_max: f64,
        h0: f64,
        stop: impl Fn(&[f64; N]) -> bool,
    ) -> Result<Bracket<N>> {
        let mut t = t0;
        let mut y = y0;
        let mut h = h0;
        while t < t_max {
            let (yn, err) = self.step(t, &y, h);
            if err.is_finite() && err <= 1.0 {
                let tn = t + h;
                if stop(&yn) {
                    return Ok(Bracket { t_before: t, y_before: y, t_after: tn, y_after: yn });
                }
                t = tn;
                y = yn;
                h = Self::next_h(h, err);
            } else {
                h = if err.is_finite() { Self::next_h(h, err) } else { h * 0.2 };
                if h < self.h_min * t.abs().max(1.0) {
                    return Err(Error::solver("ODE step size underflow"));
                }
            }
        }
        Err(Error::solver(format!("no stop event before t = {t_max}")))
    }
}
