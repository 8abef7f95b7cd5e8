//! Dense dictionary simplex for small LPs of the form
//! max cᵀz  s.t.  A z ≤ b,  z ≥ 0,  with b ≥ 0 (origin feasible).
//!
//! Bland's rule is used throughout; the problems here have a handful of
//! structural columns and heavily degenerate vertices.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

pub fn maximize(c: &[f64], rows: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let n = c.len();
    let m = rows.len();
    if b.len() != m || rows.iter().any(|r| r.len() != n) {
        return Err(Error::arg("LP dimensions do not match"));
    }
    if b.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::arg("LP right-hand side must be finite and nonnegative"));
    }
    let mut a: Vec<f64> = rows.iter().flatten().copied().collect();
    let mut b = b.to_vec();
    let mut cost = c.to_vec();
    let mut z0 = 0.0;
    // Variable labels: 0..n structural, n..n+m slack.
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();

    let max_pivots = 50 * (n + m);
    for _ in 0..max_pivots {
        // Bland: smallest label among improving columns.
        let entering = (0..n)
            .filter(|&j| cost[j] > PIVOT_EPS)
            .min_by_key(|&j| nonbasic[j]);
        let Some(e) = entering else {
            let mut x = vec![0.0; n];
            for (i, &var) in basic.iter().enumerate() {
                if var < n {
                    x[var] = b[i];
                }
            }
            return Ok(LpSolution { x, objective: z0 });
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let aie = a[i * n + e];
            if aie > PIVOT_EPS {
                let ratio = b[i] / aie;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((l, best)) => {
                        if ratio < best - 1e-15 || (ratio <= best + 1e-15 && basic[i] < basic[l]) {
                            Some((i, ratio))
                        } else {
                            Some((l, best))
                        }
                    }
                };
            }
        }
        let Some((l, _)) = leave else {
            return Err(Error::solver("LP is unbounded"));
        };
        let piv = a[l * n + e];
        b[l] /= piv;
        for j in 0..n {
            if j != e {
                a[l * n + j] /= piv;
            }
        }
        a[l * n + e] = 1.0 / piv;
        for i in 0..m {
            if i == l {
                continue;
            }
            let f = a[i * n + e];
            if f == 0.0 {
                continue;
            }
            b[i] = (b[i] - f * b[l]).max(0.0);
            for j in 0..n {
                if j != e {
                    a[i * n + j] -= f * a[l * n + j];
                }
            }
            a[i * n + e] = -f * a[l * n + e];
        }
        let f = cost[e];
        z0 += f * b[l];
        for j in 0..n {
            if j != e {
                cost[j] -= f * a[l * n + j];
            }
        }
        cost[e] = -f * a[l * n + e];
        std::mem::swap(&mut basic[l], &mut nonbasic[e]);
    }
    Err(Error::solver("LP pivot limit reached"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 5x + 4y + 3z; 2x+3y+z<=5, 4x+y+2z<=11, 3x+4y+2z<=8 -> 13 at (2,0,1)
        let rows = vec![vec![2.0, 3.0, 1.0], vec![4.0, 1.0, 2.0], vec![3.0, 4.0, 2.0]];
        let s = maximize(&[5.0, 4.0, 3.0], &rows, &[5.0, 11.0, 8.0]).unwrap();
        assert!((s.objective - 13.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12 && s.x[1].abs() < 1e-12 && (s.x[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_detected() {
        let rows = vec![vec![-1.0, 1.0]];
        assert!(maximize(&[1.0, 0.0], &rows, &[1.0]).is_err());
    }

    #[test]
    fn chebyshev_center_of_square() {
        // |x|,|y| <= 1 with x = x+ - x-, y = y+ - y-; max r.
        let dirs = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];
        let rows: Vec<Vec<f64>> = dirs.iter().map(|&(ux, uy)| vec![ux, -ux, uy, -uy, 1.0]).collect();
        let s = maximize(&[0.0, 0.0, 0.0, 0.0, 1.0], &rows, &[1.0; 4]).unwrap();
        assert!((s.objective - 1.0).abs() < 1e-12);
    }
}
