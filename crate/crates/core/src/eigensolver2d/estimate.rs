use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field2d::GridField2D;
use crate::geometry::{comparison_radius, quermass_2d, SupportBody2D};
use crate::radial_spectra::lambda_ball;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    Discretized,
    UpperBound,
}

impl EstimateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EstimateKind::Exact => "exact",
            EstimateKind::Discretized => "discretized",
            EstimateKind::UpperBound => "upper_bound",
        }
    }
}

/// λ_k(Ω) with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenEstimate {
    pub k: usize,
    pub value: f64,
    pub kind: EstimateKind,
    pub error_estimate: f64,
    /// Richardson value from the h, h/2 pair, when computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<f64>,
    /// Eigenfunction normalized with ∫(−u)^{k+1} = 1, negative inside.
    #[serde(skip)]
    pub eigenfield: Option<GridField2D>,
}

impl EigenEstimate {
    /// The extrapolated value when available, otherwise `value`.
    pub fn best_value(&self) -> f64 {
        self.extrapolated.unwrap_or(self.value)
    }
}

/// ε = λ/λ_k(Ω*_{k−1}) − 1, with Ω*_0 the area ball and Ω*_1 the perimeter
/// ball. Uses the extrapolated value when the estimate carries one.
pub fn epsilon_for(body: &SupportBody2D, k: usize, estimate: &EigenEstimate) -> Result<f64> {
    if estimate.k != k {
        return Err(Error::arg(format!("estimate is for k = {}, asked for k = {k}", estimate.k)));
    }
    let r_star = comparison_radius(&quermass_2d(body), k)?;
    Ok(estimate.best_value() / lambda_ball(2, k, r_star)? - 1.0)
}
