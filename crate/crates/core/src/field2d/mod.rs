//! Grid fields on planar convex bodies: level sets, rearrangement, Hessian
//! integrals and the level-set lemmas.

mod grid;
mod hessian;
mod lemmas;
mod levels;
mod rearrange;

pub use grid::{FieldJson, GridField2D, GridMesh, NodeKind, DIRS, THETA_MIN};
pub use hessian::{
    derivatives, gradient_energy, hessian_integral_2d, is_k_admissible, is_k_admissible_tol, sk_at,
    AdmissibilityReport, ADMISSIBILITY_TOL,
};
pub use lemmas::{eq3_integral, integral_lemma_check, integral_lemma_check_with, levelset_lemma_check, MIN_LEVEL_NODES};
pub use levels::{superlevel_metrics, LevelSetMetrics};
pub use rearrange::{
    level_radius, level_sweep, levels, lp_norm, norm_comparison, polya_szego_gap, rearrange, rearrange_with,
    RearrangedProfile, DEFAULT_LEVELS, MONOTONE_TOL,
};
