//! Eigenvalue estimates on planar convex bodies.

mod estimate;
mod fd;
mod ma;

pub use estimate::{epsilon_for, EigenEstimate, EstimateKind};
pub use fd::{laplace_eigen, laplace_eigen_on_mesh, laplace_eigen_with, DirichletLaplacian, LaplaceOptions, MIN_UNKNOWNS};
pub use ma::{
    blended_profile, ma_eigen_ellipse, ma_ellipse_eigenfield, ma_rayleigh_trial, ma_rayleigh_upper, ma_residual,
    ma_trial_field, MaTrial, QUADRATURE_MARGIN,
};
