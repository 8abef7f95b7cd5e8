//! Numerical toolkit for k-Hessian eigenvalue problems on convex domains.
//!
//! - [`geometry`]: planar convex bodies as sampled support functions,
//!   quermassintegrals, inradius/circumradius, asymmetry measures.
//! - [`radial_spectra`]: λ_k of balls by radial shooting.
//! - [`field2d`]: grid fields, level sets, quermassintegral rearrangement.
//! - [`eigensolver2d`]: Laplace and Monge–Ampère eigenvalue estimates.
//! - [`stability_lab`]: family sweeps and exponent checks.

pub mod eigensolver2d;
pub mod error;
pub mod field2d;
pub mod geometry;
pub mod lp;
pub mod ode;
pub mod optim;
pub mod par;
pub mod radial_spectra;
pub mod special;
pub mod stability_lab;

pub use error::{Error, Result};
pub use par::Execution;
