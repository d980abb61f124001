//! Numerical toolkit for rotationally symmetric model geometries.
//!
//! The crate builds pole models (metrics of the form `dr^2 + phi(r)^2 g_{S^{n-1}}`)
//! carrying a radial potential, either from a closed-form catalog or by
//! integrating the radial structure equation for a prescribed potential. On top
//! of those models it provides:
//!
//! * pointwise curvature, weighted-curvature, and structure-identity residuals
//!   ([`curvature`], [`models::verify_hypotheses`]),
//! * Riccati/Jacobian comparison quantities and the log-Jacobian upper bounds
//!   they integrate to ([`comparison`]),
//! * geodesic-ball volume and weighted-volume computation together with every
//!   volume-growth upper bound the models are expected to satisfy, reported as
//!   signed dominance margins ([`bounds`]),
//! * first-eigenvalue estimates for the weighted radial Laplacian via a
//!   Sturm-Liouville discretization and Rayleigh-quotient test functions
//!   ([`spectral`]).
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes through
//! `num-traits`/`libm`, so results are bit-reproducible across runs.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod comparison;
pub mod curvature;
pub mod error;
pub mod models;
pub mod numerics;
pub mod spectral;

pub use error::{Error, Result};
