//! Deterministic quadrature, fixed-step ODE integration, and radial profiles.

mod interp;
mod ode;
mod profile;
mod quad;

pub use interp::HermiteSeries;
pub use ode::{solve_ivp, Trajectory, OVERFLOW_GUARD};
pub use profile::RadialProfile;
pub use quad::{
    average_integral, composite_simpson, integrate, CumulativeSimpson, DEFAULT_TOL, MAX_PANELS,
};
