//! Closed-form model catalog.

use alloc::format;
use alloc::vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::RadialProfile;

use super::{PoleModel, ProductModel, StructureKind};

/// Default truncation radius for catalog models.
pub const DEFAULT_R_MAX: f64 = 20.0;

/// Validity cap for profiles built from hyperbolic functions (cosh overflows
/// shortly after 710).
const HYPERBOLIC_PROFILE_CAP: f64 = 700.0;

const UNBOUNDED_PROFILE_CAP: f64 = 1e12;

/// Flat space with the quadratic potential `r^2/4`: the sharp shrinking
/// model. The pole value of the potential is 0.
pub fn gaussian_soliton(n: u32) -> Result<PoleModel> {
    let phi = RadialProfile::from_fns(|r| r, |_| 1.0, |_| 0.0, UNBOUNDED_PROFILE_CAP);
    let f = RadialProfile::polynomial(vec![0.0, 0.0, 0.25], UNBOUNDED_PROFILE_CAP);
    PoleModel::new(n, phi, f, StructureKind::Shrinker, DEFAULT_R_MAX)
}

/// Hyperbolic space of curvature -1 with potential `-m log(cosh r)`, a
/// quasi-Einstein structure with `lambda = -(n - 1 + m)` and `mu = 1 - m`.
///
/// The potential's constant multiple is fixed to `-m`: that is the unique
/// choice for which both components of the structure equation hold with a
/// single constant `lambda` (see the residual tests).
pub fn hyperbolic_qe(n: u32, m: f64) -> Result<PoleModel> {
    if !(m > 1.0) {
        return Err(Error::Precondition(format!("hyperbolic model requires m > 1, got {m}")));
    }
    let phi = RadialProfile::from_fns(
        |r| r.sinh(),
        |r| r.cosh(),
        |r| r.sinh(),
        HYPERBOLIC_PROFILE_CAP,
    );
    let f = RadialProfile::from_fns(
        move |r| -m * r.cosh().ln(),
        move |r| -m * r.tanh(),
        move |r| {
            let t = r.tanh();
            -m * (1.0 - t * t)
        },
        HYPERBOLIC_PROFILE_CAP,
    );
    let kind = StructureKind::QuasiEinstein {
        m,
        lambda: -((n - 1) as f64 + m),
        mu: 1.0 - m,
    };
    PoleModel::new(n, phi, f, kind, DEFAULT_R_MAX)
}

/// Line times a Ricci-flat fiber with potential `-m log(c t)`, a
/// quasi-Einstein structure with `lambda = 0` and `mu = (m - 1) c^2`.
pub fn ricci_flat_product_qe(m: f64, c: f64, fiber_dim: u32) -> Result<ProductModel> {
    if !(m > 1.0) || !(c > 0.0) {
        return Err(Error::Precondition(format!(
            "product model requires m > 1 and c > 0, got m = {m}, c = {c}"
        )));
    }
    let f = RadialProfile::from_fns(
        move |t| -m * (c * t).ln(),
        move |t| -m / t,
        move |t| m / (t * t),
        UNBOUNDED_PROFILE_CAP,
    );
    let kind = StructureKind::QuasiEinstein { m, lambda: 0.0, mu: (m - 1.0) * c * c };
    ProductModel::new(fiber_dim, 0.0, f, kind)
}

/// Flat space with a constant potential, the trivial `lambda = 0`
/// quasi-Einstein model (`mu` is 0 for any `m`).
pub fn flat_trivial_qe(n: u32, m: f64, r_max: f64) -> Result<PoleModel> {
    let phi = RadialProfile::from_fns(|r| r, |_| 1.0, |_| 0.0, UNBOUNDED_PROFILE_CAP);
    let f = RadialProfile::constant(0.0, UNBOUNDED_PROFILE_CAP);
    PoleModel::new(n, phi, f, StructureKind::QuasiEinstein { m, lambda: 0.0, mu: 0.0 }, r_max)
}

/// Potential `shift + r^2/4 + 6(n-1)[sqrt(delta) r arctan(sqrt(delta) r)
/// - ln(1 + delta r^2)/2]`.
///
/// Feeding it to the structure-equation generator produces the warping
/// `r + delta r^3` exactly, so for small `delta` the result is a genuinely
/// perturbed flat model whose weighted-curvature lower bound still holds in
/// every direction; `shift` provides the slack for `|grad f|^2 <= f`.
pub fn perturbed_gaussian_potential(n: u32, shift: f64, delta: f64) -> RadialProfile {
    let amp = 6.0 * (n.max(2) - 1) as f64;
    let sd = delta.sqrt();
    RadialProfile::from_fns(
        move |r| {
            shift + 0.25 * r * r
                + amp * (sd * r * (sd * r).atan() - 0.5 * (delta * r * r).ln_1p())
        },
        move |r| 0.5 * r + amp * sd * (sd * r).atan(),
        move |r| 0.5 + amp * delta / (1.0 + delta * r * r),
        UNBOUNDED_PROFILE_CAP,
    )
}
