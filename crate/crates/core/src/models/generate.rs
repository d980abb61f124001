//! Pole-model synthesis from a prescribed potential.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{solve_ivp, HermiteSeries, RadialProfile};

use super::{PoleModel, StructureKind};

/// Start of the integration; the Taylor seed `phi = r`, `phi' = 1` at a
/// smooth pole avoids the 0/0 in `phi''/phi`.
pub const POLE_SEED_EPS: f64 = 1e-6;

/// Fixed integration step for the structure equation.
pub const GENERATION_STEP: f64 = 1e-3;

/// Result of [`generate_from_potential`]; `truncated` is set when the warping
/// reached zero before the requested radius and the model domain was cut back.
pub struct GenerateOutcome {
    pub model: PoleModel,
    pub requested_r_max: f64,
    pub truncated: bool,
}

impl GenerateOutcome {
    pub fn achieved_r_max(&self) -> f64 {
        self.model.r_max()
    }
}

/// Coefficient `k(r)` of the radial structure equation `phi'' = k(r) phi`.
fn structure_coefficient(n: u32, f: &RadialProfile, kind: StructureKind, r: f64) -> f64 {
    let denom = (n - 1) as f64;
    match kind {
        StructureKind::Shrinker | StructureKind::MetricMeasure => (f.deriv2(r) - 0.5) / denom,
        StructureKind::QuasiEinstein { m, .. } => {
            let d1 = f.deriv1(r);
            (f.deriv2(r) - d1 * d1 / m) / denom
        }
    }
}

/// Builds the pole model whose warping satisfies the radial structure
/// equality for the given potential: `phi'' = phi (f'' - 1/2)/(n-1)` for
/// shrinker/metric-measure kinds and `phi'' = phi (f'' - f'^2/m)/(n-1)` for
/// quasi-Einstein kinds with `lambda = 0`.
///
/// If the warping hits zero before `r_max` the model is truncated at the last
/// positive sample and the outcome is flagged.
pub fn generate_from_potential(
    n: u32,
    f: RadialProfile,
    kind: StructureKind,
    r_max: f64,
) -> Result<GenerateOutcome> {
    if n < 2 {
        return Err(Error::Precondition(format!("dimension must be >= 2, got {n}")));
    }
    if !(r_max > POLE_SEED_EPS * 8.0) || r_max > f.r_max() {
        return Err(Error::Precondition(format!(
            "requested r_max = {r_max:e} outside the potential validity (0, {:e}]",
            f.r_max()
        )));
    }
    if f.deriv1(0.0).abs() > 1e-8 {
        return Err(Error::Precondition(format!(
            "rotationally symmetric potentials must have f'(0) = 0, got {:e}",
            f.deriv1(0.0)
        )));
    }
    if let Some((_, lambda, _)) = kind.quasi_einstein() {
        if lambda != 0.0 {
            return Err(Error::Precondition(format!(
                "generation solves the lambda = 0 radial equation; got lambda = {lambda}"
            )));
        }
    }

    let coef_f = f.clone();
    let trajectory = solve_ivp(
        |r, y, dy| {
            dy[0] = y[1];
            dy[1] = y[0] * structure_coefficient(n, &coef_f, kind, r);
        },
        &[POLE_SEED_EPS, 1.0],
        (POLE_SEED_EPS, r_max),
        GENERATION_STEP,
    )?;

    // keep samples while the warping stays positive
    let mut keep = trajectory.len();
    for i in 0..trajectory.len() {
        if trajectory.state(i)[0] <= 0.0 {
            keep = i;
            break;
        }
    }
    let truncated = keep < trajectory.len();
    if keep < 8 {
        return Err(Error::Domain(
            "warping collapses immediately; potential is incompatible with a pole model".into(),
        ));
    }
    // the accumulated sample radii can land one ulp short of the requested
    // endpoint; an untruncated run covers the full span
    let end = if truncated { trajectory.radius(keep - 1) } else { r_max };
    let mut values = Vec::with_capacity(keep);
    let mut derivs = Vec::with_capacity(keep);
    for i in 0..keep {
        values.push(trajectory.state(i)[0]);
        derivs.push(trajectory.state(i)[1]);
    }
    let series = Arc::new(HermiteSeries::new(POLE_SEED_EPS, trajectory.step(), values, derivs)?);

    let value_series = series.clone();
    let value = move |r: f64| {
        if r < POLE_SEED_EPS {
            r
        } else {
            value_series.eval(r)
        }
    };
    let deriv_series = series.clone();
    let deriv1 = move |r: f64| {
        if r < POLE_SEED_EPS {
            1.0
        } else {
            deriv_series.eval_deriv(r)
        }
    };
    // the second derivative comes from the structure equation itself, so the
    // radial equality holds exactly for the interpolated warping
    let d2_series = series;
    let d2_f = f.clone();
    let deriv2 = move |r: f64| {
        let phi = if r < POLE_SEED_EPS { r } else { d2_series.eval(r) };
        phi * structure_coefficient(n, &d2_f, kind, r)
    };

    let phi = RadialProfile::from_fns(value, deriv1, deriv2, end);
    let model = PoleModel::new(n, phi, f, kind, end.min(r_max))?;
    Ok(GenerateOutcome { model, requested_r_max: r_max, truncated })
}
