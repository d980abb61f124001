//! Grid evaluation of volume bounds with signed dominance margins.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::comparison::PhiVariant;
use crate::error::{Error, Result};
use crate::models::{PoleModel, StructureKind};
use crate::numerics::{integrate, CumulativeSimpson};

use super::{
    growth_cache, infimum_scan, standard_grid, thm1_5_constants, thm1_6_constants,
    thm1_6_gradient_limit, unit_ball_volume, unit_sphere_area, ExpBoundConstants,
};

/// Margin convention: `margin = bound - actual`; a report passes when every
/// margin is at least `-MARGIN_TOL * (1 + |bound|)`, absorbing quadrature
/// noise on either side.
pub const MARGIN_TOL: f64 = 1e-8;

/// Per-segment tolerance of the incremental grid quadrature; segments
/// accumulate, so this sits well below [`MARGIN_TOL`].
const SEG_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Thm1_1,
    Cor1_2InfR,
    Cor1_2Plain,
    Thm1_3,
    Thm1_5Weighted,
    Thm1_6Exp,
    Thm1_7Mms,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Thm1_1 => "thm1_1",
            BoundKind::Cor1_2InfR => "cor1_2_inf_r",
            BoundKind::Cor1_2Plain => "cor1_2_plain",
            BoundKind::Thm1_3 => "thm1_3",
            BoundKind::Thm1_5Weighted => "thm1_5_weighted",
            BoundKind::Thm1_6Exp => "thm1_6_exp",
            BoundKind::Thm1_7Mms => "thm1_7_mms",
        }
    }
}

/// Actual volumes against a bound over a grid of radii.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub radii: Vec<f64>,
    pub actual: Vec<f64>,
    pub bound: Vec<f64>,
    pub margin: Vec<f64>,
    pub min_margin: f64,
}

impl BoundReport {
    fn assemble(kind: BoundKind, radii: Vec<f64>, actual: Vec<f64>, bound: Vec<f64>) -> Self {
        let margin: Vec<f64> = bound.iter().zip(&actual).map(|(b, a)| b - a).collect();
        let min_margin = margin.iter().copied().fold(f64::INFINITY, f64::min);
        Self { kind, radii, actual, bound, margin, min_margin }
    }

    pub fn pass(&self, tol: f64) -> bool {
        self.margin
            .iter()
            .zip(&self.bound)
            .all(|(m, b)| *m >= -tol * (1.0 + b.abs()))
    }
}

fn check_grid(model: &PoleModel, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("empty evaluation grid".into()));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain("grid radii must increase strictly".into()));
        }
    }
    model.check_radius(grid[0])?;
    model.check_radius(*grid.last().unwrap())
}

/// Integrates `f` cumulatively from 0 through each grid radius.
fn cumulative_on_grid(f: impl Fn(f64) -> f64, grid: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &r in grid {
        acc += integrate(&f, prev, r, SEG_TOL)?;
        out.push(acc);
        prev = r;
    }
    Ok(out)
}

fn ball_volumes(model: &PoleModel, grid: &[f64]) -> Result<Vec<f64>> {
    let p = model.n() as i32 - 1;
    let omega = unit_sphere_area(model.n());
    Ok(cumulative_on_grid(|s| model.phi(s).powi(p), grid)?
        .into_iter()
        .map(|v| omega * v)
        .collect())
}

fn weighted_volumes(model: &PoleModel, grid: &[f64]) -> Result<Vec<f64>> {
    let p = model.n() as i32 - 1;
    let omega = unit_sphere_area(model.n());
    Ok(
        cumulative_on_grid(|s| (-model.potential(s)).exp() * model.phi(s).powi(p), grid)?
            .into_iter()
            .map(|v| omega * v)
            .collect(),
    )
}

fn integrated_bounds_on_grid(
    model: &PoleModel,
    cache: &CumulativeSimpson,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let f0 = model.potential(0.0);
    let p = model.n() as i32 - 1;
    let omega = unit_sphere_area(model.n());
    Ok(cumulative_on_grid(
        |t| {
            if t <= 0.0 {
                0.0
            } else {
                (f0 - cache.eval(t) / t).exp() * t.powi(p)
            }
        },
        grid,
    )?
    .into_iter()
    .map(|v| omega * v)
    .collect())
}

/// Evaluates `kind` over `grid`. The integrated kinds share one cumulative
/// cache per report, so a 256-point report costs about as much as a handful
/// of single-radius calls.
pub fn bound_report(model: &PoleModel, kind: BoundKind, grid: &[f64]) -> Result<BoundReport> {
    check_grid(model, grid)?;
    let radii = grid.to_vec();
    match kind {
        BoundKind::Thm1_1 | BoundKind::Thm1_7Mms => {
            match (kind, model.kind()) {
                (BoundKind::Thm1_1, StructureKind::Shrinker) => {}
                (BoundKind::Thm1_1, StructureKind::MetricMeasure)
                | (BoundKind::Thm1_7Mms, StructureKind::MetricMeasure) => {
                    // hypothesis gate as in the single-radius operation
                    let scan = standard_grid(model.r_max(), 256);
                    let report = crate::models::verify_hypotheses(model, &scan)?;
                    if !report.metric_measure_ok(crate::models::HYPOTHESIS_TOL) {
                        return Err(Error::HypothesesViolated(alloc::boxed::Box::new(report)));
                    }
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "{} does not apply to a {} model",
                        kind.label(),
                        model.kind().label()
                    )))
                }
            }
            let actual = ball_volumes(model, &radii)?;
            let cache = growth_cache(model, *radii.last().unwrap())?;
            let bound = integrated_bounds_on_grid(model, &cache, &radii)?;
            Ok(BoundReport::assemble(kind, radii, actual, bound))
        }
        BoundKind::Cor1_2InfR | BoundKind::Cor1_2Plain => {
            let actual = ball_volumes(model, &radii)?;
            let (with_inf, plain) = super::cor1_2_bounds(model, *radii.last().unwrap())?;
            let rn = *radii.last().unwrap();
            let scale = match kind {
                BoundKind::Cor1_2InfR => with_inf,
                _ => plain,
            } / rn.powi(model.n() as i32);
            let bound = radii.iter().map(|r| scale * r.powi(model.n() as i32)).collect();
            Ok(BoundReport::assemble(kind, radii, actual, bound))
        }
        BoundKind::Thm1_3 => thm1_3_report(model, grid, PhiVariant::Statement),
        BoundKind::Thm1_5Weighted => Ok(thm1_5_check(model, grid, super::DEFAULT_ANCHOR)?.report),
        BoundKind::Thm1_6Exp => Ok(thm1_6_check(model, grid)?.report),
    }
}

/// Grid report of the `lambda = 0` quasi-Einstein bound under either
/// exponent variant.
pub fn thm1_3_report(
    model: &PoleModel,
    grid: &[f64],
    variant: PhiVariant,
) -> Result<BoundReport> {
    check_grid(model, grid)?;
    match model.kind().quasi_einstein() {
        Some((_, 0.0, _)) => {}
        _ => {
            return Err(Error::Precondition(
                "thm1_3 requires a lambda = 0 quasi-Einstein model".into(),
            ))
        }
    }
    let radii = grid.to_vec();
    let actual = ball_volumes(model, &radii)?;
    let upper = *radii.last().unwrap();
    let steps = ((upper / 5e-4).ceil() as usize).clamp(1024, 65536);
    let cache = CumulativeSimpson::build(|s| model.potential(s), upper, steps)?;
    let f0 = model.potential(0.0);
    let pole = match variant {
        PhiVariant::Statement => f0,
        PhiVariant::Proof => -f0,
    };
    let p = model.n() as i32 - 1;
    let omega = unit_sphere_area(model.n());
    let bound: Vec<f64> = cumulative_on_grid(
        |t| {
            if t <= 0.0 {
                0.0
            } else {
                let phi_exp = model.potential(t) + pole - 2.0 * cache.eval(t) / t;
                phi_exp.exp() * t.powi(p)
            }
        },
        &radii,
    )?
    .into_iter()
    .map(|v| omega * v)
    .collect();
    Ok(BoundReport::assemble(BoundKind::Thm1_3, radii, actual, bound))
}

/// Weighted exponential bound check: anchored constants, dominance of
/// `b e^{c r}` over the weighted volume on `[r0, r_max]`, and monotonicity of
/// the weighted-density log-derivative across the whole grid.
#[derive(Clone, Debug)]
pub struct Thm15Check {
    pub constants: ExpBoundConstants,
    pub report: BoundReport,
    pub log_density_monotone: bool,
    /// Largest increase between consecutive log-derivative samples
    /// (nonpositive when the density is log-concave).
    pub worst_monotone_step: f64,
}

/// Tolerance for the nonincreasing-log-derivative check.
pub const MONOTONE_TOL: f64 = 1e-7;

pub fn thm1_5_check(model: &PoleModel, grid: &[f64], r0: f64) -> Result<Thm15Check> {
    check_grid(model, grid)?;
    let constants = thm1_5_constants(model, r0)?;
    let mut worst = f64::NEG_INFINITY;
    let mut prev: Option<f64> = None;
    for &r in grid {
        let d = super::weighted_density_log_deriv(model, r);
        if let Some(p) = prev {
            worst = worst.max(d - p);
        }
        prev = Some(d);
    }
    let volumes = weighted_volumes(model, grid)?;
    let mut radii = Vec::new();
    let mut actual = Vec::new();
    let mut bound = Vec::new();
    for (i, &r) in grid.iter().enumerate() {
        if r >= r0 - 1e-12 {
            radii.push(r);
            actual.push(volumes[i]);
            bound.push(constants.prefactor * (constants.rate * r).exp());
        }
    }
    if radii.is_empty() {
        return Err(Error::Precondition(format!(
            "no grid radii at or beyond the anchor r0 = {r0:e}"
        )));
    }
    Ok(Thm15Check {
        constants,
        report: BoundReport::assemble(BoundKind::Thm1_5Weighted, radii, actual, bound),
        log_density_monotone: worst <= MONOTONE_TOL,
        worst_monotone_step: worst,
    })
}

/// Exponential bound check for `lambda < 0`, `mu <= 0` models: anchored
/// constants, dominance of `a e^{b r}` over the ball volume on
/// `[1, r_max]`, and the pointwise gradient cap across the whole grid.
#[derive(Clone, Debug)]
pub struct Thm16Check {
    pub constants: ExpBoundConstants,
    pub report: BoundReport,
    pub gradient_bound_ok: bool,
    pub max_grad_sq: f64,
    pub grad_sq_limit: f64,
}

pub fn thm1_6_check(model: &PoleModel, grid: &[f64]) -> Result<Thm16Check> {
    check_grid(model, grid)?;
    let constants = thm1_6_constants(model)?;
    let (m, lambda, _) = model.kind().quasi_einstein().expect("checked by constants");
    let limit = thm1_6_gradient_limit(m, lambda);
    let mut max_grad_sq: f64 = 0.0;
    for &r in grid {
        let g = model.potential_d1(r);
        max_grad_sq = max_grad_sq.max(g * g);
    }
    let volumes = ball_volumes(model, grid)?;
    let mut radii = Vec::new();
    let mut actual = Vec::new();
    let mut bound = Vec::new();
    for (i, &r) in grid.iter().enumerate() {
        if r >= constants.anchor_r0 - 1e-12 {
            radii.push(r);
            actual.push(volumes[i]);
            bound.push(constants.prefactor * (constants.rate * r).exp());
        }
    }
    if radii.is_empty() {
        return Err(Error::Precondition("no grid radii at or beyond r = 1".into()));
    }
    Ok(Thm16Check {
        constants,
        report: BoundReport::assemble(BoundKind::Thm1_6Exp, radii, actual, bound),
        gradient_bound_ok: max_grad_sq <= limit * (1.0 + MARGIN_TOL) + MARGIN_TOL,
        max_grad_sq,
        grad_sq_limit: limit,
    })
}

/// Infimum of the metric-measure slack `f - |grad f|^2` over a scan grid;
/// exposed for the coarse/fine ordering diagnostics.
pub fn slack_infimum(model: &PoleModel, radii: &[f64]) -> f64 {
    infimum_scan(
        |s| {
            let f1 = model.potential_d1(s);
            model.potential(s) - f1 * f1
        },
        radii,
    )
}

/// Convenience: the Euclidean volume `omega_n r^n` used by the sharpness
/// assertions.
pub fn euclidean_volume(n: u32, r: f64) -> f64 {
    unit_ball_volume(n) * r.powi(n as i32)
}
