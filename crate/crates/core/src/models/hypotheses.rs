//! Pointwise hypothesis checks for pole models.

use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::curvature::curvature_at;
use crate::error::Result;

use super::{PoleModel, StructureKind};

/// Margin below which an inequality counts as violated.
pub const HYPOTHESIS_TOL: f64 = 1e-8;

/// Per-radius hypothesis data. `gap_*` fields are signed margins
/// (`value - 1/2`), nonnegative when the weighted-curvature bound holds.
#[derive(Clone, Copy, Debug)]
pub struct HypothesisRow {
    pub r: f64,
    pub bakry_emery_rad: f64,
    pub bakry_emery_tan: f64,
    pub gap_rad: f64,
    pub gap_tan: f64,
    pub potential_minus_grad_sq: f64,
    pub scalar_curvature: f64,
    /// Residual of the radial structure equality (shrinker kinds only).
    pub soliton_rad_residual: Option<f64>,
    /// Residual of the tangential structure equality (shrinker kinds only).
    pub soliton_tan_residual: Option<f64>,
}

/// Smallest constant for which the quadratic growth envelope
/// `(r - c)^2/4 <= f <= (r + c)^2/4` holds on the grid, together with the
/// residual violations at that constant. The sharp quadratic potential
/// `r^2/4` fits with `c = 0`.
#[derive(Clone, Copy, Debug)]
pub struct EnvelopeFit {
    pub c: f64,
    pub max_lower_violation: f64,
    pub max_upper_violation: f64,
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub rows: Vec<HypothesisRow>,
    pub min_gap_rad: f64,
    pub min_gap_tan: f64,
    pub min_potential_minus_grad_sq: f64,
    pub min_scalar_curvature: f64,
    pub worst_soliton_residual: Option<f64>,
    pub envelope: Option<EnvelopeFit>,
}

impl HypothesisReport {
    /// Do `Ric_f >= g/2` (both directions) and `|grad f|^2 <= f` hold on the
    /// grid within `tol`?
    pub fn metric_measure_ok(&self, tol: f64) -> bool {
        self.min_gap_rad >= -tol
            && self.min_gap_tan >= -tol
            && self.min_potential_minus_grad_sq >= -tol
    }

    /// Do both components of the structure equality hold within `tol`?
    pub fn shrinker_ok(&self, tol: f64) -> bool {
        self.worst_soliton_residual.map(|w| w <= tol).unwrap_or(false)
    }
}

fn envelope_fit(rows: &[(f64, f64)]) -> EnvelopeFit {
    // lower: (r - c)^2/4 <= f  <=>  |r - 2 sqrt(f)| <= c (needs f >= 0)
    // upper: f <= (r + c)^2/4  <=>  2 sqrt(f) - r <= c
    let mut c: f64 = 0.0;
    for &(r, f) in rows {
        let s = 2.0 * f.max(0.0).sqrt();
        c = c.max((r - s).abs());
    }
    let mut lower: f64 = 0.0;
    let mut upper: f64 = 0.0;
    for &(r, f) in rows {
        lower = lower.max(0.25 * (r - c) * (r - c) - f);
        upper = upper.max(f - 0.25 * (r + c) * (r + c));
    }
    EnvelopeFit { c, max_lower_violation: lower, max_upper_violation: upper }
}

/// Evaluates, per grid radius, the radial and tangential components of the
/// weighted curvature `Ric_f`, their margins against 1/2, the slack
/// `f - |grad f|^2`, the scalar curvature, and (for shrinker kinds) the
/// residuals of both structure-equality components plus the quadratic
/// envelope of the potential. The report is always produced; callers decide
/// which checks gate which operations.
pub fn verify_hypotheses(model: &PoleModel, grid: &[f64]) -> Result<HypothesisReport> {
    let is_shrinker = matches!(model.kind(), StructureKind::Shrinker);
    let mut rows = Vec::with_capacity(grid.len());
    let mut min_gap_rad = f64::INFINITY;
    let mut min_gap_tan = f64::INFINITY;
    let mut min_fg = f64::INFINITY;
    let mut min_scalar = f64::INFINITY;
    let mut worst_res: f64 = 0.0;
    let mut potential_samples = Vec::new();

    for &r in grid {
        model.check_radius(r)?;
        let curv = curvature_at(model, r)?;
        let f = model.potential(r);
        let f1 = model.potential_d1(r);
        let f2 = model.potential_d2(r);
        let ric_f_rad = curv.ric_rad + f2;
        let ric_f_tan = curv.ric_tan + curv.log_deriv * f1;
        let row = HypothesisRow {
            r,
            bakry_emery_rad: ric_f_rad,
            bakry_emery_tan: ric_f_tan,
            gap_rad: ric_f_rad - 0.5,
            gap_tan: ric_f_tan - 0.5,
            potential_minus_grad_sq: f - f1 * f1,
            scalar_curvature: curv.scalar,
            soliton_rad_residual: is_shrinker.then_some(ric_f_rad - 0.5),
            soliton_tan_residual: is_shrinker.then_some(ric_f_tan - 0.5),
        };
        min_gap_rad = min_gap_rad.min(row.gap_rad);
        min_gap_tan = min_gap_tan.min(row.gap_tan);
        min_fg = min_fg.min(row.potential_minus_grad_sq);
        min_scalar = min_scalar.min(row.scalar_curvature);
        if is_shrinker {
            worst_res = worst_res.max(row.gap_rad.abs()).max(row.gap_tan.abs());
            potential_samples.push((r, f));
        }
        rows.push(row);
    }

    Ok(HypothesisReport {
        rows,
        min_gap_rad,
        min_gap_tan,
        min_potential_minus_grad_sq: min_fg,
        min_scalar_curvature: min_scalar,
        worst_soliton_residual: is_shrinker.then_some(worst_res),
        envelope: is_shrinker.then(|| envelope_fit(&potential_samples)),
    })
}
