//! Geodesic-ball volumes and volume-growth bounds.

mod report;

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::comparison::{qe_log_jacobian_exponent, PhiVariant};
use crate::error::{Error, Result};
use crate::models::{verify_hypotheses, PoleModel, StructureKind, HYPOTHESIS_TOL};
use crate::numerics::{integrate, CumulativeSimpson, DEFAULT_TOL};

pub use report::{
    bound_report, euclidean_volume, slack_infimum, thm1_3_report, thm1_5_check, thm1_6_check,
    BoundKind, BoundReport, Thm15Check, Thm16Check, MARGIN_TOL, MONOTONE_TOL,
};

/// Anchor radius used by the exponential-bound constructions by default.
pub const DEFAULT_ANCHOR: f64 = 1.0;

/// Gamma(k/2) for integer k >= 1, by the half-integer recurrence.
fn gamma_half(k: u32) -> f64 {
    let mut value = if k % 2 == 0 { 1.0 } else { core::f64::consts::PI.sqrt() };
    let mut j = if k % 2 == 0 { 2 } else { 1 };
    while j + 2 <= k {
        value *= j as f64 / 2.0;
        j += 2;
    }
    value
}

/// Area of the unit sphere `S^{n-1}`, `2 pi^{n/2} / Gamma(n/2)`.
pub fn unit_sphere_area(n: u32) -> f64 {
    2.0 * core::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Volume of the unit ball in `R^n`, `pi^{n/2} / Gamma(n/2 + 1)`.
pub fn unit_ball_volume(n: u32) -> f64 {
    unit_sphere_area(n) / n as f64
}

/// `Vol(B(r)) = omega_{n-1} int_0^r phi^{n-1}`.
pub fn ball_volume(model: &PoleModel, r: f64) -> Result<f64> {
    model.check_radius(r)?;
    let p = model.n() as i32 - 1;
    let v = integrate(|s| model.phi(s).powi(p), 0.0, r, DEFAULT_TOL)?;
    Ok(unit_sphere_area(model.n()) * v)
}

/// Weighted volume `omega_{n-1} int_0^r e^{-f} phi^{n-1}`.
pub fn weighted_ball_volume(model: &PoleModel, r: f64) -> Result<f64> {
    model.check_radius(r)?;
    let p = model.n() as i32 - 1;
    let v = integrate(
        |s| (-model.potential(s)).exp() * model.phi(s).powi(p),
        0.0,
        r,
        DEFAULT_TOL,
    )?;
    Ok(unit_sphere_area(model.n()) * v)
}

/// Weighted volume density `m_f(r) = e^{-f(r)} phi(r)^{n-1}` (per unit sphere
/// area) and its logarithmic derivative.
pub fn weighted_density(model: &PoleModel, r: f64) -> f64 {
    (-model.potential(r)).exp() * model.phi(r).powi(model.n() as i32 - 1)
}

pub fn weighted_density_log_deriv(model: &PoleModel, r: f64) -> f64 {
    -model.potential_d1(r) + (model.n() as f64 - 1.0) * model.phi_d1(r) / model.phi(r)
}

pub(crate) fn growth_cache(model: &PoleModel, upper: f64) -> Result<CumulativeSimpson> {
    let steps = ((upper / 5e-4).ceil() as usize).clamp(1024, 65536);
    CumulativeSimpson::build(|s| crate::comparison::growth_integrand(model, s), upper, steps)
}

/// Infimum of `g` over the scan radii, with one 10x local refinement pass
/// around the detected minimum.
pub fn infimum_scan(g: impl Fn(f64) -> f64, radii: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    let mut at = 0usize;
    for (i, &r) in radii.iter().enumerate() {
        let v = g(r);
        if v < best {
            best = v;
            at = i;
        }
    }
    if radii.is_empty() {
        return best;
    }
    let lo = if at == 0 { radii[0] * 0.5 } else { radii[at - 1] };
    let hi = if at + 1 < radii.len() { radii[at + 1] } else { radii[at] };
    for k in 0..=20 {
        let r = lo + (hi - lo) * k as f64 / 20.0;
        if r > 0.0 {
            best = best.min(g(r));
        }
    }
    best
}

/// Standard evaluation grid: geometric radii `r_max 2^{-k}` resolving the
/// pole merged with a uniform partition, padded by gap bisection to exactly
/// `points` entries.
pub fn standard_grid(r_max: f64, points: usize) -> Vec<f64> {
    let points = points.max(4);
    let geo = 20usize.min(points / 2);
    let linear = points - geo;
    let mut radii: Vec<f64> = (1..=geo).map(|k| r_max / (1u64 << k) as f64).collect();
    radii.extend((1..=linear).map(|j| r_max * j as f64 / linear as f64));
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    radii.dedup();
    while radii.len() < points {
        let mut widest = 0usize;
        let mut gap = 0.0;
        for i in 0..radii.len() - 1 {
            let g = radii[i + 1] - radii[i];
            if g > gap {
                gap = g;
                widest = i;
            }
        }
        radii.insert(widest + 1, 0.5 * (radii[widest] + radii[widest + 1]));
    }
    radii
}

/// Uniform grid on `(0, r_max]`.
pub fn linear_grid(r_max: f64, points: usize) -> Vec<f64> {
    (1..=points.max(1)).map(|k| r_max * k as f64 / points.max(1) as f64).collect()
}

/// Sharp volume bound for shrinker models:
/// `omega_{n-1} int_0^r exp(f(0) - (1/t) int_0^t R) t^{n-1} dt`.
///
/// Metric-measure models dispatch to the fine bound of [`thm1_7_bound`],
/// which replaces the scalar curvature by `f - |grad f|^2`.
pub fn thm1_1_bound(model: &PoleModel, r: f64) -> Result<f64> {
    match model.kind() {
        StructureKind::Shrinker => {
            model.check_radius(r)?;
            let cache = growth_cache(model, r)?;
            Ok(unit_sphere_area(model.n()) * integrated_bound(model, &cache, 0.0, r)?)
        }
        StructureKind::MetricMeasure => Ok(thm1_7_bound(model, r)?.fine),
        StructureKind::QuasiEinstein { .. } => Err(Error::Precondition(
            "sharp shrinking bound applies to shrinker or metric-measure models".into(),
        )),
    }
}

/// Integral of `exp(f(0) - H(t)/t) t^{n-1}` over `[lo, hi]` given the
/// cumulative cache `H` of the growth integrand.
pub(crate) fn integrated_bound(
    model: &PoleModel,
    cache: &CumulativeSimpson,
    lo: f64,
    hi: f64,
) -> Result<f64> {
    let f0 = model.potential(0.0);
    let p = model.n() as i32 - 1;
    integrate(
        |t| {
            if t <= 0.0 {
                0.0
            } else {
                (f0 - cache.eval(t) / t).exp() * t.powi(p)
            }
        },
        lo,
        hi,
        DEFAULT_TOL,
    )
}

/// Coarse Euclidean-growth bounds
/// `(exp(f(0) - inf R) omega_n r^n, exp(f(0)) omega_n r^n)`; the infimum of
/// the scalar curvature is taken over the standard scan grid on the model
/// domain.
pub fn cor1_2_bounds(model: &PoleModel, r: f64) -> Result<(f64, f64)> {
    if !matches!(model.kind(), StructureKind::Shrinker | StructureKind::MetricMeasure) {
        return Err(Error::Precondition(
            "Euclidean-growth bounds apply to shrinker or metric-measure models".into(),
        ));
    }
    model.check_radius(r)?;
    let scan = standard_grid(model.r_max(), 256);
    let inf_r = infimum_scan(
        |s| crate::curvature::curvature_at(model, s).map(|c| c.scalar).unwrap_or(f64::NAN),
        &scan,
    );
    let f0 = model.potential(0.0);
    let euclid = unit_ball_volume(model.n()) * r.powi(model.n() as i32);
    Ok(((f0 - inf_r).exp() * euclid, f0.exp() * euclid))
}

/// Fine and coarse volume bounds for metric-measure models.
#[derive(Clone, Copy, Debug)]
pub struct Thm17Bound {
    /// `omega_{n-1} int_0^r exp(f(0) - avg(f - |grad f|^2)) t^{n-1} dt`.
    pub fine: f64,
    /// `exp(f(0) - inf(f - |grad f|^2)) omega_n r^n`.
    pub coarse: f64,
}

/// Volume bound under the weighted-curvature hypotheses; refuses (attaching
/// the report) when the hypotheses fail on the standard scan grid.
pub fn thm1_7_bound(model: &PoleModel, r: f64) -> Result<Thm17Bound> {
    if !matches!(model.kind(), StructureKind::MetricMeasure) {
        return Err(Error::Precondition(
            "weighted-curvature bound needs a metric-measure model".into(),
        ));
    }
    model.check_radius(r)?;
    let scan = standard_grid(model.r_max(), 256);
    let report = verify_hypotheses(model, &scan)?;
    if !report.metric_measure_ok(HYPOTHESIS_TOL) {
        return Err(Error::HypothesesViolated(alloc::boxed::Box::new(report)));
    }
    let cache = growth_cache(model, r)?;
    let fine = unit_sphere_area(model.n()) * integrated_bound(model, &cache, 0.0, r)?;
    let slack = |s: f64| {
        let f1 = model.potential_d1(s);
        model.potential(s) - f1 * f1
    };
    let inf_slack = infimum_scan(slack, &scan);
    let coarse = (model.potential(0.0) - inf_slack).exp()
        * unit_ball_volume(model.n())
        * r.powi(model.n() as i32);
    Ok(Thm17Bound { fine, coarse })
}

/// Volume bound for `lambda = 0` quasi-Einstein models:
/// `omega_{n-1} int_0^r exp(Phi(t)) t^{n-1} dt`.
pub fn thm1_3_bound(model: &PoleModel, r: f64, variant: PhiVariant) -> Result<f64> {
    match model.kind().quasi_einstein() {
        Some((_, 0.0, _)) => {}
        _ => {
            return Err(Error::Precondition(
                "quasi-Einstein volume bound requires lambda = 0".into(),
            ))
        }
    }
    model.check_radius(r)?;
    let p = model.n() as i32 - 1;
    let v = integrate(
        |t| {
            if t <= 0.0 {
                0.0
            } else {
                qe_log_jacobian_exponent(model, t, variant).unwrap_or(f64::NAN).exp() * t.powi(p)
            }
        },
        0.0,
        r,
        DEFAULT_TOL,
    )?;
    Ok(unit_sphere_area(model.n()) * v)
}

/// Constants of an exponential volume bound `prefactor * e^{rate r}`,
/// anchored at `anchor_r0`.
#[derive(Clone, Copy, Debug)]
pub struct ExpBoundConstants {
    pub anchor_r0: f64,
    /// The anchored integration constant of the underlying proof chain.
    pub proof_constant: f64,
    pub rate: f64,
    pub prefactor: f64,
    /// Set when the anchored rate was nonpositive and the monotone-density
    /// fallback (total volume through `r_max`, rate `1e-6`) was used.
    pub degenerate_rate: bool,
}

/// Exponential weighted-volume bound constants for `lambda = 0`
/// quasi-Einstein models.
///
/// `c` is the weighted-density log-derivative at the anchor; since that
/// derivative is nonincreasing, integrating the density bound gives
/// `Vol_f(B(r)) <= b e^{c r}` for `r >= r0` with
/// `b = Vol_f(B(r0)) + omega_{n-1} m_f(r0) e^{-c r0} / c`.
pub fn thm1_5_constants(model: &PoleModel, r0: f64) -> Result<ExpBoundConstants> {
    match model.kind().quasi_einstein() {
        Some((_, 0.0, _)) => {}
        _ => {
            return Err(Error::Precondition(
                "weighted exponential bound requires a lambda = 0 quasi-Einstein model".into(),
            ))
        }
    }
    model.check_radius(r0)?;
    let c = weighted_density_log_deriv(model, r0);
    if c > 0.0 {
        let b = weighted_ball_volume(model, r0)?
            + unit_sphere_area(model.n()) * weighted_density(model, r0) * (-c * r0).exp() / c;
        Ok(ExpBoundConstants {
            anchor_r0: r0,
            proof_constant: c,
            rate: c,
            prefactor: b,
            degenerate_rate: false,
        })
    } else {
        Ok(ExpBoundConstants {
            anchor_r0: r0,
            proof_constant: c,
            rate: 1e-6,
            prefactor: weighted_ball_volume(model, model.r_max())?,
            degenerate_rate: true,
        })
    }
}

/// Exponential volume bound constants for quasi-Einstein models with
/// `lambda < 0`, `mu <= 0`, `m` in `(1, infinity)`.
///
/// The proof constant is `C = w(1) + (m/(n-1)) (u'/u)(1) + lambda` with
/// `u = e^{-f/m}`; the rate is
/// `b = sqrt(C + sqrt(-m^2 lambda/(m-1))/(n-1) - lambda)` and the prefactor
/// mirrors the anchored-density construction of the weighted bound.
pub fn thm1_6_constants(model: &PoleModel) -> Result<ExpBoundConstants> {
    let (m, lambda, mu) = model.kind().quasi_einstein().ok_or_else(|| {
        Error::Precondition("exponential bound needs a quasi-Einstein model".into())
    })?;
    if !(lambda < 0.0) || !(mu <= 0.0) || !(m > 1.0) || !m.is_finite() {
        return Err(Error::Precondition(format!(
            "exponential bound requires lambda < 0, mu <= 0, m in (1, inf); got \
             lambda = {lambda}, mu = {mu}, m = {m}"
        )));
    }
    if model.r_max() < DEFAULT_ANCHOR {
        return Err(Error::Precondition(format!(
            "exponential bound anchors at r = 1 but r_max = {:e}",
            model.r_max()
        )));
    }
    let n1 = model.n() as f64 - 1.0;
    let w1 = model.phi_d1(1.0) / model.phi(1.0);
    let u_log_deriv = -model.potential_d1(1.0) / m;
    let c = w1 + m / n1 * u_log_deriv + lambda;
    let grad_limit = -m * m * lambda / (m - 1.0);
    let radicand = c + grad_limit.sqrt() / n1 - lambda;
    if !(radicand > 0.0) {
        return Err(Error::Domain(format!(
            "nonpositive rate radicand {radicand:e}: anchored constant {c:e} is incompatible \
             with the stated hypotheses"
        )));
    }
    let b = radicand.sqrt();
    let j1 = model.phi(1.0).powi(model.n() as i32 - 1);
    let a = ball_volume(model, 1.0)? + unit_sphere_area(model.n()) * j1 * (-b).exp() / b;
    Ok(ExpBoundConstants {
        anchor_r0: DEFAULT_ANCHOR,
        proof_constant: c,
        rate: b,
        prefactor: a,
        degenerate_rate: false,
    })
}

/// Pointwise gradient cap `|f'|^2 <= -m^2 lambda/(m-1)` used alongside the
/// exponential bound.
pub fn thm1_6_gradient_limit(m: f64, lambda: f64) -> f64 {
    -m * m * lambda / (m - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{flat_trivial_qe, gaussian_soliton, hyperbolic_qe};
    use alloc::vec;

    #[test]
    fn sphere_constants() {
        assert!((unit_sphere_area(2) - 2.0 * core::f64::consts::PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * core::f64::consts::PI).abs() < 1e-13);
        let pi = core::f64::consts::PI;
        assert!((unit_sphere_area(4) - 2.0 * pi * pi).abs() < 1e-13);
        assert!((unit_ball_volume(2) - pi).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 * pi / 3.0).abs() < 1e-13);
        assert!((unit_ball_volume(4) - pi * pi / 2.0).abs() < 1e-13);
        assert!((unit_ball_volume(8) - pi.powi(4) / 24.0).abs() < 1e-12);
        for n in 2..=10 {
            assert!((unit_sphere_area(n) / n as f64 - unit_ball_volume(n)).abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_ball_volume_is_euclidean() {
        let g = gaussian_soliton(3).unwrap();
        let v = ball_volume(&g, 1.0).unwrap();
        assert!((v - 4.0 * core::f64::consts::PI / 3.0).abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_ball_volume_closed_form() {
        // omega_2 int_0^r sinh^2 = pi (sinh 2r - 2r)
        let h = hyperbolic_qe(3, 2.0).unwrap();
        let v = ball_volume(&h, 1.0).unwrap();
        let expected = 5.110_932_705_708_289;
        assert!((v - expected).abs() < 1e-9 * expected, "got {v}");
    }

    #[test]
    fn pole_asymptotics() {
        for n in [2u32, 3, 5] {
            let g = gaussian_soliton(n).unwrap();
            let r = 1e-3;
            let v = ball_volume(&g, r).unwrap();
            assert!((v / (unit_ball_volume(n) * r.powi(n as i32)) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weighted_volume_reduces_bitwise_for_zero_potential() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        for &r in &[0.3, 1.0, 7.7] {
            assert_eq!(
                weighted_ball_volume(&flat, r).unwrap(),
                ball_volume(&flat, r).unwrap()
            );
        }
    }

    #[test]
    fn gaussian_weighted_volume_saturates_in_the_plane() {
        // n = 2: omega_1 int_0^inf e^{-s^2/4} s ds = 4 pi
        let g = gaussian_soliton(2).unwrap().with_r_max(40.0).unwrap();
        let v = weighted_ball_volume(&g, 40.0).unwrap();
        assert!((v - 4.0 * core::f64::consts::PI).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn hyperbolic_weighted_volume_closed_form() {
        // m = 2: e^{-f} = cosh^2, omega_2 int_0^1 cosh^2 sinh^2 = pi(sinh(4)/8 - 1/2)
        let h = hyperbolic_qe(3, 2.0).unwrap();
        let v = weighted_ball_volume(&h, 1.0).unwrap();
        let expected = 9.145_929_096_151_392;
        assert!((v - expected).abs() < 1e-9 * expected, "got {v}");
    }

    #[test]
    fn thm1_1_gaussian_equality() {
        let g = gaussian_soliton(3).unwrap();
        let b = thm1_1_bound(&g, 2.0).unwrap();
        let expected = 32.0 * core::f64::consts::PI / 3.0;
        assert!((b - expected).abs() < 1e-8 * expected);
        let actual = ball_volume(&g, 2.0).unwrap();
        assert!((b - actual).abs() < 1e-8 * actual);
    }

    #[test]
    fn thm1_1_rejects_quasi_einstein() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        assert!(matches!(thm1_1_bound(&h, 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn cor1_2_gaussian_equality_and_ratio() {
        let g = gaussian_soliton(3).unwrap();
        let (with_inf, plain) = cor1_2_bounds(&g, 2.0).unwrap();
        let euclid = unit_ball_volume(3) * 8.0;
        assert!((with_inf - euclid).abs() < 1e-8 * euclid);
        assert!((plain - euclid).abs() < 1e-8 * euclid);
        // bound2 / bound1 = e^{inf R} (here 1), and the dimensional constant
        // e^{n/2} omega_n r^n dominates since f(0) = 0 <= n/2
        assert!((plain / with_inf - 1.0).abs() < 1e-10);
        assert!((1.5_f64).exp() * euclid >= ball_volume(&g, 2.0).unwrap());
    }

    #[test]
    fn thm1_5_flat_constants() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        let k = thm1_5_constants(&flat, 1.0).unwrap();
        assert!(!k.degenerate_rate);
        assert!((k.rate - 2.0).abs() < 1e-12);
        // b = 4 pi / 3 + 2 pi e^{-2}
        let expected = 5.039_126_867_961_664;
        assert!((k.prefactor - expected).abs() < 1e-9, "b = {}", k.prefactor);
        assert!(matches!(
            thm1_5_constants(&hyperbolic_qe(3, 2.0).unwrap(), 1.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn thm1_6_hyperbolic_constants() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        let k = thm1_6_constants(&h).unwrap();
        // C = coth(1) + tanh(1) - 4, b = sqrt(C + 2 + 4)
        assert!((k.proof_constant + 1.925_370_558_544_904).abs() < 1e-12);
        assert!((k.rate - 2.018_571_138_566_857).abs() < 1e-12);
        assert!(k.rate * k.rate - (k.proof_constant + 2.0 + 4.0) < 1e-12);
        assert!(k.prefactor > 0.0);
        assert_eq!(thm1_6_gradient_limit(2.0, -4.0), 16.0);
    }

    #[test]
    fn thm1_6_guards() {
        // lambda = 0 is rejected
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        assert!(matches!(thm1_6_constants(&flat), Err(Error::Precondition(_))));
        // an anchored constant far below lambda produces a negative radicand
        let phi = crate::numerics::RadialProfile::polynomial(vec![0.0, 1.0], 50.0);
        let f = crate::numerics::RadialProfile::polynomial(vec![0.0, 0.0, 5.0], 50.0);
        let kind = StructureKind::QuasiEinstein { m: 2.0, lambda: -0.01, mu: -1.0 };
        let weird = PoleModel::new(3, phi, f, kind, 10.0).unwrap();
        assert!(matches!(thm1_6_constants(&weird), Err(Error::Domain(_))));
    }

    #[test]
    fn infimum_scan_refines_interior_minimum() {
        let grid = linear_grid(10.0, 64);
        let g = |r: f64| (r - 3.3) * (r - 3.3) + 1.0;
        let inf = infimum_scan(g, &grid);
        assert!(inf < 1.0 + 3e-3, "inf = {inf}");
    }

    #[test]
    fn standard_grid_shape() {
        let g = standard_grid(10.0, 256);
        assert_eq!(g.len(), 256);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(g[0] > 0.0 && g[0] < 1e-4);
        assert_eq!(*g.last().unwrap(), 10.0);
    }
}
