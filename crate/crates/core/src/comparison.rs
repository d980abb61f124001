//! Riccati/Jacobian comparison quantities.
//!
//! For pole models the area-element factor is the warping itself, so the
//! comparison chains hold globally and with equality in the Riccati step;
//! that makes these quantities the sharpest available test of the integrated
//! bounds built on top of them.

use alloc::format;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::curvature::curvature_at;
use crate::error::{Error, Result};
use crate::models::{PoleModel, StructureKind};
use crate::numerics::{average_integral, integrate, DEFAULT_TOL};

/// Sign convention for the exponent of the `lambda = 0` quasi-Einstein
/// Jacobian bound: the `Statement` variant adds the pole value of the
/// potential, the `Proof` variant subtracts it. The two differ only when
/// `f(0) != 0`; the statement variant is the one the integration chain
/// produces and is the default everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiVariant {
    Statement,
    Proof,
}

/// Residual of the radial Riccati relation `w' + w^2 + Ric(dr,dr)/(n-1)`
/// with `w = phi'/phi`; identically zero on pole models, where the relation
/// holds with equality.
pub fn riccati_defect(model: &PoleModel, r: f64) -> Result<f64> {
    model.check_radius(r)?;
    let phi = model.phi(r);
    let w = model.phi_d1(r) / phi;
    let w_prime = model.phi_d2(r) / phi - w * w;
    let ric_rad = curvature_at(model, r)?.ric_rad;
    Ok(w_prime + w * w + ric_rad / (model.n() as f64 - 1.0))
}

/// Upper bound for `log(J(r)/r)` obtained by integrating the Riccati
/// relation twice:
/// `[ (1/r) int_0^r s^2 Ric_rad ds - int_0^r t Ric_rad dt ] / (n-1)`.
pub fn log_jacobian_bound(model: &PoleModel, r: f64) -> Result<f64> {
    model.check_radius(r)?;
    let ric = |s: f64| {
        if s <= 0.0 {
            0.0
        } else {
            curvature_at(model, s).map(|c| c.ric_rad).unwrap_or(f64::NAN)
        }
    };
    let quadratic = integrate(|s| s * s * ric(s), 0.0, r, DEFAULT_TOL)?;
    let linear = integrate(|s| s * ric(s), 0.0, r, DEFAULT_TOL)?;
    Ok((quadratic / r - linear) / (model.n() as f64 - 1.0))
}

/// The integrand whose radial average drives the shrinker-type Jacobian
/// bound: scalar curvature for shrinkers, `f - |grad f|^2` for
/// metric-measure models.
pub(crate) fn growth_integrand(model: &PoleModel, s: f64) -> f64 {
    match model.kind() {
        StructureKind::Shrinker => {
            let s = s.max(1e-9);
            curvature_at(model, s).map(|c| c.scalar).unwrap_or(f64::NAN)
        }
        _ => {
            let f1 = model.potential_d1(s);
            model.potential(s) - f1 * f1
        }
    }
}

/// Upper bound for `J(r)^{n-1}`:
/// `exp(f(0) - (1/r) int_0^r G) * r^{n-1}` with `G` as in
/// [`growth_integrand`].
pub fn shrinker_jacobian_bound(model: &PoleModel, r: f64) -> Result<f64> {
    if !matches!(model.kind(), StructureKind::Shrinker | StructureKind::MetricMeasure) {
        return Err(Error::Precondition(format!(
            "Jacobian growth bound applies to shrinker or metric-measure models, got {}",
            model.kind().label()
        )));
    }
    model.check_radius(r)?;
    let avg = average_integral(|s| growth_integrand(model, s), r, DEFAULT_TOL)?;
    let n = model.n() as f64;
    Ok((model.potential(0.0) - avg).exp() * r.powi(n as i32 - 1))
}

/// Exponent `Phi(r) = f(r) +/- f(0) - (2/r) int_0^r f` of the `lambda = 0`
/// quasi-Einstein Jacobian bound.
pub fn qe_log_jacobian_exponent(model: &PoleModel, r: f64, variant: PhiVariant) -> Result<f64> {
    model.check_radius(r)?;
    let avg = average_integral(|s| model.potential(s), r, DEFAULT_TOL)?;
    let pole = model.potential(0.0);
    let signed_pole = match variant {
        PhiVariant::Statement => pole,
        PhiVariant::Proof => -pole,
    };
    Ok(model.potential(r) + signed_pole - 2.0 * avg)
}

/// Upper bound `exp(Phi(r)) r^{n-1}` for `J(r)^{n-1}` on `lambda = 0`
/// quasi-Einstein models.
pub fn qe_jacobian_bound(model: &PoleModel, r: f64, variant: PhiVariant) -> Result<f64> {
    match model.kind().quasi_einstein() {
        Some((_, lambda, _)) if lambda == 0.0 => {}
        Some((_, lambda, _)) => {
            return Err(Error::Precondition(format!(
                "quasi-Einstein Jacobian bound requires lambda = 0, got {lambda}"
            )))
        }
        None => {
            return Err(Error::Precondition(format!(
                "quasi-Einstein Jacobian bound needs a quasi-Einstein model, got {}",
                model.kind().label()
            )))
        }
    }
    let n = model.n() as f64;
    Ok(qe_log_jacobian_exponent(model, r, variant)?.exp() * r.powi(n as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{
        flat_trivial_qe, gaussian_soliton, generate_from_potential, hyperbolic_qe,
        perturbed_gaussian_potential,
    };
    use crate::numerics::RadialProfile;
    use alloc::vec;

    #[test]
    fn riccati_defect_vanishes_on_catalog_models() {
        let models = [
            gaussian_soliton(3).unwrap(),
            hyperbolic_qe(3, 2.0).unwrap(),
            flat_trivial_qe(4, 2.0, 20.0).unwrap(),
        ];
        for model in &models {
            for k in 1..=100 {
                let r = model.r_max() * k as f64 / 100.0;
                let d = riccati_defect(model, r).unwrap();
                assert!(d.abs() <= 1e-9, "defect {d:e} at r = {r}");
            }
        }
        assert_eq!(riccati_defect(&gaussian_soliton(3).unwrap(), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn log_jacobian_bound_gaussian_equality() {
        let g = gaussian_soliton(3).unwrap();
        for &r in &[0.5, 1.0, 5.0] {
            assert!(log_jacobian_bound(&g, r).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn log_jacobian_bound_hyperbolic_closed_form() {
        // n = 3, Ric_rad = -2: the bound integrates to r^2/6 and dominates
        // log(sinh r / r)
        let h = hyperbolic_qe(3, 2.0).unwrap().with_r_max(10.0).unwrap();
        let b1 = log_jacobian_bound(&h, 1.0).unwrap();
        assert!((b1 - 1.0 / 6.0).abs() < 1e-9, "B(1) = {b1}");
        for k in 1..=20 {
            let r: f64 = 0.5 * k as f64;
            let b = log_jacobian_bound(&h, r).unwrap();
            let actual = (r.sinh() / r).ln();
            assert!((b - r * r / 6.0).abs() < 1e-7 * (1.0 + r * r));
            assert!(actual <= b + 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn log_jacobian_bound_is_negative_under_positive_curvature() {
        let phi = RadialProfile::from_fns(|r| r.sin(), |r| r.cos(), |r| -r.sin(), 3.0);
        let f = RadialProfile::constant(0.0, 3.0);
        let m = PoleModel::new(3, phi, f, StructureKind::MetricMeasure, 3.0).unwrap();
        let b = log_jacobian_bound(&m, 1.0).unwrap();
        assert!((b + 1.0 / 6.0).abs() < 1e-9, "B(1) = {b}");
        let actual = 1.0_f64.sin().ln();
        assert!(actual <= b && b < 0.0);
    }

    #[test]
    fn shrinker_bound_gaussian_equality_and_pole_limit() {
        let g = gaussian_soliton(3).unwrap();
        let b = shrinker_jacobian_bound(&g, 2.0).unwrap();
        assert!((b - 4.0).abs() < 1e-10);
        // bound / r^{n-1} -> exp(f(0) - G(0)) = 1
        let r = 1e-6;
        let ratio = shrinker_jacobian_bound(&g, r).unwrap() / (r * r);
        assert!((ratio - 1.0).abs() < 1e-9);
        assert!(shrinker_jacobian_bound(&hyperbolic_qe(3, 2.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn metric_measure_bound_dominates_jacobian_power() {
        let f = perturbed_gaussian_potential(3, 0.65, 1e-3);
        let out = generate_from_potential(3, f, StructureKind::MetricMeasure, 10.0).unwrap();
        for k in 1..=64 {
            let r = 10.0 * k as f64 / 64.0;
            let bound = shrinker_jacobian_bound(&out.model, r).unwrap();
            let j_pow = out.model.phi(r).powi(2);
            assert!(j_pow <= bound * (1.0 + 1e-8), "r = {r}: {j_pow} > {bound}");
        }
    }

    #[test]
    fn all_bounds_are_sharp_on_the_gaussian() {
        let g = gaussian_soliton(4).unwrap();
        let g_mm = g.with_kind(StructureKind::MetricMeasure).unwrap();
        for k in 0..=40 {
            let r = 0.01 * (1000.0_f64 / 1.0).powf(k as f64 / 40.0); // log-spaced on [1e-2, 10]
            let exact = g.phi(r).powi(3);
            let b1 = shrinker_jacobian_bound(&g, r).unwrap();
            let b2 = shrinker_jacobian_bound(&g_mm, r).unwrap();
            let b3 = (3.0 * log_jacobian_bound(&g, r).unwrap()).exp() * r.powi(3);
            for b in [b1, b2, b3] {
                assert!((b - exact).abs() <= 1e-9 * exact, "r = {r}: {b} vs {exact}");
            }
        }
    }

    #[test]
    fn qe_exponent_variants() {
        // constant potential: statement variant gives equality, proof variant
        // undershoots by e^{-2 f(0)}
        let phi = RadialProfile::polynomial(vec![0.0, 1.0], 50.0);
        let f = RadialProfile::constant(1.0, 50.0);
        let kind = StructureKind::QuasiEinstein { m: 2.0, lambda: 0.0, mu: 0.0 };
        let model = PoleModel::new(3, phi, f, kind, 10.0).unwrap();
        let statement = qe_jacobian_bound(&model, 2.0, PhiVariant::Statement).unwrap();
        let proof = qe_jacobian_bound(&model, 2.0, PhiVariant::Proof).unwrap();
        assert!((statement - 4.0).abs() < 1e-10);
        assert!((proof - 4.0 * (-2.0_f64).exp()).abs() < 1e-10);
        assert!(proof < 4.0);
    }

    #[test]
    fn qe_exponent_quadratic_potential() {
        // f = r^2 with f(0) = 0: Phi(r) = r^2/3, both variants agree
        let phi = RadialProfile::polynomial(vec![0.0, 1.0], 50.0);
        let f = RadialProfile::polynomial(vec![0.0, 0.0, 1.0], 50.0);
        let kind = StructureKind::QuasiEinstein { m: 2.0, lambda: 0.0, mu: 0.0 };
        let model = PoleModel::new(3, phi, f, kind, 10.0).unwrap();
        for variant in [PhiVariant::Statement, PhiVariant::Proof] {
            let phi_2 = qe_log_jacobian_exponent(&model, 2.0, variant).unwrap();
            assert!((phi_2 - 4.0 / 3.0).abs() < 1e-10, "{variant:?}: {phi_2}");
        }
    }

    #[test]
    fn qe_bound_requires_lambda_zero() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        assert!(qe_jacobian_bound(&h, 1.0, PhiVariant::Statement).is_err());
        let g = gaussian_soliton(3).unwrap();
        assert!(qe_jacobian_bound(&g, 1.0, PhiVariant::Statement).is_err());
    }

    #[test]
    fn generated_qe_bound_dominates() {
        let f = RadialProfile::rational(vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.0], 50.0).unwrap();
        let kind = StructureKind::QuasiEinstein { m: 2.0, lambda: 0.0, mu: 0.0 };
        let out = generate_from_potential(3, f, kind, 10.0).unwrap();
        for k in 1..=50 {
            let r = 0.1 + 9.9 * k as f64 / 50.0;
            let bound = qe_jacobian_bound(&out.model, r, PhiVariant::Statement).unwrap();
            let j_pow = out.model.phi(r).powi(2);
            assert!(j_pow <= bound * (1.0 + 1e-8), "r = {r}");
        }
    }
}
