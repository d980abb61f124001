//! Pointwise curvature quantities and structure-identity residuals.

use alloc::format;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::models::{PoleModel, ProductModel, StructureKind};

/// Below this radius the angular curvature factor `(1 - phi'^2)/phi^2` is a
/// 0/0 cancellation in f64; it is then sampled at [`POLE_SAMPLE`] instead,
/// which is exact in the limit because the Ricci tensor is isotropic at a
/// smooth pole.
const POLE_SWITCH: f64 = 1e-4;
const POLE_SAMPLE: f64 = 1e-3;

/// Curvature data of a pole model at one radius.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureSample {
    pub r: f64,
    /// `Ric(d/dr, d/dr) = -(n-1) phi''/phi`.
    pub ric_rad: f64,
    /// Ricci curvature of a unit tangential direction.
    pub ric_tan: f64,
    /// Scalar curvature.
    pub scalar: f64,
    /// Area-element factor `J = phi`.
    pub jacobian: f64,
    /// Logarithmic derivative `w = J'/J = phi'/phi`.
    pub log_deriv: f64,
}

/// Residuals of the quasi-Einstein structure at one point: the radial and
/// tangential components of the structure equation and the residual of the
/// constant-`mu` identity under the substitution `u = e^{-f/m}`.
#[derive(Clone, Copy, Debug)]
pub struct QeResiduals {
    pub rad: f64,
    pub tan: f64,
    pub mu: f64,
}

pub fn curvature_at(model: &PoleModel, r: f64) -> Result<CurvatureSample> {
    model.check_radius(r)?;
    let n = model.n() as f64;
    let phi = model.phi(r);
    let radial = -model.phi_d2(r) / phi;
    let angular = {
        let s = if r < POLE_SWITCH { POLE_SAMPLE.min(model.r_max()) } else { r };
        let p = model.phi(s);
        let dp = model.phi_d1(s);
        (1.0 - dp * dp) / (p * p)
    };
    Ok(CurvatureSample {
        r,
        ric_rad: (n - 1.0) * radial,
        ric_tan: radial + (n - 2.0) * angular,
        scalar: 2.0 * (n - 1.0) * radial + (n - 1.0) * (n - 2.0) * angular,
        jacobian: phi,
        log_deriv: model.phi_d1(r) / phi,
    })
}

/// Residuals of the three shrinker identities:
/// `R + lap f - n/2`, `R + |grad f|^2 - f`, and
/// `lap f - |grad f|^2 + f - n/2` (their difference).
pub fn hamilton_identity_residuals(model: &PoleModel, r: f64) -> Result<[f64; 3]> {
    if !matches!(model.kind(), StructureKind::Shrinker) {
        return Err(Error::Precondition(format!(
            "shrinker identities need a shrinker model, got {}",
            model.kind().label()
        )));
    }
    let curv = curvature_at(model, r)?;
    let n = model.n() as f64;
    let f = model.potential(r);
    let f1 = model.potential_d1(r);
    let laplacian = model.potential_d2(r) + (n - 1.0) * curv.log_deriv * f1;
    let grad_sq = f1 * f1;
    Ok([
        curv.scalar + laplacian - 0.5 * n,
        curv.scalar + grad_sq - f,
        laplacian - grad_sq + f - 0.5 * n,
    ])
}

fn qe_params(kind: StructureKind) -> Result<(f64, f64, f64)> {
    kind.quasi_einstein().ok_or_else(|| {
        Error::Precondition(format!(
            "quasi-Einstein residuals need a quasi-Einstein model, got {}",
            kind.label()
        ))
    })
}

pub fn qe_residuals(model: &PoleModel, r: f64) -> Result<QeResiduals> {
    let (m, lambda, mu) = qe_params(model.kind())?;
    let curv = curvature_at(model, r)?;
    let f = model.potential(r);
    let f1 = model.potential_d1(r);
    let f2 = model.potential_d2(r);
    let n = model.n() as f64;
    let u = (-f / m).exp();
    let grad_u_sq = (u * f1 / m) * (u * f1 / m);
    Ok(QeResiduals {
        rad: curv.ric_rad + f2 - f1 * f1 / m - lambda,
        tan: curv.ric_tan + curv.log_deriv * f1 - lambda,
        mu: (u * u / m) * (curv.scalar - lambda * n) + (m - 1.0) * grad_u_sq + lambda * u * u - mu,
    })
}

/// Quasi-Einstein residuals for a line-times-Einstein-fiber product: the line
/// direction plays the radial role, fiber directions the tangential one.
pub fn qe_residuals_product(model: &ProductModel, t: f64) -> Result<QeResiduals> {
    let (m, lambda, mu) = qe_params(model.kind())?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("product residuals need t > 0, got {t:e}")));
    }
    let f = model.potential_profile().value(t);
    let f1 = model.potential_profile().deriv1(t);
    let f2 = model.potential_profile().deriv2(t);
    let n = (model.fiber_dim() + 1) as f64;
    let scalar = model.fiber_dim() as f64 * model.fiber_einstein_const();
    let u = (-f / m).exp();
    let grad_u_sq = (u * f1 / m) * (u * f1 / m);
    Ok(QeResiduals {
        rad: f2 - f1 * f1 / m - lambda,
        tan: model.fiber_einstein_const() - lambda,
        mu: (u * u / m) * (scalar - lambda * n) + (m - 1.0) * grad_u_sq + lambda * u * u - mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{
        flat_trivial_qe, gaussian_soliton, hyperbolic_qe, ricci_flat_product_qe,
    };
    use crate::numerics::RadialProfile;
    use alloc::vec::Vec;

    #[test]
    fn gaussian_is_flat() {
        let g = gaussian_soliton(3).unwrap();
        let c = curvature_at(&g, 1.0).unwrap();
        assert_eq!(c.ric_rad, 0.0);
        assert_eq!(c.ric_tan, 0.0);
        assert_eq!(c.scalar, 0.0);
        assert_eq!(c.jacobian, 1.0);
        assert_eq!(c.log_deriv, 1.0);
    }

    #[test]
    fn hyperbolic_space_form_curvature() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        for &r in &[0.4, 1.0, 2.7, 10.0] {
            let c = curvature_at(&h, r).unwrap();
            assert!((c.ric_rad + 2.0).abs() < 1e-9, "ric_rad({r}) = {}", c.ric_rad);
            assert!((c.scalar + 6.0).abs() < 1e-8, "R({r}) = {}", c.scalar);
        }
    }

    #[test]
    fn sphere_cap_curvature() {
        let phi = RadialProfile::from_fns(|r| r.sin(), |r| r.cos(), |r| -r.sin(), 3.0);
        let f = RadialProfile::constant(0.0, 3.0);
        let m = PoleModel::new(3, phi, f, StructureKind::MetricMeasure, 3.0).unwrap();
        let c = curvature_at(&m, core::f64::consts::FRAC_PI_4).unwrap();
        assert!((c.ric_rad - 2.0).abs() < 1e-12);
        assert!((c.scalar - 6.0).abs() < 1e-11);
    }

    #[test]
    fn trace_identity_holds_everywhere() {
        let models = [
            gaussian_soliton(4).unwrap(),
            hyperbolic_qe(5, 2.5).unwrap(),
            flat_trivial_qe(2, 2.0, 20.0).unwrap(),
        ];
        for model in &models {
            for k in 1..=200 {
                let r = model.r_max() * k as f64 / 200.0;
                let c = curvature_at(model, r).unwrap();
                let n = model.n() as f64;
                let trace = c.ric_rad + (n - 1.0) * c.ric_tan;
                assert!(
                    (c.scalar - trace).abs() <= 1e-10 * (1.0 + c.scalar.abs()),
                    "trace mismatch at r = {r}"
                );
            }
        }
    }

    #[test]
    fn jacobian_normalizes_at_the_pole() {
        for model in [gaussian_soliton(3).unwrap(), hyperbolic_qe(3, 2.0).unwrap()] {
            let c = curvature_at(&model, 1e-4).unwrap();
            assert!((c.jacobian / 1e-4 - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn gaussian_identities_vanish() {
        let g = gaussian_soliton(3).unwrap().with_r_max(10.0).unwrap();
        for k in 1..=256 {
            let r = 10.0 * k as f64 / 256.0;
            let res = hamilton_identity_residuals(&g, r).unwrap();
            for v in res {
                assert!(v.abs() <= 1e-10, "residual {v:e} at r = {r}");
            }
        }
    }

    #[test]
    fn third_identity_is_difference_of_first_two() {
        // a shrinker-kind model that is not an actual soliton
        let f = RadialProfile::polynomial([0.3, 0.0, 0.2, 0.0, 1e-3].to_vec(), 50.0);
        let out = crate::models::generate_from_potential(3, f, StructureKind::Shrinker, 6.0).unwrap();
        for k in 1..=60 {
            let r = 6.0 * k as f64 / 60.0;
            let res = hamilton_identity_residuals(&out.model, r).unwrap();
            assert!((res[2] - (res[0] - res[1])).abs() <= 1e-12 * (1.0 + res[0].abs()));
        }
        // identity (2) genuinely deviates for a non-soliton
        let res = hamilton_identity_residuals(&out.model, 4.0).unwrap();
        assert!(res[1].abs() > 1e-3);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        assert!(hamilton_identity_residuals(&h, 1.0).is_err());
        let g = gaussian_soliton(3).unwrap();
        assert!(qe_residuals(&g, 1.0).is_err());
    }

    #[test]
    fn hyperbolic_residuals_vanish() {
        let h = hyperbolic_qe(3, 2.0).unwrap();
        for &r in &[0.5, 1.0, 2.0] {
            let res = qe_residuals(&h, r).unwrap();
            assert!(res.rad.abs() <= 1e-9 && res.tan.abs() <= 1e-9 && res.mu.abs() <= 1e-9);
        }
    }

    #[test]
    fn product_residuals_vanish_with_derived_mu() {
        let p = ricci_flat_product_qe(2.0, 1.0, 2).unwrap();
        let res = qe_residuals_product(&p, 1.0).unwrap();
        assert!(res.rad.abs() < 1e-12 && res.tan.abs() < 1e-12 && res.mu.abs() < 1e-12);
        assert!(qe_residuals_product(&p, 0.0).is_err());
    }

    #[test]
    fn trivial_quasi_einstein_measures_mu() {
        // constant potential on flat space: residuals (0, 0, -mu)
        for mu in [0.0, 1.0] {
            let phi = RadialProfile::polynomial([0.0, 1.0].to_vec(), 50.0);
            let f = RadialProfile::constant(2.0, 50.0);
            let kind = StructureKind::QuasiEinstein { m: 3.0, lambda: 0.0, mu };
            let model = PoleModel::new(3, phi, f, kind, 10.0).unwrap();
            let res = qe_residuals(&model, 1.5).unwrap();
            assert!(res.rad.abs() < 1e-12 && res.tan.abs() < 1e-12);
            assert!((res.mu + mu).abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_laplacian_identity_for_hyperbolic() {
        // m lambda - m mu e^{2f/m} must agree with lap f - |grad f|^2
        let h = hyperbolic_qe(3, 2.0).unwrap().with_r_max(10.0).unwrap();
        let (m, lambda, mu) = h.kind().quasi_einstein().unwrap();
        let radii: Vec<f64> = (1..=100).map(|k| 10.0 * k as f64 / 100.0).collect();
        for &r in &radii {
            let c = curvature_at(&h, r).unwrap();
            let f = h.potential(r);
            let f1 = h.potential_d1(r);
            let lap = h.potential_d2(r) + (h.n() as f64 - 1.0) * c.log_deriv * f1;
            let lhs = m * lambda - m * mu * (2.0 * f / m).exp();
            assert!((lhs - (lap - f1 * f1)).abs() <= 1e-7, "mismatch at r = {r}");
        }
    }
}
