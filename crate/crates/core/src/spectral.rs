//! First-eigenvalue estimates for the weighted radial Laplacian.
//!
//! The operator is `-psi'' - ((n-1) phi'/phi - f') psi'` on `(0, L)` with the
//! natural (zero-flux) condition at the pole and a Dirichlet condition at
//! `L`, self-adjoint in the weight `m_f(r) dr = e^{-f} phi^{n-1} dr`. The
//! finite-volume discretization keeps that structure: a symmetric tridiagonal
//! pencil whose smallest eigenvalue is found by bisection on the Sturm
//! sequence. Dirichlet truncation overestimates the eigenvalue of the full
//! model, so comparing the truncated value against an upper bound is
//! conservative.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::bounds::{thm1_5_check, thm1_5_constants, standard_grid, weighted_density, MARGIN_TOL};
use crate::error::{Error, Result};
use crate::models::PoleModel;
use crate::numerics::{integrate, DEFAULT_TOL};

/// Coarsest admissible mesh.
pub const MIN_MESH: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralMethod {
    SturmLiouville,
    RayleighFamily,
}

/// Truncated-domain eigenvalue estimate.
///
/// `discretization_error` is the second-order Richardson estimate
/// `|lambda(mesh) - lambda(mesh/2)| / 3`.
#[derive(Clone, Copy, Debug)]
pub struct SpectralEstimate {
    pub truncation: f64,
    pub mesh: u32,
    pub lambda1: f64,
    pub method: SpectralMethod,
    pub discretization_error: f64,
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `sigma`,
/// by the Sturm sequence of its shifted LDL^T pivots.
fn sturm_count(diag: &[f64], off_sq: &[f64], sigma: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - sigma;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        if q == 0.0 {
            q = -1e-300;
        }
        q = diag[i] - sigma - off_sq[i - 1] / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn assemble(model: &PoleModel, l: f64, mesh: usize) -> (Vec<f64>, Vec<f64>) {
    let h = l / mesh as f64;
    let density = |r: f64| weighted_density(model, r);
    // interface weights m_f((i + 1/2) h), i = 0..mesh-1
    let mut flux = Vec::with_capacity(mesh);
    for i in 0..mesh {
        flux.push(density((i as f64 + 0.5) * h));
    }
    // cell masses by per-cell Simpson; the pole cell is the half cell [0, h/2]
    let mut mass = Vec::with_capacity(mesh);
    let cell = |a: f64, b: f64| {
        (b - a) / 6.0 * (density(a) + 4.0 * density(0.5 * (a + b)) + density(b))
    };
    mass.push(cell(0.0, 0.5 * h));
    for i in 1..mesh {
        let r = i as f64 * h;
        mass.push(cell(r - 0.5 * h, r + 0.5 * h));
    }
    // symmetrized pencil: alpha_i = A_ii / d_i, beta_i^2 = A_{i,i+1}^2 / (d_i d_{i+1})
    let mut diag = Vec::with_capacity(mesh);
    let mut off_sq = Vec::with_capacity(mesh - 1);
    for i in 0..mesh {
        let left = if i == 0 { 0.0 } else { flux[i - 1] };
        diag.push((left + flux[i]) / (h * mass[i]));
        if i + 1 < mesh {
            let a = flux[i] / h;
            off_sq.push(a * a / (mass[i] * mass[i + 1]));
        }
    }
    (diag, off_sq)
}

fn sturm_lambda1(model: &PoleModel, l: f64, mesh: usize) -> f64 {
    let (diag, off_sq) = assemble(model, l, mesh);
    let mut hi: f64 = 0.0;
    for i in 0..diag.len() {
        let mut row = diag[i];
        if i > 0 {
            row += off_sq[i - 1].sqrt();
        }
        if i < off_sq.len() {
            row += off_sq[i].sqrt();
        }
        hi = hi.max(row);
    }
    let mut lo = 0.0;
    hi += 1.0;
    for _ in 0..200 {
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sturm_count(&diag, &off_sq, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest eigenvalue of the truncated weighted radial operator.
pub fn lambda1_estimate(model: &PoleModel, l: f64, mesh: u32) -> Result<SpectralEstimate> {
    if mesh < MIN_MESH {
        return Err(Error::Precondition(format!(
            "mesh must be at least {MIN_MESH}, got {mesh}"
        )));
    }
    if !(l > 0.0) || l > model.r_max() {
        return Err(Error::Domain(format!(
            "truncation L = {l:e} outside the model domain (0, {:e}]",
            model.r_max()
        )));
    }
    let fine = sturm_lambda1(model, l, mesh as usize);
    let coarse = sturm_lambda1(model, l, (mesh / 2) as usize);
    Ok(SpectralEstimate {
        truncation: l,
        mesh,
        lambda1: fine,
        method: SpectralMethod::SturmLiouville,
        discretization_error: (fine - coarse).abs() / 3.0,
    })
}

/// Richardson limit of the truncation family, modelling
/// `lambda1(L) = lambda1 + A/L^2`; the two samples sit at `L` and `L/2`.
pub fn lambda1_extrapolated(model: &PoleModel, l: f64, mesh: u32) -> Result<f64> {
    let full = lambda1_estimate(model, l, mesh)?.lambda1;
    let half = lambda1_estimate(model, 0.5 * l, mesh)?.lambda1;
    Ok(full + (full - half) / 3.0)
}

/// Rayleigh quotient of `psi(r) = e^{alpha r} chi(r)` in the weighted
/// measure, where `chi` is the piecewise-linear cutoff equal to 1 on
/// `[0, r_cut - 1]` and sloping to 0 at `r_cut`.
pub fn rayleigh_quotient(model: &PoleModel, alpha: f64, r_cut: f64) -> Result<f64> {
    if !(r_cut > 1.0) || r_cut + 1.0 > model.r_max() + 1.0 + 1e-12 || r_cut > model.r_max() {
        return Err(Error::Domain(format!(
            "cutoff radius {r_cut:e} needs 1 < r_cut <= r_max = {:e}",
            model.r_max()
        )));
    }
    let density = |r: f64| weighted_density(model, r);
    let inner_energy = integrate(
        |r| {
            let psi_d = alpha * (alpha * r).exp();
            psi_d * psi_d * density(r)
        },
        0.0,
        r_cut - 1.0,
        DEFAULT_TOL,
    )?;
    let annulus_energy = integrate(
        |r| {
            let e = (alpha * r).exp();
            let psi_d = alpha * e * (r_cut - r) - e;
            psi_d * psi_d * density(r)
        },
        r_cut - 1.0,
        r_cut,
        DEFAULT_TOL,
    )?;
    let inner_mass = integrate(
        |r| {
            let psi = (alpha * r).exp();
            psi * psi * density(r)
        },
        0.0,
        r_cut - 1.0,
        DEFAULT_TOL,
    )?;
    let annulus_mass = integrate(
        |r| {
            let psi = (alpha * r).exp() * (r_cut - r);
            psi * psi * density(r)
        },
        r_cut - 1.0,
        r_cut,
        DEFAULT_TOL,
    )?;
    let mass = inner_mass + annulus_mass;
    if !(mass > 1e-300) {
        return Err(Error::Domain("degenerate Rayleigh denominator".into()));
    }
    Ok((inner_energy + annulus_energy) / mass)
}

/// Eigenvalue upper-bound check for `lambda = 0` quasi-Einstein models:
/// the truncated eigenvalue must not exceed `c^2/4` for the anchored rate
/// `c`. One truncation doubling is retried when the profiles extend that far.
#[derive(Clone, Copy, Debug)]
pub struct Cor14Report {
    pub rate_c: f64,
    pub threshold: f64,
    pub estimate: SpectralEstimate,
    pub retried: bool,
    pub pass: bool,
}

/// Slack added to the threshold to absorb discretization error.
pub const COR14_TOL: f64 = 1e-6;

pub fn cor1_4_check(model: &PoleModel) -> Result<Cor14Report> {
    let constants = thm1_5_constants(model, crate::bounds::DEFAULT_ANCHOR)?;
    let c = constants.rate;
    let threshold = c * c / 4.0;
    let mut estimate = lambda1_estimate(model, model.r_max(), 4096)?;
    let mut retried = false;
    if estimate.lambda1 > threshold + COR14_TOL {
        // Dirichlet truncation only overestimates; try a larger domain if the
        // profiles allow it
        if let Ok(extended) = model.with_r_max(2.0 * model.r_max()) {
            estimate = lambda1_estimate(&extended, extended.r_max(), 4096)?;
            retried = true;
        }
    }
    Ok(Cor14Report {
        rate_c: c,
        threshold,
        estimate,
        retried,
        pass: estimate.lambda1 <= threshold + COR14_TOL,
    })
}

/// Certificate that the weighted volume grows at most exponentially, the
/// volume-test hypothesis for conservativeness of the weighted diffusion.
/// Emitted only when the exponential bound check passes on the standard grid.
#[derive(Clone, Copy, Debug)]
pub struct CompletenessCertificate {
    pub rate_c: f64,
    pub prefactor_b: f64,
    pub anchor_r0: f64,
    pub grid_r_max: f64,
}

impl CompletenessCertificate {
    pub fn statement(&self) -> String {
        format!(
            "log Vol_f(B(r)) <= log({:.6e}) + {:.6e} * r for r in [{}, {}]",
            self.prefactor_b, self.rate_c, self.anchor_r0, self.grid_r_max
        )
    }
}

pub fn stochastic_completeness_certificate(model: &PoleModel) -> Result<CompletenessCertificate> {
    let grid = standard_grid(model.r_max(), 256);
    let check = thm1_5_check(model, &grid, crate::bounds::DEFAULT_ANCHOR)?;
    if !check.report.pass(MARGIN_TOL) || !check.log_density_monotone {
        return Err(Error::Precondition(format!(
            "weighted exponential bound failed (min margin {:.3e}, worst monotone step {:.3e}); \
             no certificate",
            check.report.min_margin, check.worst_monotone_step
        )));
    }
    Ok(CompletenessCertificate {
        rate_c: check.constants.rate,
        prefactor_b: check.constants.prefactor,
        anchor_r0: check.constants.anchor_r0,
        grid_r_max: model.r_max(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{flat_trivial_qe, gaussian_soliton, hyperbolic_qe, StructureKind};
    use crate::numerics::RadialProfile;
    use alloc::vec;

    #[test]
    fn flat_ball_matches_bessel_eigenvalue() {
        // n = 3 radial Laplacian on (0, L): lambda1 = (pi/L)^2
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        let est = lambda1_estimate(&flat, 10.0, 2048).unwrap();
        let exact = (core::f64::consts::PI / 10.0).powi(2);
        assert!((est.lambda1 - exact).abs() < 1e-5, "got {}", est.lambda1);
        assert!(est.discretization_error < 1e-5);
    }

    #[test]
    fn mesh_convergence_is_second_order() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        let l1 = lambda1_estimate(&flat, 10.0, 256).unwrap().lambda1;
        let l2 = lambda1_estimate(&flat, 10.0, 512).unwrap().lambda1;
        let l3 = lambda1_estimate(&flat, 10.0, 1024).unwrap().lambda1;
        assert!((l1 - l2).abs() <= 4.0 * (l2 - l3).abs() + 1e-10);
    }

    #[test]
    fn domain_monotonicity() {
        let flat = flat_trivial_qe(3, 2.0, 20.0).unwrap();
        let l5 = lambda1_estimate(&flat, 5.0, 1024).unwrap().lambda1;
        let l10 = lambda1_estimate(&flat, 10.0, 1024).unwrap().lambda1;
        let l20 = lambda1_estimate(&flat, 20.0, 1024).unwrap().lambda1;
        assert!(l10 <= l5 + 1e-8);
        assert!(l20 <= l10 + 1e-8);
    }

    #[test]
    fn coarse_mesh_is_rejected() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        assert!(matches!(
            lambda1_estimate(&flat, 10.0, 32),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn hyperbolic_trivial_weight_limit() {
        // f = 0 on hyperbolic space: lambda1(L) -> (n-1)^2/4 = 1
        let phi = RadialProfile::from_fns(|r| r.sinh(), |r| r.cosh(), |r| r.sinh(), 700.0);
        let f = RadialProfile::constant(0.0, 700.0);
        let model = PoleModel::new(3, phi, f, StructureKind::MetricMeasure, 40.0).unwrap();
        let est = lambda1_estimate(&model, 40.0, 4096).unwrap();
        assert!((est.lambda1 - 1.0).abs() < 2e-2, "got {}", est.lambda1);
        // and the truncation family is decreasing
        let l10 = lambda1_estimate(&model, 10.0, 4096).unwrap().lambda1;
        let l20 = lambda1_estimate(&model, 20.0, 4096).unwrap().lambda1;
        assert!(l20 <= l10 && est.lambda1 <= l20 + 1e-8);
    }

    #[test]
    fn rayleigh_quotient_flat_closed_form() {
        // alpha = 0, f = 0, phi = r, n = 3, cutoff at 10:
        // quotient = (int_9^10 r^2) / (int_0^9 r^2 + int_9^10 (10-r)^2 r^2)
        //          = 1355/4073
        let flat = flat_trivial_qe(3, 2.0, 20.0).unwrap();
        let q = rayleigh_quotient(&flat, 0.0, 10.0).unwrap();
        let exact = 1355.0 / 4073.0;
        assert!((q - exact).abs() < 1e-9, "got {q}");
    }

    #[test]
    fn rayleigh_dominates_sturm_liouville() {
        let flat = flat_trivial_qe(3, 2.0, 20.0).unwrap();
        let q = rayleigh_quotient(&flat, 0.0, 10.0).unwrap();
        let sl = lambda1_estimate(&flat, 10.0, 1024).unwrap().lambda1;
        assert!(q >= sl - 1e-6);
    }

    #[test]
    fn rayleigh_family_approaches_rate_limit() {
        // alpha = -(c + delta)/2 with c = 2, delta = 0.1 on the flat model
        let flat = flat_trivial_qe(3, 2.0, 50.0).unwrap();
        let alpha = -1.05;
        let limit = alpha * alpha;
        let mut last = f64::INFINITY;
        for &rc in &[10.0, 20.0, 40.0] {
            let q = rayleigh_quotient(&flat, alpha, rc).unwrap();
            assert!(q <= 1.01 * limit, "quotient {q} at cutoff {rc}");
            assert!(q <= last + 1e-9);
            last = q;
        }
        assert!((last - limit).abs() < 1e-6);
    }

    #[test]
    fn cor1_4_flat_model() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        let report = cor1_4_check(&flat).unwrap();
        assert!((report.rate_c - 2.0).abs() < 1e-12);
        assert!((report.threshold - 1.0).abs() < 1e-12);
        assert!(report.pass);
        assert!(report.estimate.lambda1 < 0.2);
    }

    #[test]
    fn certificate_gating() {
        let flat = flat_trivial_qe(3, 2.0, 10.0).unwrap();
        let cert = stochastic_completeness_certificate(&flat).unwrap();
        assert!((cert.rate_c - 2.0).abs() < 1e-12);
        assert!(!cert.statement().is_empty());
        // a claimed lambda = 0 structure with increasing density log-derivative
        // fails the check and is refused
        let phi = RadialProfile::polynomial(vec![0.0, 1.0], 50.0);
        let f = RadialProfile::polynomial(vec![0.0, 0.0, -1.0], 50.0);
        let kind = StructureKind::QuasiEinstein { m: 2.0, lambda: 0.0, mu: 0.0 };
        let bogus = PoleModel::new(3, phi, f, kind, 10.0).unwrap();
        assert!(matches!(
            stochastic_completeness_certificate(&bogus),
            Err(Error::Precondition(_))
        ));
        // quasi-Einstein guard
        assert!(stochastic_completeness_certificate(&hyperbolic_qe(3, 2.0).unwrap()).is_err());
        assert!(stochastic_completeness_certificate(&gaussian_soliton(3).unwrap()).is_err());
    }
}
