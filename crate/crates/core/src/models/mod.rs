//! Rotationally symmetric model geometries.

mod catalog;
mod generate;
mod hypotheses;

use alloc::format;

use crate::error::{Error, Result};
use crate::numerics::RadialProfile;

pub use catalog::{
    flat_trivial_qe, gaussian_soliton, hyperbolic_qe, perturbed_gaussian_potential,
    ricci_flat_product_qe, DEFAULT_R_MAX,
};
pub use generate::{generate_from_potential, GenerateOutcome, GENERATION_STEP, POLE_SEED_EPS};
pub use hypotheses::{
    verify_hypotheses, EnvelopeFit, HypothesisReport, HypothesisRow, HYPOTHESIS_TOL,
};

/// Structural claim a model carries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StructureKind {
    /// Gradient shrinking soliton, normalized so the structure constant is 1/2.
    Shrinker,
    /// Smooth metric measure space claiming the weighted-curvature lower bound
    /// `Ric_f >= g/2` together with `|grad f|^2 <= f`.
    MetricMeasure,
    /// Quasi-Einstein structure with parameters `(m, lambda, mu)`.
    QuasiEinstein { m: f64, lambda: f64, mu: f64 },
}

impl StructureKind {
    pub fn quasi_einstein(&self) -> Option<(f64, f64, f64)> {
        match *self {
            StructureKind::QuasiEinstein { m, lambda, mu } => Some((m, lambda, mu)),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            StructureKind::Shrinker => "shrinker",
            StructureKind::MetricMeasure => "metric_measure",
            StructureKind::QuasiEinstein { .. } => "quasi_einstein",
        }
    }
}

/// A rotationally symmetric geometry `dr^2 + phi(r)^2 g_{S^{n-1}}` around a
/// pole, with radial potential `f`.
///
/// Geodesics from the pole are radial lines and there is no cut locus on
/// `(0, r_max]`; the warping is validated to be positive there.
#[derive(Clone, Debug)]
pub struct PoleModel {
    n: u32,
    phi: RadialProfile,
    f: RadialProfile,
    kind: StructureKind,
    r_max: f64,
}

impl PoleModel {
    pub fn new(
        n: u32,
        phi: RadialProfile,
        f: RadialProfile,
        kind: StructureKind,
        r_max: f64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("dimension must be >= 2, got {n}")));
        }
        if !(r_max > 0.0) {
            return Err(Error::Precondition(format!("r_max must be positive, got {r_max:e}")));
        }
        if r_max > phi.r_max() || r_max > f.r_max() {
            return Err(Error::Precondition(format!(
                "r_max = {r_max:e} exceeds profile validity ({:e}, {:e})",
                phi.r_max(),
                f.r_max()
            )));
        }
        if let Some((m, lambda, _)) = kind.quasi_einstein() {
            if m == 0.0 || !m.is_finite() {
                return Err(Error::Precondition(format!("quasi-Einstein m must be finite and nonzero, got {m}")));
            }
            if lambda > 0.0 {
                return Err(Error::Precondition(
                    "quasi-Einstein pole models require lambda <= 0; lambda > 0 forces a compact manifold".into(),
                ));
            }
        }
        if phi.value(0.0).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "warping must vanish at the pole, got phi(0) = {:e}",
                phi.value(0.0)
            )));
        }
        if (phi.deriv1(0.0) - 1.0).abs() > 1e-6 {
            return Err(Error::Precondition(format!(
                "smooth pole requires phi'(0) = 1, got {:e}",
                phi.deriv1(0.0)
            )));
        }
        // positivity scan; conjugate points truncate the domain instead
        for k in 1..=512 {
            let r = r_max * k as f64 / 512.0;
            let v = phi.value(r);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Precondition(format!(
                    "warping must stay positive on (0, r_max], found phi({r:e}) = {v:e}"
                )));
            }
        }
        Ok(Self { n, phi, f, kind, r_max })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn warping_profile(&self) -> &RadialProfile {
        &self.phi
    }

    pub fn potential_profile(&self) -> &RadialProfile {
        &self.f
    }

    #[inline]
    pub fn phi(&self, r: f64) -> f64 {
        self.phi.value(r)
    }

    #[inline]
    pub fn phi_d1(&self, r: f64) -> f64 {
        self.phi.deriv1(r)
    }

    #[inline]
    pub fn phi_d2(&self, r: f64) -> f64 {
        self.phi.deriv2(r)
    }

    #[inline]
    pub fn potential(&self, r: f64) -> f64 {
        self.f.value(r)
    }

    #[inline]
    pub fn potential_d1(&self, r: f64) -> f64 {
        self.f.deriv1(r)
    }

    #[inline]
    pub fn potential_d2(&self, r: f64) -> f64 {
        self.f.deriv2(r)
    }

    /// Same geometry restricted or extended to a new `r_max` (as far as the
    /// underlying profiles allow).
    pub fn with_r_max(&self, r_max: f64) -> Result<Self> {
        Self::new(self.n, self.phi.clone(), self.f.clone(), self.kind, r_max)
    }

    /// Same geometry under a different structural claim.
    pub fn with_kind(&self, kind: StructureKind) -> Result<Self> {
        Self::new(self.n, self.phi.clone(), self.f.clone(), kind, self.r_max)
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        if r > 0.0 && r <= self.r_max {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "radius {r:e} outside the model domain (0, {:e}]",
                self.r_max
            )))
        }
    }
}

/// Product `[0, infinity) x F` of a line with an Einstein fiber, carrying a
/// potential that depends on the line coordinate only. Used for pointwise
/// residual checks; ball-volume operations do not accept it.
#[derive(Clone, Debug)]
pub struct ProductModel {
    fiber_dim: u32,
    fiber_einstein_const: f64,
    f_line: RadialProfile,
    kind: StructureKind,
}

impl ProductModel {
    pub fn new(
        fiber_dim: u32,
        fiber_einstein_const: f64,
        f_line: RadialProfile,
        kind: StructureKind,
    ) -> Result<Self> {
        if fiber_dim < 1 {
            return Err(Error::Precondition("fiber dimension must be >= 1".into()));
        }
        Ok(Self { fiber_dim, fiber_einstein_const, f_line, kind })
    }

    pub fn fiber_dim(&self) -> u32 {
        self.fiber_dim
    }

    pub fn fiber_einstein_const(&self) -> f64 {
        self.fiber_einstein_const
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn potential_profile(&self) -> &RadialProfile {
        &self.f_line
    }
}
