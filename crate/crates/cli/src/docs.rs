//! Model definition documents.

use serde::Deserialize;
use solvol_core::models::{
    flat_trivial_qe, gaussian_soliton, generate_from_potential, hyperbolic_qe,
    perturbed_gaussian_potential, ricci_flat_product_qe, PoleModel, ProductModel, StructureKind,
    DEFAULT_R_MAX,
};
use solvol_core::numerics::RadialProfile;

/// JSON model document.
///
/// ```json
/// {"kind": "gaussian", "n": 3, "r_max": 10.0}
/// {"kind": "hyperbolic_qe", "n": 3, "m": 2.0, "r_max": 20.0}
/// {"kind": "product_qe", "m": 2.0, "c": 1.0, "fiber_dim": 2}
/// {"kind": "generated", "n": 3, "r_max": 10.0, "structure": "metric_measure",
///  "potential": {"form": "poly", "coeffs": [0.5, 0.0, 0.25]}}
/// ```
///
/// Generated documents take `structure` in `{"shrinker", "metric_measure",
/// "quasi_einstein"}` (default `"metric_measure"`); quasi-Einstein structures
/// read `m` (required) and `mu` (default 0) and fix `lambda = 0`. Potential
/// forms: `poly` (coefficients by ascending power), `rational` (`num`/`den`
/// coefficient arrays), `table` (cubic-spline interpolated `r`/`f` arrays,
/// clamped to zero slope at the pole), and `perturbed_gaussian`
/// (`shift`, `delta`).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub kind: String,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub m: Option<f64>,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default)]
    pub fiber_dim: Option<u32>,
    #[serde(default)]
    pub r_max: Option<f64>,
    #[serde(default)]
    pub structure: Option<String>,
    #[serde(default)]
    pub potential: Option<PotentialDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "form", deny_unknown_fields)]
pub enum PotentialDoc {
    #[serde(rename = "poly")]
    Poly { coeffs: Vec<f64> },
    #[serde(rename = "rational")]
    Rational { num: Vec<f64>, den: Vec<f64> },
    #[serde(rename = "table")]
    Table { r: Vec<f64>, f: Vec<f64> },
    #[serde(rename = "perturbed_gaussian")]
    PerturbedGaussian { shift: f64, delta: f64 },
}

/// A loaded model together with its provenance.
pub enum ModelInstance {
    Pole(PoleModel),
    Product(ProductModel),
}

pub struct BuiltModel {
    pub id: String,
    pub instance: ModelInstance,
    /// Documents of kind "generated" enforce only the radial structure
    /// equality; their pass criteria differ from closed-form models.
    pub generated: bool,
    /// Set when generation truncated the domain before the requested radius.
    pub truncated_from: Option<f64>,
}

impl BuiltModel {
    pub fn pole(&self) -> Result<&PoleModel, String> {
        match &self.instance {
            ModelInstance::Pole(m) => Ok(m),
            ModelInstance::Product(_) => {
                Err("this operation needs a pole model, got a product model".into())
            }
        }
    }
}

fn potential_profile(doc: &PotentialDoc, n: u32, r_max: f64) -> Result<RadialProfile, String> {
    // profiles get head-room past the requested model radius
    let cap = 4.0 * r_max;
    match doc {
        PotentialDoc::Poly { coeffs } => Ok(RadialProfile::polynomial(coeffs.clone(), cap)),
        PotentialDoc::Rational { num, den } => {
            RadialProfile::rational(num.clone(), den.clone(), cap).map_err(|e| e.to_string())
        }
        PotentialDoc::Table { r, f } => {
            RadialProfile::cubic_spline(r, f).map_err(|e| e.to_string())
        }
        PotentialDoc::PerturbedGaussian { shift, delta } => {
            Ok(perturbed_gaussian_potential(n, *shift, *delta))
        }
    }
}

/// Builds a model from a parsed document.
pub fn build_model(doc: &ModelDoc) -> Result<BuiltModel, String> {
    let n = doc.n.unwrap_or(3);
    let r_max = doc.r_max.unwrap_or(DEFAULT_R_MAX);
    match doc.kind.as_str() {
        "gaussian" => {
            let model = gaussian_soliton(n)
                .and_then(|m| m.with_r_max(r_max))
                .map_err(|e| e.to_string())?;
            Ok(BuiltModel {
                id: format!("gaussian_n{n}"),
                instance: ModelInstance::Pole(model),
                generated: false,
                truncated_from: None,
            })
        }
        "hyperbolic_qe" => {
            let m = doc.m.ok_or("hyperbolic_qe needs \"m\"")?;
            let model = hyperbolic_qe(n, m)
                .and_then(|h| h.with_r_max(r_max))
                .map_err(|e| e.to_string())?;
            Ok(BuiltModel {
                id: format!("hyperbolic_qe_n{n}_m{m}"),
                instance: ModelInstance::Pole(model),
                generated: false,
                truncated_from: None,
            })
        }
        "product_qe" => {
            let m = doc.m.ok_or("product_qe needs \"m\"")?;
            let c = doc.c.ok_or("product_qe needs \"c\"")?;
            let fiber_dim = doc.fiber_dim.unwrap_or(2);
            let model = ricci_flat_product_qe(m, c, fiber_dim).map_err(|e| e.to_string())?;
            Ok(BuiltModel {
                id: format!("product_qe_m{m}_c{c}"),
                instance: ModelInstance::Product(model),
                generated: false,
                truncated_from: None,
            })
        }
        "generated" => {
            let potential = doc.potential.as_ref().ok_or("generated models need a potential")?;
            let f = potential_profile(potential, n, r_max)?;
            let kind = match doc.structure.as_deref().unwrap_or("metric_measure") {
                "shrinker" => StructureKind::Shrinker,
                "metric_measure" => StructureKind::MetricMeasure,
                "quasi_einstein" => StructureKind::QuasiEinstein {
                    m: doc.m.ok_or("quasi_einstein structure needs \"m\"")?,
                    lambda: 0.0,
                    mu: doc.mu.unwrap_or(0.0),
                },
                other => return Err(format!("unknown structure {other:?}")),
            };
            let out = generate_from_potential(n, f, kind, r_max).map_err(|e| e.to_string())?;
            Ok(BuiltModel {
                id: format!("generated_{}_n{n}", kind.label()),
                instance: ModelInstance::Pole(out.model),
                generated: true,
                truncated_from: out.truncated.then_some(out.requested_r_max),
            })
        }
        other => Err(format!("unknown model kind {other:?}")),
    }
}

/// Builds a model from the `--model NAME` shorthand plus flags.
pub fn build_named(
    name: &str,
    n: Option<u32>,
    m: Option<f64>,
    c: Option<f64>,
    r_max: Option<f64>,
) -> Result<BuiltModel, String> {
    let n = n.unwrap_or(3);
    match name {
        "gaussian" => build_model(&ModelDoc {
            kind: "gaussian".into(),
            n: Some(n),
            m: None,
            c: None,
            mu: None,
            fiber_dim: None,
            r_max,
            structure: None,
            potential: None,
        }),
        "hyperbolic_qe" => build_model(&ModelDoc {
            kind: "hyperbolic_qe".into(),
            n: Some(n),
            m: Some(m.unwrap_or(2.0)),
            c: None,
            mu: None,
            fiber_dim: None,
            r_max,
            structure: None,
            potential: None,
        }),
        "product_qe" => build_model(&ModelDoc {
            kind: "product_qe".into(),
            n: None,
            m: Some(m.unwrap_or(2.0)),
            c: Some(c.unwrap_or(1.0)),
            mu: None,
            fiber_dim: Some(2),
            r_max,
            structure: None,
            potential: None,
        }),
        "generated:flat" => {
            let model = flat_trivial_qe(n, m.unwrap_or(2.0), r_max.unwrap_or(10.0))
                .map_err(|e| e.to_string())?;
            Ok(BuiltModel {
                id: format!("generated_flat_n{n}"),
                instance: ModelInstance::Pole(model),
                generated: true,
                truncated_from: None,
            })
        }
        other => Err(format!(
            "unknown model {other:?}; built-ins: gaussian, hyperbolic_qe, product_qe, generated:flat"
        )),
    }
}
