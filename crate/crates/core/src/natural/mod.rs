//! The naturality criterion for Frobenius submanifolds and its diagnostics.
//!
//! A submanifold N with nondegenerate flat induced metric is a natural
//! Frobenius submanifold iff `∇e_N = 0`, `TN∘TN ⊆ TN` and
//! `A_{ℰ_N^⊥} = λ·Id` with λ constant along N.

mod classify;
mod conditions;
mod oracle;

use serde::Serialize;

use crate::algebra::{RatFunc, Rational};
use crate::check::Check;
use crate::frobenius::{verify_frobenius, AmbientManifold};
use crate::geometry::{induced_geometry, Embedding, GeometryError, InducedGeometry};

pub use classify::{
    classify_hypersurface, corollary_diagnostics, CorollaryDiagnostics, HypersurfaceCase,
    HypersurfaceClass,
};
pub use conditions::{
    check_product_closure, check_shape_condition, check_unit_parallel, multiply_along,
    pulled_back_products, Closure, Residuals, ShapeCondition, UnitParallel,
};
pub use oracle::{induced_structure, InducedStructure, OracleReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Natural,
    NotNatural,
    HypothesisFailed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Natural => "natural",
            Verdict::NotNatural => "not-natural",
            Verdict::HypothesisFailed => "hypothesis-failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub e_tangent: bool,
    pub euler_tangent: bool,
    pub totally_geodesic: bool,
    /// `TN∘TN^⊥ ⊆ TN^⊥`, evaluated when closure holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_c_holds: Option<bool>,
    /// `D_N = D`, evaluated when the verdict is natural and e is tangent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_relation_holds: Option<bool>,
    /// Closure together with `h ≡ 0` implies naturality; evaluated when both
    /// premises hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geodesic_shortcut_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub nondegenerate: bool,
    pub flat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis_error: Option<String>,
    pub unit_parallel: Check,
    pub closure: Check,
    pub shape_is_scalar: Check,
    /// `ḡ(h(∂α,∂β), ℰ^⊥) = λ G_αβ`, the dual form of the shape condition.
    pub shape_dual: Check,
    #[serde(serialize_with = "crate::check::opt_display")]
    pub lambda: Option<RatFunc>,
    /// λ depends on the symbolic parameters.
    pub lambda_depends_on_params: bool,
    #[serde(serialize_with = "crate::check::opt_rational")]
    pub d: Option<Rational>,
    #[serde(serialize_with = "crate::check::opt_display")]
    pub d_n: Option<RatFunc>,
    pub verdict: Verdict,
    pub diagnostics: Diagnostics,
}

/// Everything computed while evaluating the criterion.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub geometry: InducedGeometry,
    pub unit: UnitParallel,
    pub closure: Closure,
    pub shape: ShapeCondition,
    pub d: Option<Rational>,
    pub report: CriterionReport,
}

impl Analysis {
    pub fn flatness_residuals(&self) -> Residuals {
        self.geometry
            .riemann
            .nonzero()
            .map(|(idx, r)| (crate::check::label("R", &idx), r.clone()))
            .collect()
    }
}

/// Evaluates the criterion; `Err` only for hypothesis failures (degenerate
/// metric, rank-deficient Jacobian, dimension mismatch).
pub fn analyze(emb: &Embedding, ambient: &AmbientManifold) -> Result<Analysis, GeometryError> {
    let geometry = induced_geometry(emb, ambient)?;
    let d = verify_frobenius(ambient).d;
    let unit = check_unit_parallel(emb, &geometry, ambient)?;
    let closure = check_product_closure(emb, &geometry, ambient)?;
    let shape = check_shape_condition(emb, &geometry, ambient)?;

    let flat = geometry.flat;
    let verdict = if !flat {
        Verdict::HypothesisFailed
    } else if unit.check.passed && closure.check.passed && shape.check.passed {
        Verdict::Natural
    } else {
        Verdict::NotNatural
    };
    let totally_geodesic = geometry.totally_geodesic();
    let d_n = d
        .as_ref()
        .map(|d| &RatFunc::constant(geometry.ring(), d.clone()) + &shape.lambda.scale(&crate::algebra::int(2)));
    let natural = verdict == Verdict::Natural;
    let e_tangent = unit.e_n.tangent;
    let diagnostics = Diagnostics {
        e_tangent,
        euler_tangent: shape.euler.tangent,
        totally_geodesic,
        lemma_c_holds: closure.lemma_c.as_ref().map(|c| c.passed),
        d_relation_holds: (natural && e_tangent).then(|| {
            matches!((&d, &d_n), (Some(d), Some(dn)) if dn.constant_value().as_ref() == Some(d))
        }),
        geodesic_shortcut_holds: (flat && closure.check.passed && totally_geodesic)
            .then_some(natural),
    };
    let n = emb.n();
    let lambda_depends_on_params =
        (n..geometry.ring().len()).any(|i| !shape.lambda.is_free_of(i));
    let report = CriterionReport {
        nondegenerate: true,
        flat,
        hypothesis_error: (!flat).then(|| "induced metric is not flat".to_string()),
        unit_parallel: unit.check.clone(),
        closure: closure.check.clone(),
        shape_is_scalar: shape.check.clone(),
        shape_dual: shape.dual.clone(),
        lambda: Some(shape.lambda.clone()),
        lambda_depends_on_params,
        d: d.clone(),
        d_n,
        verdict,
        diagnostics,
    };
    Ok(Analysis {
        geometry,
        unit,
        closure,
        shape,
        d,
        report,
    })
}

/// The criterion verdict with all intermediate invariants.
pub fn theorem_a_verdict(emb: &Embedding, ambient: &AmbientManifold) -> CriterionReport {
    match analyze(emb, ambient) {
        Ok(analysis) => analysis.report,
        Err(err) => hypothesis_failure(&err, ambient),
    }
}

fn hypothesis_failure(err: &GeometryError, ambient: &AmbientManifold) -> CriterionReport {
    let not_run = || Check {
        passed: false,
        residual: None,
    };
    CriterionReport {
        nondegenerate: false,
        flat: false,
        hypothesis_error: Some(err.to_string()),
        unit_parallel: not_run(),
        closure: not_run(),
        shape_is_scalar: not_run(),
        shape_dual: not_run(),
        lambda: None,
        lambda_depends_on_params: false,
        d: verify_frobenius(ambient).d,
        d_n: None,
        verdict: Verdict::HypothesisFailed,
        diagnostics: Diagnostics {
            e_tangent: false,
            euler_tangent: false,
            totally_geodesic: false,
            lemma_c_holds: None,
            d_relation_holds: None,
            geodesic_shortcut_holds: None,
        },
    }
}
