use serde::Serialize;

use super::{Analysis, Verdict};
use crate::algebra::RatFunc;
use crate::check::{label, Check};
use crate::frobenius::AmbientManifold;
use crate::geometry::{Embedding, GeometryError};

use super::conditions::{multiply_along, pulled_back_products};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypersurfaceCase {
    /// e is not tangent: natural ⇔ closure ∧ h ≡ 0.
    UnitTransversal,
    /// e is tangent: natural ⇔ closure ∧ (h ≡ 0 ∨ ℰ tangent).
    UnitTangent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceClass {
    pub case: HypersurfaceCase,
    /// Which alternative of the case applies, when natural.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via: Option<&'static str>,
    pub predicted_natural: bool,
    pub verdict: Verdict,
    /// Prediction agrees with the verdict (vacuous on hypothesis failure).
    pub consistent: bool,
    /// e transversal with `∇̄e = 0` and `∇e_N = 0` forces `h ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_2_1_holds: Option<bool>,
}

/// Hypersurface classification of a computed analysis.
pub fn classify_hypersurface(
    emb: &Embedding,
    ambient: &AmbientManifold,
    analysis: &Analysis,
) -> Result<HypersurfaceClass, GeometryError> {
    if emb.codimension() != 1 {
        return Err(GeometryError::Dimension(format!(
            "not a hypersurface (codimension {})",
            emb.codimension()
        )));
    }
    let report = &analysis.report;
    let d = &report.diagnostics;
    let closure = report.closure.passed;
    let geodesic = d.totally_geodesic;
    let (case, predicted, via) = if d.e_tangent {
        let via = if geodesic {
            Some("totally-geodesic")
        } else if d.euler_tangent {
            Some("euler-tangent")
        } else {
            None
        };
        (
            HypersurfaceCase::UnitTangent,
            closure && (geodesic || d.euler_tangent),
            via,
        )
    } else {
        (
            HypersurfaceCase::UnitTransversal,
            closure && geodesic,
            geodesic.then_some("totally-geodesic"),
        )
    };
    let verdict = report.verdict;
    let consistent =
        verdict == Verdict::HypothesisFailed || predicted == (verdict == Verdict::Natural);
    let unit_flat = ambient
        .unit()
        .iter()
        .all(|c| (0..ambient.dim()).all(|i| c.differentiate(i).is_zero()));
    let lemma_2_1_holds = (!d.e_tangent && unit_flat && report.unit_parallel.passed)
        .then_some(geodesic);
    Ok(HypersurfaceClass {
        case,
        via: via.filter(|_| verdict == Verdict::Natural),
        predicted_natural: predicted,
        verdict,
        consistent,
        lemma_2_1_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryDiagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// `(I−P)(ℰ∘J_α) ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_product_tangent: Option<Check>,
    /// `(I−P)(∇̄_{J_α}ℰ) ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_gradient_tangent: Option<Check>,
    /// `ℰ_N^⊥ = μ·e_N^⊥` with μ constant along N.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_constant: Option<Check>,
    #[serde(serialize_with = "crate::check::opt_display")]
    pub mu: Option<RatFunc>,
    /// `∂_α(ℰ_N^⊥) ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_euler_parallel: Option<Check>,
}

impl CorollaryDiagnostics {
    fn skipped(reason: &str) -> Self {
        CorollaryDiagnostics {
            skipped: Some(reason.to_string()),
            euler_product_tangent: None,
            euler_gradient_tangent: None,
            mu_constant: None,
            mu: None,
            normal_euler_parallel: None,
        }
    }

    pub fn passed(&self) -> bool {
        [
            &self.euler_product_tangent,
            &self.euler_gradient_tangent,
            &self.mu_constant,
            &self.normal_euler_parallel,
        ]
        .iter()
        .all(|c| c.as_ref().is_none_or(|c| c.passed))
    }
}

/// Diagnostics for natural hypersurfaces with transversal unit.
pub fn corollary_diagnostics(
    emb: &Embedding,
    ambient: &AmbientManifold,
    analysis: &Analysis,
) -> CorollaryDiagnostics {
    if emb.codimension() != 1 {
        return CorollaryDiagnostics::skipped("not a hypersurface");
    }
    if analysis.report.verdict != Verdict::Natural {
        return CorollaryDiagnostics::skipped("verdict is not natural");
    }
    if analysis.report.diagnostics.e_tangent {
        return CorollaryDiagnostics::skipped("unit is tangent");
    }
    let geom = &analysis.geometry;
    let n = geom.n();
    let tables = pulled_back_products(emb, ambient);
    let euler_along: Vec<RatFunc> = ambient
        .euler()
        .iter()
        .map(|p| RatFunc::from_poly(emb.pullback(p)))
        .collect();

    let euler_product_tangent = Check::all_zero((0..n).flat_map(|alpha| {
        let w = multiply_along(&tables, &euler_along, &geom.tangent(alpha));
        geom.normal_part(&w)
            .into_iter()
            .enumerate()
            .map(move |(k, r)| (label("(I-P)(ℰ∘J)", &[alpha, k]), r))
    }));
    let euler_gradient_tangent = Check::all_zero((0..n).flat_map(|alpha| {
        let d: Vec<RatFunc> = euler_along.iter().map(|c| c.differentiate(alpha)).collect();
        geom.normal_part(&d)
            .into_iter()
            .enumerate()
            .map(move |(k, r)| (label("(I-P)(∇̄ℰ·J)", &[alpha, k]), r))
    }));

    let e_perp = &analysis.unit.e_n.normal;
    let euler_perp = &analysis.shape.euler.normal;
    let pivot = e_perp.iter().position(|c| !c.is_zero()).expect("unit is transversal");
    let mu = &euler_perp[pivot] / &e_perp[pivot];
    let proportional = Check::all_zero(
        e_perp
            .iter()
            .zip(euler_perp)
            .enumerate()
            .map(|(k, (e, x))| (label("ℰ^⊥-μe^⊥", &[k]), x - &(&mu * e))),
    );
    let constant = Check::all_zero((0..n).map(|a| (label("∂μ", &[a]), mu.differentiate(a))));
    let normal_euler_parallel = Check::all_zero((0..n).flat_map(|a| {
        euler_perp
            .iter()
            .enumerate()
            .map(move |(k, x)| (label("∂ℰ^⊥", &[a, k]), x.differentiate(a)))
    }));
    CorollaryDiagnostics {
        skipped: None,
        euler_product_tangent: Some(euler_product_tangent),
        euler_gradient_tangent: Some(euler_gradient_tangent),
        mu_constant: Some(proportional.and(constant)),
        mu: Some(mu),
        normal_euler_parallel: Some(normal_euler_parallel),
    }
}
