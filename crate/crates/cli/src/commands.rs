//! Command implementations. Each returns a serializable payload, a
//! human-readable rendering and whether the outcome counts as negative for
//! `--strict`.

use std::fmt::Write as _;

use serde::Serialize;

use frobsub_core::algebra::{format_rational, MPoly, RatFunc, Rational};
use frobsub_core::check::Check;
use frobsub_core::family::{collect_constraints, solve_single_parameter, FamilySolution};
use frobsub_core::frobenius::{
    product_with_line, verify_frobenius, verify_saito, AmbientManifold, AxiomReport, SaitoReport,
};
use frobsub_core::geometry::Embedding;
use frobsub_core::natural::{
    analyze, classify_hypersurface, corollary_diagnostics, induced_structure, CorollaryDiagnostics,
    CriterionReport, HypersurfaceClass, OracleReport, Verdict,
};

use crate::manifest::Manifest;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    /// Input problem: missing section, bad flag value, unsupported input.
    #[error("{0}")]
    Input(String),
}

pub struct Outcome {
    pub payload: serde_json::Value,
    pub text: String,
    pub negative: bool,
}

fn outcome(payload: impl Serialize, text: String, negative: bool) -> Outcome {
    Outcome {
        payload: serde_json::to_value(payload).expect("reports serialize"),
        text,
        negative,
    }
}

fn render_checks<'a>(out: &mut String, title: &str, checks: impl IntoIterator<Item = (&'a str, &'a Check)>) {
    let _ = writeln!(out, "{title}");
    for (name, check) in checks {
        let status = if check.passed { "pass" } else { "FAIL" };
        let _ = write!(out, "  {name:<24} {status}");
        if let Some(r) = &check.residual {
            let _ = write!(out, "  [{}: {}]", r.at, r.value);
        }
        out.push('\n');
    }
}

fn opt_rational(v: &Option<Rational>) -> String {
    v.as_ref().map_or("undetermined".into(), format_rational)
}

/// Renders a vector field in the manifest syntax.
pub fn format_field(field: &[MPoly]) -> String {
    let mut parts = Vec::new();
    for (i, c) in field.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let basis = format!("d_{}", c.vars().name(i));
        parts.push(match c.constant_value() {
            Some(v) if v == Rational::from_integer(1.into()) => basis,
            _ if c.num_terms() == 1 => format!("{c}*{basis}"),
            _ => format!("({c})*{basis}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn format_rat_field(field: &[RatFunc]) -> Vec<String> {
    field.iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct VerifyPayload {
    coordinates: Vec<String>,
    euler: String,
    euler_inferred: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<String>>,
    #[serde(serialize_with = "opt_rational_ser")]
    d: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_d_matches: Option<bool>,
    axioms: AxiomReport,
    saito: SaitoReport,
    passed: bool,
}

fn opt_rational_ser<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&format_rational(v)),
        None => s.serialize_none(),
    }
}

struct Verification {
    axioms: AxiomReport,
    saito: SaitoReport,
}

impl Verification {
    fn of(ambient: &AmbientManifold) -> Self {
        Verification {
            axioms: verify_frobenius(ambient),
            saito: verify_saito(ambient),
        }
    }

    fn passed(&self) -> bool {
        self.axioms.passed() && self.saito.passed()
    }

    fn render(&self, out: &mut String) {
        render_checks(out, "Frobenius axioms", self.axioms.checks());
        render_checks(out, "Saito identities", self.saito.checks());
    }
}

pub fn verify(manifest: &Manifest) -> Result<Outcome, CommandError> {
    let ambient = &manifest.ambient;
    let v = Verification::of(ambient);
    let d = v.axioms.d.clone();
    let expected_d_matches = manifest.expected_d.as_ref().map(|e| d.as_ref() == Some(e));
    let passed = v.passed() && expected_d_matches != Some(false);

    let mut text = String::new();
    let _ = writeln!(text, "coordinates: {}", ambient.coords().names().join(", "));
    let euler = format_field(ambient.euler());
    let inferred = manifest.inferred_euler.is_some();
    let _ = writeln!(text, "euler: {euler}{}", if inferred { "  (inferred)" } else { "" });
    let _ = writeln!(text, "D = {}", opt_rational(&d));
    if let (Some(expected), Some(ok)) = (&manifest.expected_d, expected_d_matches) {
        let _ = writeln!(
            text,
            "expected D = {}: {}",
            format_rational(expected),
            if ok { "matches" } else { "MISMATCH" }
        );
    }
    v.render(&mut text);
    let _ = writeln!(text, "result: {}", if passed { "all checks pass" } else { "FAILED" });

    let payload = VerifyPayload {
        coordinates: ambient.coords().names().to_vec(),
        euler,
        euler_inferred: inferred,
        weights: manifest
            .inferred_euler
            .as_ref()
            .map(|e| e.weights.iter().map(format_rational).collect()),
        d,
        expected_d_matches,
        axioms: v.axioms,
        saito: v.saito,
        passed,
    };
    Ok(outcome(payload, text, !passed))
}

fn require_submanifold(manifest: &Manifest) -> Result<&Embedding, CommandError> {
    manifest
        .submanifold
        .as_ref()
        .ok_or_else(|| CommandError::Input("manifest has no [submanifold] section".into()))
}

#[derive(Serialize)]
struct InducedView {
    unit: Vec<String>,
    euler: Vec<String>,
}

#[derive(Serialize)]
struct CheckPayload {
    dimension: usize,
    codimension: usize,
    criterion: CriterionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    induced: Option<InducedView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corollary: Option<CorollaryDiagnostics>,
}

fn render_criterion(out: &mut String, r: &CriterionReport) {
    let _ = writeln!(out, "nondegenerate: {}", r.nondegenerate);
    let _ = writeln!(out, "flat: {}", r.flat);
    if let Some(e) = &r.hypothesis_error {
        let _ = writeln!(out, "hypothesis: {e}");
    }
    render_checks(
        out,
        "criterion",
        [
            ("unit parallel", &r.unit_parallel),
            ("product closure", &r.closure),
            ("shape scalar", &r.shape_is_scalar),
            ("shape dual", &r.shape_dual),
        ],
    );
    if let Some(l) = &r.lambda {
        let _ = writeln!(out, "lambda = {l}");
    }
    let _ = writeln!(out, "D = {}", opt_rational(&r.d));
    if let Some(dn) = &r.d_n {
        let _ = writeln!(out, "D_N = {dn}");
    }
    let d = &r.diagnostics;
    let _ = writeln!(
        out,
        "unit tangent: {}, euler tangent: {}, totally geodesic: {}",
        d.e_tangent, d.euler_tangent, d.totally_geodesic
    );
    let _ = writeln!(out, "verdict: {}", r.verdict);
}

pub fn submanifold_check(manifest: &Manifest) -> Result<Outcome, CommandError> {
    let emb = require_submanifold(manifest)?;
    let ambient = &manifest.ambient;
    let mut text = String::new();
    let payload = match analyze(emb, ambient) {
        Ok(analysis) => {
            let (structure, oracle) = induced_structure(emb, ambient, &analysis.geometry);
            let corollary = corollary_diagnostics(emb, ambient, &analysis);
            render_criterion(&mut text, &analysis.report);
            let _ = writeln!(
                text,
                "induced-structure oracle: {}",
                if oracle.passed { "pass" } else { "fail" }
            );
            CheckPayload {
                dimension: emb.n(),
                codimension: emb.codimension(),
                criterion: analysis.report,
                oracle: Some(oracle),
                induced: structure.map(|s| InducedView {
                    unit: format_rat_field(&s.unit),
                    euler: format_rat_field(&s.euler),
                }),
                corollary: Some(corollary),
            }
        }
        Err(_) => {
            let report = frobsub_core::natural::theorem_a_verdict(emb, ambient);
            render_criterion(&mut text, &report);
            CheckPayload {
                dimension: emb.n(),
                codimension: emb.codimension(),
                criterion: report,
                oracle: None,
                induced: None,
                corollary: None,
            }
        }
    };
    let negative = payload.criterion.verdict != Verdict::Natural;
    Ok(outcome(payload, text, negative))
}

#[derive(Serialize)]
struct ClassifyPayload {
    classification: HypersurfaceClass,
    criterion: CriterionReport,
}

pub fn classify(manifest: &Manifest) -> Result<Outcome, CommandError> {
    let emb = require_submanifold(manifest)?;
    if emb.codimension() != 1 {
        return Err(CommandError::Input(format!(
            "classify needs a hypersurface; submanifold has codimension {}",
            emb.codimension()
        )));
    }
    let ambient = &manifest.ambient;
    let analysis = analyze(emb, ambient)
        .map_err(|e| CommandError::Input(format!("induced geometry: {e}")))?;
    let class = classify_hypersurface(emb, ambient, &analysis)
        .map_err(|e| CommandError::Input(e.to_string()))?;
    let mut text = String::new();
    render_criterion(&mut text, &analysis.report);
    let _ = writeln!(text, "case: {:?}", class.case);
    if let Some(via) = class.via {
        let _ = writeln!(text, "natural via: {via}");
    }
    let _ = writeln!(
        text,
        "predicted natural: {}, consistent with criterion: {}",
        class.predicted_natural, class.consistent
    );
    let negative = class.verdict != Verdict::Natural || !class.consistent;
    Ok(outcome(
        ClassifyPayload {
            classification: class,
            criterion: analysis.report,
        },
        text,
        negative,
    ))
}

#[derive(Serialize)]
struct GeneratorView {
    polynomial: String,
    provenance: Vec<frobsub_core::family::Provenance>,
}

#[derive(Serialize)]
struct FamilyPayload {
    parameters: Vec<String>,
    generators: Vec<GeneratorView>,
    cleared_denominators: Vec<String>,
    solution: FamilySolution,
}

pub fn solve_family(manifest: &Manifest) -> Result<Outcome, CommandError> {
    let emb = require_submanifold(manifest)?;
    let ambient = &manifest.ambient;
    let cs = collect_constraints(emb, ambient).map_err(|e| CommandError::Input(e.to_string()))?;
    let solution =
        solve_single_parameter(&cs, emb, ambient).map_err(|e| CommandError::Input(e.to_string()))?;
    let mut text = String::new();
    let _ = writeln!(text, "parameters: {}", cs.params.names().join(", "));
    let _ = writeln!(text, "generators: {}", cs.generators.len());
    for g in &cs.generators {
        let _ = writeln!(text, "  {}", g.poly);
    }
    if let Some(g) = &solution.gcd {
        let _ = writeln!(text, "gcd: {g}");
    }
    let _ = writeln!(text, "status: {:?}", solution.status);
    let param = solution.parameter.clone().unwrap_or_default();
    for (title, list) in [
        ("confirmed", &solution.confirmed),
        ("unconfirmed", &solution.unconfirmed),
        ("boundary", &solution.boundary_members),
    ] {
        for m in list {
            let _ = write!(
                text,
                "{title}: {param} = {}  verdict {}, oracle {}",
                format_rational(&m.value),
                m.verdict,
                if m.oracle_passed { "pass" } else { "fail" }
            );
            if let Some(reason) = &m.reason {
                let _ = write!(text, "  ({reason})");
            }
            text.push('\n');
        }
    }
    let negative = solution.confirmed.is_empty()
        && solution.status != frobsub_core::family::SolveStatus::AllMembers;
    let payload = FamilyPayload {
        parameters: cs.params.names().to_vec(),
        generators: cs
            .generators
            .iter()
            .map(|g| GeneratorView {
                polynomial: g.poly.to_string(),
                provenance: g.provenance.clone(),
            })
            .collect(),
        cleared_denominators: cs
            .cleared_denominators
            .iter()
            .map(|(_, d)| d.to_string())
            .collect(),
        solution,
    };
    Ok(outcome(payload, text, negative))
}

#[derive(Serialize)]
struct ProductPayload {
    coordinates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prepotential: Option<String>,
    metric: Vec<Vec<String>>,
    unit: String,
    euler: String,
    axioms: AxiomReport,
    saito: SaitoReport,
    passed: bool,
}

/// Builds `M × A` and verifies it; returns the outcome and the product
/// rendered as a manifest.
pub fn construct_product(manifest: &Manifest) -> Result<(Outcome, String), CommandError> {
    let product = product_with_line(&manifest.ambient)
        .map_err(|e| CommandError::Input(e.to_string()))?;
    let v = Verification::of(&product);
    let passed = v.passed();
    let coords = product.coords().names().to_vec();
    let metric: Vec<Vec<String>> = product
        .metric()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect();
    let prepotential = product.prepotential().map(|f| f.to_string());
    let unit = format_field(product.unit());
    let euler = format_field(product.euler());

    let mut text = String::new();
    let _ = writeln!(text, "coordinates: {}", coords.join(", "));
    if let Some(f) = &prepotential {
        let _ = writeln!(text, "prepotential: {f}");
    }
    let _ = writeln!(text, "unit: {unit}");
    let _ = writeln!(text, "euler: {euler}");
    let _ = writeln!(text, "D = {}", opt_rational(&v.axioms.d));
    v.render(&mut text);
    let _ = writeln!(text, "result: {}", if passed { "all checks pass" } else { "FAILED" });

    let mut toml_text = String::from("[manifold]\n");
    let quoted = |items: &[String]| {
        items.iter().map(|s| format!("\"{s}\"")).collect::<Vec<_>>().join(", ")
    };
    let _ = writeln!(toml_text, "coordinates = [{}]", quoted(&coords));
    if let Some(f) = &prepotential {
        let _ = writeln!(toml_text, "prepotential = \"{f}\"");
    }
    let rows: Vec<String> = metric.iter().map(|r| format!("[{}]", quoted(r))).collect();
    let _ = writeln!(toml_text, "metric = [{}]", rows.join(", "));
    let _ = writeln!(toml_text, "unit = \"{unit}\"");
    let _ = writeln!(toml_text, "euler = \"{euler}\"");

    let payload = ProductPayload {
        coordinates: coords,
        prepotential,
        metric,
        unit,
        euler,
        axioms: v.axioms,
        saito: v.saito,
        passed,
    };
    Ok((outcome(payload, text, !passed), toml_text))
}
