//! Parameter constraints for families of embeddings.
//!
//! Every residual of the criterion is required to vanish identically in τ,
//! so each τ-coefficient of its numerator becomes a polynomial condition on
//! the parameters.

use serde::Serialize;

use crate::algebra::gcd::gcd_all;
use crate::algebra::{
    factor_rational_roots, format_rational, AlgebraError, MPoly, RatFunc, Rational, UPoly, Vars,
};
use crate::frobenius::AmbientManifold;
use crate::geometry::{Embedding, GeometryError};
use crate::natural::{analyze, induced_structure, Residuals, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("induced metric is generically degenerate: {0}")]
    Degenerate(#[from] GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    UnitParallel,
    Closure,
    Shape,
    Flatness,
    NondegeneracyBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    /// Monic polynomial in the parameters only.
    pub poly: MPoly,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub params: Vars,
    pub generators: Vec<Generator>,
    /// Denominators cleared from residuals, over `τ ++ params`.
    pub cleared_denominators: Vec<(Provenance, MPoly)>,
    /// `det G` over `τ ++ params`.
    pub metric_determinant: RatFunc,
    sub_dim: usize,
}

impl ConstraintSet {
    pub fn is_inconsistent(&self) -> bool {
        self.generators.iter().any(|g| g.poly.is_constant())
    }
}

/// Extracts the parameter constraints of every criterion condition.
pub fn collect_constraints(
    emb: &Embedding,
    ambient: &AmbientManifold,
) -> Result<ConstraintSet, FamilyError> {
    let analysis = analyze(emb, ambient)?;
    let n = emb.n();
    let params = Vars::new(emb.params().to_vec());
    let sources: [(Provenance, Residuals); 4] = [
        (Provenance::UnitParallel, analysis.unit.residuals.clone()),
        (Provenance::Closure, analysis.closure.residuals.clone()),
        (Provenance::Shape, analysis.shape.residuals.clone()),
        (Provenance::Flatness, analysis.flatness_residuals()),
    ];
    let tau: Vec<usize> = (0..n).collect();
    let mut generators: Vec<Generator> = Vec::new();
    let mut cleared = Vec::new();
    for (provenance, residuals) in sources {
        for (_, r) in residuals {
            if r.is_zero() {
                continue;
            }
            if !r.denom().is_one() && !cleared.iter().any(|(_, d)| d == r.denom()) {
                cleared.push((provenance, r.denom().clone()));
            }
            for coefficient in r.numer().coefficients_in(&tau).into_values() {
                let poly = coefficient.reindex(&params)?.monic();
                add_generator(&mut generators, poly, provenance);
            }
        }
    }
    generators.sort_by(|a, b| a.poly.total_degree().cmp(&b.poly.total_degree()).then_with(|| a.poly.to_string().cmp(&b.poly.to_string())));
    Ok(ConstraintSet {
        params,
        generators,
        cleared_denominators: cleared,
        metric_determinant: analysis.geometry.metric.det()?,
        sub_dim: n,
    })
}

fn add_generator(generators: &mut Vec<Generator>, poly: MPoly, provenance: Provenance) {
    if poly.is_zero() {
        return;
    }
    match generators.iter_mut().find(|g| g.poly == poly) {
        Some(g) => {
            if !g.provenance.contains(&provenance) {
                g.provenance.push(provenance);
                g.provenance.sort();
            }
        }
        None => generators.push(Generator {
            poly,
            provenance: vec![provenance],
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// Rational roots found and checked.
    Solved,
    /// No constraints: every member satisfies the criterion generically.
    AllMembers,
    /// A nonzero constant generator or a root-free gcd.
    NoNaturalMembers,
    /// More than one parameter; generators are reported unsolved.
    MultiParameter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberCheck {
    #[serde(serialize_with = "crate::check::rational")]
    pub value: Rational,
    pub multiplicity: u32,
    pub verdict: Verdict,
    pub oracle_passed: bool,
    /// Cleared denominator or metric determinant vanishes identically here.
    pub on_boundary: bool,
    pub confirmed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySolution {
    pub status: SolveStatus,
    pub parameter: Option<String>,
    /// Monic gcd of all generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squarefree: Option<String>,
    pub confirmed: Vec<MemberCheck>,
    pub unconfirmed: Vec<MemberCheck>,
    /// Monic cofactor of the gcd without rational roots, if nontrivial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_factor: Option<String>,
    /// Rational zeros of the boundary polynomials, checked individually
    /// because the generic computation does not cover them.
    pub boundary_members: Vec<MemberCheck>,
}

impl FamilySolution {
    pub fn confirmed_values(&self) -> Vec<Rational> {
        self.confirmed.iter().map(|c| c.value.clone()).collect()
    }
}

/// Solves a one-parameter constraint set over ℚ and confirms every root by
/// re-running the criterion and the induced-structure oracle on the member.
pub fn solve_single_parameter(
    cs: &ConstraintSet,
    emb: &Embedding,
    ambient: &AmbientManifold,
) -> Result<FamilySolution, FamilyError> {
    let mut solution = FamilySolution {
        status: SolveStatus::Solved,
        parameter: None,
        gcd: None,
        squarefree: None,
        confirmed: Vec::new(),
        unconfirmed: Vec::new(),
        residual_factor: None,
        boundary_members: Vec::new(),
    };
    if cs.params.len() > 1 {
        solution.status = SolveStatus::MultiParameter;
        return Ok(solution);
    }
    let Some(g) = gcd_all(cs.generators.iter().map(|g| &g.poly)) else {
        solution.status = SolveStatus::AllMembers;
        return Ok(solution);
    };
    solution.gcd = Some(g.to_string());
    if g.is_constant() {
        solution.status = SolveStatus::NoNaturalMembers;
        return Ok(solution);
    }
    let name = cs.params.name(0).to_string();
    solution.parameter = Some(name.clone());

    let boundary = boundary_polynomials(cs)?;
    let boundary_roots: Vec<Rational> = boundary
        .iter()
        .filter(|p| !p.is_constant())
        .map(|p| UPoly::from_mpoly(p).and_then(|u| factor_rational_roots(&u)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flat_map(|f| f.roots.into_iter().map(|(r, _)| r))
        .collect();

    let upoly = UPoly::from_mpoly(&g)?;
    solution.squarefree = Some(
        upoly
            .squarefree_part()
            .to_mpoly(&cs.params, 0)
            .to_string(),
    );
    let factored = factor_rational_roots(&upoly)?;
    if factored.residual.degree().unwrap_or(0) > 0 {
        solution.residual_factor = Some(factored.residual.to_mpoly(&cs.params, 0).to_string());
    }
    for (root, multiplicity) in factored.roots {
        let on_boundary = boundary_roots.contains(&root);
        let member = check_member(emb, ambient, &name, root, multiplicity, on_boundary);
        if member.confirmed {
            solution.confirmed.push(member);
        } else {
            solution.unconfirmed.push(member);
        }
    }
    for root in boundary_roots {
        if solution.confirmed.iter().chain(&solution.unconfirmed).any(|m| m.value == root)
            || solution.boundary_members.iter().any(|m| m.value == root)
        {
            continue;
        }
        solution
            .boundary_members
            .push(check_member(emb, ambient, &name, root, 0, true));
    }
    solution.boundary_members.sort_by(|a, b| a.value.cmp(&b.value));
    if solution.confirmed.is_empty() && solution.unconfirmed.is_empty() {
        solution.status = SolveStatus::NoNaturalMembers;
    }
    Ok(solution)
}

/// Parameter polynomials whose zeros make a cleared denominator or `det G`
/// vanish identically in τ: the gcd of each one's τ-coefficients.
fn boundary_polynomials(cs: &ConstraintSet) -> Result<Vec<MPoly>, AlgebraError> {
    let tau: Vec<usize> = (0..cs.sub_dim).collect();
    let mut polys: Vec<MPoly> = cs.cleared_denominators.iter().map(|(_, d)| d.clone()).collect();
    polys.push(cs.metric_determinant.numer().clone());
    polys
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let coefficients: Vec<MPoly> = p
                .coefficients_in(&tau)
                .into_values()
                .map(|c| c.reindex(&cs.params))
                .collect::<Result<_, _>>()?;
            Ok(gcd_all(coefficients.iter()).unwrap_or_else(|| MPoly::one(&cs.params)))
        })
        .collect()
}

fn check_member(
    emb: &Embedding,
    ambient: &AmbientManifold,
    name: &str,
    value: Rational,
    multiplicity: u32,
    on_boundary: bool,
) -> MemberCheck {
    let member = emb
        .specialize(&[(name.to_string(), value.clone())])
        .expect("parameter belongs to the embedding");
    let (verdict, oracle_passed) = match analyze(&member, ambient) {
        Ok(analysis) => {
            let (_, oracle) = induced_structure(&member, ambient, &analysis.geometry);
            (analysis.report.verdict, oracle.passed)
        }
        Err(_) => (Verdict::HypothesisFailed, false),
    };
    let confirmed = !on_boundary && verdict == Verdict::Natural && oracle_passed;
    let reason = if confirmed {
        None
    } else if verdict == Verdict::HypothesisFailed {
        Some("hypothesis fails for this member".to_string())
    } else if on_boundary {
        Some(format!(
            "{name} = {} annihilates a cleared denominator or det G",
            format_rational(&value)
        ))
    } else if verdict != Verdict::Natural {
        Some("criterion fails for this member".to_string())
    } else {
        Some("induced-structure oracle fails".to_string())
    };
    MemberCheck {
        value,
        multiplicity,
        verdict,
        oracle_passed,
        on_boundary,
        confirmed,
        reason,
    }
}
