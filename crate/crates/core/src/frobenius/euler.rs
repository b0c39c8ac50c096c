use num_traits::{One, Zero};

use super::{verify_frobenius, AmbientManifold, FrobeniusError};
use crate::algebra::{solve_rational_system, MPoly, Rational};

/// Diagonal Euler field `Σ d_i t^i ∂_i` found by quasi-homogeneity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferredEuler {
    pub weights: Vec<Rational>,
    pub field: Vec<MPoly>,
    pub d: Rational,
    /// False when some weight was undetermined and set to zero.
    pub unique: bool,
}

/// Solves for weights making every monomial of `f` of the same weight
/// `D + 1`, every nonzero metric entry `ḡ_ij` of weight `D` (`d_i + d_j = D`)
/// and the unit directions of weight one (`[e, ℰ] = e`). Falls back to
/// `d_1 = 1` when the unit has no constant component. The result is then
/// checked against the Euler axioms.
pub fn infer_diagonal_euler(
    f: &MPoly,
    metric: &[Vec<Rational>],
    unit: &[MPoly],
) -> Result<InferredEuler, FrobeniusError> {
    let coords = f.vars().clone();
    let m = coords.len();
    let (w, dd) = (m, m + 1);
    let unknowns = m + 2;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut equation = |coeffs: &[(usize, Rational)], value: Rational| {
        let mut row = vec![Rational::zero(); unknowns];
        for (i, c) in coeffs {
            row[*i] += c;
        }
        rows.push(row);
        rhs.push(value);
    };

    for (mono, _) in f.terms() {
        let mut coeffs: Vec<(usize, Rational)> = mono
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, Rational::from_integer(e.into())))
            .collect();
        coeffs.push((w, -Rational::one()));
        equation(&coeffs, Rational::zero());
    }
    for i in 0..m.min(metric.len()) {
        for j in i..m.min(metric[i].len()) {
            if !metric[i][j].is_zero() {
                equation(
                    &[(i, Rational::one()), (j, Rational::one()), (dd, -Rational::one())],
                    Rational::zero(),
                );
            }
        }
    }
    equation(&[(w, Rational::one()), (dd, -Rational::one())], Rational::one());
    let mut normalized = false;
    for (k, e) in unit.iter().enumerate() {
        if e.constant_value().is_some_and(|v| !v.is_zero()) {
            equation(&[(k, Rational::one())], Rational::one());
            normalized = true;
        }
    }
    if !normalized && m > 0 {
        equation(&[(0, Rational::one())], Rational::one());
    }

    let solution = solve_rational_system(&rows, &rhs, unknowns).ok_or_else(|| {
        FrobeniusError::NoDiagonalEuler("monomial weights are inconsistent".into())
    })?;
    let weights: Vec<Rational> = solution.values[..m].to_vec();
    let field: Vec<MPoly> = weights
        .iter()
        .enumerate()
        .map(|(i, d)| MPoly::var(&coords, i).scale(d))
        .collect();

    let ambient =
        AmbientManifold::from_prepotential(f.clone(), metric.to_vec(), unit.to_vec(), field.clone())?;
    let report = verify_frobenius(&ambient);
    if !report.euler_product.passed || !report.euler_metric.passed {
        return Err(FrobeniusError::NoDiagonalEuler(
            "weighted field fails the Euler axioms".into(),
        ));
    }
    Ok(InferredEuler {
        weights,
        field,
        d: report.d.expect("euler_metric passed"),
        unique: solution.is_unique(),
    })
}
