use num_traits::Zero;

use super::{third_derivatives, verify_frobenius, AmbientManifold, FrobeniusError, Tables};
use crate::algebra::{int, MPoly, Monomial, Rational, Vars};
use crate::check::label;

/// `N × 𝒜` with the line coordinate `z`: metric `ḡ ⊕ dz²`, `X∘∂_z = 0`,
/// `∂_z∘∂_z = (2/D)∂_z`, `e = e_N + (D/2)∂_z`, `ℰ = ℰ_N + (D/2)z∂_z`.
///
/// The result is returned as constructed; callers verify it.
pub fn product_with_line(n: &AmbientManifold) -> Result<AmbientManifold, FrobeniusError> {
    let report = verify_frobenius(n);
    if !report.passed() {
        let failed: Vec<&str> = report
            .checks()
            .iter()
            .filter(|(_, c)| !c.passed)
            .map(|(name, _)| *name)
            .collect();
        return Err(FrobeniusError::Unsupported(format!(
            "factor is not a Frobenius manifold (failed: {})",
            failed.join(", ")
        )));
    }
    let d = report.d.expect("passed report carries D");
    if d.is_zero() {
        return Err(FrobeniusError::Unsupported(
            "product with a line needs D ≠ 0".into(),
        ));
    }

    let m = n.dim();
    let z_name = fresh_name(n.coords(), "z");
    let mut names = n.coords().names().to_vec();
    names.push(z_name);
    let coords = Vars::new(names);
    let lift = |p: &MPoly| p.reindex(&coords).expect("superset of variables");
    let half_d = &d / int(2);
    let two_over_d = int(2) / &d;

    let mut metric: Vec<Vec<Rational>> = n
        .metric()
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(Rational::zero());
            r
        })
        .collect();
    let mut last = vec![Rational::zero(); m + 1];
    last[m] = int(1);
    metric.push(last);

    let mut unit: Vec<MPoly> = n.unit().iter().map(lift).collect();
    unit.push(MPoly::constant(&coords, half_d.clone()));
    let mut euler: Vec<MPoly> = n.euler().iter().map(lift).collect();
    euler.push(MPoly::var(&coords, m).scale(&half_d));

    match n.prepotential() {
        Some(f) => {
            let cubic = MPoly::var(&coords, m).pow(3).scale(&(&two_over_d / int(6)));
            let f = &lift(f) + &cubic;
            AmbientManifold::from_prepotential(f, metric, unit, euler)
        }
        None => {
            let lower = Tables::from_fn(m + 1, |i, j, k| {
                if i < m && j < m && k < m {
                    lift(n.lower().get(i, j, k))
                } else if i == m && j == m && k == m {
                    MPoly::constant(&coords, two_over_d.clone())
                } else {
                    MPoly::zero(&coords)
                }
            });
            AmbientManifold::from_tables(coords, metric, lower, unit, euler)
        }
    }
}

fn fresh_name(vars: &Vars, base: &str) -> String {
    if vars.index_of(base).is_none() {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|n| vars.index_of(n).is_none())
        .expect("unbounded search")
}

/// Integrates `c_ijk` back to a potential with no terms of degree below three.
///
/// Uses Euler's identity on each homogeneous piece: if `c` has degree `p`,
/// `F_(p+3) = Σ t^i t^j t^k c_ijk / ((p+1)(p+2)(p+3))`. The result is
/// verified by differentiating again.
pub fn reconstruct_prepotential(lower: &Tables, coords: &Vars) -> Result<MPoly, FrobeniusError> {
    let m = coords.len();
    if lower.dim() != m {
        return Err(FrobeniusError::Dimension(format!(
            "tables of dimension {}, expected {m}",
            lower.dim()
        )));
    }
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let c = lower.get(i, j, k).reindex(coords)?;
                for (mono, coeff) in c.terms() {
                    let p = mono.degree() as i64;
                    let mut exps = mono.exponents().to_vec();
                    exps[i] += 1;
                    exps[j] += 1;
                    exps[k] += 1;
                    let w = coeff / int((p + 1) * (p + 2) * (p + 3));
                    terms.push((Monomial::from_exponents(exps), w));
                }
            }
        }
    }
    let f = MPoly::from_terms(coords, terms);
    let check = third_derivatives(&f);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let expected = lower.get(i, j, k).reindex(coords)?;
                if check.get(i, j, k) != &expected {
                    return Err(FrobeniusError::NotIntegrable(label("c", &[i, j, k])));
                }
            }
        }
    }
    Ok(f)
}
