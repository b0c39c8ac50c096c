//! Dense linear systems over ℚ.

use num_traits::Zero;

use super::rational::Rational;

/// Solves `A x = b` for a possibly rectangular system.
///
/// Returns one solution (free variables set to zero) or `None` when the
/// system is inconsistent. `pivots` lists the determined unknowns.
pub fn solve_rational_system(
    a: &[Vec<Rational>],
    b: &[Rational],
    unknowns: usize,
) -> Option<RationalSolution> {
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(unknowns, Rational::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=unknowns {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][unknowns].clone();
    }
    Some(RationalSolution { values: x, pivots })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    pub values: Vec<Rational>,
    pub pivots: Vec<usize>,
}

impl RationalSolution {
    pub fn is_unique(&self) -> bool {
        self.pivots.len() == self.values.len()
    }
}
