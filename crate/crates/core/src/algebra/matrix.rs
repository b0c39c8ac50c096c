//! Dense matrices over ℚ(vars) with fraction-free (Bareiss) elimination.

use std::fmt;

use super::gcd::lcm;
use super::poly::{MPoly, Vars};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    vars: Vars,
    entries: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries: vec![RatFunc::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one(vars));
        }
        m
    }

    pub fn from_fn(
        vars: &Vars,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RatFunc,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.vars().same(vars), "matrix entry over foreign vars");
                entries.push(e);
            }
        }
        RatMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn from_rationals(vars: &Vars, rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self::from_fn(vars, r, c, |i, j| RatFunc::constant(vars, rows[i][j].clone()))
    }

    pub fn from_polys(vars: &Vars, rows: usize, cols: usize, polys: Vec<MPoly>) -> Self {
        assert_eq!(polys.len(), rows * cols);
        let entries: Vec<RatFunc> = polys.into_iter().map(RatFunc::from_poly).collect();
        assert!(entries.iter().all(|e| e.vars().same(vars)));
        RatMatrix {
            rows,
            cols,
            vars: vars.clone(),
            entries,
        }
    }

    /// Column vector.
    pub fn column(vars: &Vars, entries: Vec<RatFunc>) -> Self {
        assert!(entries.iter().all(|e| e.vars().same(vars)));
        RatMatrix {
            rows: entries.len(),
            cols: 1,
            vars: vars.clone(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RatFunc) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn col(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<RatFunc> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn differentiate(&self, index: usize) -> RatMatrix {
        self.map(|e| e.differentiate(index))
    }

    pub fn scale(&self, factor: &RatFunc) -> RatMatrix {
        self.map(|e| e * factor)
    }

    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(RatMatrix::from_fn(&self.vars, self.rows, rhs.cols, |i, j| {
            let mut acc = RatFunc::zero(&self.vars);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = rhs.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn try_add(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(
        &self,
        rhs: &RatMatrix,
        f: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Result<RatMatrix, AlgebraError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(AlgebraError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            vars: self.vars.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Multiplies each row by the lcm of its denominators. Returns the
    /// polynomial rows and the multipliers.
    fn clear_row_denominators(&self) -> (Vec<Vec<MPoly>>, Vec<MPoly>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut factors = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let mut l = MPoly::one(&self.vars);
            for e in &row {
                if !e.denom().is_one() {
                    l = lcm(&l, e.denom());
                }
            }
            let cleared = row
                .iter()
                .map(|e| {
                    if e.denom().is_one() {
                        e.numer() * &l
                    } else {
                        e.numer() * &l.div_exact(e.denom()).expect("lcm multiple")
                    }
                })
                .collect();
            rows.push(cleared);
            factors.push(l);
        }
        (rows, factors)
    }

    pub fn det(&self) -> Result<RatFunc, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(RatFunc::one(&self.vars));
        }
        let (mut rows, factors) = self.clear_row_denominators();
        let outcome = bareiss(&mut rows, self.cols, self.rows);
        let mut scale = MPoly::one(&self.vars);
        for f in &factors {
            scale = &scale * f;
        }
        if outcome.rank < self.rows {
            return Ok(RatFunc::zero(&self.vars));
        }
        let mut d = rows[self.rows - 1][self.cols - 1].clone();
        if outcome.negated {
            d = -d;
        }
        Ok(RatFunc::new(d, scale))
    }

    /// Rank over the fraction field, i.e. at a generic point.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (mut rows, _) = self.clear_row_denominators();
        bareiss(&mut rows, self.cols, self.cols).rank
    }

    /// Solves `self * x = rhs` for every column of `rhs`.
    ///
    /// The matrix must be square and generically invertible; otherwise a
    /// singularity error is returned.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Shape(format!(
                "solve needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if rhs.rows != self.rows {
            return Err(AlgebraError::Shape(format!(
                "right-hand side has {} rows, expected {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.rows;
        let augmented =
            RatMatrix::from_fn(&self.vars, n, n + rhs.cols, |i, j| {
                if j < n {
                    self.get(i, j).clone()
                } else {
                    rhs.get(i, j - n).clone()
                }
            });
        let (mut rows, _) = augmented.clear_row_denominators();
        let outcome = bareiss(&mut rows, n + rhs.cols, n);
        if outcome.rank < n {
            return Err(AlgebraError::Singular);
        }
        let mut solution = RatMatrix::zeros(&self.vars, n, rhs.cols);
        for c in 0..rhs.cols {
            for i in (0..n).rev() {
                let mut acc = RatFunc::from_poly(rows[i][n + c].clone());
                for j in i + 1..n {
                    if !rows[i][j].is_zero() {
                        let t = &RatFunc::from_poly(rows[i][j].clone()) * solution.get(j, c);
                        acc = &acc - &t;
                    }
                }
                let pivot = RatFunc::from_poly(rows[i][i].clone());
                solution.set(i, c, &acc / &pivot);
            }
        }
        Ok(solution)
    }

    pub fn solve_vector(&self, rhs: &[RatFunc]) -> Result<Vec<RatFunc>, AlgebraError> {
        let b = RatMatrix::column(&self.vars, rhs.to_vec());
        Ok(self.solve(&b)?.col(0))
    }

    pub fn inverse(&self) -> Result<RatMatrix, AlgebraError> {
        self.solve(&RatMatrix::identity(&self.vars, self.rows))
    }
}

struct BareissOutcome {
    rank: usize,
    negated: bool,
}

/// In-place fraction-free elimination on the first `pivot_cols` columns.
///
/// Row swaps only; on full rank the leading square block ends upper
/// triangular with the determinant (up to sign) in its last pivot.
fn bareiss(rows: &mut [Vec<MPoly>], width: usize, pivot_cols: usize) -> BareissOutcome {
    let n = rows.len();
    let vars = rows[0][0].vars().clone();
    let mut prev = MPoly::one(&vars);
    let mut negated = false;
    let mut rank = 0;
    let mut r = 0;
    for k in 0..pivot_cols.min(width) {
        if r >= n {
            break;
        }
        let Some(p) = (r..n)
            .filter(|&i| !rows[i][k].is_zero())
            .min_by_key(|&i| rows[i][k].num_terms())
        else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            negated = !negated;
        }
        for i in r + 1..n {
            for j in k + 1..width {
                let num = &(&rows[i][j] * &rows[r][k]) - &(&rows[i][k] * &rows[r][j]);
                rows[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            rows[i][k] = MPoly::zero(&vars);
        }
        prev = rows[r][k].clone();
        rank += 1;
        r += 1;
    }
    BareissOutcome { rank, negated }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn consts(rows: &[&[i64]]) -> RatMatrix {
        let vars = Vars::new(["x"]);
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        RatMatrix::from_rationals(&vars, &rows)
    }

    #[test]
    fn permutation_determinants() {
        assert_eq!(consts(&[&[0, 1], &[1, 0]]).det().unwrap().constant_value(), Some(int(-1)));
        let eta = consts(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(eta.det().unwrap().constant_value(), Some(int(-1)));
    }

    #[test]
    fn permutation_solve() {
        let m = consts(&[&[0, 1], &[1, 0]]);
        let vars = m.vars().clone();
        let b = vec![RatFunc::one(&vars), RatFunc::zero(&vars)];
        let x = m.solve_vector(&b).unwrap();
        assert_eq!(x, vec![RatFunc::zero(&vars), RatFunc::one(&vars)]);
    }

    #[test]
    fn singular_is_reported() {
        let m = consts(&[&[1, 1], &[1, 1]]);
        let vars = m.vars().clone();
        let b = vec![RatFunc::one(&vars), RatFunc::zero(&vars)];
        assert!(matches!(m.solve_vector(&b), Err(AlgebraError::Singular)));
        assert!(m.det().unwrap().is_zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn symbolic_solve_back_substitutes() {
        let vars = Vars::new(["x", "y"]);
        let x = RatFunc::from_poly(MPoly::var(&vars, 0));
        let y = RatFunc::from_poly(MPoly::var(&vars, 1));
        let one = RatFunc::one(&vars);
        let m = RatMatrix::from_fn(&vars, 2, 2, |i, j| match (i, j) {
            (0, 0) => x.clone(),
            (0, 1) => one.clone(),
            (1, 0) => &one / &y,
            _ => &x * &y,
        });
        let b = vec![y.clone(), &x + &one];
        let sol = m.solve_vector(&b).unwrap();
        let back = m.try_mul(&RatMatrix::column(&vars, sol)).unwrap();
        assert_eq!(back.col(0), b);
    }

    #[test]
    fn rectangular_rank() {
        let vars = Vars::new(["t"]);
        let t = RatFunc::from_poly(MPoly::var(&vars, 0));
        let one = RatFunc::one(&vars);
        let zero = RatFunc::zero(&vars);
        let j = RatMatrix::from_fn(&vars, 3, 2, |i, c| match (i, c) {
            (0, 0) => one.clone(),
            (0, 1) => &t * &t,
            (1, 1) => t.clone(),
            (2, 1) => one.clone(),
            _ => zero.clone(),
        });
        assert_eq!(j.rank(), 2);
    }
}
