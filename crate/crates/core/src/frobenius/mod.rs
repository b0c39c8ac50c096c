//! Frobenius manifolds presented in flat coordinates.
//!
//! The metric is a constant matrix, the product is given by polynomial
//! structure constants, and the unit and Euler fields are polynomial vector
//! fields whose flatness/affineness is checked rather than assumed.

mod axioms;
mod euler;
mod product;

use num_traits::Zero;

use crate::algebra::{AlgebraError, MPoly, RatMatrix, Rational, Vars};

pub use axioms::{verify_frobenius, verify_saito, AxiomReport, SaitoReport};
pub use euler::{infer_diagonal_euler, InferredEuler};
pub use product::{product_with_line, reconstruct_prepotential};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("metric not symmetric")]
    AsymmetricMetric,
    #[error("metric is singular")]
    SingularMetric,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no diagonal Euler field: {0}")]
    NoDiagonalEuler(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("structure constants are not third derivatives of a potential (failure at {0})")]
    NotIntegrable(String),
}

/// Rank-3 array of polynomials indexed by `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    dim: usize,
    data: Vec<MPoly>,
}

impl Tables {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> MPoly) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        Tables { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &MPoly {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> Tables {
        Tables {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Flat-coordinate Frobenius data.
///
/// `lower` holds `c_ijk = ḡ(∂i∘∂j, ∂k)`; `upper` holds `c^k_ij` at index
/// `(i, j, k)`.
#[derive(Clone, Debug)]
pub struct AmbientManifold {
    coords: Vars,
    metric: Vec<Vec<Rational>>,
    metric_inv: Vec<Vec<Rational>>,
    lower: Tables,
    upper: Tables,
    prepotential: Option<MPoly>,
    unit: Vec<MPoly>,
    euler: Vec<MPoly>,
}

impl AmbientManifold {
    pub fn from_tables(
        coords: Vars,
        metric: Vec<Vec<Rational>>,
        lower: Tables,
        unit: Vec<MPoly>,
        euler: Vec<MPoly>,
    ) -> Result<Self, FrobeniusError> {
        let m = coords.len();
        let metric_inv = invert_metric(&coords, &metric)?;
        if lower.dim != m {
            return Err(FrobeniusError::Dimension(format!(
                "structure constants have dimension {}, expected {m}",
                lower.dim
            )));
        }
        let lower = Tables {
            dim: m,
            data: lower
                .data
                .into_iter()
                .map(|p| p.reindex(&coords))
                .collect::<Result<_, _>>()?,
        };
        let upper = raise(&coords, &metric_inv, &lower);
        let unit = field_over(&coords, unit, "unit")?;
        let euler = field_over(&coords, euler, "euler")?;
        Ok(AmbientManifold {
            coords,
            metric,
            metric_inv,
            lower,
            upper,
            prepotential: None,
            unit,
            euler,
        })
    }

    pub fn from_prepotential(
        prepotential: MPoly,
        metric: Vec<Vec<Rational>>,
        unit: Vec<MPoly>,
        euler: Vec<MPoly>,
    ) -> Result<Self, FrobeniusError> {
        let coords = prepotential.vars().clone();
        let lower = third_derivatives(&prepotential);
        let mut ambient = Self::from_tables(coords, metric, lower, unit, euler)?;
        ambient.prepotential = Some(prepotential);
        Ok(ambient)
    }

    pub fn coords(&self) -> &Vars {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn metric(&self) -> &[Vec<Rational>] {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &[Vec<Rational>] {
        &self.metric_inv
    }

    pub fn metric_matrix(&self) -> RatMatrix {
        RatMatrix::from_rationals(&self.coords, &self.metric)
    }

    pub fn lower(&self) -> &Tables {
        &self.lower
    }

    pub fn upper(&self) -> &Tables {
        &self.upper
    }

    pub fn prepotential(&self) -> Option<&MPoly> {
        self.prepotential.as_ref()
    }

    pub fn unit(&self) -> &[MPoly] {
        &self.unit
    }

    pub fn euler(&self) -> &[MPoly] {
        &self.euler
    }

    pub fn with_euler(&self, euler: Vec<MPoly>) -> Result<Self, FrobeniusError> {
        let euler = field_over(&self.coords, euler, "euler")?;
        Ok(AmbientManifold {
            euler,
            ..self.clone()
        })
    }

    /// `(X∘Y)^k = X^i Y^j c^k_ij`.
    pub fn multiply(&self, x: &[MPoly], y: &[MPoly]) -> Result<Vec<MPoly>, FrobeniusError> {
        let m = self.dim();
        if x.len() != m || y.len() != m {
            return Err(FrobeniusError::Dimension(format!(
                "fields of length {} and {}, expected {m}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![MPoly::zero(&self.coords); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.upper.get(i, j, k);
                    if !c.is_zero() {
                        *slot = &*slot + &(&xy * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coordinate basis field `∂_i`.
    pub fn basis(&self, i: usize) -> Vec<MPoly> {
        (0..self.dim())
            .map(|k| {
                if k == i {
                    MPoly::one(&self.coords)
                } else {
                    MPoly::zero(&self.coords)
                }
            })
            .collect()
    }
}

/// `c_ijk = ∂i∂j∂k F`.
pub fn third_derivatives(f: &MPoly) -> Tables {
    let m = f.vars().len();
    let firsts: Vec<MPoly> = (0..m).map(|i| f.differentiate(i)).collect();
    let seconds: Vec<Vec<MPoly>> = firsts
        .iter()
        .map(|fi| (0..m).map(|j| fi.differentiate(j)).collect())
        .collect();
    Tables::from_fn(m, |i, j, k| seconds[i][j].differentiate(k))
}

/// Lowered and raised structure constants of a prepotential.
pub fn structure_constants_from_prepotential(
    f: &MPoly,
    metric: &[Vec<Rational>],
) -> Result<(Tables, Tables), FrobeniusError> {
    let coords = f.vars().clone();
    let inv = invert_metric(&coords, metric)?;
    let lower = third_derivatives(f);
    let upper = raise(&coords, &inv, &lower);
    Ok((lower, upper))
}

fn raise(coords: &Vars, inv: &[Vec<Rational>], lower: &Tables) -> Tables {
    let m = lower.dim;
    Tables::from_fn(m, |i, j, k| {
        let mut acc = MPoly::zero(coords);
        for (l, g) in inv[k].iter().enumerate() {
            if !g.is_zero() {
                acc = &acc + &lower.get(i, j, l).scale(g);
            }
        }
        acc
    })
}

fn invert_metric(
    coords: &Vars,
    metric: &[Vec<Rational>],
) -> Result<Vec<Vec<Rational>>, FrobeniusError> {
    let m = coords.len();
    if metric.len() != m || metric.iter().any(|row| row.len() != m) {
        return Err(FrobeniusError::Dimension(format!(
            "metric must be {m}x{m}"
        )));
    }
    for i in 0..m {
        for j in 0..i {
            if metric[i][j] != metric[j][i] {
                return Err(FrobeniusError::AsymmetricMetric);
            }
        }
    }
    let inv = RatMatrix::from_rationals(coords, metric)
        .inverse()
        .map_err(|_| FrobeniusError::SingularMetric)?;
    Ok((0..m)
        .map(|i| {
            (0..m)
                .map(|j| inv.get(i, j).constant_value().expect("constant inverse"))
                .collect()
        })
        .collect())
}

fn field_over(coords: &Vars, field: Vec<MPoly>, what: &str) -> Result<Vec<MPoly>, FrobeniusError> {
    if field.len() != coords.len() {
        return Err(FrobeniusError::Dimension(format!(
            "{what} field has {} components, expected {}",
            field.len(),
            coords.len()
        )));
    }
    field
        .into_iter()
        .map(|p| p.reindex(coords).map_err(FrobeniusError::from))
        .collect()
}
