//! Induced geometry of polynomially parametrized submanifolds of a flat
//! ambient space.
//!
//! Everything lives in the ring ℚ(τ, k): the submanifold coordinates followed
//! by the symbolic parameters. Because the ambient coordinates are flat,
//! ambient covariant derivatives are plain partial derivatives.

mod embedding;
mod tensors;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraError, MPoly, RatFunc, RatMatrix, Rational, Vars};
use crate::check::{label, Check};
use crate::frobenius::AmbientManifold;

pub use embedding::Embedding;
pub use tensors::{christoffel, riemann, Christoffel, Riemann};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Jacobian has rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("induced metric is degenerate (det G ≡ 0)")]
    Degenerate,
    #[error("field is not normal to the submanifold: {0}")]
    NotNormal(String),
}

/// A vector along N written in ambient components.
pub type AmbientVector = Vec<RatFunc>;

#[derive(Clone, Debug)]
pub struct InducedGeometry {
    ring: Vars,
    n: usize,
    ambient_metric: Vec<Vec<Rational>>,
    /// `m × n`, column α is `∂t/∂τ^α`.
    pub jacobian: RatMatrix,
    pub metric: RatMatrix,
    pub metric_inv: RatMatrix,
    /// `J G⁻¹ Jᵀ ḡ`.
    pub projector: RatMatrix,
    pub christoffel: Christoffel,
    pub riemann: Riemann,
    /// `h[α][β]`, ambient components.
    pub second_fundamental: Vec<Vec<AmbientVector>>,
    pub flat: bool,
}

/// Components of a field along N split into tangential and normal parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSplit {
    /// `a^α` with `pr(X) = a^α ∂_α`.
    pub tangential: Vec<RatFunc>,
    /// `X − J a`.
    pub normal: AmbientVector,
    pub tangent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeOperator {
    /// Column α holds `A_ξ ∂_α`.
    pub matrix: RatMatrix,
    /// `ḡ(h(∂α,∂β), ξ) = g(A_ξ ∂α, ∂β)`.
    pub duality: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectorLaws {
    pub idempotent: Check,
    pub fixes_tangents: Check,
    pub self_adjoint: Check,
}

impl ProjectorLaws {
    pub fn passed(&self) -> bool {
        self.idempotent.passed && self.fixes_tangents.passed && self.self_adjoint.passed
    }
}

/// Computes `J`, `G = JᵀḡJ`, `P`, `Γ`, the curvature and `h`.
pub fn induced_geometry(
    emb: &Embedding,
    ambient: &AmbientManifold,
) -> Result<InducedGeometry, GeometryError> {
    let m = ambient.dim();
    if emb.m() != m {
        return Err(GeometryError::Dimension(format!(
            "embedding has {} components, ambient dimension is {m}",
            emb.m()
        )));
    }
    let n = emb.n();
    let ring = emb.ring().clone();
    let jacobian = emb.jacobian();
    let rank = jacobian.rank();
    if rank < n {
        return Err(GeometryError::RankDeficient { rank, expected: n });
    }
    let gbar = RatMatrix::from_rationals(&ring, ambient.metric());
    let jt = jacobian.transpose();
    let jt_gbar = jt.try_mul(&gbar)?;
    let metric = jt_gbar.try_mul(&jacobian)?;
    let metric_inv = match metric.inverse() {
        Ok(inv) => inv,
        Err(AlgebraError::Singular) => return Err(GeometryError::Degenerate),
        Err(e) => return Err(e.into()),
    };
    let projector = jacobian.try_mul(&metric_inv)?.try_mul(&jt_gbar)?;
    let christoffel = christoffel(&metric, &metric_inv, n);
    let riemann = riemann(&christoffel, &ring);
    let flat = riemann.is_zero();

    let mut second_fundamental = vec![Vec::with_capacity(n); n];
    let complement = identity_minus(&projector);
    for (alpha, row) in second_fundamental.iter_mut().enumerate() {
        for beta in 0..n {
            let dd: Vec<RatFunc> = (0..m)
                .map(|i| jacobian.get(i, alpha).differentiate(beta))
                .collect();
            row.push(mat_vec(&complement, &dd));
        }
    }

    Ok(InducedGeometry {
        ring,
        n,
        ambient_metric: ambient.metric().to_vec(),
        jacobian,
        metric,
        metric_inv,
        projector,
        christoffel,
        riemann,
        second_fundamental,
        flat,
    })
}

impl InducedGeometry {
    pub fn ring(&self) -> &Vars {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.jacobian.rows()
    }

    /// `ḡ(u, v)`.
    pub fn ambient_inner(&self, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
        let mut acc = RatFunc::zero(&self.ring);
        for (i, row) in self.ambient_metric.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if !g.is_zero() && !u[i].is_zero() && !v[j].is_zero() {
                    acc = &acc + &(&u[i] * &v[j]).scale(g);
                }
            }
        }
        acc
    }

    /// Column α of `J`.
    pub fn tangent(&self, alpha: usize) -> AmbientVector {
        self.jacobian.col(alpha)
    }

    /// `J a`.
    pub fn push_forward(&self, a: &[RatFunc]) -> AmbientVector {
        mat_vec(&self.jacobian, a)
    }

    /// `(I − P) v`.
    pub fn normal_part(&self, v: &[RatFunc]) -> AmbientVector {
        let pv = mat_vec(&self.projector, v);
        v.iter().zip(&pv).map(|(a, b)| a - b).collect()
    }

    /// Solves `G a = Jᵀ ḡ v` and splits `v = J a + v^⊥`.
    pub fn split(&self, v: &[RatFunc]) -> Result<FieldSplit, GeometryError> {
        let rhs: Vec<RatFunc> = (0..self.n)
            .map(|alpha| self.ambient_inner(&self.tangent(alpha), v))
            .collect();
        let tangential = self.metric.solve_vector(&rhs)?;
        let along = self.push_forward(&tangential);
        let normal: AmbientVector = v.iter().zip(&along).map(|(x, y)| x - y).collect();
        let tangent = normal.iter().all(RatFunc::is_zero);
        Ok(FieldSplit {
            tangential,
            normal,
            tangent,
        })
    }

    pub fn totally_geodesic(&self) -> bool {
        self.second_fundamental
            .iter()
            .flatten()
            .flatten()
            .all(RatFunc::is_zero)
    }

    /// `P² = P`, `PJ = J`, `ḡP = (ḡP)ᵀ`.
    pub fn projector_laws(&self) -> ProjectorLaws {
        let p = &self.projector;
        let m = self.m();
        let p2 = p.try_mul(p).expect("square");
        let idempotent = Check::all_zero(
            pairs(m, m).map(|(i, j)| (label("P²-P", &[i, j]), p2.get(i, j) - p.get(i, j))),
        );
        let pj = p.try_mul(&self.jacobian).expect("shapes agree");
        let fixes_tangents = Check::all_zero(pairs(m, self.n).map(|(i, a)| {
            (label("PJ-J", &[i, a]), pj.get(i, a) - self.jacobian.get(i, a))
        }));
        let gbar = RatMatrix::from_rationals(&self.ring, &self.ambient_metric);
        let gp = gbar.try_mul(p).expect("square");
        let self_adjoint = Check::all_zero(
            pairs(m, m)
                .filter(|(i, j)| i < j)
                .map(|(i, j)| (label("ḡP", &[i, j]), gp.get(i, j) - gp.get(j, i))),
        );
        ProjectorLaws {
            idempotent,
            fixes_tangents,
            self_adjoint,
        }
    }
}

/// Pulls an ambient polynomial field back to N and splits it.
pub fn pullback_field(
    emb: &Embedding,
    geom: &InducedGeometry,
    x: &[MPoly],
) -> Result<FieldSplit, GeometryError> {
    if x.len() != emb.m() {
        return Err(GeometryError::Dimension(format!(
            "field has {} components, expected {}",
            x.len(),
            emb.m()
        )));
    }
    let along: Vec<RatFunc> = x
        .iter()
        .map(|p| RatFunc::from_poly(emb.pullback(p)))
        .collect();
    geom.split(&along)
}

/// Shape operator of a normal field `ξ` along N.
pub fn shape_operator(
    geom: &InducedGeometry,
    xi: &[RatFunc],
) -> Result<ShapeOperator, GeometryError> {
    let n = geom.n();
    let m = geom.m();
    if xi.len() != m {
        return Err(GeometryError::Dimension(format!(
            "normal field has {} components, expected {m}",
            xi.len()
        )));
    }
    let tangential = mat_vec(&geom.projector, xi);
    if let Some((i, r)) = tangential.iter().enumerate().find(|(_, r)| !r.is_zero()) {
        return Err(GeometryError::NotNormal(format!(
            "tangential component {} is {r}",
            i + 1
        )));
    }
    let mut rhs = RatMatrix::zeros(geom.ring(), n, n);
    for alpha in 0..n {
        let dxi: Vec<RatFunc> = xi.iter().map(|c| c.differentiate(alpha)).collect();
        for beta in 0..n {
            rhs.set(beta, alpha, -geom.ambient_inner(&geom.tangent(beta), &dxi));
        }
    }
    let matrix = geom.metric.solve(&rhs)?;
    let ga = geom.metric.try_mul(&matrix)?;
    let duality = Check::all_zero(pairs(n, n).map(|(alpha, beta)| {
        let lhs = geom.ambient_inner(&geom.second_fundamental[alpha][beta], xi);
        (label("⟨h,ξ⟩-g(Aξ,·)", &[alpha, beta]), &lhs - ga.get(beta, alpha))
    }));
    Ok(ShapeOperator { matrix, duality })
}

pub(crate) fn mat_vec(a: &RatMatrix, v: &[RatFunc]) -> Vec<RatFunc> {
    (0..a.rows())
        .map(|i| {
            let mut acc = RatFunc::zero(a.vars());
            for (j, x) in v.iter().enumerate() {
                let e = a.get(i, j);
                if !e.is_zero() && !x.is_zero() {
                    acc = &acc + &(e * x);
                }
            }
            acc
        })
        .collect()
}

fn identity_minus(p: &RatMatrix) -> RatMatrix {
    let id = RatMatrix::identity(p.vars(), p.rows());
    id.try_sub(p).expect("square")
}

pub(crate) fn pairs(a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..a).flat_map(move |i| (0..b).map(move |j| (i, j)))
}
