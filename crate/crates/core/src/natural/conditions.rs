use crate::algebra::RatFunc;
use crate::check::{label, Check};
use crate::frobenius::{AmbientManifold, Tables};
use crate::geometry::{
    mat_vec, pullback_field, shape_operator, AmbientVector, Embedding, FieldSplit, GeometryError,
    InducedGeometry, ShapeOperator,
};

/// Labelled residuals of an identity that should vanish.
pub type Residuals = Vec<(String, RatFunc)>;

fn check_of(residuals: &Residuals) -> Check {
    Check::all_zero(residuals.iter().map(|(l, r)| (l.clone(), r)))
}

#[derive(Clone, Debug)]
pub struct UnitParallel {
    pub check: Check,
    pub residuals: Residuals,
    pub e_n: FieldSplit,
}

/// `∇_β e_N = 0`, i.e. `∂_β a^γ + Γ^γ_{βα} a^α ≡ 0` for `e_N = a^α ∂_α`.
pub fn check_unit_parallel(
    emb: &Embedding,
    geom: &InducedGeometry,
    ambient: &AmbientManifold,
) -> Result<UnitParallel, GeometryError> {
    let e_n = pullback_field(emb, geom, ambient.unit())?;
    let residuals = covariant_derivative(geom, &e_n.tangential)
        .into_iter()
        .enumerate()
        .flat_map(|(beta, row)| {
            row.into_iter()
                .enumerate()
                .map(move |(gamma, r)| (label("∇e_N", &[beta, gamma]), r))
        })
        .collect();
    Ok(UnitParallel {
        check: check_of(&residuals),
        residuals,
        e_n,
    })
}

/// `M[β][γ] = ∂_β a^γ + Γ^γ_{βα} a^α`.
pub(crate) fn covariant_derivative(geom: &InducedGeometry, a: &[RatFunc]) -> Vec<Vec<RatFunc>> {
    let n = geom.n();
    (0..n)
        .map(|beta| {
            (0..n)
                .map(|gamma| {
                    let mut acc = a[gamma].differentiate(beta);
                    for (alpha, aa) in a.iter().enumerate() {
                        let g = geom.christoffel.get(gamma, beta, alpha);
                        if !g.is_zero() && !aa.is_zero() {
                            acc = &acc + &(g * aa);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Ambient structure constants `c^k_ij` composed with the embedding.
pub fn pulled_back_products(emb: &Embedding, ambient: &AmbientManifold) -> Tables {
    ambient.upper().map(|p| emb.pullback(p))
}

/// `(X∘Y)^k = X^i Y^j c^k_ij(t(τ))` along N.
pub fn multiply_along(products: &Tables, x: &[RatFunc], y: &[RatFunc]) -> AmbientVector {
    let m = products.dim();
    let vars = x[0].vars().clone();
    let mut out = vec![RatFunc::zero(&vars); m];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let xy = xi * yj;
            for (k, slot) in out.iter_mut().enumerate() {
                let c = products.get(i, j, k);
                if !c.is_zero() {
                    *slot = &*slot + &(&xy * &RatFunc::from_poly(c.clone()));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub check: Check,
    /// Components of `(I−P)(J_α∘J_β)` for `α ≤ β`.
    pub residuals: Residuals,
    /// `J_α∘J_β` for `α ≤ β`, in that order.
    pub products: Vec<((usize, usize), AmbientVector)>,
    /// `c_N^γ_αβ` at `[α][β][γ]` when closure holds.
    pub c_n: Option<Vec<Vec<Vec<RatFunc>>>>,
    /// `c_Nαβγ = ḡ(J_α∘J_β, J_γ)` when closure holds.
    pub c_n_lower: Option<Vec<Vec<Vec<RatFunc>>>>,
    /// `P(J_α∘ν) ≡ 0` for the normal vectors spanned by `I−P`.
    pub lemma_c: Option<Check>,
}

/// `TN∘TN ⊆ TN`, the induced product and the normal-invariance check.
pub fn check_product_closure(
    emb: &Embedding,
    geom: &InducedGeometry,
    ambient: &AmbientManifold,
) -> Result<Closure, GeometryError> {
    let n = geom.n();
    let m = geom.m();
    let tables = pulled_back_products(emb, ambient);
    let tangents: Vec<AmbientVector> = (0..n).map(|a| geom.tangent(a)).collect();
    let mut products = Vec::new();
    let mut residuals = Vec::new();
    for alpha in 0..n {
        for beta in alpha..n {
            let v = multiply_along(&tables, &tangents[alpha], &tangents[beta]);
            for (k, r) in geom.normal_part(&v).into_iter().enumerate() {
                residuals.push((label("(I-P)(J∘J)", &[alpha, beta, k]), r));
            }
            products.push(((alpha, beta), v));
        }
    }
    let check = check_of(&residuals);
    if !check.passed {
        return Ok(Closure {
            check,
            residuals,
            products,
            c_n: None,
            c_n_lower: None,
            lemma_c: None,
        });
    }

    let zero = RatFunc::zero(geom.ring());
    let mut c_n = vec![vec![vec![zero.clone(); n]; n]; n];
    let mut c_n_lower = vec![vec![vec![zero; n]; n]; n];
    for ((alpha, beta), v) in &products {
        let split = geom.split(v)?;
        for gamma in 0..n {
            c_n[*alpha][*beta][gamma] = split.tangential[gamma].clone();
            c_n[*beta][*alpha][gamma] = split.tangential[gamma].clone();
            let lowered = geom.ambient_inner(v, &tangents[gamma]);
            c_n_lower[*alpha][*beta][gamma] = lowered.clone();
            c_n_lower[*beta][*alpha][gamma] = lowered;
        }
    }

    let complement: Vec<AmbientVector> = {
        let id_minus_p = |i: usize, j: usize| {
            let delta = if i == j {
                RatFunc::one(geom.ring())
            } else {
                RatFunc::zero(geom.ring())
            };
            &delta - geom.projector.get(i, j)
        };
        (0..m)
            .map(|j| (0..m).map(|i| id_minus_p(i, j)).collect::<AmbientVector>())
            .filter(|col| col.iter().any(|c| !c.is_zero()))
            .collect()
    };
    let lemma_c = Check::all_zero(tangents.iter().enumerate().flat_map(|(alpha, t)| {
        let tables = &tables;
        complement.iter().enumerate().flat_map(move |(j, nu)| {
            let w = multiply_along(tables, t, nu);
            mat_vec(&geom.projector, &w)
                .into_iter()
                .enumerate()
                .map(move |(k, r)| (label("P(J∘ν)", &[alpha, j, k]), r))
        })
    }));

    Ok(Closure {
        check,
        residuals,
        products,
        c_n: Some(c_n),
        c_n_lower: Some(c_n_lower),
        lemma_c: Some(lemma_c),
    })
}

#[derive(Clone, Debug)]
pub struct ShapeCondition {
    pub check: Check,
    /// Entries of `A − λ·Id` followed by `∂_α λ`.
    pub residuals: Residuals,
    pub lambda: RatFunc,
    pub dual: Check,
    pub euler: FieldSplit,
    pub shape: ShapeOperator,
}

/// `A_{ℰ^⊥} = λ·Id` with `λ := A¹₁` constant along N.
pub fn check_shape_condition(
    emb: &Embedding,
    geom: &InducedGeometry,
    ambient: &AmbientManifold,
) -> Result<ShapeCondition, GeometryError> {
    let n = geom.n();
    let euler = pullback_field(emb, geom, ambient.euler())?;
    let shape = shape_operator(geom, &euler.normal)?;
    let lambda = if n > 0 {
        shape.matrix.get(0, 0).clone()
    } else {
        RatFunc::zero(geom.ring())
    };
    let mut residuals = Vec::new();
    for alpha in 0..n {
        for beta in 0..n {
            let mut r = shape.matrix.get(alpha, beta).clone();
            if alpha == beta {
                r = &r - &lambda;
            }
            residuals.push((label("A-λI", &[alpha, beta]), r));
        }
    }
    for alpha in 0..n {
        residuals.push((label("∂λ", &[alpha]), lambda.differentiate(alpha)));
    }
    let check = check_of(&residuals);
    let dual = Check::all_zero((0..n).flat_map(|alpha| {
        let lambda = &lambda;
        let xi = &euler.normal;
        (0..n).map(move |beta| {
            let lhs = geom.ambient_inner(&geom.second_fundamental[alpha][beta], xi);
            let rhs = lambda * geom.metric.get(alpha, beta);
            (label("⟨h,ℰ^⊥⟩-λG", &[alpha, beta]), &lhs - &rhs)
        })
    }));
    Ok(ShapeCondition {
        check,
        residuals,
        lambda,
        dual,
        euler,
        shape,
    })
}
