use num_traits::Zero;
use serde::Serialize;

use super::AmbientManifold;
use crate::algebra::{MPoly, Rational};
use crate::check::{label, Check};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// `e∘X = X` and `∇̄e = 0`.
    pub unit: Check,
    /// `c_ijk` totally symmetric.
    pub symmetry: Check,
    /// WDVV.
    pub associativity: Check,
    /// `∂_l c_ijk` totally symmetric.
    pub potentiality: Check,
    /// `L_ℰ(∘) = ∘`.
    pub euler_product: Check,
    /// `L_ℰ(ḡ) = D·ḡ`.
    pub euler_metric: Check,
    /// `∂_i∂_j ℰ^k = 0`.
    pub euler_affine: Check,
    #[serde(serialize_with = "crate::check::opt_rational")]
    pub d: Option<Rational>,
}

impl AxiomReport {
    pub fn checks(&self) -> [(&'static str, &Check); 7] {
        [
            ("unit", &self.unit),
            ("symmetry", &self.symmetry),
            ("associativity", &self.associativity),
            ("potentiality", &self.potentiality),
            ("euler_product", &self.euler_product),
            ("euler_metric", &self.euler_metric),
            ("euler_affine", &self.euler_affine),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}

/// Checks every Frobenius axiom as a polynomial identity.
pub fn verify_frobenius(a: &AmbientManifold) -> AxiomReport {
    let m = a.dim();
    let c = a.lower();
    let up = a.upper();
    let q = euler_gradient(a);

    let unit = unit_flat(a).and(Check::all_zero(pairs(m).map(|(l, k)| {
        let mut acc = -delta(a, l, k);
        for (j, ej) in a.unit().iter().enumerate() {
            if !ej.is_zero() {
                acc = &acc + &(ej * up.get(j, l, k));
            }
        }
        (label("e∘∂", &[l, k]), acc)
    })));

    let symmetry = Check::all_zero(ordered_triples(m).flat_map(|(i, j, k)| {
        [(j, i, k), (i, k, j), (k, j, i)]
            .into_iter()
            .map(move |(x, y, z)| (label("c", &[i, j, k]), c.get(i, j, k) - c.get(x, y, z)))
    }));

    let associativity = Check::all_zero(quads(m).filter(|&(i, _, k, _)| i < k).map(
        |(i, j, k, l)| {
            let mut acc = MPoly::zero(a.coords());
            for n in 0..m {
                acc = &acc + &(up.get(i, j, n) * c.get(k, l, n));
                acc = &acc - &(up.get(k, j, n) * c.get(i, l, n));
            }
            (label("wdvv", &[i, j, k, l]), acc)
        },
    ));

    let potentiality = Check::all_zero(quads(m).flat_map(|(i, j, k, l)| {
        let d = c.get(i, j, k).differentiate(l);
        let swapped = c.get(l, j, k).differentiate(i);
        std::iter::once((label("∂c", &[l, i, j, k]), &d - &swapped))
    }));

    let euler_product = Check::all_zero(product_triples(m).map(|(i, j, k)| {
        (label("L_E c", &[i, j, k]), euler_product_residual(a, &q, i, j, k))
    }));

    let (euler_metric, d) = euler_metric_check(a, &q);
    let euler_affine = euler_affine_check(a);

    AxiomReport {
        unit,
        symmetry,
        associativity,
        potentiality,
        euler_product,
        euler_metric,
        euler_affine,
        d,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoReport {
    /// `Φ_i ∂_j = Φ_j ∂_i`.
    pub higgs_symmetric: Check,
    /// `[Φ_i, Φ_j] = 0`, the 1/z² coefficient.
    pub higgs_commuting: Check,
    /// `∂_iΦ_j = ∂_jΦ_i`, the 1/z coefficient.
    pub higgs_integrable: Check,
    /// `∂_iΦ_ℰ − [∇̄ℰ, Φ_i] − Φ_i = 0`, the mixed dz coefficient.
    pub euler_higgs: Check,
    /// `[Φ_ℰ, Φ_i] = 0`.
    pub euler_higgs_commuting: Check,
    /// `∂_i∇̄ℰ = 0`, the dz/z coefficient.
    pub euler_flat: Check,
    /// `∇̄e = 0`.
    pub unit_flat: Check,
    /// `Φ_e = −Id`.
    pub unit_higgs: Check,
    /// `∇̄ḡ = 0`.
    pub metric_flat: Check,
    /// `Φ* = Φ`.
    pub higgs_self_adjoint: Check,
    /// `∇̄ℰ + (∇̄ℰ)* = D·Id`.
    pub euler_metric: Check,
    #[serde(serialize_with = "crate::check::opt_rational")]
    pub d: Option<Rational>,
}

impl SaitoReport {
    pub fn checks(&self) -> [(&'static str, &Check); 11] {
        [
            ("higgs_symmetric", &self.higgs_symmetric),
            ("higgs_commuting", &self.higgs_commuting),
            ("higgs_integrable", &self.higgs_integrable),
            ("euler_higgs", &self.euler_higgs),
            ("euler_higgs_commuting", &self.euler_higgs_commuting),
            ("euler_flat", &self.euler_flat),
            ("unit_flat", &self.unit_flat),
            ("unit_higgs", &self.unit_higgs),
            ("metric_flat", &self.metric_flat),
            ("higgs_self_adjoint", &self.higgs_self_adjoint),
            ("euler_metric", &self.euler_metric),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}

/// Checks the Saito-structure identities, with `Φ_i = −c^k_{il}` as matrices.
pub fn verify_saito(a: &AmbientManifold) -> SaitoReport {
    let m = a.dim();
    let vars = a.coords();
    let up = a.upper();
    let q = euler_gradient(a);
    // phi[i] row k, column l: (Φ_i)^k_l
    let phi: Vec<Vec<Vec<MPoly>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| (0..m).map(|l| -up.get(i, l, k)).collect())
                .collect()
        })
        .collect();
    let phi_e = contract_higgs(a, a.euler(), &phi);
    let phi_unit = contract_higgs(a, a.unit(), &phi);

    let higgs_symmetric = Check::all_zero(
        product_triples(m).map(|(i, j, k)| (label("Φ", &[i, j, k]), &phi[i][k][j] - &phi[j][k][i])),
    );

    let higgs_commuting = Check::all_zero((0..m).flat_map(|i| {
        let phi = &phi;
        (i + 1..m).flat_map(move |j| {
            let ab = matmul(vars, &phi[i], &phi[j]);
            let ba = matmul(vars, &phi[j], &phi[i]);
            entries_diff(&ab, &ba)
                .into_iter()
                .map(move |(k, l, r)| (label("[Φ,Φ]", &[i, j, k, l]), r))
        })
    }));

    let higgs_integrable = Check::all_zero(quads(m).filter(|&(i, j, _, _)| i < j).map(
        |(i, j, k, l)| {
            (
                label("dΦ", &[i, j, k, l]),
                &phi[j][k][l].differentiate(i) - &phi[i][k][l].differentiate(j),
            )
        },
    ));

    let euler_higgs = Check::all_zero((0..m).flat_map(|i| {
        let qphi = matmul(vars, &q, &phi[i]);
        let phiq = matmul(vars, &phi[i], &q);
        let phi = &phi;
        let phi_e = &phi_e;
        (0..m)
            .flat_map(move |k| (0..m).map(move |l| (k, l)))
            .map(move |(k, l)| {
                let r = &(&phi_e[k][l].differentiate(i) - &(&qphi[k][l] - &phiq[k][l]))
                    - &phi[i][k][l];
                (label("dΦ_E", &[i, k, l]), r)
            })
            .collect::<Vec<_>>()
    }));

    let euler_higgs_commuting = Check::all_zero((0..m).flat_map(|i| {
        let ab = matmul(vars, &phi_e, &phi[i]);
        let ba = matmul(vars, &phi[i], &phi_e);
        entries_diff(&ab, &ba)
            .into_iter()
            .map(move |(k, l, r)| (label("[Φ_E,Φ]", &[i, k, l]), r))
    }));

    let euler_flat = euler_affine_check(a);
    let unit_flat = unit_flat(a);
    let unit_higgs = Check::all_zero((0..m).flat_map(|k| {
        let phi_unit = &phi_unit;
        (0..m).map(move |l| {
            let mut r = phi_unit[k][l].clone();
            if k == l {
                r = &r + &MPoly::one(vars);
            }
            (label("Φ_e+Id", &[k, l]), r)
        })
    }));
    let metric_flat = Check::pass();

    let g = a.metric();
    let higgs_self_adjoint = Check::all_zero((0..m).flat_map(|i| {
        let phi = &phi;
        (0..m).flat_map(move |k| {
            (k + 1..m).map(move |l| {
                let lower = |r: usize, s: usize| {
                    let mut acc = MPoly::zero(vars);
                    for (p, grp) in g[r].iter().enumerate() {
                        if !grp.is_zero() {
                            acc = &acc + &phi[i][p][s].scale(grp);
                        }
                    }
                    acc
                };
                (label("ḡΦ", &[i, k, l]), &lower(k, l) - &lower(l, k))
            })
        })
    }));

    // (∇̄ℰ)* = ḡ⁻¹ Qᵀ ḡ
    let ginv = a.metric_inverse();
    let adjoint: Vec<Vec<MPoly>> = (0..m)
        .map(|k| {
            (0..m)
                .map(|l| {
                    let mut acc = MPoly::zero(vars);
                    for p in 0..m {
                        for r in 0..m {
                            let w = &ginv[k][p] * &g[r][l];
                            if !w.is_zero() {
                                acc = &acc + &q[r][p].scale(&w);
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let sum: Vec<Vec<MPoly>> = (0..m)
        .map(|k| (0..m).map(|l| &q[k][l] + &adjoint[k][l]).collect())
        .collect();
    let d = sum[0][0].constant_value();
    let euler_metric = match &d {
        None => Check::fail("∇̄E+(∇̄E)*[1,1]", &sum[0][0]),
        Some(d) => Check::all_zero((0..m).flat_map(|k| {
            let sum = &sum;
            (0..m).map(move |l| {
                let mut r = sum[k][l].clone();
                if k == l {
                    r = &r - &MPoly::constant(vars, d.clone());
                }
                (label("∇̄E+(∇̄E)*-D", &[k, l]), r)
            })
        })),
    };
    let d = d.filter(|_| euler_metric.passed);

    SaitoReport {
        higgs_symmetric,
        higgs_commuting,
        higgs_integrable,
        euler_higgs,
        euler_higgs_commuting,
        euler_flat,
        unit_flat,
        unit_higgs,
        metric_flat,
        higgs_self_adjoint,
        euler_metric,
        d,
    }
}

/// `Q[k][l] = ∂_l ℰ^k`.
pub(crate) fn euler_gradient(a: &AmbientManifold) -> Vec<Vec<MPoly>> {
    let m = a.dim();
    (0..m)
        .map(|k| (0..m).map(|l| a.euler()[k].differentiate(l)).collect())
        .collect()
}

fn euler_product_residual(
    a: &AmbientManifold,
    q: &[Vec<MPoly>],
    i: usize,
    j: usize,
    k: usize,
) -> MPoly {
    let m = a.dim();
    let up = a.upper();
    let c = up.get(i, j, k);
    let mut acc = -c;
    for l in 0..m {
        let e = &a.euler()[l];
        if !e.is_zero() {
            acc = &acc + &(e * &c.differentiate(l));
        }
        acc = &acc - &(up.get(i, j, l) * &q[k][l]);
        acc = &acc + &(&q[l][i] * up.get(l, j, k));
        acc = &acc + &(&q[l][j] * up.get(i, l, k));
    }
    acc
}

fn euler_metric_check(a: &AmbientManifold, q: &[Vec<MPoly>]) -> (Check, Option<Rational>) {
    let m = a.dim();
    let g = a.metric();
    let vars = a.coords();
    let lie = |i: usize, j: usize| {
        let mut acc = MPoly::zero(vars);
        for k in 0..m {
            if !g[k][j].is_zero() {
                acc = &acc + &q[k][i].scale(&g[k][j]);
            }
            if !g[i][k].is_zero() {
                acc = &acc + &q[k][j].scale(&g[i][k]);
            }
        }
        acc
    };
    let (pi, pj) = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| !g[i][j].is_zero())
        .expect("nonsingular metric has a nonzero entry");
    let pivot = lie(pi, pj);
    let Some(d) = pivot.constant_value().map(|v| v / &g[pi][pj]) else {
        return (Check::fail(label("L_E g", &[pi, pj]), pivot), None);
    };
    let check = Check::all_zero((0..m).flat_map(|i| (i..m).map(move |j| (i, j))).map(
        |(i, j)| {
            let r = &lie(i, j) - &MPoly::constant(vars, &d * &g[i][j]);
            (label("L_E g - D g", &[i, j]), r)
        },
    ));
    let d = Some(d).filter(|_| check.passed);
    (check, d)
}

fn euler_affine_check(a: &AmbientManifold) -> Check {
    let m = a.dim();
    Check::all_zero(product_triples(m).filter(|&(i, j, _)| i <= j).map(|(i, j, k)| {
        (
            label("∂∂E", &[i, j, k]),
            a.euler()[k].differentiate(i).differentiate(j),
        )
    }))
}

fn unit_flat(a: &AmbientManifold) -> Check {
    let m = a.dim();
    Check::all_zero(
        (0..m).flat_map(|k| (0..m).map(move |l| (label("∂e", &[l, k]), a.unit()[k].differentiate(l)))),
    )
}

fn delta(a: &AmbientManifold, i: usize, j: usize) -> MPoly {
    if i == j {
        MPoly::one(a.coords())
    } else {
        MPoly::zero(a.coords())
    }
}

/// `(Φ_X)^k_l = X^i (Φ_i)^k_l`.
fn contract_higgs(a: &AmbientManifold, x: &[MPoly], phi: &[Vec<Vec<MPoly>>]) -> Vec<Vec<MPoly>> {
    let m = a.dim();
    (0..m)
        .map(|k| {
            (0..m)
                .map(|l| {
                    let mut acc = MPoly::zero(a.coords());
                    for (i, xi) in x.iter().enumerate() {
                        if !xi.is_zero() {
                            acc = &acc + &(xi * &phi[i][k][l]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn matmul(vars: &crate::algebra::Vars, a: &[Vec<MPoly>], b: &[Vec<MPoly>]) -> Vec<Vec<MPoly>> {
    let m = a.len();
    (0..m)
        .map(|k| {
            (0..m)
                .map(|l| {
                    let mut acc = MPoly::zero(vars);
                    for p in 0..m {
                        if !a[k][p].is_zero() && !b[p][l].is_zero() {
                            acc = &acc + &(&a[k][p] * &b[p][l]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn entries_diff(a: &[Vec<MPoly>], b: &[Vec<MPoly>]) -> Vec<(usize, usize, MPoly)> {
    let m = a.len();
    (0..m)
        .flat_map(|k| (0..m).map(move |l| (k, l, &a[k][l] - &b[k][l])))
        .collect()
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (0..m).map(move |j| (i, j)))
}

fn product_triples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..m).flat_map(move |i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
}

fn ordered_triples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    product_triples(m).filter(|&(i, j, k)| i <= j && j <= k)
}

fn quads(m: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    product_triples(m).flat_map(move |(i, j, k)| (0..m).map(move |l| (i, j, k, l)))
}
