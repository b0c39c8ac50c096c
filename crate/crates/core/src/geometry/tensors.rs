use crate::algebra::{RatFunc, RatMatrix, Vars};

/// `Γ^γ_{αβ}` stored at `(γ, α, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Christoffel {
    n: usize,
    data: Vec<RatFunc>,
}

impl Christoffel {
    pub fn get(&self, gamma: usize, alpha: usize, beta: usize) -> &RatFunc {
        &self.data[(gamma * self.n + alpha) * self.n + beta]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }
}

/// `R^ρ_{σμν}` stored at `(ρ, σ, μ, ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Riemann {
    n: usize,
    data: Vec<RatFunc>,
}

impl Riemann {
    pub fn get(&self, rho: usize, sigma: usize, mu: usize, nu: usize) -> &RatFunc {
        &self.data[((rho * self.n + sigma) * self.n + mu) * self.n + nu]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Nonzero components with their indices.
    pub fn nonzero(&self) -> impl Iterator<Item = ([usize; 4], &RatFunc)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(move |(idx, r)| {
            ([idx / (n * n * n), idx / (n * n) % n, idx / n % n, idx % n], r)
        })
    }
}

/// Levi-Civita symbols of `metric`, differentiating in the first `n` ring
/// variables.
pub fn christoffel(metric: &RatMatrix, metric_inv: &RatMatrix, n: usize) -> Christoffel {
    let vars = metric.vars();
    // first-kind symbols [αβ, δ] = ½(∂_α G_δβ + ∂_β G_δα − ∂_δ G_αβ)
    let dg: Vec<RatMatrix> = (0..n).map(|a| metric.differentiate(a)).collect();
    let mut first = vec![RatFunc::zero(vars); n * n * n];
    for alpha in 0..n {
        for beta in 0..n {
            for delta in 0..n {
                let s = &(dg[alpha].get(delta, beta) + dg[beta].get(delta, alpha))
                    - dg[delta].get(alpha, beta);
                first[(alpha * n + beta) * n + delta] = s.scale(&crate::algebra::rat(1, 2));
            }
        }
    }
    let mut data = Vec::with_capacity(n * n * n);
    for gamma in 0..n {
        for alpha in 0..n {
            for beta in 0..n {
                let mut acc = RatFunc::zero(vars);
                for delta in 0..n {
                    let g = metric_inv.get(gamma, delta);
                    let f = &first[(alpha * n + beta) * n + delta];
                    if !g.is_zero() && !f.is_zero() {
                        acc = &acc + &(g * f);
                    }
                }
                data.push(acc);
            }
        }
    }
    Christoffel { n, data }
}

/// `R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}`.
pub fn riemann(gamma: &Christoffel, vars: &Vars) -> Riemann {
    let n = gamma.n;
    let mut data = vec![RatFunc::zero(vars); n * n * n * n];
    if gamma.is_zero() {
        return Riemann { n, data };
    }
    for rho in 0..n {
        for sigma in 0..n {
            for mu in 0..n {
                for nu in mu + 1..n {
                    let mut acc = &gamma.get(rho, nu, sigma).differentiate(mu)
                        - &gamma.get(rho, mu, sigma).differentiate(nu);
                    for lambda in 0..n {
                        acc = &acc + &(gamma.get(rho, mu, lambda) * gamma.get(lambda, nu, sigma));
                        acc = &acc - &(gamma.get(rho, nu, lambda) * gamma.get(lambda, mu, sigma));
                    }
                    let at = |a: usize, b: usize| ((rho * n + sigma) * n + a) * n + b;
                    data[at(nu, mu)] = -&acc;
                    data[at(mu, nu)] = acc;
                }
            }
        }
    }
    Riemann { n, data }
}
