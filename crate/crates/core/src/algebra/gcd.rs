//! Multivariate polynomial GCD over ℚ.
//!
//! Recursive scheme: split off the content with respect to the first occurring
//! variable, run a primitive pseudo-remainder sequence on the primitive parts,
//! and recombine. Results are normalized to leading coefficient one.

use super::poly::MPoly;

pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return MPoly::one(&vars);
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return MPoly::monomial(&vars, m, num_traits::One::one());
    }
    if a == b {
        return a.monic();
    }

    let Some(x) = (0..vars.len()).find(|&i| a.involves(i) || b.involves(i)) else {
        return MPoly::one(&vars);
    };
    if !a.involves(x) {
        return gcd(a, &content(b, x));
    }
    if !b.involves(x) {
        return gcd(&content(a, x), b);
    }

    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides polynomial");
    let pb = b.div_exact(&cb).expect("content divides polynomial");
    let g = primitive_prs(pa, pb, x);
    (&c * &g).monic()
}

/// GCD of a list; stops early once it reaches a constant.
pub fn gcd_all<'a, I>(polys: I) -> Option<MPoly>
where
    I: IntoIterator<Item = &'a MPoly>,
{
    let mut acc: Option<MPoly> = None;
    for p in polys {
        let next = match &acc {
            None => p.monic(),
            Some(g) => gcd(g, p),
        };
        if next.is_one() {
            return Some(next);
        }
        acc = Some(next);
    }
    acc
}

pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.vars());
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// GCD of the coefficients of `p` viewed as a polynomial in variable `x`.
pub fn content(p: &MPoly, x: usize) -> MPoly {
    let coeffs = p.to_univariate(x);
    gcd_all(coeffs.iter().filter(|c| !c.is_zero())).unwrap_or_else(|| MPoly::zero(p.vars()))
}

fn primitive_part(p: &MPoly, x: usize) -> MPoly {
    let c = content(p, x);
    p.div_exact(&c).expect("content divides polynomial").monic()
}

fn primitive_prs(a: MPoly, b: MPoly, x: usize) -> MPoly {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&a, &b, x);
        if r.is_zero() {
            return primitive_part(&b, x);
        }
        if !r.involves(x) {
            return MPoly::one(a.vars());
        }
        a = b;
        b = primitive_part(&r, x);
    }
}

/// A nonzero multiple of `a` reduced modulo `b` in the variable `x`.
fn pseudo_remainder(a: &MPoly, b: &MPoly, x: usize) -> MPoly {
    let vars = a.vars();
    let bc = b.to_univariate(x);
    let db = bc.len() - 1;
    let lead_b = &bc[db];
    let mut r = a.to_univariate(x);
    while r.len() > db {
        let dr = r.len() - 1;
        let lead_r = r[dr].clone();
        let shift = dr - db;
        for coeff in r.iter_mut() {
            *coeff = &*coeff * lead_b;
        }
        for (i, c) in bc.iter().enumerate() {
            let t = c * &lead_r;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(MPoly::is_zero) {
            r.pop();
        }
    }
    MPoly::from_univariate(vars, x, &r).monic()
}
