//! Rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::MPoly;
use super::rational::Rational;
use super::AlgebraError;

/// Dense univariate polynomial, coefficient of `x^i` at index `i`, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn from_mpoly(p: &MPoly) -> Result<Self, AlgebraError> {
        let occurring: Vec<usize> = (0..p.vars().len()).filter(|&i| p.involves(i)).collect();
        if occurring.len() > 1 {
            return Err(AlgebraError::NotUnivariate(p.to_string()));
        }
        let Some(&x) = occurring.first() else {
            return Ok(UPoly::new(vec![p.constant_value().unwrap_or_default()]));
        };
        let mut coeffs = vec![Rational::zero(); p.degree_in(x) as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exponents()[x] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn to_mpoly(&self, vars: &super::poly::Vars, index: usize) -> MPoly {
        let coeffs: Vec<MPoly> = self
            .0
            .iter()
            .map(|c| MPoly::constant(vars, c.clone()))
            .collect();
        MPoly::from_univariate(vars, index, &coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        UPoly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.0.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, c) in divisor.0.iter().enumerate() {
                    rem[i + j] -= &q * c;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / (gcd(self, self'))`, monic.
    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactorization {
    /// Distinct rational roots in increasing order, each with its multiplicity.
    pub roots: Vec<(Rational, u32)>,
    /// Monic cofactor without rational roots.
    pub residual: UPoly,
    /// Leading coefficient of the input.
    pub leading: Rational,
}

/// Peels every rational root off `p`.
///
/// `p = leading * Π (x - r)^m * residual` holds exactly.
pub fn factor_rational_roots(p: &UPoly) -> Result<RootFactorization, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let leading = p.leading();
    let mut rest = p.monic();
    let candidates = rational_root_candidates(&rest.squarefree_part())?;
    let mut roots = Vec::new();
    for r in candidates {
        let linear = UPoly::new(vec![-r.clone(), Rational::one()]);
        let mut multiplicity = 0;
        loop {
            let (q, rem) = rest.div_rem(&linear);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            multiplicity += 1;
        }
        if multiplicity > 0 {
            roots.push((r, multiplicity));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootFactorization {
        roots,
        residual: rest,
        leading,
    })
}

/// Rational roots of a monic polynomial via the rational-root theorem.
fn rational_root_candidates(p: &UPoly) -> Result<Vec<Rational>, AlgebraError> {
    let mut found = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(found);
    }
    // Strip the factor x^k first.
    let zeros = p.0.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        found.push(Rational::zero());
    }
    let shifted = UPoly::new(p.0[zeros..].to_vec());
    if shifted.degree().unwrap_or(0) == 0 {
        return Ok(found);
    }
    // Integer coefficients with unit content.
    let lcm_den = shifted
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = shifted
        .0
        .iter()
        .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let constant = ints[0].abs();
    let lead = ints[ints.len() - 1].abs();
    let (Some(ps), Some(qs)) = (divisors(&constant), divisors(&lead)) else {
        return Err(AlgebraError::RootSearchTooLarge);
    };
    let mut seen = std::collections::BTreeSet::new();
    for q in &qs {
        for num in &ps {
            for sign in [1, -1] {
                let r = Rational::new(num * BigInt::from(sign), q.clone());
                if seen.insert(r.clone()) && shifted.eval(&r).is_zero() {
                    found.push(r);
                }
            }
        }
    }
    Ok(found)
}

/// Largest coefficient magnitude for which divisors are enumerated by trial
/// division.
const TRIAL_DIVISION_LIMIT: u64 = 100_000_000_000_000;

/// Positive divisors by trial division, `None` above the limit.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.abs().to_u64().filter(|&v| v <= TRIAL_DIVISION_LIMIT)?;
    if v == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}
