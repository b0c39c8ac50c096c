//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ceiling;
use super::rational::{format_rational, Rational};
use super::AlgebraError;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the exponent of the earliest variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u32]>>>()
            .map(Monomial)
    }

    pub(crate) fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over ℚ in a fixed, ordered list of variables.
///
/// Terms are stored in strictly decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, value: Rational) -> Self {
        let terms = if value.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(vars.len()), value)]
        };
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_int(vars: &Vars, value: i64) -> Self {
        Self::constant(vars, Rational::from_integer(BigInt::from(value)))
    }

    /// The polynomial consisting of the single variable at `index`.
    pub fn var(vars: &Vars, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        MPoly {
            vars: vars.clone(),
            terms: vec![(Monomial::from_exponents(exps), Rational::one())],
        }
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        vars.index_of(name)
            .map(|i| Self::var(vars, i))
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn monomial(vars: &Vars, mono: Monomial, coeff: Rational) -> Self {
        assert_eq!(mono.0.len(), vars.len(), "exponent vector length");
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![(mono, coeff)]
        };
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (mono, coeff) in terms {
            assert_eq!(mono.0.len(), vars.len(), "exponent vector length");
            *acc.entry(mono).or_insert_with(Rational::zero) += coeff;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &Vars, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        ceiling::check(terms.len());
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial, `None` if any variable occurs.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[index]).max().unwrap_or(0)
    }

    /// Whether the variable at `index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[index] > 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, factor: &Rational) -> MPoly {
        if factor.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Repeated multiplication by the (usually small) base; for sparse
    /// multivariate inputs this beats squaring, whose last step multiplies
    /// two large powers.
    pub fn pow(&self, exp: u32) -> MPoly {
        if let Some(c) = self.constant_value() {
            return MPoly::constant(&self.vars, super::rational::pow_rational(&c, exp));
        }
        let mut result = MPoly::one(&self.vars);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Integer numerators over the lcm of all coefficient denominators.
    fn integer_coefficients(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
        let numers = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&denom / c.denom()))
            .collect();
        (numers, denom)
    }

    fn assert_same_vars(&self, other: &MPoly) {
        assert!(
            self.vars.same(&other.vars),
            "polynomial variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn differentiate(&self, index: usize) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[index] > 0)
            .map(|(m, c)| {
                let e = m.0[index];
                let mut exps = m.0.clone();
                exps[index] = e - 1;
                (Monomial(exps), c * Rational::from_integer(BigInt::from(e)))
            })
            .collect::<Vec<_>>();
        // Lowering one exponent keeps both the grlex order and distinctness.
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn differentiate_by(&self, name: &str) -> Result<MPoly, AlgebraError> {
        let index = self
            .vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.differentiate(index))
    }

    /// Simultaneous substitution of polynomials (over `target`) for variables.
    ///
    /// Unbound variables are carried over by name and must exist in `target`.
    pub fn substitute(
        &self,
        bindings: &[(&str, MPoly)],
        target: &Vars,
    ) -> Result<MPoly, AlgebraError> {
        let mut images: Vec<Option<MPoly>> = vec![None; self.vars.len()];
        for (name, image) in bindings {
            let index = self
                .vars
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            if !image.vars.same(target) {
                return Err(AlgebraError::VariableMismatch(format!(
                    "replacement for {name} is over {:?}, expected {:?}",
                    image.vars, target
                )));
            }
            images[index] = Some(image.clone());
        }
        for (index, slot) in images.iter_mut().enumerate() {
            if slot.is_none() && self.involves(index) {
                let name = self.vars.name(index);
                let image = MPoly::var_named(target, name).map_err(|_| {
                    AlgebraError::VariableMismatch(format!(
                        "variable {name} is neither bound nor present in {target:?}"
                    ))
                })?;
                *slot = Some(image);
            }
        }
        Ok(self.compose(&images, target))
    }

    /// Substitution by variable index; `images[i]` must be present for every
    /// variable that occurs.
    pub fn compose(&self, images: &[Option<MPoly>], target: &Vars) -> MPoly {
        let mut powers: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut result = MPoly::zero(target);
        for (mono, coeff) in &self.terms {
            let mut term = MPoly::constant(target, coeff.clone());
            for (index, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = images[index]
                    .as_ref()
                    .expect("substitution image missing for occurring variable");
                let power = powers
                    .entry((index, e))
                    .or_insert_with(|| image.pow(e))
                    .clone();
                term = &term * &power;
            }
            result = &result + &term;
        }
        result
    }

    /// Re-expresses the polynomial over another variable list containing every
    /// occurring variable name.
    pub fn reindex(&self, target: &Vars) -> Result<MPoly, AlgebraError> {
        if self.vars.same(target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (index, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.involves(index) => map.push(None),
                None => {
                    return Err(AlgebraError::VariableMismatch(format!(
                        "variable {name} not present in {target:?}"
                    )))
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            (Monomial::from_exponents(exps), c.clone())
        });
        Ok(MPoly::from_terms(target, terms))
    }

    /// Sets the variable at `index` to a rational value; the variable list is
    /// unchanged.
    pub fn eval_var(&self, index: usize, value: &Rational) -> MPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[index];
            let mut exps = m.0.clone();
            exps[index] = 0;
            let factor = num_traits::pow(value.clone(), e as usize);
            *acc.entry(Monomial(exps)).or_insert_with(Rational::zero) += c * factor;
        }
        MPoly::from_map(&self.vars, acc)
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (value, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    term *= num_traits::pow(value.clone(), e as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Groups the terms by their exponents in the selected variables. Each
    /// value is the coefficient polynomial (selected variables removed).
    pub fn coefficients_in(&self, selected: &[usize]) -> BTreeMap<Vec<u32>, MPoly> {
        let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = selected.iter().map(|&i| m.0[i]).collect();
            let mut exps = m.0.clone();
            for &i in selected {
                exps[i] = 0;
            }
            groups
                .entry(key)
                .or_default()
                .push((Monomial(exps), c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, terms)| (k, MPoly::from_terms(&self.vars, terms)))
            .collect()
    }

    /// Dense coefficient list in the variable at `index`; entry `d` is the
    /// coefficient of `x^d` (free of `x`).
    pub fn to_univariate(&self, index: usize) -> Vec<MPoly> {
        let degree = self.degree_in(index) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); degree + 1];
        for (m, c) in &self.terms {
            let e = m.0[index] as usize;
            let mut exps = m.0.clone();
            exps[index] = 0;
            buckets[e].push((Monomial(exps), c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| {
                // Terms of one bucket keep their relative order after zeroing a
                // shared exponent only up to degree ties, so re-sort.
                MPoly::from_terms(&self.vars, terms)
            })
            .collect()
    }

    pub fn from_univariate(vars: &Vars, index: usize, coeffs: &[MPoly]) -> MPoly {
        let x = MPoly::var(vars, index);
        let mut result = MPoly::zero(vars);
        for coeff in coeffs.iter().rev() {
            result = &(&result * &x) + coeff;
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        self.assert_same_vars(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lead_m, lead_c) = divisor.terms[0].clone();
        let mut remainder = self.clone();
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = remainder.terms.first().cloned() {
            let qm = m.div(&lead_m)?;
            let qc = &c / &lead_c;
            let step = MPoly {
                vars: self.vars.clone(),
                terms: divisor
                    .terms
                    .iter()
                    .map(|(dm, dc)| (dm.mul(&qm), dc * &qc))
                    .collect(),
            };
            remainder = &remainder - &step;
            quotient.push((qm, qc));
        }
        // Quotient terms are produced in decreasing order.
        Some(MPoly {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }

    /// Greatest common monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.iter();
        match iter.next() {
            None => Monomial::one(self.vars.len()),
            Some((first, _)) => iter.fold(first.clone(), |acc, (m, _)| acc.gcd(m)),
        }
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        self.assert_same_vars(other);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => terms.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    terms.push((m.clone(), if negate_other { -c } else { c.clone() }));
                }
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => terms.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        terms.push((m.clone(), if negate_other { -c } else { c.clone() }));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            terms.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        ceiling::check(terms.len());
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn product(&self, other: &MPoly) -> MPoly {
        self.assert_same_vars(other);
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.vars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        // Multiply over ℤ after clearing denominators; reduce once per term.
        let (na, da) = self.integer_coefficients();
        let (nb, db) = other.integer_coefficients();
        let mut sums: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for ((ma, _), ca) in self.terms.iter().zip(&na) {
            for ((mb, _), cb) in other.terms.iter().zip(&nb) {
                *sums.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let denom = da * db;
        let acc: HashMap<Monomial, Rational> = sums
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, denom.clone())))
            .collect();
        MPoly::from_map(&self.vars, acc)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.product(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Writes the polynomial in the surface syntax accepted by the expression
    /// parser, e.g. `1/2*t1^2*t3 - t2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || mono.is_one() {
                factors.push(format_rational(&magnitude));
            }
            for (index, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(index).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(index), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}
