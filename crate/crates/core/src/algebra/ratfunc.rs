use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MPoly, Vars};
use super::rational::Rational;

/// Element of the fraction field ℚ(vars).
///
/// Kept in lowest terms with a denominator whose leading coefficient is one,
/// so structural equality coincides with equality of rational functions.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert!(num.vars().same(den.vars()), "numerator/denominator vars differ");
        Self::normalize(num, den)
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(MPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(MPoly::one(vars))
    }

    pub fn constant(vars: &Vars, value: Rational) -> Self {
        Self::from_poly(MPoly::constant(vars, value))
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.vars());
        }
        if let Some(c) = den.constant_value() {
            let vars = num.vars().clone();
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MPoly::one(&vars),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lead = den.leading_coefficient();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Whether the variable at `index` is absent from both numerator and
    /// denominator of the reduced form.
    pub fn is_free_of(&self, index: usize) -> bool {
        !self.num.involves(index) && !self.den.involves(index)
    }

    pub fn scale(&self, factor: &Rational) -> RatFunc {
        if factor.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc {
            num: self.num.scale(factor),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule partial derivative.
    pub fn differentiate(&self, index: usize) -> RatFunc {
        let dn = self.num.differentiate(index);
        if self.is_polynomial() {
            return RatFunc::from_poly(dn);
        }
        let dd = self.den.differentiate(index);
        if dd.is_zero() {
            return RatFunc::new(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RatFunc::new(num, &self.den * &self.den)
    }

    /// Substitutes a rational value for one variable. Returns `None` when the
    /// denominator vanishes identically after substitution.
    pub fn eval_var(&self, index: usize, value: &Rational) -> Option<RatFunc> {
        let den = self.den.eval_var(index, value);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.eval_var(index, value), den))
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let den = self.den.eval(point);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / den)
    }

    pub fn reindex(&self, target: &Vars) -> Result<RatFunc, super::AlgebraError> {
        Ok(RatFunc::new(self.num.reindex(target)?, self.den.reindex(target)?))
    }

    pub fn pow(&self, exp: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.vars());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Cross-multiplication equality test, independent of the normal form.
pub fn cross_equal(a: &RatFunc, b: &RatFunc) -> bool {
    (&a.num * &b.den - &b.num * &a.den).is_zero()
}
