//! Pass/fail entries shared by all verifiers.

use std::fmt::Display;

use serde::Serialize;

/// Location and value of the first nonzero residual of a failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub at: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Residual>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            passed: true,
            residual: None,
        }
    }

    pub fn fail(at: impl Into<String>, value: impl Display) -> Self {
        Check {
            passed: false,
            residual: Some(Residual {
                at: at.into(),
                value: value.to_string(),
            }),
        }
    }

    /// Passes iff every residual is zero; stops at the first nonzero one.
    pub fn all_zero<I, L, V>(residuals: I) -> Self
    where
        I: IntoIterator<Item = (L, V)>,
        L: Into<String>,
        V: Residue,
    {
        for (at, value) in residuals {
            if !value.vanishes() {
                return Check::fail(at, value.render());
            }
        }
        Check::pass()
    }

    pub fn and(self, other: Check) -> Check {
        if self.passed {
            other
        } else {
            self
        }
    }
}

/// Anything that can be tested for identical vanishing.
pub trait Residue {
    fn vanishes(&self) -> bool;
    fn render(&self) -> String;
}

impl<T: Residue> Residue for &T {
    fn vanishes(&self) -> bool {
        (*self).vanishes()
    }
    fn render(&self) -> String {
        (*self).render()
    }
}

impl Residue for crate::algebra::MPoly {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residue for crate::algebra::RatFunc {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residue for crate::algebra::Rational {
    fn vanishes(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn render(&self) -> String {
        crate::algebra::format_rational(self)
    }
}

/// `name_{i j k}` label with 1-based indices.
pub(crate) fn label(name: &str, indices: &[usize]) -> String {
    let idx: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{name}[{}]", idx.join(","))
}

pub(crate) fn opt_rational<S: serde::Serializer>(
    value: &Option<crate::algebra::Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_some(&crate::algebra::format_rational(v)),
        None => s.serialize_none(),
    }
}

pub(crate) fn opt_display<S: serde::Serializer, T: std::fmt::Display>(
    value: &Option<T>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub(crate) fn rational<S: serde::Serializer>(
    value: &crate::algebra::Rational,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::algebra::format_rational(value))
}
