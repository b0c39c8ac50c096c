//! Surface syntax for polynomials and vector fields.
//!
//! Grammar (EBNF):
//!
//! ```text
//! polynomial   = expr ;
//! expr         = term , { ( "+" | "-" ) , term } ;
//! term         = unary , { ( "*" | "/" ) , unary } ;
//! unary        = "-" , unary | power ;
//! power        = atom , [ "^" , power ] ;     (* exponent folds to an integer >= 0 *)
//! atom         = number | identifier | "(" , expr , ")" ;
//! number       = digit , { digit } , [ "." , { digit } ] ;
//! identifier   = ( letter | "_" ) , { letter | digit | "_" } ;
//!
//! vector_field = expr ;   (* every top-level summand is linear in exactly one d_<coord> *)
//! ```
//!
//! Multiplication is always explicit (`2*t1`, never `2t1`), and the right
//! operand of `/` must be a nonzero constant.

mod ast;
mod lexer;

use std::fmt;

use crate::algebra::{MPoly, Rational, Vars};
use num_traits::Zero;

pub use ast::{Expr, ExprKind, MAX_EXPONENT};

/// Largest number of tokens accepted in one expression.
pub const MAX_TOKENS: usize = 20_000;

/// Prefix marking a coordinate basis field in vector-field expressions.
pub const BASIS_PREFIX: &str = "d_";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    BadNumber(String),
    UnexpectedEnd,
    Unexpected { found: String, expected: String },
    ImplicitMultiplication,
    UnknownIdentifier(String),
    PolynomialDivision,
    DivisionByZero,
    NegativeExponent,
    FractionalExponent,
    NonConstantExponent,
    ExponentTooLarge,
    TooLarge,
    DegreeTooLarge,
    TooDeep,
    TooLong,
    UnknownBasisSymbol(String),
    RepeatedBasisSymbol(String),
    MissingBasisSymbol,
    MixedBasisSymbols,
    NonlinearVectorField,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            Empty => write!(f, "empty expression"),
            UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            BadNumber(s) => write!(f, "malformed number `{s}`"),
            UnexpectedEnd => write!(f, "unexpected end of input"),
            Unexpected { found, expected } => write!(f, "expected {expected}, found {found}"),
            ImplicitMultiplication => {
                write!(f, "implicit multiplication is not allowed; use `*`")
            }
            UnknownIdentifier(name) => write!(f, "unknown identifier `{name}`"),
            PolynomialDivision => write!(f, "polynomial division not allowed"),
            DivisionByZero => write!(f, "division by zero"),
            NegativeExponent => write!(f, "negative exponent not allowed"),
            FractionalExponent => write!(f, "fractional exponent not allowed"),
            NonConstantExponent => write!(f, "exponent must be an integer constant"),
            ExponentTooLarge => write!(f, "exponent exceeds {MAX_EXPONENT}"),
            TooLarge => write!(f, "constant too large"),
            DegreeTooLarge => write!(f, "polynomial degree exceeds {MAX_DEGREE}"),
            TooDeep => write!(f, "expression nested too deeply"),
            TooLong => write!(f, "expression longer than {MAX_TOKENS} tokens"),
            UnknownBasisSymbol(s) => write!(f, "unknown coordinate symbol `{s}`"),
            RepeatedBasisSymbol(s) => write!(f, "repeated basis symbol {s}"),
            MissingBasisSymbol => write!(f, "summand has no basis symbol d_<coord>"),
            MixedBasisSymbols => write!(f, "summand mixes several basis symbols"),
            NonlinearVectorField => write!(f, "summand is not linear in its basis symbol"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Position,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, pos: Position) -> Self {
        ParseError { kind, pos }
    }
}

/// Parses text into an expression tree without resolving identifiers.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = lexer::tokenize(text)?;
    if tokens.len() > MAX_TOKENS {
        return Err(ParseError::new(ParseErrorKind::TooLong, tokens[0].pos));
    }
    ast::Parser::new(tokens).parse_complete()
}

/// Parses a polynomial over the given variables.
pub fn parse_polynomial(text: &str, vars: &Vars) -> Result<MPoly, ParseError> {
    let expr = parse_expr(text)?;
    evaluate(&expr, vars)
}

/// Largest total degree an expression may expand to.
pub const MAX_DEGREE: u64 = 256;

/// Converts an expression tree to a polynomial over `vars`.
pub fn evaluate(expr: &Expr, vars: &Vars) -> Result<MPoly, ParseError> {
    let (first, steps) = expr.left_spine();
    let mut acc = match &first.kind {
        ExprKind::Number(v) => MPoly::constant(vars, v.clone()),
        ExprKind::Variable(name) => match vars.index_of(name) {
            Some(i) => MPoly::var(vars, i),
            None => {
                return Err(ParseError::new(
                    ParseErrorKind::UnknownIdentifier(name.clone()),
                    first.pos,
                ))
            }
        },
        ExprKind::Neg(inner) => -evaluate(inner, vars)?,
        ExprKind::Pow(base, e) => {
            let base = evaluate(base, vars)?;
            let bits = base
                .terms()
                .iter()
                .map(|(_, c)| ast::rational_bits(c))
                .max()
                .unwrap_or(0);
            if bits.saturating_mul(*e as u64) > ast::MAX_CONSTANT_BITS {
                return Err(ParseError::new(ParseErrorKind::TooLarge, first.pos));
            }
            if u64::from(base.total_degree()) * u64::from(*e) > MAX_DEGREE {
                return Err(ParseError::new(ParseErrorKind::DegreeTooLarge, first.pos));
            }
            base.pow(*e)
        }
        _ => unreachable!("left spine ends at a non-binary node"),
    };
    for (op, rhs) in steps {
        acc = match op.kind {
            ExprKind::Add(..) => &acc + &evaluate(rhs, vars)?,
            ExprKind::Sub(..) => &acc - &evaluate(rhs, vars)?,
            ExprKind::Mul(..) => {
                let rhs = evaluate(rhs, vars)?;
                if u64::from(acc.total_degree()) + u64::from(rhs.total_degree()) > MAX_DEGREE {
                    return Err(ParseError::new(ParseErrorKind::DegreeTooLarge, op.pos));
                }
                &acc * &rhs
            }
            ExprKind::Div(..) => {
                let divisor = constant_divisor(rhs, op, vars)?;
                acc.scale(&divisor.recip())
            }
            _ => unreachable!(),
        };
    }
    Ok(acc)
}

fn constant_divisor(rhs: &Expr, op: &Expr, vars: &Vars) -> Result<Rational, ParseError> {
    // Resolve identifiers first so unknown names are reported as such.
    let value = evaluate(rhs, vars)?;
    let constant = value
        .constant_value()
        .ok_or_else(|| ParseError::new(ParseErrorKind::PolynomialDivision, op.pos))?;
    if constant.is_zero() {
        return Err(ParseError::new(ParseErrorKind::DivisionByZero, op.pos));
    }
    Ok(constant)
}

/// Parses `c1*d_x1 + c2*d_x2 + ...` into the component polynomials over
/// `coords` (zero for absent basis symbols).
pub fn parse_vector_field(text: &str, coords: &Vars) -> Result<Vec<MPoly>, ParseError> {
    let expr = parse_expr(text)?;

    let mut extended: Vec<String> = coords.names().to_vec();
    for name in coords.names() {
        extended.push(format!("{BASIS_PREFIX}{name}"));
    }
    let extended = Vars::new(extended);
    let m = coords.len();

    // Reject unknown identifiers with the right message before evaluating.
    let mut unknown: Option<ParseError> = None;
    expr.for_each_variable(&mut |name, pos| {
        if unknown.is_none() && extended.index_of(name).is_none() {
            let kind = if name.starts_with(BASIS_PREFIX) {
                ParseErrorKind::UnknownBasisSymbol(name.to_string())
            } else {
                ParseErrorKind::UnknownIdentifier(name.to_string())
            };
            unknown = Some(ParseError::new(kind, pos));
        }
    });
    if let Some(err) = unknown {
        return Err(err);
    }

    let summands = additive_summands(&expr);

    let mut components = vec![MPoly::zero(coords); m];
    let mut seen = vec![false; m];
    for (negated, summand) in summands {
        let mut basis: Vec<(usize, Position)> = Vec::new();
        summand.for_each_variable(&mut |name, pos| {
            if let Some(i) = extended.index_of(name).filter(|&i| i >= m) {
                basis.push((i - m, pos));
            }
        });
        let Some(&(component, pos)) = basis.first() else {
            return Err(ParseError::new(ParseErrorKind::MissingBasisSymbol, summand.pos));
        };
        if let Some(&(_, other)) = basis.iter().find(|(i, _)| *i != component) {
            return Err(ParseError::new(ParseErrorKind::MixedBasisSymbols, other));
        }
        if seen[component] {
            return Err(ParseError::new(
                ParseErrorKind::RepeatedBasisSymbol(format!(
                    "{BASIS_PREFIX}{}",
                    coords.name(component)
                )),
                pos,
            ));
        }
        seen[component] = true;

        let value = evaluate(summand, &extended)?;
        let linear = value
            .terms()
            .iter()
            .all(|(mono, _)| mono.exponents()[m + component] == 1);
        if !linear {
            return Err(ParseError::new(ParseErrorKind::NonlinearVectorField, pos));
        }
        let coefficient = value
            .differentiate(m + component)
            .reindex(coords)
            .expect("basis symbols eliminated");
        components[component] = if negated { -coefficient } else { coefficient };
    }
    Ok(components)
}

/// Top-level summands of a sum, each flagged when it is subtracted.
fn additive_summands(expr: &Expr) -> Vec<(bool, &Expr)> {
    let mut out = Vec::new();
    let mut node = expr;
    loop {
        match &node.kind {
            ExprKind::Add(a, b) => {
                out.push((false, b.as_ref()));
                node = a;
            }
            ExprKind::Sub(a, b) => {
                out.push((true, b.as_ref()));
                node = a;
            }
            _ => break,
        }
    }
    out.push((false, node));
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Monomial};
    use proptest::prelude::*;

    fn coords() -> Vars {
        Vars::new(["t1", "t2", "t3"])
    }

    #[test]
    fn prepotential_end_terms() {
        let vars = Vars::new(["t1", "t3"]);
        let p = parse_polynomial("1/2*t1^2*t3 + 1/210*t3^7", &vars).unwrap();
        let expected = MPoly::from_terms(
            &vars,
            [
                (Monomial::from_exponents(vec![2, 1]), rat(1, 2)),
                (Monomial::from_exponents(vec![0, 7]), rat(1, 210)),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn cancellation() {
        assert!(parse_polynomial("t1 - t1", &coords()).unwrap().is_zero());
    }

    #[test]
    fn polynomial_division_is_positioned() {
        let err = parse_polynomial("t1/t2", &coords()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::PolynomialDivision);
        assert_eq!(err.pos, Position { line: 1, column: 3 });
        assert_eq!(err.to_string(), "1:3: polynomial division not allowed");
    }

    #[test]
    fn precedence_and_associativity() {
        let vars = Vars::new(["x"]);
        let p = |s: &str| parse_polynomial(s, &vars).unwrap();
        assert_eq!(p("-x^2"), -MPoly::var(&vars, 0).pow(2));
        assert_eq!(p("2^3^2"), MPoly::from_int(&vars, 512));
        assert_eq!(p("8/2/2"), MPoly::from_int(&vars, 2));
        assert_eq!(p("1 - 2 - 3"), MPoly::from_int(&vars, -4));
        assert_eq!(p("(x+1)^2"), p("x^2 + 2*x + 1"));
        assert_eq!(p("0.5*x"), p("1/2*x"));
    }

    #[test]
    fn exponent_errors() {
        let vars = Vars::new(["x"]);
        let kind = |s: &str| parse_polynomial(s, &vars).unwrap_err().kind;
        assert_eq!(kind("x^-1"), ParseErrorKind::NegativeExponent);
        assert_eq!(kind("x^(1/2)"), ParseErrorKind::FractionalExponent);
        assert_eq!(kind("x^x"), ParseErrorKind::NonConstantExponent);
        assert_eq!(kind("x^100000"), ParseErrorKind::ExponentTooLarge);
        assert_eq!(kind("(x - (x - 1)^31)^35"), ParseErrorKind::DegreeTooLarge);
        assert_eq!(kind("x^200*x^100"), ParseErrorKind::DegreeTooLarge);
        assert!(parse_polynomial("x^200*x^56", &vars).is_ok());
    }

    #[test]
    fn syntax_errors() {
        let vars = Vars::new(["t1"]);
        let kind = |s: &str| parse_polynomial(s, &vars).unwrap_err().kind;
        assert_eq!(kind("2t1"), ParseErrorKind::ImplicitMultiplication);
        assert_eq!(kind(""), ParseErrorKind::Empty);
        assert_eq!(kind("t1 +"), ParseErrorKind::UnexpectedEnd);
        assert_eq!(kind("w"), ParseErrorKind::UnknownIdentifier("w".into()));
        assert_eq!(kind("t1/0"), ParseErrorKind::DivisionByZero);
        assert!(matches!(kind("(t1"), ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn euler_field_components() {
        let field =
            parse_vector_field("t1*d_t1 + 2/3*t2*d_t2 + 1/3*t3*d_t3", &coords()).unwrap();
        let c = coords();
        assert_eq!(field[0], MPoly::var(&c, 0));
        assert_eq!(field[1], MPoly::var(&c, 1).scale(&rat(2, 3)));
        assert_eq!(field[2], MPoly::var(&c, 2).scale(&rat(1, 3)));
    }

    #[test]
    fn unit_field() {
        let field = parse_vector_field("d_t1", &coords()).unwrap();
        assert_eq!(field[0], MPoly::one(&coords()));
        assert!(field[1].is_zero() && field[2].is_zero());
    }

    #[test]
    fn repeated_basis_symbol() {
        let err = parse_vector_field("t1*d_t1 + d_t1", &coords()).unwrap_err();
        assert_eq!(err.to_string(), "1:11: repeated basis symbol d_t1");
    }

    #[test]
    fn vector_field_errors() {
        let kind = |s: &str| parse_vector_field(s, &coords()).unwrap_err().kind;
        assert_eq!(kind("d_x"), ParseErrorKind::UnknownBasisSymbol("d_x".into()));
        assert_eq!(kind("t1 + d_t1"), ParseErrorKind::MissingBasisSymbol);
        assert_eq!(kind("d_t1*d_t1"), ParseErrorKind::NonlinearVectorField);
        assert_eq!(kind("2*(d_t1 + d_t2)"), ParseErrorKind::MixedBasisSymbols);
        assert_eq!(kind("d_t1 + t1*t2"), ParseErrorKind::MissingBasisSymbol);
    }

    #[test]
    fn negated_and_grouped_summands() {
        let c = coords();
        let field = parse_vector_field("-d_t1 - (t2 + 1)*d_t3", &c).unwrap();
        assert_eq!(field[0], MPoly::from_int(&c, -1));
        assert_eq!(field[2], -(&MPoly::var(&c, 1) + &MPoly::one(&c)));
    }

    #[test]
    fn deep_left_chain_does_not_recurse() {
        let vars = Vars::new(["x"]);
        let text = vec!["x"; 9000].join(" + ");
        let p = parse_polynomial(&text, &vars).unwrap();
        assert_eq!(p, MPoly::var(&vars, 0).scale(&crate::algebra::int(9000)));
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        let vars = coords();
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -20i64..20, 1i64..7), 0..6).prop_map(
            move |terms| {
                MPoly::from_terms(
                    &vars,
                    terms.into_iter().map(|((a, b, c), n, d)| {
                        (Monomial::from_exponents(vec![a, b, c]), rat(n, d))
                    }),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn display_then_parse_round_trips(p in small_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse_polynomial(&text, &coords()).unwrap(), p);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "[-+*/^() t123d_.0-9a-z]{0,40}") {
            let _ = parse_polynomial(&s, &coords());
            let _ = parse_vector_field(&s, &coords());
        }
    }
}
