use super::lexer::{Spanned, Token};
use super::{ParseError, ParseErrorKind, Position};
use crate::algebra::Rational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Largest exponent literal accepted.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(Rational),
    Variable(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Expression node; `pos` is the operator position for operators and the
/// token position for leaves.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Position,
}

impl Expr {
    fn new(kind: ExprKind, pos: Position) -> Box<Expr> {
        Box::new(Expr { kind, pos })
    }

    /// Splits a left-associated chain of binary operators into its leftmost
    /// operand and the `(operator node, right operand)` steps, without
    /// recursion on the left spine.
    pub fn left_spine(&self) -> (&Expr, Vec<(&Expr, &Expr)>) {
        let mut steps = Vec::new();
        let mut node = self;
        loop {
            match &node.kind {
                ExprKind::Add(a, b)
                | ExprKind::Sub(a, b)
                | ExprKind::Mul(a, b)
                | ExprKind::Div(a, b) => {
                    steps.push((node, b.as_ref()));
                    node = a;
                }
                _ => break,
            }
        }
        steps.reverse();
        (node, steps)
    }

    /// Value of a variable-free subexpression, `None` if a variable occurs or
    /// a division by zero is met.
    pub fn constant_value(&self) -> Option<Rational> {
        let (first, steps) = self.left_spine();
        let mut acc = match &first.kind {
            ExprKind::Number(v) => v.clone(),
            ExprKind::Variable(_) => return None,
            ExprKind::Neg(a) => -a.constant_value()?,
            ExprKind::Pow(a, e) => checked_pow(a.constant_value()?, *e)?,
            _ => unreachable!("left spine ends at a non-binary node"),
        };
        for (op, rhs) in steps {
            let r = rhs.constant_value()?;
            acc = match op.kind {
                ExprKind::Add(..) => acc + r,
                ExprKind::Sub(..) => acc - r,
                ExprKind::Mul(..) => acc * r,
                ExprKind::Div(..) if r.is_zero() => return None,
                ExprKind::Div(..) => acc / r,
                _ => unreachable!(),
            };
        }
        Some(acc)
    }

    /// Visits every variable leaf.
    pub fn for_each_variable(&self, f: &mut impl FnMut(&str, Position)) {
        let (first, steps) = self.left_spine();
        match &first.kind {
            ExprKind::Number(_) => {}
            ExprKind::Variable(name) => f(name, first.pos),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.for_each_variable(f),
            _ => unreachable!("left spine ends at a non-binary node"),
        }
        for (_, rhs) in steps {
            rhs.for_each_variable(f);
        }
    }
}

/// Bit budget for any single rational produced while folding constants.
pub const MAX_CONSTANT_BITS: u64 = 1 << 16;

pub(crate) fn rational_bits(v: &Rational) -> u64 {
    v.numer().bits().max(v.denom().bits())
}

fn checked_pow(base: Rational, exp: u32) -> Option<Rational> {
    if rational_bits(&base).saturating_mul(exp as u64) > MAX_CONSTANT_BITS {
        return None;
    }
    Some(crate::algebra::pow_rational(&base, exp))
}

/// Recursive-descent parser over the token stream.
///
/// ```text
/// expr     := term (('+' | '-') term)*
/// term     := unary (('*' | '/') unary)*
/// unary    := '-' unary | power
/// power    := atom ('^' exponent)?
/// exponent := power            (must fold to a nonnegative integer)
/// atom     := NUMBER | IDENT | '(' expr ')'
/// ```
pub struct Parser {
    tokens: Vec<Spanned>,
    cursor: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 256;

impl Parser {
    pub fn new(tokens: Vec<Spanned>) -> Self {
        Parser {
            tokens,
            cursor: 0,
            depth: 0,
        }
    }

    fn peek(&self) -> &Spanned {
        &self.tokens[self.cursor]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    pub fn parse_complete(mut self) -> Result<Expr, ParseError> {
        if self.peek().token == Token::End {
            return Err(ParseError::new(ParseErrorKind::Empty, self.peek().pos));
        }
        let expr = self.expr()?;
        let next = self.peek();
        match &next.token {
            Token::End => Ok(*expr),
            Token::Ident(_) | Token::Number(_) | Token::LParen => Err(ParseError::new(
                ParseErrorKind::ImplicitMultiplication,
                next.pos,
            )),
            other => Err(ParseError::new(
                ParseErrorKind::Unexpected {
                    found: other.describe(),
                    expected: "operator or end of input".into(),
                },
                next.pos,
            )),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(ParseErrorKind::TooDeep, self.peek().pos));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Box<Expr>, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = self.peek().clone();
            let build = match op.token {
                Token::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Token::Minus => ExprKind::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::new(build(lhs, rhs), op.pos);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Box<Expr>, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = self.peek().clone();
            let build = match op.token {
                Token::Star => ExprKind::Mul as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Token::Slash => ExprKind::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::new(build(lhs, rhs), op.pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Box<Expr>, ParseError> {
        if self.peek().token == Token::Minus {
            let op = self.advance();
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::new(ExprKind::Neg(inner), op.pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Box<Expr>, ParseError> {
        let base = self.atom()?;
        if self.peek().token != Token::Caret {
            return Ok(base);
        }
        let caret = self.advance();
        let exp_pos = self.peek().pos;
        if self.peek().token == Token::Minus {
            return Err(ParseError::new(ParseErrorKind::NegativeExponent, exp_pos));
        }
        self.enter()?;
        let exponent = self.power()?;
        self.depth -= 1;
        let value = exponent
            .constant_value()
            .ok_or_else(|| ParseError::new(ParseErrorKind::NonConstantExponent, exp_pos))?;
        if value.is_negative() {
            return Err(ParseError::new(ParseErrorKind::NegativeExponent, exp_pos));
        }
        if !value.is_integer() {
            return Err(ParseError::new(ParseErrorKind::FractionalExponent, exp_pos));
        }
        let e = value
            .to_integer()
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(ParseErrorKind::ExponentTooLarge, exp_pos))?;
        Ok(Expr::new(ExprKind::Pow(base, e), caret.pos))
    }

    fn atom(&mut self) -> Result<Box<Expr>, ParseError> {
        let t = self.advance();
        match t.token {
            Token::Number(v) => Ok(Expr::new(ExprKind::Number(v), t.pos)),
            Token::Ident(name) => Ok(Expr::new(ExprKind::Variable(name), t.pos)),
            Token::LParen => {
                let inner = self.expr()?;
                let close = self.advance();
                if close.token != Token::RParen {
                    return Err(ParseError::new(
                        ParseErrorKind::Unexpected {
                            found: close.token.describe(),
                            expected: "`)`".into(),
                        },
                        close.pos,
                    ));
                }
                Ok(inner)
            }
            Token::End => Err(ParseError::new(ParseErrorKind::UnexpectedEnd, t.pos)),
            other => Err(ParseError::new(
                ParseErrorKind::Unexpected {
                    found: other.describe(),
                    expected: "number, identifier or `(`".into(),
                },
                t.pos,
            )),
        }
    }
}
