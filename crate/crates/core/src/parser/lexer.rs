use super::{ParseError, ParseErrorKind, Position};
use crate::algebra::rational::parse_decimal;
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Number(_) => "number".into(),
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub pos: Position,
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut line_start = 0;
    let column_of = |offset: usize, line_start: usize| text[line_start..offset].chars().count() + 1;

    while let Some(&(offset, ch)) = chars.peek() {
        let pos = Position {
            line,
            column: column_of(offset, line_start),
        };
        if ch == '\n' {
            chars.next();
            line += 1;
            line_start = offset + 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match ch {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(token) = simple {
            chars.next();
            tokens.push(Spanned { token, pos });
            continue;
        }
        if ch.is_ascii_digit() || ch == '.' {
            let start = offset;
            let mut end = offset;
            while let Some(&(o, c)) = chars.peek() {
                if c.is_ascii_digit() || c == '.' {
                    end = o + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let literal = &text[start..end];
            let value = parse_decimal(literal)
                .filter(|_| literal.matches('.').count() <= 1)
                .ok_or_else(|| ParseError::new(ParseErrorKind::BadNumber(literal.into()), pos))?;
            tokens.push(Spanned {
                token: Token::Number(value),
                pos,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let start = offset;
            let mut end = offset;
            while let Some(&(o, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = o + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Spanned {
                token: Token::Ident(text[start..end].to_string()),
                pos,
            });
            continue;
        }
        return Err(ParseError::new(ParseErrorKind::UnexpectedChar(ch), pos));
    }
    let end_pos = Position {
        line,
        column: column_of(text.len(), line_start),
    };
    tokens.push(Spanned {
        token: Token::End,
        pos: end_pos,
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_track_lines() {
        let tokens = tokenize("t1 +\n  2*t2").unwrap();
        let star = tokens.iter().find(|t| t.token == Token::Star).unwrap();
        assert_eq!(star.pos, Position { line: 2, column: 4 });
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("t1 # t2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('#'));
        assert_eq!((err.pos.line, err.pos.column), (1, 4));
    }

    #[test]
    fn malformed_decimal() {
        assert!(tokenize("1.2.3").is_err());
    }
}
