use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Word(String),
    Int(i64),
    Float(f64),
    Str(String),
    Comma,
    Dot,
    DotDot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semicolon,
    Star,
    Minus,
    Eq,
    NotEq,
    Lt,
    LtEq,
    Gt,
    GtEq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => f.write_str(w),
            Tok::Int(i) => write!(f, "{i}"),
            Tok::Float(x) => write!(f, "{x:?}"),
            Tok::Str(s) => write!(f, "'{s}'"),
            Tok::Comma => f.write_str(","),
            Tok::Dot => f.write_str("."),
            Tok::DotDot => f.write_str(".."),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::LBracket => f.write_str("["),
            Tok::RBracket => f.write_str("]"),
            Tok::Semicolon => f.write_str(";"),
            Tok::Star => f.write_str("*"),
            Tok::Minus => f.write_str("-"),
            Tok::Eq => f.write_str("="),
            Tok::NotEq => f.write_str("<>"),
            Tok::Lt => f.write_str("<"),
            Tok::LtEq => f.write_str("<="),
            Tok::Gt => f.write_str(">"),
            Tok::GtEq => f.write_str(">="),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        while let Some(c) = cur.peek() {
            if c.is_whitespace() {
                cur.bump();
            } else if c == '-' && cur.peek2() == Some('-') {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            } else {
                break;
            }
        }
        let (line, column) = (cur.line, cur.column);
        let Some(c) = cur.peek() else {
            out.push(Token {
                tok: Tok::Eof,
                line,
                column,
            });
            return Ok(out);
        };
        let err = |msg: &str, token: String| Error::Syntax {
            line,
            column,
            token,
            message: msg.to_string(),
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut w = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    w.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            Tok::Word(w)
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                digits.push(c);
                cur.bump();
            }
            let mut is_float = false;
            // `0..*` must lex as Int DotDot, not a float.
            if cur.peek() == Some('.') && cur.peek2().is_some_and(|c| c.is_ascii_digit()) {
                is_float = true;
                digits.push('.');
                cur.bump();
                while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                    digits.push(c);
                    cur.bump();
                }
            }
            if matches!(cur.peek(), Some('e' | 'E')) {
                let mut it = cur.chars.clone();
                it.next();
                let next = it.next();
                let next2 = it.next();
                let exp_ok = next.is_some_and(|c| c.is_ascii_digit())
                    || (matches!(next, Some('+' | '-')) && next2.is_some_and(|c| c.is_ascii_digit()));
                if exp_ok {
                    is_float = true;
                    digits.push('e');
                    cur.bump();
                    if let Some(sign @ ('+' | '-')) = cur.peek() {
                        digits.push(sign);
                        cur.bump();
                    }
                    while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                        digits.push(c);
                        cur.bump();
                    }
                }
            }
            if is_float {
                Tok::Float(digits.parse().map_err(|_| err("bad number", digits.clone()))?)
            } else {
                Tok::Int(
                    digits
                        .parse()
                        .map_err(|_| err("integer literal out of range", digits.clone()))?,
                )
            }
        } else if c == '\'' || c == '"' {
            let quote = c;
            cur.bump();
            let mut s = String::new();
            loop {
                match cur.bump() {
                    None => return Err(err("unterminated string literal", s)),
                    Some(ch) if ch == quote => {
                        if cur.peek() == Some(quote) {
                            s.push(quote);
                            cur.bump();
                        } else {
                            break;
                        }
                    }
                    Some(ch) => s.push(ch),
                }
            }
            Tok::Str(s)
        } else {
            cur.bump();
            match c {
                ',' => Tok::Comma,
                '.' => {
                    if cur.peek() == Some('.') {
                        cur.bump();
                        Tok::DotDot
                    } else {
                        Tok::Dot
                    }
                }
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ';' => Tok::Semicolon,
                '*' => Tok::Star,
                '-' => Tok::Minus,
                '=' => {
                    if cur.peek() == Some('=') {
                        cur.bump();
                    }
                    Tok::Eq
                }
                '!' if cur.peek() == Some('=') => {
                    cur.bump();
                    Tok::NotEq
                }
                '<' => match cur.peek() {
                    Some('=') => {
                        cur.bump();
                        Tok::LtEq
                    }
                    Some('>') => {
                        cur.bump();
                        Tok::NotEq
                    }
                    _ => Tok::Lt,
                },
                '>' => {
                    if cur.peek() == Some('=') {
                        cur.bump();
                        Tok::GtEq
                    } else {
                        Tok::Gt
                    }
                }
                other => return Err(err("unexpected character", other.to_string())),
            }
        };
        out.push(Token { tok, line, column });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn open_range_lexes_as_int_dotdot() {
        assert_eq!(
            toks("[0..*]"),
            vec![
                Tok::LBracket,
                Tok::Int(0),
                Tok::DotDot,
                Tok::Star,
                Tok::RBracket,
                Tok::Eof
            ]
        );
        assert_eq!(toks("1.5"), vec![Tok::Float(1.5), Tok::Eof]);
        assert_eq!(toks("2e3"), vec![Tok::Float(2000.0), Tok::Eof]);
    }

    #[test]
    fn both_quote_styles_are_strings() {
        assert_eq!(
            toks(r#"'it''s' "Address 1""#),
            vec![Tok::Str("it's".into()), Tok::Str("Address 1".into()), Tok::Eof]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = tokenize("SELECT\n  FROM").unwrap();
        assert_eq!((t[1].line, t[1].column), (2, 3));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(
            toks("a -- hi\n b"),
            vec![Tok::Word("a".into()), Tok::Word("b".into()), Tok::Eof]
        );
    }
}
