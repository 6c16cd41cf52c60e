//! Parser for the `< a, t | t a^2 t^-1 a^-4 >` presentation syntax.
//!
//! ```text
//! presentation := "<" genlist "|" relatorlist ">"
//! genlist      := ident ("," ident)*
//! relatorlist  := empty | word ("," word)*
//! word         := term+
//! term         := ident ("^" int)? | "1"
//! ```
//!
//! Whitespace is insignificant. The literal `1` stands for the identity
//! word so that presentations containing trivial relators print and re-parse.

use std::fmt;

use thiserror::Error;

use super::{Presentation, PresentationError};
use crate::presentation::word::{free_reduce, Word};

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{at}: unknown generator `{name}`")]
    UnknownGenerator { name: String, at: Position },
    #[error("{at}: malformed exponent `{text}`")]
    MalformedExponent { text: String, at: Position },
    #[error("{at}: syntax error: {message}")]
    SyntaxError { message: String, at: Position },
    #[error("{at}: generator `{name}` declared twice")]
    DuplicateGenerator { name: String, at: Position },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::UnknownGenerator { at, .. }
            | ParseError::MalformedExponent { at, .. }
            | ParseError::SyntaxError { at, .. }
            | ParseError::DuplicateGenerator { at, .. } => *at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Caret,
    Ident(String),
    Number(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("`<`"),
            Tok::Close => f.write_str("`>`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
        }
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Position)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Position { line: 1, column: 1 };
    let advance = |c: char, pos: &mut Position| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
            continue;
        }
        let simple = match c {
            '<' => Some(Tok::Open),
            '>' => Some(Tok::Close),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            advance(c, &mut pos);
            out.push((tok, start));
        } else if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| is_ident_continue(**c)) {
                s.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            out.push((Tok::Ident(s), start));
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            let mut s = String::new();
            s.push(c);
            chars.next();
            advance(c, &mut pos);
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '.') {
                s.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            out.push((Tok::Number(s), start));
        } else {
            return Err(ParseError::SyntaxError {
                message: format!("unexpected character `{c}`"),
                at: start,
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    next: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.next).map(|(t, _)| t)
    }

    fn here(&self) -> Position {
        self.toks.get(self.next).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, Position)> {
        let t = self.toks.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let at = self.here();
        match self.bump() {
            Some((t, _)) if t == want => Ok(()),
            Some((t, _)) => Err(ParseError::SyntaxError {
                message: format!("expected {want}, found {t}"),
                at,
            }),
            None => Err(ParseError::SyntaxError {
                message: format!("expected {want}, found end of input"),
                at,
            }),
        }
    }
}

fn parse_exponent(text: &str, at: Position) -> Result<i64, ParseError> {
    let bad = || ParseError::MalformedExponent {
        text: text.to_string(),
        at,
    };
    let value: i64 = text.parse().map_err(|_| bad())?;
    if value == 0 || value == i64::MIN {
        return Err(bad());
    }
    Ok(value)
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let toks = tokenize(text)?;
    let end = {
        let mut p = Position { line: 1, column: 1 };
        for c in text.chars() {
            if c == '\n' {
                p.line += 1;
                p.column = 1;
            } else {
                p.column += 1;
            }
        }
        p
    };
    let mut ps = Parser { toks, next: 0, end };
    ps.expect(Tok::Open)?;

    let mut names: Vec<String> = Vec::new();
    loop {
        let at = ps.here();
        match ps.bump() {
            Some((Tok::Ident(name), _)) => {
                if names.contains(&name) {
                    return Err(ParseError::DuplicateGenerator { name, at });
                }
                names.push(name);
            }
            other => {
                return Err(ParseError::SyntaxError {
                    message: format!(
                        "expected generator name, found {}",
                        other.map(|(t, _)| t.to_string()).unwrap_or_else(|| "end of input".into())
                    ),
                    at,
                })
            }
        }
        match ps.peek() {
            Some(Tok::Comma) => {
                ps.bump();
            }
            Some(Tok::Bar) => break,
            _ => ps.expect(Tok::Bar)?,
        }
    }
    ps.expect(Tok::Bar)?;

    let mut relators = Vec::new();
    if ps.peek() != Some(&Tok::Close) {
        loop {
            relators.push(parse_word(&mut ps, &names)?);
            match ps.peek() {
                Some(Tok::Comma) => {
                    ps.bump();
                }
                _ => break,
            }
        }
    }
    ps.expect(Tok::Close)?;
    if let Some((t, at)) = ps.bump() {
        return Err(ParseError::SyntaxError {
            message: format!("trailing input after `>`: {t}"),
            at,
        });
    }
    Presentation::new(names, relators).map_err(|e| match e {
        PresentationError::Word(w) => ParseError::MalformedExponent {
            text: w.to_string(),
            at: end,
        },
        other => ParseError::SyntaxError {
            message: other.to_string(),
            at: end,
        },
    })
}

fn parse_word(ps: &mut Parser, names: &[String]) -> Result<Word, ParseError> {
    let mut raw: Vec<(usize, i64)> = Vec::new();
    let word_start = ps.here();
    let mut terms = 0usize;
    loop {
        let at = ps.here();
        match ps.peek().cloned() {
            Some(Tok::Ident(name)) => {
                ps.bump();
                let g = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(ParseError::UnknownGenerator { name, at })?;
                let mut e = 1;
                if ps.peek() == Some(&Tok::Caret) {
                    ps.bump();
                    let at = ps.here();
                    match ps.bump() {
                        Some((Tok::Number(s), _)) => e = parse_exponent(&s, at)?,
                        Some((t, _)) => {
                            return Err(ParseError::MalformedExponent {
                                text: match t {
                                    Tok::Ident(s) => s,
                                    t => t.to_string(),
                                },
                                at,
                            })
                        }
                        None => {
                            return Err(ParseError::MalformedExponent {
                                text: String::new(),
                                at,
                            })
                        }
                    }
                }
                raw.push((g, e));
                terms += 1;
            }
            Some(Tok::Number(s)) if s == "1" => {
                ps.bump();
                terms += 1;
            }
            Some(Tok::Number(s)) => {
                return Err(ParseError::SyntaxError {
                    message: format!("unexpected number `{s}` in word"),
                    at,
                })
            }
            _ => break,
        }
    }
    if terms == 0 {
        return Err(ParseError::SyntaxError {
            message: "empty relator".into(),
            at: word_start,
        });
    }
    free_reduce(raw).map_err(|e| ParseError::MalformedExponent {
        text: e.to_string(),
        at: word_start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::word::Syllable;

    #[test]
    fn parses_baumslag_solitar() {
        let p = parse_presentation("< a, t | t a^2 t^-1 a^-4 >").unwrap();
        assert_eq!(p.generator_names(), &["a".to_string(), "t".to_string()]);
        assert_eq!(
            p.relators()[0].syllables(),
            &[
                Syllable::new(1, 1),
                Syllable::new(0, 2),
                Syllable::new(1, -1),
                Syllable::new(0, -4)
            ]
        );
    }

    #[test]
    fn free_group_and_merging() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());

        let p = parse_presentation("< a, t | t a a t^-1 a^-1 >").unwrap();
        assert_eq!(p.relators()[0].syllables()[1], Syllable::new(0, 2));
    }

    #[test]
    fn multiline_and_identity_literal() {
        let p = parse_presentation("<\n  x, y |\n  x y x^-1 y^-1,\n  1\n>").unwrap();
        assert_eq!(p.relators().len(), 2);
        assert!(p.relators()[1].is_identity());
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse_presentation("< a | b >"),
            Err(ParseError::UnknownGenerator { name, at: Position { line: 1, column: 7 } }) if name == "b"
        ));
        assert!(matches!(
            parse_presentation("< a | a^0 >"),
            Err(ParseError::MalformedExponent { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a^x >"),
            Err(ParseError::MalformedExponent { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a^2.5 >"),
            Err(ParseError::MalformedExponent { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a^2 "),
            Err(ParseError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_presentation("a | a >"),
            Err(ParseError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_presentation("< a, a | >"),
            Err(ParseError::DuplicateGenerator { .. })
        ));
        assert!(matches!(
            parse_presentation("< a | a > x"),
            Err(ParseError::SyntaxError { .. })
        ));
        let err = parse_presentation("<a|\n  a b>").unwrap_err();
        assert_eq!(err.position(), Position { line: 2, column: 5 });
    }
}
