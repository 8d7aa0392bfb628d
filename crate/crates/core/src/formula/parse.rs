//! Recursive-descent parser for the ASCII surface syntax.
//!
//! Atoms are `[a-z][a-zA-Z0-9_]*`, constants `tt` and `ff`. Unary operators
//! `! X F G E A` bind tightest, then `U`/`R` (right-associative), then `&`,
//! `|` and `->`. `F`, `G` and `->` are desugared on the spot.

use super::Ast;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("lex error at {line}:{col}: unexpected character '{ch}'")]
    Lex { line: u32, col: u32, ch: char },
    #[error("parse error at {line}:{col}: {msg}")]
    Syntax { line: u32, col: u32, msg: String },
    #[error("parse error at end of input: {msg}")]
    Eof { msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    True,
    False,
    Not,
    Next,
    Finally,
    Globally,
    Exists,
    Forall,
    Until,
    Release,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, u32, u32)>,
}

fn lex(src: &str) -> Result<Vec<(Tok, u32, u32)>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '(' => {
                bump(&mut chars);
                toks.push((Tok::LParen, tl, tc));
            }
            ')' => {
                bump(&mut chars);
                toks.push((Tok::RParen, tl, tc));
            }
            '!' => {
                bump(&mut chars);
                toks.push((Tok::Not, tl, tc));
            }
            '&' => {
                bump(&mut chars);
                toks.push((Tok::And, tl, tc));
            }
            '|' => {
                bump(&mut chars);
                toks.push((Tok::Or, tl, tc));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    toks.push((Tok::Implies, tl, tc));
                } else {
                    return Err(ParseError::Lex { line: tl, col: tc, ch: '-' });
                }
            }
            'A'..='Z' => {
                bump(&mut chars);
                let tok = match c {
                    'X' => Tok::Next,
                    'F' => Tok::Finally,
                    'G' => Tok::Globally,
                    'E' => Tok::Exists,
                    'A' => Tok::Forall,
                    'U' => Tok::Until,
                    'R' => Tok::Release,
                    other => return Err(ParseError::Lex { line: tl, col: tc, ch: other }),
                };
                toks.push((tok, tl, tc));
            }
            'a'..='z' => {
                let mut name = String::new();
                name.push(bump(&mut chars));
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "tt" => Tok::True,
                    "ff" => Tok::False,
                    _ => Tok::Atom(name),
                };
                toks.push((tok, tl, tc));
            }
            other => return Err(ParseError::Lex { line: tl, col: tc, ch: other }),
        }
    }
    Ok(toks)
}

struct Parser {
    lexer: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lexer.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lexer.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> ParseError {
        match self.lexer.toks.get(self.pos) {
            Some((_, line, col)) => ParseError::Syntax {
                line: *line,
                col: *col,
                msg: msg.to_string(),
            },
            None => ParseError::Eof { msg: msg.to_string() },
        }
    }

    fn parse_implies(&mut self) -> Result<Ast, ParseError> {
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.next();
            let rhs = self.parse_implies()?;
            return Ok(Ast::Or(Box::new(lhs.not()), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(&Tok::Or) {
            self.next();
            let rhs = self.parse_and()?;
            lhs = Ast::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_until()?;
        while self.peek() == Some(&Tok::And) {
            self.next();
            let rhs = self.parse_until()?;
            lhs = Ast::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_until(&mut self) -> Result<Ast, ParseError> {
        let lhs = self.parse_unary()?;
        match self.peek() {
            Some(Tok::Until) => {
                self.next();
                let rhs = self.parse_until()?;
                Ok(Ast::Until(Box::new(lhs), Box::new(rhs)))
            }
            Some(Tok::Release) => {
                self.next();
                let rhs = self.parse_until()?;
                Ok(Ast::Release(Box::new(lhs), Box::new(rhs)))
            }
            _ => Ok(lhs),
        }
    }

    fn parse_unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.next();
                Ok(self.parse_unary()?.not())
            }
            Some(Tok::Next) => {
                self.next();
                Ok(Ast::Next(Box::new(self.parse_unary()?)))
            }
            Some(Tok::Finally) => {
                self.next();
                Ok(self.parse_unary()?.finally())
            }
            Some(Tok::Globally) => {
                self.next();
                Ok(self.parse_unary()?.globally())
            }
            Some(Tok::Exists) => {
                self.next();
                Ok(Ast::Exists(Box::new(self.parse_unary()?)))
            }
            Some(Tok::Forall) => {
                self.next();
                Ok(Ast::Forall(Box::new(self.parse_unary()?)))
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Atom(name)) => {
                self.next();
                Ok(Ast::Prop(name))
            }
            Some(Tok::True) => {
                self.next();
                Ok(Ast::True)
            }
            Some(Tok::False) => {
                self.next();
                Ok(Ast::False)
            }
            Some(Tok::LParen) => {
                self.next();
                let inner = self.parse_implies()?;
                if self.next() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.err_here("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.err_here("expected a formula")),
            None => Err(self.err_here("expected a formula")),
        }
    }
}

/// Parse a formula. Negation is admitted everywhere; run [`super::to_nnf`]
/// before handing the result to the game machinery.
pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { lexer: Lexer { toks }, pos: 0 };
    let ast = p.parse_implies()?;
    if p.pos != p.lexer.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::super::to_nnf;
    use super::*;

    #[test]
    fn simple_until_under_quantifier() {
        let f = parse("E (p U q)").unwrap();
        assert_eq!(
            f,
            Ast::Exists(Box::new(Ast::Until(
                Box::new(Ast::Prop("p".into())),
                Box::new(Ast::Prop("q".into()))
            )))
        );
    }

    #[test]
    fn running_example_is_a_conjunction_of_quantified_formulas() {
        let f = parse("A F G p & E G E F !p").unwrap();
        let expected = Ast::And(
            Box::new(Ast::Forall(Box::new(
                Ast::Prop("p".into()).globally().finally(),
            ))),
            Box::new(Ast::Exists(Box::new(
                Ast::Exists(Box::new(Ast::Prop("p".into()).not().finally())).globally(),
            ))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn incomplete_binary_operator_is_an_error() {
        assert!(matches!(parse("p U"), Err(ParseError::Eof { .. })));
    }

    #[test]
    fn error_positions_point_at_the_offender() {
        match parse("p &\n& q") {
            Err(ParseError::Syntax { line, col, .. }) => {
                assert_eq!((line, col), (2, 1));
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_operator_is_a_lex_error() {
        assert!(matches!(parse("p # q"), Err(ParseError::Lex { ch: '#', .. })));
        assert!(matches!(parse("Z p"), Err(ParseError::Lex { ch: 'Z', .. })));
    }

    #[test]
    fn implies_desugars_before_nnf() {
        let f = parse("p -> q").unwrap();
        assert_eq!(
            f,
            Ast::Or(
                Box::new(Ast::Prop("p".into()).not()),
                Box::new(Ast::Prop("q".into()))
            )
        );
    }

    #[test]
    fn until_binds_tighter_than_and_and_is_right_associative() {
        assert_eq!(parse("p U q & r").unwrap(), parse("(p U q) & r").unwrap());
        assert_eq!(parse("p U q U r").unwrap(), parse("p U (q U r)").unwrap());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "E (p U q)",
            "A F G p & E G E F !p",
            "p -> q | r & s",
            "A ((p U q) | (ff R !q))",
            "E X (p & !q) U tt",
            "A (p0 U (q R (x1 | !x2)))",
        ] {
            let ast = to_nnf(&parse(text).unwrap());
            let printed = ast.to_string();
            let reparsed = parse(&printed).unwrap();
            assert_eq!(reparsed, ast, "round-trip failed for {text} -> {printed}");
        }
    }
}
