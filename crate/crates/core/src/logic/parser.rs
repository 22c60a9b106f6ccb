//! Concrete syntax for formulas.
//!
//! ```text
//! formula := or-expr ('->' formula)?             (implication, right assoc)
//! or-expr := and-expr ('or' and-expr)*
//! and-expr := unary ('and' unary)*
//! unary := 'not' unary | MODAL '[' rel ']' unary | primary
//! primary := '(' formula ')' | atom
//! atom := 'fixed' | 'psi_top' | 'psi' '>=' literal
//!       | 'state' '=' id | 'in' name
//! literal := '-'? digits ('/' digits)? | label
//! MODAL := EX | AX | EF | AF | EG | AG        rel := phi | any
//! ```
//!
//! Printing a formula and parsing it back yields an equal AST.

use std::fmt;

use thiserror::Error;

use super::{Formula, LogicLiteral, ModalOp, Rel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Ge,
    Eq,
    Arrow,
    Slash,
    Minus,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "`{s}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Ge => write!(f, "`>=`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Minus => write!(f, "`-`"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '[' => {
                    self.bump();
                    Tok::LBracket
                }
                ']' => {
                    self.bump();
                    Tok::RBracket
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '=' => {
                    self.bump();
                    Tok::Eq
                }
                '>' => {
                    self.bump();
                    if self.chars.peek() == Some(&'=') {
                        self.bump();
                        Tok::Ge
                    } else {
                        return Err(ParseError {
                            line,
                            col,
                            message: "expected `>=`".to_owned(),
                        });
                    }
                }
                '-' => {
                    self.bump();
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Number(s)
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_alphanumeric() || d == '_' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{other}`"),
                    });
                }
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, ..)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |&(_, l, c)| (l, c))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, ..)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            Some(t) => Err(ParseError {
                line: self.tokens[self.pos - 1].1,
                col: self.tokens[self.pos - 1].2,
                message: format!("expected {tok}, found {t}"),
            }),
            None => Err(self.error(format!("expected {tok}, found end of input"))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_expr()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.peek() == Some(&Tok::Ident("or".to_owned())) {
            self.next();
            let rhs = self.and_expr()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Ident("and".to_owned())) {
            self.next();
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if let Some(Tok::Ident(word)) = self.peek() {
            if word == "not" {
                self.next();
                return Ok(Formula::Not(Box::new(self.unary()?)));
            }
            if let Some(op) = modal_op(word) {
                self.next();
                self.expect(Tok::LBracket)?;
                let rel = match self.next() {
                    Some(Tok::Ident(r)) if r == "phi" => Rel::PhiStep,
                    Some(Tok::Ident(r)) if r == "any" => Rel::AnyGenerator,
                    _ => return Err(self.error("expected relation `phi` or `any`")),
                };
                self.expect(Tok::RBracket)?;
                return Ok(Formula::Modal(op, rel, Box::new(self.unary()?)));
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let (line, col) = self.here();
        let at_token = |message: String| ParseError { line, col, message };
        match self.next() {
            Some(Tok::LParen) => {
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(word)) => match word.as_str() {
                "fixed" => Ok(Formula::Fixed),
                "psi_top" => Ok(Formula::PsiTop),
                "psi" => {
                    self.expect(Tok::Ge)?;
                    Ok(Formula::PsiGeq(self.literal()?))
                }
                "state" => {
                    self.expect(Tok::Eq)?;
                    match self.next() {
                        Some(Tok::Ident(id)) | Some(Tok::Number(id)) => Ok(Formula::StateIs(id)),
                        _ => Err(self.error("expected a state identifier")),
                    }
                }
                "in" => match self.next() {
                    Some(Tok::Ident(name)) | Some(Tok::Number(name)) => Ok(Formula::InSet(name)),
                    _ => Err(self.error("expected a set name")),
                },
                other => Err(at_token(format!("unknown atom `{other}`"))),
            },
            Some(t) => Err(at_token(format!("expected a formula, found {t}"))),
            None => Err(at_token(
                "expected a formula, found end of input".to_owned(),
            )),
        }
    }

    fn literal(&mut self) -> Result<LogicLiteral, ParseError> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Number(n)) => {
                let mut num: i64 = n
                    .parse()
                    .map_err(|_| self.error(format!("integer literal `{n}` out of range")))?;
                if negative {
                    num = -num;
                }
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    match self.next() {
                        Some(Tok::Number(d)) => {
                            let den: i64 = d.parse().map_err(|_| {
                                self.error(format!("integer literal `{d}` out of range"))
                            })?;
                            if den == 0 {
                                return Err(self.error("zero denominator"));
                            }
                            Ok(LogicLiteral::Ratio(num, den))
                        }
                        _ => Err(self.error("expected a denominator")),
                    }
                } else {
                    Ok(LogicLiteral::Int(num))
                }
            }
            Some(Tok::Ident(label)) if !negative => Ok(LogicLiteral::Label(label)),
            _ => Err(self.error("expected an evaluation literal")),
        }
    }
}

fn modal_op(word: &str) -> Option<ModalOp> {
    match word {
        "EX" => Some(ModalOp::EX),
        "AX" => Some(ModalOp::AX),
        "EF" => Some(ModalOp::EF),
        "AF" => Some(ModalOp::AF),
        "EG" => Some(ModalOp::EG),
        "AG" => Some(ModalOp::AG),
        _ => None,
    }
}

/// Parses the concrete syntax into a [`Formula`].
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let tokens = Lexer::new(text).tokens()?;
    let end = tokens.last().map_or((1, 1), |&(ref t, l, c)| {
        (l, c + format!("{t}").len().saturating_sub(2))
    });
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let formula = parser.formula()?;
    if parser.peek().is_some() {
        return Err(parser.error("trailing input after formula"));
    }
    Ok(formula)
}

impl Formula {
    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Modal(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Formula::Fixed => write!(f, "fixed")?,
            Formula::PsiTop => write!(f, "psi_top")?,
            Formula::PsiGeq(lit) => write!(f, "psi >= {lit}")?,
            Formula::StateIs(id) => write!(f, "state = {id}")?,
            Formula::InSet(name) => write!(f, "in {name}")?,
            Formula::Not(inner) => {
                write!(f, "not ")?;
                inner.fmt_prec(f, 4)?;
            }
            Formula::Modal(op, rel, inner) => {
                write!(f, "{op}[{rel}] ")?;
                inner.fmt_prec(f, 4)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " and ")?;
                r.fmt_prec(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " or ")?;
                r.fmt_prec(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 1)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for LogicLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicLiteral::Int(n) => write!(f, "{n}"),
            LogicLiteral::Ratio(n, d) => write!(f, "{n}/{d}"),
            LogicLiteral::Label(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Display for ModalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModalOp::EX => "EX",
            ModalOp::AX => "AX",
            ModalOp::EF => "EF",
            ModalOp::AF => "AF",
            ModalOp::EG => "EG",
            ModalOp::AG => "AG",
        })
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::PhiStep => "phi",
            Rel::AnyGenerator => "any",
        })
    }
}
