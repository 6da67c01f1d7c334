//! Text syntax for scalars, polynomials, ideals and multiideals.
//!
//! ```text
//! multiideal := ideal ['@' scalar] (';' ideal ['@' scalar])*
//! ideal      := poly (',' poly)*
//! poly       := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor (['*'] factor)*
//! factor     := int ['/' int] | ('x'|'y') ['^' int]
//! scalar     := ['+'|'-'] sterm (('+'|'-') sterm)*
//! sterm      := sfactor (('*'|'/') sfactor)*      with sfactor := int | 'pi'
//! ```
//!
//! A scalar term may carry `pi` to the power -1, 0 or 1 only. A missing
//! exponent suffix means exponent 1. Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::discrepancy::{DiscrepancyError, PolyMultiIdeal};
use crate::newton_geometry::Monomial;
use crate::poly_algebra::{BivariatePolynomial, CoefficientField, PolyError, PolynomialIdeal};
use crate::scalars::{ExactScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("exponent {0} is not positive")]
    NonPositiveExponent(ExactScalar),
    #[error(transparent)]
    Algebra(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X,
    Y,
    Pi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    Semi,
    At,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "'{n}'"),
            Tok::X => "'x'",
            Tok::Y => "'y'",
            Tok::Pi => "'pi'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::Comma => "','",
            Tok::Semi => "';'",
            Tok::At => "'@'",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Int(digits.parse().expect("decimal digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphabetic()) {
                word.push(d);
                chars.next();
                column += 1;
            }
            // Juxtaposed variables such as "xy" are split.
            let mut rest = word.as_str();
            let mut col = pos.column;
            while !rest.is_empty() {
                let p = Pos { line, column: col };
                if let Some(r) = rest.strip_prefix("pi") {
                    out.push((Tok::Pi, p));
                    rest = r;
                    col += 2;
                } else if let Some(r) = rest.strip_prefix('x') {
                    out.push((Tok::X, p));
                    rest = r;
                    col += 1;
                } else if let Some(r) = rest.strip_prefix('y') {
                    out.push((Tok::Y, p));
                    rest = r;
                    col += 1;
                } else {
                    return Err(syntax(p, format!("unknown name '{rest}'")));
                }
            }
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '@' => Tok::At,
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        };
        chars.next();
        column += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

fn syntax(pos: Pos, msg: String) -> ParseError {
    ParseError { line: pos.line, column: pos.column, kind: ParseErrorKind::Syntax(msg) }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    field: CoefficientField,
}

impl Parser {
    fn new(text: &str, field: CoefficientField) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0, field })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        syntax(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Tok::Int(_) => match self.bump() {
                Tok::Int(n) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small_exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        let n = self.int()?;
        u32::try_from(&n).map_err(|_| syntax(pos, format!("exponent {n} is too large")))
    }

    fn algebra(&self, pos: Pos, e: PolyError) -> ParseError {
        ParseError { line: pos.line, column: pos.column, kind: ParseErrorKind::Algebra(e) }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Tok::Plus => {
                self.bump();
                Some(false)
            }
            Tok::Minus => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn scalar(&mut self) -> Result<ExactScalar, ParseError> {
        let mut total = ExactScalar::zero();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let t = self.scalar_term()?;
            total = if negative { total - t } else { total + t };
            match self.sign() {
                Some(n) => negative = n,
                None => return Ok(total),
            }
        }
    }

    fn scalar_factor(&mut self) -> Result<(Rational, i32), ParseError> {
        match self.peek() {
            Tok::Int(_) => Ok((Rational::from_integer(self.int()?), 0)),
            Tok::Pi => {
                self.bump();
                Ok((Rational::one(), 1))
            }
            _ => Err(self.unexpected("an integer or 'pi'")),
        }
    }

    fn scalar_term(&mut self) -> Result<ExactScalar, ParseError> {
        let start = self.pos();
        let (mut q, mut pi) = self.scalar_factor()?;
        loop {
            let divide = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => break,
            };
            self.bump();
            let pos = self.pos();
            let (f, fp) = self.scalar_factor()?;
            if divide {
                if f.is_zero() {
                    return Err(syntax(pos, "division by zero".into()));
                }
                q /= f;
                pi -= fp;
            } else {
                q *= f;
                pi += fp;
            }
        }
        match pi {
            0 => Ok(ExactScalar::from_rational(q)),
            1 => Ok(ExactScalar::pi_multiple(q)),
            -1 => Ok(ExactScalar::inv_pi_multiple(q)),
            _ => Err(syntax(start, format!("pi^{pi} is outside a + b*pi + c/pi"))),
        }
    }

    fn term_factor(&mut self, coeff: &mut Rational, mono: &mut Monomial) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Int(_) => {
                let mut q = Rational::from_integer(self.int()?);
                if self.eat(&Tok::Slash) {
                    let pos = self.pos();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(syntax(pos, "division by zero".into()));
                    }
                    q /= Rational::from_integer(d);
                }
                *coeff *= q;
            }
            Tok::X | Tok::Y => {
                let is_x = self.bump() == Tok::X;
                let power = if self.eat(&Tok::Caret) { self.small_exponent()? } else { 1 };
                let step = if is_x { Monomial::new(power, 0) } else { Monomial::new(0, power) };
                *mono = mono.mul(&step);
            }
            _ => return Err(self.unexpected("a coefficient, 'x' or 'y'")),
        }
        Ok(())
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::X | Tok::Y)
    }

    fn poly_term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        self.term_factor(&mut coeff, &mut mono)?;
        loop {
            if self.eat(&Tok::Star) {
                self.term_factor(&mut coeff, &mut mono)?;
            } else if self.starts_factor() {
                self.term_factor(&mut coeff, &mut mono)?;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn polynomial(&mut self) -> Result<BivariatePolynomial, ParseError> {
        let pos = self.pos();
        let mut terms = Vec::new();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (m, c) = self.poly_term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.sign() {
                Some(n) => negative = n,
                None => break,
            }
        }
        BivariatePolynomial::from_terms(self.field, terms).map_err(|e| self.algebra(pos, e))
    }

    fn ideal(&mut self) -> Result<PolynomialIdeal, ParseError> {
        let pos = self.pos();
        let mut gens = Vec::new();
        loop {
            let gpos = self.pos();
            let g = self.polynomial()?;
            if g.is_zero() {
                return Err(syntax(gpos, "generator reduces to zero".into()));
            }
            gens.push(g);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        PolynomialIdeal::new(gens).map_err(|e| self.algebra(pos, e))
    }

    fn multiideal(&mut self) -> Result<PolyMultiIdeal, ParseError> {
        let mut pairs = Vec::new();
        loop {
            let ideal = self.ideal()?;
            let exponent = if self.eat(&Tok::At) {
                let pos = self.pos();
                let e = self.scalar()?;
                if !e.is_positive() {
                    return Err(ParseError {
                        line: pos.line,
                        column: pos.column,
                        kind: ParseErrorKind::NonPositiveExponent(e),
                    });
                }
                e
            } else {
                ExactScalar::one()
            };
            pairs.push((ideal, exponent));
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        self.expect_end()?;
        PolyMultiIdeal::new(pairs).map_err(|e| match e {
            DiscrepancyError::Poly(p) => self.algebra(Pos { line: 1, column: 1 }, p),
            other => syntax(Pos { line: 1, column: 1 }, other.to_string()),
        })
    }
}

fn field_of(characteristic: u64) -> Result<CoefficientField, ParseError> {
    CoefficientField::new(characteristic)
        .map_err(|e| ParseError { line: 1, column: 1, kind: ParseErrorKind::Algebra(e) })
}

/// Parses `3`, `5/6`, `2/pi`, `3*pi`, `1/2 + 2/pi` and the like.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ParseError> {
    let mut p = Parser::new(text, CoefficientField::rationals())?;
    let s = p.scalar()?;
    p.expect_end()?;
    Ok(s)
}

pub fn parse_polynomial(text: &str, field: CoefficientField) -> Result<BivariatePolynomial, ParseError> {
    let mut p = Parser::new(text, field)?;
    let f = p.polynomial()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_ideal(text: &str, field: CoefficientField) -> Result<PolynomialIdeal, ParseError> {
    let mut p = Parser::new(text, field)?;
    let i = p.ideal()?;
    p.expect_end()?;
    Ok(i)
}

/// Parses `ideal @ exponent ; ideal @ exponent ; ...` over the prime field
/// of the given characteristic.
pub fn parse_multiideal(text: &str, characteristic: u64) -> Result<PolyMultiIdeal, ParseError> {
    let mut p = Parser::new(text, field_of(characteristic)?)?;
    p.multiideal()
}
