//! Expression parser for polynomial input.
//!
//! Grammar: variables `z1..z9` (or `w1..w9` for map parameters), `conj(e)`,
//! real-part sugar `x1..x9` and `y1..y9` (expanded at parse time), exact
//! rational literals `p/q`, the imaginary unit `i`, operators `+ - * ^`
//! (integer powers), and parentheses. No floating literals: coefficients stay
//! exact Gaussian rationals.

use crate::error::{Error, Result};
use crate::poly::HermitianPolynomial;
use crate::rational::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, Copy)]
struct Span {
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<(Tok, Span)> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
        let span = Span {
            line: self.line,
            col: self.col,
        };
        let c = match self.peek() {
            None => return Ok((Tok::End, span)),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'/' => {
                self.bump();
                Tok::Slash
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut digits = String::new();
                while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                    digits.push(self.bump().unwrap() as char);
                }
                Tok::Int(digits.parse::<BigInt>().expect("digit string"))
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while matches!(self.peek(), Some(d) if d.is_ascii_alphanumeric()) {
                    ident.push(self.bump().unwrap() as char);
                }
                Tok::Ident(ident)
            }
            other => {
                return Err(Error::Parse {
                    line: span.line,
                    column: span.col,
                    message: format!("unexpected character '{}'", other as char),
                })
            }
        };
        Ok((tok, span))
    }
}

pub struct Parser {
    toks: Vec<(Tok, Span)>,
    idx: usize,
    n: usize,
    var_letter: char,
}

impl Parser {
    fn err<T>(&self, span: Span, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: span.line,
            column: span.col,
            message: msg.into(),
        })
    }

    fn peek(&self) -> &(Tok, Span) {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<HermitianPolynomial> {
        let mut acc = match self.peek().0 {
            Tok::Minus => {
                self.bump();
                self.term()?.negate()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<HermitianPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek().0.clone() {
                Tok::Star => {
                    self.bump();
                    acc = acc.checked_mul(&self.power()?)?;
                }
                Tok::Slash => {
                    let (_, span) = self.bump();
                    let d = self.power()?;
                    if !d.is_constant() || d.constant_term().is_zero() {
                        return self
                            .err(span, "division is only allowed by nonzero rational constants");
                    }
                    acc = acc.scale(&d.constant_term().inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<HermitianPolynomial> {
        let base = self.atom()?;
        if self.peek().0 == Tok::Caret {
            let (_, span) = self.bump();
            // allow a parenthesized or negated exponent to fail loudly
            match self.bump() {
                (Tok::Int(e), espan) => {
                    let e32: u32 = match e.try_into() {
                        Ok(v) => v,
                        Err(_) => return self.err(espan, "exponent too large"),
                    };
                    Ok(base.pow(e32))
                }
                (_, espan) => {
                    let _ = span;
                    self.err(espan, "expected a nonnegative integer exponent after '^'")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<HermitianPolynomial> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(v) => Ok(HermitianPolynomial::constant(
                self.n,
                GaussianRational::new(
                    BigRational::from_integer(v),
                    BigRational::from_integer(0.into()),
                ),
            )),
            Tok::Minus => Ok(self.atom()?.negate()),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(inner),
                    (_, s) => self.err(s, "expected ')'"),
                }
            }
            Tok::Ident(name) => self.ident_atom(&name, span),
            other => self.err(span, format!("unexpected token {:?}", other)),
        }
    }

    fn ident_atom(&mut self, name: &str, span: Span) -> Result<HermitianPolynomial> {
        if name == "i" {
            return Ok(HermitianPolynomial::constant(self.n, GaussianRational::i()));
        }
        if name == "conj" {
            match self.bump() {
                (Tok::LParen, _) => {}
                (_, s) => return self.err(s, "expected '(' after conj"),
            }
            let inner = self.expr()?;
            match self.bump() {
                (Tok::RParen, _) => {}
                (_, s) => return self.err(s, "expected ')'"),
            }
            return Ok(inner.conjugate());
        }
        let mut chars = name.chars();
        let letter = chars.next().unwrap();
        let rest: String = chars.collect();
        let index: usize = match rest.parse() {
            Ok(v) if (1..=9).contains(&v) => v,
            _ => return self.err(span, format!("unknown identifier '{}'", name)),
        };
        if index > self.n {
            return self.err(
                span,
                format!("unknown variable '{}': dimension is {}", name, self.n),
            );
        }
        let j = index - 1;
        if letter == self.var_letter {
            return HermitianPolynomial::var_z(self.n, j);
        }
        match letter {
            'x' if self.var_letter == 'z' => HermitianPolynomial::var_x(self.n, j),
            'y' if self.var_letter == 'z' => HermitianPolynomial::var_y(self.n, j),
            _ => self.err(span, format!("unknown identifier '{}'", name)),
        }
    }
}

fn parse_with(src: &str, n: usize, var_letter: char) -> Result<HermitianPolynomial> {
    let mut lex = Lexer::new(src);
    let mut toks = Vec::new();
    loop {
        let (t, s) = lex.next_token()?;
        let end = t == Tok::End;
        toks.push((t, s));
        if end {
            break;
        }
    }
    let mut p = Parser {
        toks,
        idx: 0,
        n,
        var_letter,
    };
    let poly = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(poly),
        (t, s) => Err(Error::Parse {
            line: s.line,
            column: s.col,
            message: format!("trailing input starting at {:?}", t),
        }),
    }
}

/// Parse an expression over `z1..zn` (with `x`/`y` sugar) into an exact
/// polynomial.
pub fn parse_polynomial(src: &str, n: usize) -> Result<HermitianPolynomial> {
    parse_with(src, n, 'z')
}

/// Parse a holomorphic-map component over the parameters `w1..wd`. The result
/// lives in a `d`-dimensional ring; conj-dependence is rejected by the map
/// constructor, not here.
pub fn parse_map_component(src: &str, d: usize) -> Result<HermitianPolynomial> {
    parse_with(src, d, 'w')
}

/// Parse a constant expression into an exact Gaussian rational.
pub fn parse_constant(src: &str, context: &str) -> Result<GaussianRational> {
    let p = parse_with(src, 1, 'z')?;
    if !p.is_constant() {
        return Err(Error::Problem(format!(
            "{context}: expected a constant expression, got '{src}'"
        )));
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HermitianPolynomial as P;

    #[test]
    fn parses_mixed_signature_boundary() {
        let src = "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2";
        let r = parse_polynomial(src, 3).unwrap();
        assert!(r.is_real());
        assert_eq!(r.num_terms(), 5);
        // rebuild by hand
        let z1 = P::var_z(3, 0).unwrap();
        let z2 = P::var_z(3, 1).unwrap();
        let x3 = P::var_x(3, 2).unwrap();
        let n1 = z1.mul(&z1.conjugate());
        let n2 = z2.mul(&z2.conjugate());
        let expected = x3
            .negate()
            .sub(&n1.mul(&n2))
            .add(&n1.pow(2).scale(&GaussianRational::from_ratio(1, 4)))
            .add(&n2.pow(2).scale(&GaussianRational::from_ratio(3, 4)));
        assert_eq!(r, expected);
    }

    #[test]
    fn parses_ball() {
        let r = parse_polynomial("z1*conj(z1) - 1", 2).unwrap();
        assert!(r.is_real());
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn sugar_and_imaginary_unit() {
        let p = parse_polynomial("x1 + i*y1", 2).unwrap();
        assert_eq!(p, P::var_z(2, 0).unwrap());
        let q = parse_polynomial("x1 - i*y1", 2).unwrap();
        assert_eq!(q, P::var_zbar(2, 0).unwrap());
    }

    #[test]
    fn error_positions() {
        let e = parse_polynomial("z1 + $", 2).unwrap_err();
        match e {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 6);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("z3", 2).is_err());
        assert!(parse_polynomial("z1/z2", 2).is_err());
        assert!(parse_polynomial("z1^(2)", 2).is_err());
        assert!(parse_polynomial("z1^-1", 2).is_err());
        // zeroth power is the constant 1
        let one = parse_polynomial("z1^0", 2).unwrap();
        assert!(one.is_constant());
        assert!(one.constant_term().is_one());
    }

    #[test]
    fn roundtrip_through_display() {
        let srcs = [
            "-x3 - z1*conj(z1)*z2*conj(z2) + (1/4)*(z1*conj(z1))^2 + (3/4)*(z2*conj(z2))^2",
            "z1*conj(z1) + z2*conj(z2) - 1",
            "(1/2 + 1/3*i)*z1^3 - conj(z2)^2",
        ];
        for src in srcs {
            let p = parse_polynomial(src, 3).unwrap();
            let q = parse_polynomial(&p.to_string(), 3).unwrap();
            assert_eq!(p, q, "roundtrip failed for {src}");
        }
    }

    #[test]
    fn map_components() {
        let c = parse_map_component("w1^2 - 2*w2", 2).unwrap();
        assert_eq!(c.total_degree(), 2);
        assert!(parse_map_component("z1", 2).is_err());
    }
}
