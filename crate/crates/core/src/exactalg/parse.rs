//! Expression grammar for polynomials and rational functions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom (('^' | '**') exponent)?
//! atom   := integer | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//! ```
//!
//! `t` is the generator of the field context.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, Scalar};
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().expect("digits")));
            }
            'x' | 'y' | 'z' | 't' => {
                out.push(Tok::Ident(c));
                i += 1;
            }
            '*' if chars.get(i + 1) == Some(&'*') => {
                out.push(Tok::Op('^'));
                i += 2;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {src:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    /// Treat `t` as the variable x (for minimal polynomials).
    t_is_var: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let mut sign = 1i64;
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.pos += 1;
        }
        if let Some(Tok::Op('-')) = self.peek() {
            sign = -1;
            self.pos += 1;
        }
        let e = match self.next() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, got {other:?}"))),
        };
        if paren && self.next() != Some(Tok::RParen) {
            return Err(Error::Parse("expected ')' after exponent".into()));
        }
        Ok(sign * e)
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn> {
        let k = self.field;
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFn::constant(k, k.from_bigint(n))),
            Some(Tok::Ident('t')) if self.t_is_var => Ok(RatFn::from_poly(Poly::var(k, 0))),
            Some(Tok::Ident('t')) => Ok(RatFn::constant(
                k,
                k.generator().map_err(|_| Error::Parse("symbol t needs an extension field context".into()))?,
            )),
            Some(Tok::Ident(_)) if self.t_is_var => {
                Err(Error::Parse("only t may appear in a minimal polynomial".into()))
            }
            Some(Tok::Ident(c)) => Ok(RatFn::from_poly(Poly::var(k, (c as u8 - b'x') as usize))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn run(field: &Field, src: &str, t_is_var: bool) -> Result<RatFn> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, field, t_is_var };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Parses a rational function in x, y, z.
pub fn parse_ratfn(field: &Field, src: &str) -> Result<RatFn> {
    run(field, src, false)
}

/// Parses a polynomial in x, y, z (denominators must be constants).
pub fn parse_poly(field: &Field, src: &str) -> Result<Poly> {
    let r = parse_ratfn(field, src)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{src:?} is not a polynomial")))
}

/// Parses a field element such as `3/2*t^3 - 5`.
pub fn parse_scalar(field: &Field, src: &str) -> Result<Scalar> {
    let p = parse_poly(field, src)?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("{src:?} is not a constant")));
    }
    Ok(p.terms().first().map(|(_, c)| c.clone()).unwrap_or_else(|| field.zero()))
}

/// Coefficients (by ascending degree) of a rational polynomial in t.
pub fn parse_univariate_t(src: &str) -> Result<Vec<BigRational>> {
    let q = Field::Rational;
    let r = run(&q, src, true)?;
    let p = r.as_poly().ok_or_else(|| Error::Parse("expected a polynomial in t".into()))?;
    let mut out = vec![BigRational::from_integer(0.into()); p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        out[m[0] as usize] = c.as_rational().expect("rational field").clone();
    }
    Ok(out)
}

/// Parses a bracketed, comma separated list `[e1, e2, ...]` at the top
/// level, returning the entry strings.
pub fn split_list(src: &str) -> Result<Vec<String>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [ ... ], got {s:?}")))?;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_implicit_product() {
        let q = Field::Rational;
        assert_eq!(parse_poly(&q, "2x^2 + 3(x - y)z").unwrap(), parse_poly(&q, "2*x^2 + 3*x*z - 3*y*z").unwrap());
        assert_eq!(parse_poly(&q, "-x^2").unwrap(), parse_poly(&q, "-(x^2)").unwrap());
    }

    #[test]
    fn rational_coefficients() {
        let q = Field::Rational;
        let p = parse_poly(&q, "x*z - 1/2*y*(y - z)").unwrap();
        assert_eq!(p.to_string(), "x*z - 1/2*y^2 + 1/2*y*z");
    }

    #[test]
    fn rational_functions() {
        let q = Field::Rational;
        let r = parse_ratfn(&q, "x/(-y)").unwrap();
        let s = parse_ratfn(&q, "-x*y^-1").unwrap();
        assert!(r.same_as(&s));
        assert!(parse_poly(&q, "x/y").is_err());
    }

    #[test]
    fn minimal_polynomial_coefficients() {
        let c = parse_univariate_t("t^4 + 1").unwrap();
        assert_eq!(c.len(), 5);
        assert!(parse_univariate_t("t + x").is_err());
    }

    #[test]
    fn errors() {
        let q = Field::Rational;
        assert!(parse_poly(&q, "x +").is_err());
        assert!(parse_poly(&q, "(x").is_err());
        assert!(parse_poly(&q, "x # y").is_err());
        assert!(parse_poly(&q, "t").is_err());
        assert!(parse_poly(&q, "1/0").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(split_list("[x, (y, z), z]").unwrap(), vec!["x", "(y, z)", "z"]);
    }
}
