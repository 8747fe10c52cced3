//! Exact scalars: rationals, or elements of a simple extension Q[t]/(m(t)).
//!
//! Elements carry no context of their own; a [`Field`] value performs the
//! arithmetic and rejects elements that do not belong to it.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Monic integer polynomial defining an extension. `coeffs[i]` is the
/// coefficient of `t^i`; the leading coefficient is 1. Irreducibility is
/// trusted, not checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinPoly {
    coeffs: Vec<BigInt>,
}

impl MinPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("minimal polynomial must have degree >= 1".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidArgument("minimal polynomial must be monic".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A field context: Q itself, or Q[t]/(m(t)).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Extension(Arc<MinPoly>),
}

/// An exact field element. In the rational context it is always `Rat`; in
/// an extension of degree n it is always `Ext` with exactly n coordinates
/// (coefficients of 1, t, ..., t^(n-1)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Ext(Vec<BigRational>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

// Integer operands skip the gcd normalization done by `Ratio`.
fn rat_add(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() + y.numer())
    } else {
        x + y
    }
}

fn rat_mul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() * y.numer())
    } else {
        x * y
    }
}

/// Checked binary arithmetic in a field context.
pub fn scalar_arith(field: &Field, a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar> {
    field.check(a)?;
    field.check(b)?;
    Ok(match op {
        ScalarOp::Add => field.add(a, b),
        ScalarOp::Sub => field.sub(a, b),
        ScalarOp::Mul => field.mul(a, b),
        ScalarOp::Div => field.div(a, b)?,
    })
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Field {
    pub fn extension(m: MinPoly) -> Self {
        Field::Extension(Arc::new(m))
    }

    /// Parses a field header such as `t^4+1` (or `Q` for the rationals).
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        if s.is_empty() || s == "Q" || s == "QQ" {
            return Ok(Field::Rational);
        }
        let coeffs = crate::exactalg::parse::parse_univariate_t(s)?;
        let mut ints = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if !c.is_integer() {
                return Err(Error::Parse("minimal polynomial needs integer coefficients".into()));
            }
            ints.push(c.to_integer());
        }
        Ok(Field::extension(MinPoly::new(ints)?))
    }

    pub fn degree(&self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Extension(m) => m.degree(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        match (self, a) {
            (Field::Rational, Scalar::Rat(_)) => Ok(()),
            (Field::Extension(m), Scalar::Ext(v)) if v.len() == m.degree() => Ok(()),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Extension(m) => Scalar::Ext(vec![BigRational::zero(); m.degree()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(rat(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        self.from_rational(BigRational::from_integer(n))
    }

    pub fn from_frac(&self, n: i64, d: i64) -> Scalar {
        self.from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(q),
            Field::Extension(m) => {
                let mut v = vec![BigRational::zero(); m.degree()];
                v[0] = q;
                Scalar::Ext(v)
            }
        }
    }

    /// The class of `t`. In the rational context there is no generator.
    pub fn generator(&self) -> Result<Scalar> {
        match self {
            Field::Rational => Err(Error::Parse("symbol t needs an extension field".into())),
            Field::Extension(m) => {
                let mut v = vec![BigRational::zero(); m.degree()];
                if m.degree() == 1 {
                    v[0] = -BigRational::from_integer(m.coeffs()[0].clone());
                } else {
                    v[1] = BigRational::one();
                }
                Ok(Scalar::Ext(v))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(rat_add(x, y)),
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(p, q)| rat_add(p, q)).collect())
            }
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(rat_add(x, &-y)),
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(p, q)| rat_add(p, &-q)).collect())
            }
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Ext(x) => Scalar::Ext(x.iter().map(|p| -p).collect()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(rat_mul(x, y)),
            (Field::Extension(m), Scalar::Ext(x), Scalar::Ext(y)) => {
                let n = m.degree();
                let mut prod = vec![BigRational::zero(); 2 * n - 1];
                for (i, p) in x.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (j, q) in y.iter().enumerate() {
                        if !q.is_zero() {
                            prod[i + j] = rat_add(&prod[i + j], &rat_mul(p, q));
                        }
                    }
                }
                Scalar::Ext(reduce_mod(prod, m))
            }
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn mul_rational(&self, a: &Scalar, q: &BigRational) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(rat_mul(x, q)),
            Scalar::Ext(x) => Scalar::Ext(x.iter().map(|p| rat_mul(p, q)).collect()),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Rational, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (Field::Extension(m), Scalar::Ext(x)) => ext_inverse(x, m).map(Scalar::Ext),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Evaluates the defining polynomial at the generator (always zero).
    pub fn minpoly_at_generator(&self) -> Result<Scalar> {
        match self {
            Field::Rational => Err(Error::InvalidArgument("no generator in Q".into())),
            Field::Extension(m) => {
                let t = self.generator()?;
                let mut acc = self.zero();
                for c in m.coeffs().iter().rev() {
                    acc = self.mul(&acc, &t);
                    acc = self.add(&acc, &self.from_bigint(c.clone()));
                }
                Ok(acc)
            }
        }
    }
}

fn reduce_mod(mut prod: Vec<BigRational>, m: &MinPoly) -> Vec<BigRational> {
    let n = m.degree();
    for i in (n..prod.len()).rev() {
        if prod[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut prod[i], BigRational::zero());
        for (j, mj) in m.coeffs()[..n].iter().enumerate() {
            if !mj.is_zero() {
                prod[i - n + j] -= &c * BigRational::from_integer(mj.clone());
            }
        }
    }
    prod.truncate(n);
    prod.resize(n, BigRational::zero());
    prod
}

// Univariate helpers over Q used only for inversion in Q[t]/(m).
fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lc;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn ext_inverse(x: &[BigRational], m: &MinPoly) -> Result<Vec<BigRational>> {
    let n = m.degree();
    let mpoly: Vec<BigRational> = m.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut a = x.to_vec();
    trim(&mut a);
    // Extended Euclid: s*x + _*m = r.
    let (mut r0, mut r1) = (mpoly, a);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return Err(Error::InvalidArgument(
            "element is a zero divisor: the minimal polynomial is reducible".into(),
        ));
    }
    let c = r0[0].clone();
    let mut out: Vec<BigRational> = s0.iter().map(|s| s / &c).collect();
    out.resize(n, BigRational::zero());
    Ok(out)
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Ext(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Ext(v) => v[0].is_one() && v[1..].iter().all(|c| c.is_zero()),
        }
    }

    /// The rational value if the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(x) => Some(x),
            Scalar::Ext(v) if v[1..].iter().all(|c| c.is_zero()) => Some(&v[0]),
            Scalar::Ext(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_integer(),
            Scalar::Ext(v) => v.iter().all(|c| c.is_integer()),
        }
    }

    /// Number of bits of the largest numerator or denominator.
    pub fn bit_size(&self) -> u64 {
        let one = |q: &BigRational| q.numer().bits().max(q.denom().bits());
        match self {
            Scalar::Rat(x) => one(x),
            Scalar::Ext(v) => v.iter().map(one).max().unwrap_or(0),
        }
    }

    /// Whether the printed form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rat(x) => !x.is_integer(),
            Scalar::Ext(v) => v.iter().filter(|c| !c.is_zero()).count() > 1 || !v[0].is_zero() && !v[0].is_integer(),
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => fmt_rational(x, f),
            Scalar::Ext(v) => {
                let mut first = true;
                for (i, c) in v.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    if i == 0 {
                        fmt_rational(&mag, f)?;
                    } else {
                        if !mag.is_one() {
                            fmt_rational(&mag, f)?;
                            write!(f, "*")?;
                        }
                        if i == 1 {
                            write!(f, "t")?;
                        } else {
                            write!(f, "t^{i}")?;
                        }
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(src: &str) -> Field {
        Field::parse(src).unwrap()
    }

    #[test]
    fn rational_sum() {
        let q = Field::Rational;
        let s = scalar_arith(&q, &q.from_frac(1, 2), &q.from_frac(1, 3), ScalarOp::Add).unwrap();
        assert_eq!(s, q.from_frac(5, 6));
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let k = ext("t^2+1");
        let t = k.generator().unwrap();
        assert_eq!(k.mul(&t, &t), k.from_int(-1));
    }

    #[test]
    fn sqrt2_from_eighth_root_of_unity() {
        // t + t^7 = t - t^3 in Q[t]/(t^4+1); its square is 2.
        let k = ext("t^4+1");
        let t = k.generator().unwrap();
        let t7 = k.pow(&t, 7).unwrap();
        let s = k.add(&t, &t7);
        assert_eq!(k.mul(&s, &s), k.from_int(2));
        // and t^-1 = t^7
        assert_eq!(k.inv(&t).unwrap(), t7);
    }

    #[test]
    fn division_by_zero_and_mixed_contexts() {
        let q = Field::Rational;
        assert_eq!(
            scalar_arith(&q, &q.one(), &q.zero(), ScalarOp::Div),
            Err(Error::DivisionByZero)
        );
        let k = ext("t^2+1");
        assert_eq!(
            scalar_arith(&q, &q.one(), &k.one(), ScalarOp::Add),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn minimal_polynomial_vanishes_at_generator() {
        for src in ["t^2+1", "t^4+1", "t^2+t+1", "t^3-2"] {
            let k = ext(src);
            assert!(k.minpoly_at_generator().unwrap().is_zero(), "{src}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let k = ext("t^3-2");
        let t = k.generator().unwrap();
        let a = k.add(&k.mul(&t, &t), &k.from_frac(3, 7));
        let b = k.inv(&a).unwrap();
        assert!(k.mul(&a, &b).is_one());
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        let k = ext("t^2-1");
        let t = k.generator().unwrap();
        let a = k.sub(&t, &k.one());
        assert!(k.inv(&a).is_err());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let k = ext("t^4+1");
        let t = k.generator().unwrap();
        let a = k.add(&k.mul_rational(&k.pow(&t, 3).unwrap(), &BigRational::new(BigInt::from(-3), BigInt::from(2))), &k.from_int(5));
        let printed = a.to_string();
        let back = crate::exactalg::parse::parse_scalar(&k, &printed).unwrap();
        assert_eq!(back, a);
    }
}
