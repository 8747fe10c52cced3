//! Quotients of polynomials in x, y, z. No cancellation is attempted beyond
//! folding constant denominators into the numerator; callers that need a
//! reduced form go through the homogeneous gcd.

use std::fmt;

use super::field::{Field, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den }.fold_constant())
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        Self { num: p, den }
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    fn fold_constant(self) -> Self {
        if self.den.is_constant() && !self.den.terms()[0].1.is_one() {
            let k = self.num.field().clone();
            let inv = k.inv(&self.den.terms()[0].1).expect("nonzero constant");
            return Self { num: self.num.scale(&inv), den: Poly::one(&k) };
        }
        if self.num.is_zero() {
            let k = self.num.field().clone();
            return Self { num: self.num, den: Poly::one(&k) };
        }
        self
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value if the denominator is constant.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self { num: self.num.add(&o.num), den: self.den.clone() }.fold_constant();
        }
        Self {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .fold_constant()
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.fold_constant()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        Ok(Self { num: base.num.pow(n), den: base.den.pow(n) }.fold_constant())
    }

    pub fn substitute(&self, subs: [&Poly; 3]) -> Result<Self> {
        Self::new(self.num.substitute(subs), self.den.substitute(subs))
    }

    /// Evaluates at a point; fails if the denominator vanishes there.
    pub fn eval(&self, point: &[Scalar; 3]) -> Result<Scalar> {
        let k = self.field();
        k.div(&self.num.eval(point), &self.den.eval(point))
    }

    /// Equality as rational functions (cross multiplication).
    pub fn same_as(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| p.num_terms() > 1 || p.terms().first().is_some_and(|(_, c)| c.is_compound() || !c.is_one());
        if wrap(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if wrap(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
