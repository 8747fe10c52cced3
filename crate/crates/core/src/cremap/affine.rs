//! Birational maps written in the affine chart z = 1.

use std::fmt;

use super::map::RationalMapP2;
use crate::error::{Error, Result};
use crate::exactalg::poly::Poly;
use crate::exactalg::{parse_ratfn, Field, RatFn};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBirMap {
    f: [RatFn; 2],
}

fn homogenize_to(p: &Poly, d: u32) -> Poly {
    Poly::from_terms(
        p.field(),
        p.terms().iter().map(|(m, c)| ([m[0], m[1], d - m[0] - m[1]], c.clone())),
    )
}

/// Homogeneous numerator and denominator of the same degree.
fn homogenize_ratfn(r: &RatFn) -> (Poly, Poly) {
    let d = r.num().total_degree().max(r.den().total_degree());
    (homogenize_to(r.num(), d), homogenize_to(r.den(), d))
}

/// Cancels the common factor of numerator and denominator and makes the
/// denominator monic.
pub fn reduce(r: &RatFn) -> Result<RatFn> {
    if r.num().is_zero() {
        return Ok(r.clone());
    }
    let (n, d) = homogenize_ratfn(r);
    let g = crate::exactalg::gcd2(&n, &d)?;
    let k = r.field();
    let one = Poly::one(k);
    let (x, y) = (Poly::var(k, 0), Poly::var(k, 1));
    let n = n.div_exact(&g)?.substitute([&x, &y, &one]);
    let d = d.div_exact(&g)?.substitute([&x, &y, &one]);
    let lc = d.leading().expect("nonzero denominator").1.clone();
    let inv = k.inv(&lc)?;
    RatFn::new(n.scale(&inv), d.scale(&inv))
}

impl AffineBirMap {
    pub fn new(f1: RatFn, f2: RatFn) -> Result<Self> {
        if f1.field() != f2.field() {
            return Err(Error::FieldMismatch);
        }
        for r in [&f1, &f2] {
            if r.num().degree_in(2) > 0 || r.den().degree_in(2) > 0 {
                return Err(Error::Parse("affine maps use only x and y".into()));
            }
        }
        Ok(Self { f: [f1, f2] })
    }

    pub fn parse(field: &Field, f1: &str, f2: &str) -> Result<Self> {
        Self::new(parse_ratfn(field, f1)?, parse_ratfn(field, f2)?)
    }

    pub fn identity(field: &Field) -> Self {
        Self { f: [RatFn::from_poly(Poly::var(field, 0)), RatFn::from_poly(Poly::var(field, 1))] }
    }

    pub fn first(&self) -> &RatFn {
        &self.f[0]
    }

    pub fn second(&self) -> &RatFn {
        &self.f[1]
    }

    pub fn field(&self) -> &Field {
        self.f[0].field()
    }

    /// (A/B, C/E) ↦ (A E : C B : B E) after homogenization, gcd removed.
    pub fn to_p2(&self) -> Result<RationalMapP2> {
        let (a, b) = homogenize_ratfn(&self.f[0]);
        let (c, e) = homogenize_ratfn(&self.f[1]);
        RationalMapP2::new([a.mul(&e), c.mul(&b), b.mul(&e)])
    }

    /// Reads a projective map in the chart z = 1.
    pub fn from_p2(m: &RationalMapP2) -> Result<Self> {
        let k = m.field();
        let one = Poly::one(k);
        let (x, y) = (Poly::var(k, 0), Poly::var(k, 1));
        let dehom = |p: &Poly| p.substitute([&x, &y, &one]);
        let [p0, p1, p2] = m.components();
        let den = dehom(p2);
        if den.is_zero() {
            return Err(Error::Shape("the image lies in the line z = 0".into()));
        }
        Self::new(reduce(&RatFn::new(dehom(p0), den.clone())?)?, reduce(&RatFn::new(dehom(p1), den)?)?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::from_p2(&self.to_p2()?.compose(&other.to_p2()?)?)
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.f[0].same_as(&other.f[0]) && self.f[1].same_as(&other.f[1])
    }
}

impl fmt::Display for AffineBirMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.f[0], self.f[1])
    }
}
