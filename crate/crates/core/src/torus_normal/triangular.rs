//! Constructive normal forms for (αx, βy + Q(x)) and (x + 1, βy + Q(x)) by
//! explicit conjugations in y, one degree at a time.

use serde::Serialize;

use crate::cremap::AffineBirMap;
use crate::error::{Error, Result};
use crate::exactalg::upoly::{self, UPoly};
use crate::exactalg::{Field, Poly, RatFn, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangularShape {
    /// (αx, βy + Q(x))
    Scaling,
    /// (x + 1, βy + Q(x))
    Translation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// (x, y + γx^d)
    AddMonomial { gamma: String, degree: u32 },
    /// (x, y / S(x)) with S(αx) = βS(x)
    DivideBy { divisor: String },
    /// (x, cy)
    ScaleY { factor: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct Conjugator {
    #[serde(flatten)]
    pub kind: StepKind,
    pub map: String,
    #[serde(skip)]
    pub forward: AffineBirMap,
    #[serde(skip)]
    pub inverse: AffineBirMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularReduction {
    pub shape: TriangularShape,
    pub input: String,
    /// Applied in order: g_{i+1} = h_i ∘ g_i ∘ h_i⁻¹.
    pub steps: Vec<Conjugator>,
    pub canonical: String,
    #[serde(skip)]
    pub canonical_map: AffineBirMap,
    /// Which hypotheses of the textbook argument hold for this input; the
    /// reduction itself does not depend on them.
    pub notes: Vec<String>,
    /// The composed chain conjugates the input to the canonical form
    /// exactly, and each step composed with its inverse is the identity.
    pub verified: bool,
}

fn xpoly(k: &Field, q: &[Scalar]) -> Poly {
    Poly::from_terms(k, q.iter().enumerate().map(|(i, c)| ([i as u32, 0, 0], c.clone())))
}

fn map_of(f1: Poly, f2: RatFn) -> Result<AffineBirMap> {
    AffineBirMap::new(RatFn::from_poly(f1), f2)
}

fn y_plus(k: &Field, q: &[Scalar]) -> RatFn {
    RatFn::from_poly(Poly::var(k, 1).add(&xpoly(k, q)))
}

fn monomial(k: &Field, c: &Scalar, d: u32) -> UPoly {
    let mut v = vec![k.zero(); d as usize + 1];
    v[d as usize] = c.clone();
    v
}

/// Reads (f1, βy + Q(x)).
fn parse_shape(g: &AffineBirMap) -> Result<(TriangularShape, Scalar, Scalar, UPoly)> {
    let k = g.field();
    let bad = |why: &str| Error::Shape(format!("{g} is not (αx, βy + Q(x)) or (x + 1, βy + Q(x)): {why}"));
    let f1 = g.first().as_poly().ok_or_else(|| bad("first coordinate is not a polynomial"))?;
    let f2 = g.second().as_poly().ok_or_else(|| bad("second coordinate is not a polynomial"))?;
    let x = Poly::var(k, 0);
    let (shape, alpha) = if *f1 == x.add(&Poly::one(k)) {
        (TriangularShape::Translation, k.one())
    } else if f1.num_terms() == 1 && f1.terms()[0].0 == [1, 0, 0] {
        (TriangularShape::Scaling, f1.terms()[0].1.clone())
    } else {
        return Err(bad("first coordinate must be αx or x + 1"));
    };
    let mut beta = k.zero();
    let mut q: UPoly = vec![k.zero(); f2.degree_in(0) as usize + 1];
    for (m, c) in f2.terms() {
        match (m[0], m[1]) {
            (0, 1) => beta = c.clone(),
            (i, 0) => q[i as usize] = c.clone(),
            _ => return Err(bad("second coordinate must be βy + Q(x)")),
        }
    }
    if beta.is_zero() {
        return Err(bad("β = 0"));
    }
    upoly::trim(&mut q);
    Ok((shape, alpha, beta, q))
}

/// Multiplicative order of α if it is a root of unity (searched up to a
/// bound that covers every root of unity in a field of this degree).
fn root_order(k: &Field, alpha: &Scalar) -> Option<u64> {
    let n = k.degree() as u64;
    let bound = 2 * n * n + 2;
    let mut p = alpha.clone();
    for j in 1..=bound {
        if p.is_one() {
            return Some(j);
        }
        p = k.mul(&p, alpha);
    }
    None
}

struct Chain {
    k: Field,
    steps: Vec<Conjugator>,
}

impl Chain {
    fn push(&mut self, kind: StepKind, f2: RatFn, f2_inv: RatFn) -> Result<()> {
        let x = Poly::var(&self.k, 0);
        let forward = map_of(x.clone(), f2)?;
        let inverse = map_of(x, f2_inv)?;
        self.steps.push(Conjugator { kind, map: forward.to_string(), forward, inverse });
        Ok(())
    }

    fn add_monomial(&mut self, gamma: &Scalar, d: u32) -> Result<()> {
        let k = self.k.clone();
        let m = monomial(&k, gamma, d);
        self.push(
            StepKind::AddMonomial { gamma: gamma.to_string(), degree: d },
            y_plus(&k, &m),
            y_plus(&k, &upoly::scale(&k, &m, &k.neg(&k.one()))),
        )
    }

    fn divide_by(&mut self, s: &[Scalar]) -> Result<()> {
        let k = self.k.clone();
        let sp = xpoly(&k, s);
        let y = Poly::var(&k, 1);
        self.push(
            StepKind::DivideBy { divisor: sp.to_string() },
            RatFn::new(y.clone(), sp.clone())?,
            RatFn::from_poly(y.mul(&sp)),
        )
    }

    fn scale_y(&mut self, c: &Scalar) -> Result<()> {
        let k = self.k.clone();
        let y = Poly::var(&k, 1);
        self.push(
            StepKind::ScaleY { factor: c.to_string() },
            RatFn::from_poly(y.scale(c)),
            RatFn::from_poly(y.scale(&k.inv(c)?)),
        )
    }
}

fn verify(g: &AffineBirMap, steps: &[Conjugator], canonical: &AffineBirMap) -> Result<bool> {
    let k = g.field();
    let id = AffineBirMap::identity(k);
    let mut cur = g.clone();
    for s in steps {
        if !s.forward.compose(&s.inverse)?.equals(&id) || !s.inverse.compose(&s.forward)?.equals(&id) {
            return Ok(false);
        }
        cur = s.forward.compose(&cur.compose(&s.inverse)?)?;
    }
    Ok(cur.equals(canonical))
}

pub fn reduce_triangular(g: &AffineBirMap) -> Result<TriangularReduction> {
    let k = g.field().clone();
    let (shape, alpha, beta, mut q) = parse_shape(g)?;
    let mut chain = Chain { k: k.clone(), steps: Vec::new() };
    let mut notes = Vec::new();
    let x = Poly::var(&k, 0);
    let y = Poly::var(&k, 1);
    let one = Poly::one(&k);

    let canonical = match shape {
        TriangularShape::Scaling => {
            if alpha.is_zero() {
                return Err(Error::Shape("α = 0".into()));
            }
            notes.push(if beta.is_one() { "β = 1".into() } else { format!("β = {beta} ≠ 1") });
            notes.push(match root_order(&k, &alpha) {
                Some(o) => format!("α is a primitive {o}-th root of unity"),
                None => "α is not a root of unity".into(),
            });
            let q0 = q.first().cloned().unwrap_or_else(|| k.zero());
            notes.push(if q0.is_zero() { "Q(0) = 0".into() } else { "Q(0) ≠ 0".into() });
            // Q ← Q + γ(α^d - β)x^d kills every non-resonant degree
            let mut resonant: UPoly = vec![k.zero(); q.len()];
            for d in (0..q.len()).rev() {
                if q[d].is_zero() {
                    continue;
                }
                let factor = k.sub(&k.pow(&alpha, d as i64)?, &beta);
                if factor.is_zero() {
                    resonant[d] = q[d].clone();
                } else {
                    let gamma = k.neg(&k.div(&q[d], &factor)?);
                    chain.add_monomial(&gamma, d as u32)?;
                    q[d] = k.zero();
                }
            }
            upoly::trim(&mut resonant);
            let ax = x.scale(&alpha);
            if resonant.is_empty() {
                map_of(ax, RatFn::from_poly(y.scale(&beta)))?
            } else {
                // S(αx) = βS(x) for the resonant part S, and (x, y/S) gives (αx, y + 1/β)
                chain.divide_by(&resonant)?;
                if !beta.is_one() {
                    chain.scale_y(&beta)?;
                }
                map_of(ax, RatFn::from_poly(y.add(&one)))?
            }
        }
        TriangularShape::Translation => {
            let shift = [k.one(), k.one()];
            while let Some(d) = upoly::degree(&q) {
                let lead = q[d].clone();
                if beta.is_one() {
                    // (x, y + γx^{d+1}) adds γ((x+1)^{d+1} - x^{d+1})
                    let e = d as u32 + 1;
                    let gamma = k.neg(&k.div(&lead, &k.from_int(e as i64))?);
                    chain.add_monomial(&gamma, e)?;
                    let pw = (0..e).fold(vec![k.one()], |acc, _| upoly::mul(&k, &acc, &shift));
                    let diff = upoly::sub(&k, &pw, &monomial(&k, &k.one(), e));
                    q = upoly::add(&k, &q, &upoly::scale(&k, &diff, &gamma));
                } else {
                    // (x, y + γx^d) adds γ((x+1)^d - βx^d)
                    let gamma = k.neg(&k.div(&lead, &k.sub(&k.one(), &beta))?);
                    chain.add_monomial(&gamma, d as u32)?;
                    let pw = (0..d).fold(vec![k.one()], |acc, _| upoly::mul(&k, &acc, &shift));
                    let diff = upoly::sub(&k, &pw, &monomial(&k, &beta, d as u32));
                    q = upoly::add(&k, &q, &upoly::scale(&k, &diff, &gamma));
                }
                debug_assert!(upoly::degree(&q).map_or(true, |nd| nd < d));
            }
            map_of(x.add(&one), RatFn::from_poly(y.scale(&beta)))?
        }
    };
    let verified = verify(g, &chain.steps, &canonical)?;
    Ok(TriangularReduction {
        shape,
        input: g.to_string(),
        steps: chain.steps,
        canonical: canonical.to_string(),
        canonical_map: canonical,
        notes,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(k: &Field, f1: &str, f2: &str) -> TriangularReduction {
        reduce_triangular(&AffineBirMap::parse(k, f1, f2).unwrap()).unwrap()
    }

    fn same(k: &Field, r: &TriangularReduction, f1: &str, f2: &str) -> bool {
        r.canonical_map.equals(&AffineBirMap::parse(k, f1, f2).unwrap())
    }

    #[test]
    fn translation_case() {
        let k = Field::Rational;
        let r = run(&k, "x + 1", "y + x^2 + 3*x");
        assert!(r.verified);
        assert!(same(&k, &r, "x + 1", "y"));
        assert_eq!(r.steps.len(), 3);
        assert!(matches!(r.steps[0].kind, StepKind::AddMonomial { degree: 3, .. }));
    }

    #[test]
    fn translation_with_beta() {
        let k = Field::Rational;
        let r = run(&k, "x + 1", "2*y + x^2 - 1");
        assert!(r.verified);
        assert!(same(&k, &r, "x + 1", "2*y"));
    }

    #[test]
    fn cube_root_of_unity() {
        let k = Field::parse("t^2+t+1").unwrap();
        let r = run(&k, "t*x", "y + x^3");
        assert!(r.verified);
        assert!(same(&k, &r, "t*x", "y + 1"));
        assert!(matches!(&r.steps[0].kind, StepKind::DivideBy { divisor } if divisor == "x^3"));
        assert!(r.notes.iter().any(|n| n.contains("primitive 3-th")));
    }

    #[test]
    fn resonant_with_beta() {
        let k = Field::Rational;
        let r = run(&k, "2*x", "2*y + x");
        assert!(r.verified);
        assert!(same(&k, &r, "2*x", "y + 1"));
    }

    #[test]
    fn nonresonant_becomes_diagonal() {
        let k = Field::Rational;
        let r = run(&k, "2*x", "3*y + x^2 - x + 5");
        assert!(r.verified);
        assert!(same(&k, &r, "2*x", "3*y"));
        assert_eq!(r.steps.len(), 3);
    }

    #[test]
    fn mixed_terms() {
        // ζ₃ with Q = 1 + x + x^3 + x^4: x and x^4 are killed, 1 + x^3 is resonant
        let k = Field::parse("t^2+t+1").unwrap();
        let r = run(&k, "t*x", "y + 1 + x + x^3 + x^4");
        assert!(r.verified);
        assert!(same(&k, &r, "t*x", "y + 1"));
    }

    #[test]
    fn shape_errors() {
        let k = Field::Rational;
        let bad = |f1: &str, f2: &str| reduce_triangular(&AffineBirMap::parse(&k, f1, f2).unwrap());
        assert!(matches!(bad("x + y", "y"), Err(Error::Shape(_))));
        assert!(matches!(bad("2*x", "x*y"), Err(Error::Shape(_))));
        assert!(matches!(bad("2*x", "x^2"), Err(Error::Shape(_))));
    }
}
