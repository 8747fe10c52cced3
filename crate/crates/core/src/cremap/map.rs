//! Rational self-maps of P^2 given by three forms of equal degree without
//! common factor.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactalg::gcd::gcd3;
use crate::exactalg::poly::{substitute_all, Poly};
use crate::exactalg::{int_content, Field, Scalar};

/// Default cap on coefficient size while iterating, in bits.
pub const DEFAULT_BIT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMapP2 {
    comps: [Poly; 3],
    degree: u32,
}

impl RationalMapP2 {
    /// Builds a map from three forms, dividing out their common factor.
    pub fn new(comps: [Poly; 3]) -> Result<Self> {
        let field = comps[0].field().clone();
        if comps.iter().any(|c| *c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if comps.iter().all(Poly::is_zero) {
            return Err(Error::AllZero);
        }
        let mut degree = None;
        for c in &comps {
            if let Some(d) = c.homogeneous_degree()? {
                match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => return Err(Error::DegreeMismatch(e, d)),
                    _ => {}
                }
            }
        }
        let g = gcd3(&comps[0], &comps[1], &comps[2])?;
        let comps = if g.is_constant() {
            comps
        } else {
            let [a, b, c] = comps;
            [a.div_exact(&g)?, b.div_exact(&g)?, c.div_exact(&g)?]
        };
        let degree = comps.iter().find(|c| !c.is_zero()).unwrap().total_degree();
        Ok(Self { comps: remove_content(comps), degree })
    }

    pub fn identity(field: &Field) -> Self {
        Self { comps: [Poly::var(field, 0), Poly::var(field, 1), Poly::var(field, 2)], degree: 1 }
    }

    /// The linear map with matrix `m` acting on column vectors (x, y, z).
    pub fn linear(field: &Field, m: &[[Scalar; 3]; 3]) -> Result<Self> {
        let comps = std::array::from_fn(|i| {
            Poly::from_terms(
                field,
                (0..3).map(|j| {
                    let mut mono = [0u32; 3];
                    mono[j] = 1;
                    (mono, m[i][j].clone())
                }),
            )
        });
        Self::new(comps)
    }

    pub fn components(&self) -> &[Poly; 3] {
        &self.comps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        self.comps[0].field()
    }

    pub fn max_bits(&self) -> u64 {
        self.comps.iter().map(Poly::max_bits).max().unwrap_or(0)
    }

    /// `self ∘ other`: substitute `other` into `self` and cancel.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let [a, b, c] = &other.comps;
        let subbed = substitute_all(&self.comps, [a, b, c]);
        if subbed.iter().all(Poly::is_zero) {
            return Err(Error::DegenerateComposition);
        }
        let [p, q, r]: [Poly; 3] = subbed.try_into().expect("three components");
        Self::new([p, q, r])
    }

    /// Projective equality by vanishing of all 2x2 cross products.
    pub fn equals(&self, other: &Self) -> bool {
        if self.field() != other.field() || self.degree != other.degree {
            return false;
        }
        for i in 0..3 {
            if self.comps[i].is_zero() != other.comps[i].is_zero() {
                return false;
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if self.comps[i].mul(&other.comps[j]) != self.comps[j].mul(&other.comps[i]) {
                return false;
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.equals(&Self::identity(self.field()))
    }

    /// The n-th iterate (n >= 0) by repeated composition.
    pub fn power(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity(self.field());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Iterates φ, φ², ..., φ^K computed as φ ∘ φ^(k-1), aborting when a
    /// coefficient exceeds `bit_cap` bits.
    pub fn iterates(&self, k: usize, bit_cap: u64) -> Result<Vec<Self>> {
        let mut out: Vec<Self> = Vec::with_capacity(k);
        for i in 0..k {
            let next = match out.last() {
                None => self.clone(),
                Some(prev) => self.compose(prev)?,
            };
            let bits = next.max_bits();
            if bits > bit_cap {
                return Err(Error::CoefficientCap { bits, cap: bit_cap });
            }
            out.push(next);
            debug_assert_eq!(out.len(), i + 1);
        }
        Ok(out)
    }

    /// deg φ¹, ..., deg φ^K.
    pub fn iterate_degrees(&self, k: usize) -> Result<Vec<u32>> {
        self.iterate_degrees_capped(k, DEFAULT_BIT_CAP)
    }

    pub fn iterate_degrees_capped(&self, k: usize, bit_cap: u64) -> Result<Vec<u32>> {
        if k == 0 {
            return Err(Error::InvalidArgument("horizon K must be >= 1".into()));
        }
        let mut degrees = Vec::with_capacity(k);
        let mut cur = self.clone();
        degrees.push(cur.degree);
        for _ in 1..k {
            cur = self.compose(&cur)?;
            let bits = cur.max_bits();
            if bits > bit_cap {
                return Err(Error::CoefficientCap { bits, cap: bit_cap });
            }
            degrees.push(cur.degree);
        }
        Ok(degrees)
    }

    /// Image of a point, or `None` if it is a base point.
    pub fn apply(&self, p: &[Scalar; 3]) -> Option<[Scalar; 3]> {
        let v: [Scalar; 3] = std::array::from_fn(|i| self.comps[i].eval(p));
        if v.iter().all(Scalar::is_zero) {
            None
        } else {
            Some(v)
        }
    }

    pub fn is_base_point(&self, p: &[Scalar; 3]) -> bool {
        self.apply(p).is_none()
    }

    /// Scales so that the first nonzero coefficient of the first nonzero
    /// component is 1.
    pub fn normalized(&self) -> Self {
        let k = self.field();
        let lead = self.comps.iter().find_map(|c| c.leading()).map(|(_, c)| c.clone()).unwrap();
        let inv = k.inv(&lead).expect("nonzero");
        Self { comps: std::array::from_fn(|i| self.comps[i].scale(&inv)), degree: self.degree }
    }
}

/// Over Q: scales to integer coefficients with gcd 1 and a positive first
/// coefficient. Otherwise: first coefficient 1.
fn remove_content(comps: [Poly; 3]) -> [Poly; 3] {
    let k = comps[0].field().clone();
    let lead = comps.iter().find_map(|c| c.leading()).map(|(_, c)| c.clone()).expect("nonzero map");
    let scale = if k.is_rational() {
        let rats = || comps.iter().flat_map(|c| c.terms()).map(|(_, s)| s.as_rational().expect("rational field"));
        let den = rats().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = int_content(rats().map(|q| q.numer()));
        let sign = if lead.as_rational().unwrap().is_negative() { -1 } else { 1 };
        Scalar::Rat(BigRational::new(den * sign, num))
    } else {
        k.inv(&lead).expect("nonzero")
    };
    if scale.is_one() {
        return comps;
    }
    comps.map(|c| c.scale(&scale))
}

/// True iff both composites are the identity.
pub fn verify_inverse(phi: &RationalMapP2, psi: &RationalMapP2) -> bool {
    let ok = |a: &RationalMapP2, b: &RationalMapP2| a.compose(b).map(|m| m.is_identity()).unwrap_or(false);
    ok(phi, psi) && ok(psi, phi)
}

/// ψ ∘ φ ∘ ψ⁻¹ after checking the supplied inverse.
pub fn conjugate(psi: &RationalMapP2, psi_inv: &RationalMapP2, phi: &RationalMapP2) -> Result<RationalMapP2> {
    if !verify_inverse(psi, psi_inv) {
        return Err(Error::NotInverse);
    }
    psi.compose(&phi.compose(psi_inv)?)
}

pub fn commutes(phi: &RationalMapP2, psi: &RationalMapP2) -> Result<bool> {
    Ok(phi.compose(psi)?.equals(&psi.compose(phi)?))
}

impl fmt::Display for RationalMapP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.comps[0], self.comps[1], self.comps[2])
    }
}
