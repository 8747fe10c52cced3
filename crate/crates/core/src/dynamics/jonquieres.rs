//! Maps preserving a pencil of lines: base-point counts, homaloidal
//! profiles and the integer μ read off the degree slope.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::growth::tail_slope;
use crate::cremap::{conjugate, RationalMapP2, DEFAULT_BIT_CAP};
use crate::error::{Error, Result};
use crate::exactalg::{gcd2, Field, Poly, Scalar};
use crate::report::rational;

/// Degree and multiplicities of a homaloidal system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub degree: u64,
    pub multiplicities: Vec<u64>,
}

/// Σm = 3(d-1) and Σm² = d²-1.
pub fn validate_profile(p: &MultiplicityProfile) -> bool {
    let d = p.degree as u128;
    if d == 0 {
        return false;
    }
    let s1: u128 = p.multiplicities.iter().map(|&m| m as u128).sum();
    let s2: u128 = p.multiplicities.iter().map(|&m| (m as u128) * (m as u128)).sum();
    s1 == 3 * (d - 1) && s2 == d * d - 1
}

/// Base-points (infinitely near ones included) of a degree-d map
/// preserving a pencil of lines: one of multiplicity d-1 and 2(d-1) simple
/// ones, so 2d-1; 0 for d <= 1.
pub fn jonquieres_bp_count(d: u64) -> u64 {
    if d <= 1 {
        0
    } else {
        2 * d - 1
    }
}

/// The profile (d-1, 1^(2d-2)).
pub fn jonquieres_profile(d: u64) -> MultiplicityProfile {
    let mut multiplicities = Vec::new();
    if d >= 2 {
        multiplicities.push(d - 1);
        multiplicities.extend(std::iter::repeat(1).take(2 * (d as usize - 1)));
    }
    MultiplicityProfile { degree: d, multiplicities }
}

/// Two independent linear forms vanishing at `p`.
fn pencil_forms(k: &Field, p: &[Scalar; 3]) -> Result<[Poly; 2]> {
    let v = (0..3).rev().find(|&i| !p[i].is_zero()).ok_or(Error::InvalidArgument("(0:0:0) is not a point".into()))?;
    let forms: Vec<Poly> = (0..3)
        .filter(|&i| i != v)
        .map(|i| {
            // p_v x_i - p_i x_v
            let mut a = [0u32; 3];
            a[i] = 1;
            let mut b = [0u32; 3];
            b[v] = 1;
            Poly::from_terms(k, [(a, p[v].clone()), (b, k.neg(&p[i]))])
        })
        .collect();
    Ok([forms[0].clone(), forms[1].clone()])
}

/// Whether φ maps the pencil of lines through `p` to itself: composing the
/// pencil projection with φ must give the projection again, up to a
/// projective change of the pencil parameter.
pub fn preserves_pencil(phi: &RationalMapP2, p: &[Scalar; 3]) -> Result<bool> {
    let k = phi.field();
    let [l1, l2] = pencil_forms(k, p)?;
    let [a, b, c] = phi.components();
    let sub = |l: &Poly| l.substitute([a, b, c]);
    let (pa, pb) = (sub(&l1), sub(&l2));
    if pa.is_zero() && pb.is_zero() {
        return Ok(false);
    }
    let g = gcd2(&pa, &pb)?;
    let (ra, rb) = (pa.div_exact(&g)?, pb.div_exact(&g)?);
    for r in [&ra, &rb] {
        if r.is_zero() {
            continue;
        }
        if r.total_degree() != 1 || !r.eval(p).is_zero() {
            return Ok(false);
        }
    }
    if ra.is_zero() || rb.is_zero() {
        return Ok(false);
    }
    Ok(ra.monic()? != rb.monic()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuEstimate {
    pub mu: i64,
    /// Twice the slope, before rounding.
    #[serde(with = "rational")]
    pub raw: BigRational,
    #[serde(with = "rational")]
    pub slope: BigRational,
    pub degrees: Vec<u64>,
    /// `None` when no pencil point was supplied (slope-only output).
    pub pencil_verified: Option<bool>,
}

/// μ from a degree sequence: twice the tail slope, rounded; rejected if the
/// unrounded value is more than 1/10 away from an integer.
pub fn mu_from_degrees(degrees: &[u64]) -> Result<(i64, BigRational, BigRational)> {
    if degrees.len() < 4 {
        return Err(Error::TooShort { need: 4, got: degrees.len() });
    }
    let slope = tail_slope(degrees);
    let raw = &slope * BigRational::from_integer(2.into());
    let mu = raw.round();
    if (&raw - &mu).abs() > BigRational::new(1.into(), 10.into()) {
        return Err(Error::NotIntegral(format!("2 * slope = {raw} is not within 1/10 of an integer")));
    }
    Ok((mu.to_integer().to_i64().expect("small"), raw, slope))
}

/// μ(φ) over the horizon K. With a pencil point, the pencil of lines through
/// it must be preserved.
pub fn mu_estimate(phi: &RationalMapP2, pencil_point: Option<&[Scalar; 3]>, k: usize) -> Result<MuEstimate> {
    let pencil_verified = match pencil_point {
        Some(p) => {
            if !preserves_pencil(phi, p)? {
                return Err(Error::PencilNotPreserved);
            }
            Some(true)
        }
        None => None,
    };
    let degrees: Vec<u64> = phi.iterate_degrees(k)?.into_iter().map(u64::from).collect();
    let (mu, raw, slope) = mu_from_degrees(&degrees)?;
    Ok(MuEstimate { mu, raw, slope, degrees, pencil_verified })
}

/// deg(ψ ∘ φ^k ∘ ψ⁻¹) for k = 1..=K, conjugating each iterate of φ rather
/// than iterating the (higher degree) conjugate.
pub fn conjugate_iterate_degrees(
    phi: &RationalMapP2,
    psi: &RationalMapP2,
    psi_inv: &RationalMapP2,
    k: usize,
) -> Result<Vec<u64>> {
    phi.iterates(k, DEFAULT_BIT_CAP)?
        .iter()
        .map(|f| Ok(u64::from(conjugate(psi, psi_inv, f)?.degree())))
        .collect()
}
