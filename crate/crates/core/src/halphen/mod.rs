//! Halphen twists at the level of the Picard lattice of the blow-up of the
//! nine base-points of a Halphen pencil.

pub mod pic;

use num_rational::BigRational;
use serde::Serialize;

pub use pic::{LatticeMap, PicClass};

use crate::error::{Error, Result};
use crate::report::rational;

/// Number of blown-up points for Halphen operations.
pub const HALPHEN_RANK: usize = 9;

/// The pencil |-mK| and the translation class Δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalphenData {
    pub m: u32,
    pub delta: PicClass,
}

impl HalphenData {
    pub fn new(m: u32, delta: PicClass) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidHalphen("m must be positive".into()));
        }
        let delta_k = check_delta(&delta)?;
        debug_assert_eq!(delta_k, 0);
        Ok(Self { m, delta })
    }
}

/// r = 9 and Δ·K = 0.
fn check_delta(delta: &PicClass) -> Result<i64> {
    if delta.rank() != HALPHEN_RANK {
        return Err(Error::NeedNinePoints(delta.rank()));
    }
    let dk = delta.inner(&PicClass::canonical(HALPHEN_RANK))?;
    if dk != 0 {
        return Err(Error::NotOrthogonalToK(dk));
    }
    Ok(dk)
}

/// D ↦ D - m(D·K)Δ + γK with γ = -(m²/2)(D·K)Δ² + m(D·Δ).
pub fn translation_image(h: &HalphenData, d: &PicClass) -> Result<PicClass> {
    let k = PicClass::canonical(HALPHEN_RANK);
    let m = i128::from(h.m);
    let dk = i128::from(d.inner(&k)?);
    let dd = i128::from(d.inner(&h.delta)?);
    let s = i128::from(h.delta.square()?);
    let twice_gamma = -m * m * dk * s + 2 * m * dd;
    if twice_gamma % 2 != 0 {
        return Err(Error::InvalidHalphen(format!("γ = {twice_gamma}/2 is not an integer")));
    }
    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("Halphen translation"));
    let gamma = narrow(twice_gamma / 2)?;
    let shift = narrow(m * dk)?;
    d.sub(&h.delta.scale(shift)?)?.add(&k.scale(gamma)?)
}

pub fn halphen_translation(h: &HalphenData) -> Result<LatticeMap> {
    let n = HALPHEN_RANK + 1;
    let cols = (0..n)
        .map(|j| {
            let u: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
            translation_image(h, &PicClass::from_coords(&u))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeMap::from_columns(&cols))
}

/// Whether Δ is a rational multiple of K: all a_i equal and d = 3a_1.
pub fn is_multiple_of_k(delta: &PicClass) -> bool {
    delta.a.windows(2).all(|w| w[0] == w[1]) && delta.a.first().map_or(delta.d == 0, |&c| delta.d == 3 * c)
}

/// κ = 9m²(-Δ²)/2. Zero when Δ is a multiple of K (trivial action).
pub fn kappa(h: &HalphenData) -> Result<BigRational> {
    let s = h.delta.square()?;
    if s >= 0 {
        if is_multiple_of_k(&h.delta) {
            return Ok(BigRational::from_integer(0.into()));
        }
        return Err(Error::InvalidHalphen(format!("Δ² = {s} >= 0 but Δ is not a multiple of K")));
    }
    let m = i128::from(h.m);
    Ok(BigRational::new((9 * m * m * -i128::from(s)).into(), 2.into()))
}

/// κ(ψ) from κ(ψ^n) = n² κ(ψ).
pub fn kappa_of_root(kappa_power: &BigRational, n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("root index must be positive".into()));
    }
    let n2 = i64::from(n) * i64::from(n);
    Ok(kappa_power / BigRational::from_integer(n2.into()))
}

/// |Λ·K|.
pub fn a_invariant(lambda: &PicClass) -> Result<i64> {
    Ok(lambda.inner(&PicClass::canonical(lambda.rank()))?.abs())
}

/// Λ² - (m²/2)(Λ·K)²Δ²n².
pub fn degree_growth_closed_form(lambda: &PicClass, h: &HalphenData, n: i64) -> Result<i64> {
    let m = i128::from(h.m);
    let lk = i128::from(lambda.inner(&PicClass::canonical(HALPHEN_RANK))?);
    let s = i128::from(h.delta.square()?);
    let n = i128::from(n);
    let num = m * m * lk * lk * s;
    debug_assert_eq!(num % 2, 0);
    let v = i128::from(lambda.square()?) - num / 2 * n * n;
    i64::try_from(v).map_err(|_| Error::Overflow("closed form"))
}

/// Λ·(T^n Λ) with T the translation matrix.
pub fn degree_growth_by_power(lambda: &PicClass, h: &HalphenData, n: u32) -> Result<i64> {
    let t = halphen_translation(h)?.pow(n)?;
    lambda.inner(&t.apply(lambda)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenNegative,
    ZeroMultipleOfK,
    Violation,
}

pub fn parity_check(delta: &PicClass) -> Result<Parity> {
    check_delta(delta)?;
    let s = delta.square()?;
    Ok(if s % 2 != 0 {
        Parity::Violation
    } else if is_multiple_of_k(delta) {
        if s == 0 {
            Parity::ZeroMultipleOfK
        } else {
            Parity::Violation
        }
    } else if s < 0 {
        Parity::EvenNegative
    } else {
        Parity::Violation
    })
}

/// The order-4 automorphism of the worked example acting on E_1..E_9:
/// E2 → E3 → E4 → E5 → E2 and E6 ↔ E7.
pub const EXAMPLE_PERMUTATION: [usize; 9] = [1, 3, 4, 5, 2, 7, 6, 8, 9];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalphenExample {
    pub delta: PicClass,
    /// Δ + α(Δ) + α²(Δ) + α³(Δ).
    pub orbit_sum: PicClass,
    pub orbit_sum_square: i64,
    /// κ of the fourth power.
    #[serde(with = "rational")]
    pub kappa_fourth_power: BigRational,
    #[serde(with = "rational")]
    pub kappa: BigRational,
    /// (A T_Δ)^4 = T_{orbit sum} as matrices.
    pub matrix_identity: bool,
}

/// The worked example: α permuting E2..E7, Δ = E2 - E6, m = 1.
pub fn example_9_4_pipeline() -> Result<HalphenExample> {
    let r = HALPHEN_RANK;
    let alpha = LatticeMap::permutation(&EXAMPLE_PERMUTATION)?;
    let delta = PicClass::parse("E2 - E6", r)?;
    let mut orbit_sum = PicClass::zero(r);
    let mut cur = delta.clone();
    for _ in 0..4 {
        orbit_sum = orbit_sum.add(&cur)?;
        cur = alpha.apply(&cur)?;
    }
    let t = halphen_translation(&HalphenData::new(1, delta.clone())?)?;
    let sum_data = HalphenData::new(1, orbit_sum.clone())?;
    let matrix_identity = alpha.compose(&t)?.pow(4)? == halphen_translation(&sum_data)?;
    let kappa_fourth_power = kappa(&sum_data)?;
    Ok(HalphenExample {
        delta,
        orbit_sum_square: orbit_sum.square()?,
        orbit_sum,
        kappa: kappa_of_root(&kappa_fourth_power, 4)?,
        kappa_fourth_power,
        matrix_identity,
    })
}
