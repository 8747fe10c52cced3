//! Finite-horizon growth classification of degree sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::rational;

/// Binary digits kept in the λ brackets.
const LAMBDA_BITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthClass {
    Elliptic,
    Jonquieres,
    Halphen,
    Hyperbolic,
    Undetermined,
}

/// Bracket for the dynamical degree.
///
/// `upper` is min_k of an upper bound of d_k^(1/k), which bounds λ for
/// submultiplicative sequences. `lower` is a lower bound for the growth
/// rate over the second half of the horizon, clamped to [1, upper].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEstimate {
    #[serde(with = "rational")]
    pub lower: BigRational,
    #[serde(with = "rational")]
    pub upper: BigRational,
    #[serde(with = "rational")]
    pub error_bound: BigRational,
}

impl LambdaEstimate {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / BigRational::from_integer(2.into())
    }

    /// (upper - lower) / lower.
    pub fn relative_width(&self) -> BigRational {
        (&self.upper - &self.lower) / &self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub degrees: Vec<u64>,
    pub class: GrowthClass,
    pub lambda_estimate: LambdaEstimate,
    #[serde(with = "rational")]
    pub linear_slope: BigRational,
    #[serde(with = "rational")]
    pub quadratic_coeff: BigRational,
    pub max_deviation: i64,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Floor of the k-th root of a nonnegative rational, as an integer.
fn floor_root(x: &BigRational, k: u32) -> BigInt {
    (x.numer() / x.denom()).nth_root(k)
}

/// Bounds lo <= x^(1/k) <= hi with denominators 2^LAMBDA_BITS.
fn root_bounds(x: &BigRational, k: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << LAMBDA_BITS;
    let scaled = x * BigRational::from_integer(Pow::pow(&scale, k));
    let r = floor_root(&scaled, k);
    let lo = BigRational::new(r.clone(), scale.clone());
    let exact = BigRational::from_integer(Pow::pow(&r, k)) == scaled;
    let hi = if exact { lo.clone() } else { BigRational::new(r + 1, scale) };
    (lo, hi)
}

/// Bracket for λ from d_1, ..., d_K (K >= 4).
pub fn lambda_estimate(degrees: &[u64]) -> Result<LambdaEstimate> {
    check_degrees(degrees, 4)?;
    let upper = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| root_bounds(&q(d as i64), i as u32 + 1).1)
        .min()
        .expect("nonempty");
    let n = degrees.len();
    let s = n / 2;
    let ratio = BigRational::new(degrees[n - 1].into(), degrees[s - 1].into());
    let mut lower = root_bounds(&ratio, (n - s) as u32).0;
    if lower < BigRational::one() {
        lower = BigRational::one();
    }
    if lower > upper {
        lower = upper.clone();
    }
    let error_bound = (&upper - &lower) / q(2);
    Ok(LambdaEstimate { lower, upper, error_bound })
}

fn check_degrees(degrees: &[u64], need: usize) -> Result<()> {
    if degrees.len() < need {
        return Err(Error::TooShort { need, got: degrees.len() });
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidArgument("degrees must be >= 1".into()));
    }
    Ok(())
}

fn median(mut v: Vec<BigRational>) -> BigRational {
    v.sort();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2].clone()
    } else {
        (&v[n / 2 - 1] + &v[n / 2]) / q(2)
    }
}

/// Theil-Sen slope: the median of (y_j - y_i)/(j - i) over all pairs.
/// Indices are positions in `ys`.
pub fn theil_sen_slope(ys: &[u64]) -> BigRational {
    let mut slopes = Vec::with_capacity(ys.len() * ys.len() / 2);
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            slopes.push(BigRational::new((ys[j] as i64 - ys[i] as i64).into(), ((j - i) as i64).into()));
        }
    }
    if slopes.is_empty() {
        return BigRational::zero();
    }
    median(slopes)
}

/// Slope over the second half of the horizon.
pub fn tail_slope(degrees: &[u64]) -> BigRational {
    theil_sen_slope(&degrees[degrees.len() / 2..])
}

/// Mean log-ratio over the tail above ln(1.05), decided exactly:
/// (d_last / d_first)^(1/steps) > 21/20. On short horizons linear and
/// quadratic sequences pass this too, so the tail must also be strictly
/// increasing with first differences more than doubling between its first
/// and last third.
fn exponential_tail(tail: &[u64], first: &[i64]) -> bool {
    if first.iter().any(|&d| d <= 0) {
        return false;
    }
    let steps = (tail.len() - 1) as u32;
    let lhs = BigInt::from(tail[tail.len() - 1]) * Pow::pow(BigInt::from(20), steps);
    let rhs = BigInt::from(tail[0]) * Pow::pow(BigInt::from(21), steps);
    let third = (first.len() / 3).max(1);
    let early: i64 = first[..third].iter().sum();
    let late: i64 = first[first.len() - third..].iter().sum();
    lhs > rhs && late > 2 * early
}

/// Growth class with the thresholds documented on each branch; the raw
/// data is always returned. Needs at least 8 degrees.
pub fn classify_growth(degrees: &[u64]) -> Result<GrowthReport> {
    check_degrees(degrees, 8)?;
    let n = degrees.len();
    let tail = &degrees[n / 2..];
    let lambda_estimate = lambda_estimate(degrees)?;
    let linear_slope = tail_slope(degrees);

    let first: Vec<i64> = tail.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let second: Vec<i64> = first.windows(2).map(|w| w[1] - w[0]).collect();
    let mean_second = if second.is_empty() {
        BigRational::zero()
    } else {
        BigRational::new(second.iter().sum::<i64>().into(), (second.len() as i64).into())
    };
    let quadratic_coeff = &mean_second / q(2);

    let max_deviation = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| (q(d as i64) - &linear_slope * q(i as i64 + 1)).abs().ceil().to_integer())
        .max()
        .and_then(|m| m.to_i64())
        .unwrap_or(i64::MAX);

    let global_max = *degrees.iter().max().unwrap();
    let first_max = degrees.iter().position(|&d| d == global_max).unwrap();
    let constant_second = match (second.iter().min(), second.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 2 && *lo >= 0,
        _ => false,
    };

    let class = if exponential_tail(tail, &first) {
        GrowthClass::Hyperbolic
    } else if constant_second && mean_second >= BigRational::new(1.into(), 2.into()) {
        // second differences constant within +-1 around a positive value
        GrowthClass::Halphen
    } else if linear_slope.is_positive() && mean_second.abs() < BigRational::new(1.into(), 2.into()) {
        GrowthClass::Jonquieres
    } else if tail.iter().max() == Some(&global_max) && first_max < n / 2 {
        GrowthClass::Elliptic
    } else {
        GrowthClass::Undetermined
    };
    Ok(GrowthReport { degrees: degrees.to_vec(), class, lambda_estimate, linear_slope, quadratic_coeff, max_deviation })
}
