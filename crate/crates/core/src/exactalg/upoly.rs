//! Dense univariate polynomials over a [`Field`]; `v[i]` is the coefficient
//! of degree i and the vector never ends in a zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

pub type UPoly = Vec<Scalar>;

pub fn trim(v: &mut UPoly) {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
}

pub fn degree(a: &[Scalar]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(k: &Field, a: &[Scalar], b: &[Scalar]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &Field, a: &[Scalar], b: &[Scalar]) -> UPoly {
    let nb: UPoly = b.iter().map(|c| k.neg(c)).collect();
    add(k, a, &nb)
}

pub fn scale(k: &Field, a: &[Scalar], c: &Scalar) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| k.mul(x, c)).collect()
}

pub fn mul(k: &Field, a: &[Scalar], b: &[Scalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn divrem(k: &Field, a: &[Scalar], b: &[Scalar]) -> Result<(UPoly, UPoly)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lc_inv = k.inv(&b[db])?;
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![k.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = k.mul(&r[top], &lc_inv);
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, bi));
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

pub fn div_exact(k: &Field, a: &[Scalar], b: &[Scalar]) -> Result<UPoly> {
    let (q, r) = divrem(k, a, b)?;
    if !r.is_empty() {
        return Err(Error::NotIntegral("univariate division has a remainder".into()));
    }
    Ok(q)
}

pub fn monic(k: &Field, a: &[Scalar]) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(k, a, &k.inv(lc).expect("nonzero leading coefficient")),
    }
}

pub(crate) fn to_primitive_ints(a: &[Scalar]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.as_rational().unwrap().denom()));
    let v: Vec<BigInt> = a
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    int_primitive(v)
}

pub(crate) fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = super::int_content(v.iter());
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

pub(crate) fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &lr * bi;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Gcd over Q by a primitive remainder sequence in Z[x].
fn gcd_rational(k: &Field, a: &[Scalar], b: &[Scalar]) -> UPoly {
    let mut x = to_primitive_ints(a);
    let mut y = to_primitive_ints(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = int_primitive(int_prem(&x, &y));
        x = std::mem::replace(&mut y, r);
    }
    let out: UPoly = x.into_iter().map(|c| k.from_bigint(c)).collect();
    monic(k, &out)
}

/// Over Q: the integer primitive multiple with positive leading coefficient.
/// Otherwise: the monic multiple.
pub fn normalize(k: &Field, a: &[Scalar]) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    if !k.is_rational() {
        return monic(k, a);
    }
    let mut v = to_primitive_ints(a);
    if v.last().unwrap().is_negative() {
        v.iter_mut().for_each(|c| *c = -&*c);
    }
    v.into_iter().map(|c| k.from_bigint(c)).collect()
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(k: &Field, a: &[Scalar], b: &[Scalar]) -> UPoly {
    if k.is_rational() {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        if a.is_empty() {
            return monic(k, &b);
        }
        if b.is_empty() {
            return monic(k, &a);
        }
        return gcd_rational(k, &a, &b);
    }
    let mut x: UPoly = a.to_vec();
    let mut y: UPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(k, &x, &y).expect("nonzero divisor");
        x = std::mem::replace(&mut y, monic(k, &r));
    }
    monic(k, &x)
}

pub fn eval(k: &Field, a: &[Scalar], x: &Scalar) -> Scalar {
    a.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

pub fn derivative(k: &Field, a: &[Scalar]) -> UPoly {
    let mut out: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Resultant over a field by the Euclidean recurrence; the degrees are the
/// actual degrees of the inputs.
pub fn resultant(k: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let (Some(m), Some(n)) = (degree(a), degree(b)) else {
        return k.zero();
    };
    if n == 0 {
        return k.pow(&b[0], m as i64).expect("nonzero");
    }
    if m == 0 {
        return k.pow(&a[0], n as i64).expect("nonzero");
    }
    let (_, r) = divrem(k, a, b).expect("nonzero divisor");
    let Some(dr) = degree(&r) else {
        return k.zero();
    };
    let sign = if (m * n) % 2 == 1 { k.from_int(-1) } else { k.one() };
    let lc = k.pow(&b[n], (m - dr) as i64).expect("nonzero");
    k.mul(&k.mul(&sign, &lc), &resultant(k, b, &r))
}

/// Newton interpolation through `(xs[i], vs[i])`.
pub fn interpolate(k: &Field, xs: &[Scalar], vs: &[Scalar]) -> Result<UPoly> {
    let n = xs.len();
    let mut coef: Vec<Scalar> = vs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = k.sub(&coef[i], &coef[i - 1]);
            let den = k.sub(&xs[i], &xs[i - j]);
            coef[i] = k.div(&num, &den)?;
        }
    }
    let mut out: UPoly = Vec::new();
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        out = mul(k, &out, &[k.neg(&xs[i]), k.one()]);
        out = add(k, &out, std::slice::from_ref(&coef[i]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> UPoly {
        let k = Field::Rational;
        let mut out: UPoly = v.iter().map(|&c| k.from_int(c)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn gcd_and_division() {
        let k = Field::Rational;
        // (x-1)(x+2) and (x-1)(x-3)
        let g = gcd(&k, &q(&[-2, 1, 1]), &q(&[3, -4, 1]));
        assert_eq!(g, q(&[-1, 1]));
        assert_eq!(div_exact(&k, &q(&[-2, 1, 1]), &g).unwrap(), q(&[2, 1]));
    }

    #[test]
    fn resultant_matches_root_product() {
        let k = Field::Rational;
        // res(x^2 - 1, x - 2) = (1-2)(-1-2) = 3
        assert_eq!(resultant(&k, &q(&[-1, 0, 1]), &q(&[-2, 1])), k.from_int(3));
        assert!(resultant(&k, &q(&[-1, 0, 1]), &q(&[1, 1])).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let k = Field::Rational;
        let f = q(&[5, -3, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| k.from_int(i)).collect();
        let vs: Vec<_> = xs.iter().map(|x| eval(&k, &f, x)).collect();
        assert_eq!(interpolate(&k, &xs, &vs).unwrap(), f);
    }
}
