//! GCD of homogeneous polynomials in three variables and resultants.
//!
//! Forms are dehomogenized at z = 1 after splitting off powers of z, and the
//! bivariate gcd is computed by a primitive remainder sequence in K[x][y]
//! with contents taken by univariate gcd over K. Over Q a modular coprimality
//! certificate is tried first; it can only ever answer "coprime", and only
//! when that is provably true.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::modp::{self, P61};
use super::poly::Poly;
use super::upoly::{self, UPoly};
use super::zgcd;
use crate::error::{Error, Result};

/// Polynomial in y with coefficients in K[x]; index = y-degree.
type BPoly = Vec<UPoly>;

fn btrim(b: &mut BPoly) {
    while b.last().is_some_and(|c| c.is_empty()) {
        b.pop();
    }
}

fn dehomogenize(p: &Poly) -> BPoly {
    dehomogenize_with(p, 1)
}

/// Dehomogenizes at z = 1 with `main` (0 or 1) as the outer variable.
fn dehomogenize_with(p: &Poly, main: usize) -> BPoly {
    let inner = 1 - main;
    let mut out: BPoly = vec![Vec::new(); p.degree_in(main) as usize + 1];
    let k = p.field();
    for (m, c) in p.terms() {
        let row = &mut out[m[main] as usize];
        let i = m[inner] as usize;
        if row.len() <= i {
            row.resize(i + 1, k.zero());
        }
        row[i] = k.add(&row[i], c);
    }
    for row in &mut out {
        upoly::trim(row);
    }
    btrim(&mut out);
    out
}

fn homogenize_with(k: &Field, b: &BPoly, main: usize) -> Poly {
    let d = b
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| j + c.len() - 1)
        .max()
        .unwrap_or(0) as u32;
    let mut terms = Vec::new();
    for (j, row) in b.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let mut m = [0u32, 0, d - i as u32 - j as u32];
                m[main] = j as u32;
                m[1 - main] = i as u32;
                terms.push((m, c.clone()));
            }
        }
    }
    Poly::from_terms(k, terms)
}

fn content(k: &Field, b: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    // cheapest coefficients first; stop once the gcd is a unit
    let mut order: Vec<&UPoly> = b.iter().filter(|c| !c.is_empty()).collect();
    order.sort_by_key(|c| c.len());
    for c in order {
        g = upoly::gcd(k, &g, c);
        if g.len() == 1 {
            break;
        }
    }
    upoly::normalize(k, &g)
}

/// Over Q, scales to integer coefficients without a common integer factor.
fn integral(k: &Field, b: &BPoly) -> BPoly {
    if !k.is_rational() {
        return b.clone();
    }
    let rats = || b.iter().flatten().map(|c| c.as_rational().expect("rational field"));
    let den = rats().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = super::int_content(rats().map(|q| q.numer()));
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return b.clone();
    }
    let s = k.from_rational(BigRational::new(den, num));
    b.iter().map(|r| upoly::scale(k, r, &s)).collect()
}

fn primitive(k: &Field, b: &BPoly) -> BPoly {
    let b = &integral(k, b);
    let c = content(k, b);
    if c.len() <= 1 {
        // normalize a unit content away as well
        let lc = b.last().and_then(|r| r.last()).cloned();
        return match lc {
            Some(lc) if k.is_rational() => {
                if lc.as_rational().unwrap().is_negative() {
                    b.iter().map(|r| r.iter().map(|c| k.neg(c)).collect()).collect()
                } else {
                    b.clone()
                }
            }
            Some(lc) => {
                let inv = k.inv(&lc).expect("nonzero");
                b.iter().map(|r| upoly::scale(k, r, &inv)).collect()
            }
            None => b.clone(),
        };
    }
    b.iter()
        .map(|r| if r.is_empty() { Vec::new() } else { upoly::div_exact(k, r, &c).expect("content divides") })
        .collect()
}

fn prem(k: &Field, a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    btrim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        let mut next: BPoly = r.iter().map(|c| upoly::mul(k, c, lb)).collect();
        for (i, bi) in b.iter().enumerate() {
            next[shift + i] = upoly::sub(k, &next[shift + i], &upoly::mul(k, &lr, bi));
        }
        next.pop();
        btrim(&mut next);
        r = next;
    }
    r
}

fn degree_x(b: &BPoly) -> usize {
    b.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
}

/// Gcd of primitive inputs by evaluation at x = x0, univariate gcds in y
/// and interpolation of the (leading-coefficient scaled) results. Returns
/// `None` when the candidate does not divide both inputs.
fn interpolated_gcd(k: &Field, a: &BPoly, b: &BPoly) -> Option<BPoly> {
    let (la, lb) = (a.last()?, b.last()?);
    let gamma = upoly::gcd(k, la, lb);
    let need = gamma.len() + degree_x(a).min(degree_x(b));
    let mut best: Option<usize> = None;
    let mut xs: Vec<Scalar> = Vec::new();
    let mut hs: Vec<UPoly> = Vec::new();
    let mut x0 = 0i64;
    let mut tries = 0usize;
    while xs.len() < need {
        tries += 1;
        if tries > 4 * need + 64 {
            return None;
        }
        x0 += 1;
        let x = k.from_int(x0);
        if upoly::eval(k, la, &x).is_zero() || upoly::eval(k, lb, &x).is_zero() {
            continue;
        }
        let sa: UPoly = a.iter().map(|c| upoly::eval(k, c, &x)).collect();
        let sb: UPoly = b.iter().map(|c| upoly::eval(k, c, &x)).collect();
        let g = upoly::gcd(k, &sa, &sb);
        let e = g.len() - 1;
        if e == 0 {
            return Some(vec![vec![k.one()]]);
        }
        match best {
            Some(b) if e > b => continue,
            Some(b) if e < b => {
                xs.clear();
                hs.clear();
            }
            _ => {}
        }
        best = Some(e);
        hs.push(upoly::scale(k, &g, &upoly::eval(k, &gamma, &x)));
        xs.push(x);
    }
    let e = best?;
    let mut h: BPoly = (0..=e)
        .map(|j| {
            let vals: Vec<Scalar> = hs.iter().map(|v| v[j].clone()).collect();
            upoly::interpolate(k, &xs, &vals).expect("distinct nodes")
        })
        .collect();
    btrim(&mut h);
    let g = primitive(k, &h);
    (prem(k, a, &g).is_empty() && prem(k, b, &g).is_empty()).then_some(g)
}

fn to_z(b: &BPoly) -> zgcd::ZB {
    let ints = integral(&Field::Rational, b);
    ints.iter()
        .map(|r| r.iter().map(|c| c.as_rational().expect("rational field").to_integer()).collect())
        .collect()
}

fn bivariate_gcd(k: &Field, a: &BPoly, b: &BPoly) -> BPoly {
    if k.is_rational() {
        let g = zgcd::bivariate_gcd(&to_z(a), &to_z(b));
        return g.into_iter().map(|r| r.into_iter().map(|c| k.from_bigint(c)).collect()).collect();
    }
    if a.is_empty() {
        return primitive(k, b);
    }
    if b.is_empty() {
        return primitive(k, a);
    }
    let c = upoly::gcd(k, &content(k, a), &content(k, b));
    let (mut x, mut y) = (primitive(k, a), primitive(k, b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let g = if y.len() == 1 {
        // y is a nonzero polynomial in x alone: the primitive gcd is a unit
        vec![vec![k.one()]]
    } else if let Some(g) = interpolated_gcd(k, &x, &y) {
        g
    } else {
        while y.len() > 1 {
            let r = prem(k, &x, &y);
            x = std::mem::replace(&mut y, if r.is_empty() { r } else { primitive(k, &r) });
        }
        if y.len() == 1 {
            vec![vec![k.one()]]
        } else {
            x
        }
    };
    g.iter().map(|r| upoly::mul(k, r, &c)).collect()
}

fn z_power(k: &Field, e: u32) -> Poly {
    Poly::monomial(k, [0, 0, e], k.one())
}

fn strip_z(p: &Poly) -> (u32, Poly) {
    let v = p.min_degree_in(2);
    if v == 0 {
        return (0, p.clone());
    }
    let terms = p.terms().iter().map(|(m, c)| ([m[0], m[1], m[2] - v], c.clone()));
    (v, Poly::from_terms(p.field(), terms))
}

/// Gcd of two homogeneous polynomials, monic in grlex order.
pub fn gcd2(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    let k = p.field();
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::AllZero),
        (true, false) => return q.monic(),
        (false, true) => return p.monic(),
        _ => {}
    }
    p.homogeneous_degree()?;
    q.homogeneous_degree()?;
    let (vp, p1) = strip_z(p);
    let (vq, q1) = strip_z(q);
    // the variable of smaller degree gives the shorter remainder sequence
    let main = if p1.degree_in(0).max(q1.degree_in(0)) < p1.degree_in(1).max(q1.degree_in(1)) { 0 } else { 1 };
    let g = bivariate_gcd(k, &dehomogenize_with(&p1, main), &dehomogenize_with(&q1, main));
    homogenize_with(k, &g, main).mul(&z_power(k, vp.min(vq))).monic()
}

/// Restriction to the line (s : c1 s + c2 : 1), reduced modulo p.
fn restrict_mod(p: &Poly, c1: u64, c2: u64, prime: u64) -> Option<Vec<u64>> {
    let red = p.reduce_mod(prime)?;
    let d = p.total_degree() as usize;
    let jmax = p.degree_in(1) as usize;
    let mut rows = vec![vec![0u64; d + 1]; jmax + 1];
    for (m, c) in red {
        let cell = &mut rows[m[1] as usize][m[0] as usize];
        *cell = modp::add(*cell, c, prime);
    }
    let mut acc = rows[jmax].clone();
    for j in (0..jmax).rev() {
        // acc = acc * (c1 s + c2) + rows[j]
        let mut next = vec![0u64; d + 1];
        for (i, a) in acc.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            next[i] = modp::add(next[i], modp::mul(*a, c2, prime), prime);
            if i + 1 <= d {
                next[i + 1] = modp::add(next[i + 1], modp::mul(*a, c1, prime), prime);
            }
        }
        for (n, r) in next.iter_mut().zip(&rows[j]) {
            *n = modp::add(*n, *r, prime);
        }
        acc = next;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
    Some(acc)
}

/// `true` only if the nonzero inputs are certainly coprime.
fn coprime_certificate(polys: &[&Poly]) -> bool {
    if !polys[0].field().is_rational() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6763_6433);
    for _ in 0..2 {
        let c1 = rng.gen_range(1..P61);
        let c2 = rng.gen_range(1..P61);
        let mut g: Vec<u64> = Vec::new();
        let mut full = false;
        let mut ok = true;
        for p in polys {
            let Some(r) = restrict_mod(p, c1, c2, P61) else {
                ok = false;
                break;
            };
            if r.len() == p.total_degree() as usize + 1 {
                full = true;
            }
            g = modp::poly_gcd(&g, &r, P61);
        }
        if ok && full && g.len() == 1 {
            return true;
        }
    }
    false
}

/// Greatest common divisor of three homogeneous polynomials, normalized to
/// leading coefficient 1. At least one input must be nonzero.
pub fn gcd3(p: &Poly, q: &Poly, r: &Poly) -> Result<Poly> {
    if p.field() != q.field() || p.field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let nonzero: Vec<&Poly> = [p, q, r].into_iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    for x in &nonzero {
        x.homogeneous_degree()?;
    }
    let k = p.field();
    if nonzero.iter().any(|x| x.is_constant()) || coprime_certificate(&nonzero) {
        return Ok(Poly::one(k));
    }
    let mut g = nonzero[0].monic()?;
    for x in &nonzero[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd2(&g, x)?;
    }
    Ok(g)
}

/// The resultant of two polynomials in y with coefficients in K[x]
/// (dehomogenized at z = 1), as a polynomial in x. Computed by evaluation at
/// integer points and interpolation.
pub fn resultant_y(p: &Poly, q: &Poly) -> Result<UPoly> {
    let k = p.field();
    let a = dehomogenize(p);
    let b = dehomogenize(q);
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let bound = (p.total_degree() as usize) * (q.total_degree() as usize) + 1;
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let mut xs = Vec::with_capacity(bound);
    let mut vs = Vec::with_capacity(bound);
    let mut x0 = 0i64;
    while xs.len() < bound {
        let x = k.from_int(x0);
        x0 = if x0 >= 0 { -x0 - 1 } else { -x0 };
        if upoly::eval(k, la, &x).is_zero() || upoly::eval(k, lb, &x).is_zero() {
            continue;
        }
        let sa: UPoly = a.iter().map(|c| upoly::eval(k, c, &x)).collect();
        let sb: UPoly = b.iter().map(|c| upoly::eval(k, c, &x)).collect();
        vs.push(upoly::resultant(k, &sa, &sb));
        xs.push(x);
    }
    upoly::interpolate(k, &xs, &vs)
}

/// Specializes a dehomogenized polynomial at x = x0, giving a polynomial in y.
pub fn specialize_x(p: &Poly, x0: &Scalar) -> UPoly {
    let k = p.field();
    let mut out: UPoly = dehomogenize(p).iter().map(|c| upoly::eval(k, c, x0)).collect();
    upoly::trim(&mut out);
    out
}
