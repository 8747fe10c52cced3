//! Bivariate gcd over Z, used for inputs with rational coefficients after
//! clearing denominators. Same algorithm as the field version, but with
//! integer arithmetic throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Scalar};
use super::modp::{self, P61};
use super::upoly;

/// Polynomial in x, index = degree, no trailing zeros.
pub(crate) type ZU = Vec<BigInt>;
/// Polynomial in y with coefficients in Z[x].
pub(crate) type ZB = Vec<ZU>;

fn ztrim(v: &mut ZU) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn btrim(b: &mut ZB) {
    while b.last().is_some_and(Vec::is_empty) {
        b.pop();
    }
}

fn reduce_mod(a: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(P61);
    let mut v: Vec<u64> = a.iter().map(|c| u64::try_from(c.mod_floor(&p)).unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZU {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

fn zsub_assign(a: &mut ZU, b: &[BigInt]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    ztrim(a);
}

/// Exact quotient in Z[x], `None` if `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZU> {
    let db = b.len().checked_sub(1)?;
    let lb = &b[db];
    let mut r = a.to_vec();
    ztrim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let (c, rem) = r[top].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        ztrim(&mut r);
    }
    r.is_empty().then_some(q)
}

/// Gcd in Z[x], primitive with positive leading coefficient.
fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZU {
    let norm = |mut v: ZU| {
        v = upoly::int_primitive(v);
        if v.last().is_some_and(Signed::is_negative) {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        v
    };
    if a.is_empty() {
        return norm(b.to_vec());
    }
    if b.is_empty() {
        return norm(a.to_vec());
    }
    // coprime modulo p with both degrees kept means coprime over Q
    let (ma, mb) = (reduce_mod(a), reduce_mod(b));
    if ma.len() == a.len() && mb.len() == b.len() && modp::poly_gcd(&ma, &mb, P61).len() == 1 {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = (upoly::int_primitive(a.to_vec()), upoly::int_primitive(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = upoly::int_primitive(upoly::int_prem(&x, &y));
        x = std::mem::replace(&mut y, r);
    }
    norm(x)
}

fn eval(a: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn content(b: &ZB) -> ZU {
    let mut order: Vec<&ZU> = b.iter().filter(|c| !c.is_empty()).collect();
    order.sort_by_key(|c| c.len());
    let mut g: ZU = Vec::new();
    for c in order {
        g = zgcd(&g, c);
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// Divides out the content in Z[x] (including the integer content) and makes
/// the leading coefficient positive.
fn primitive(b: &ZB) -> ZB {
    let mut n = super::int_content(b.iter().flatten());
    if b.last().and_then(|r| r.last()).is_some_and(Signed::is_negative) {
        n = -n;
    }
    let c = content(b);
    b.iter()
        .map(|r| {
            let r: ZU = r.iter().map(|x| x / &n).collect();
            zdiv_exact(&r, &c).expect("content divides")
        })
        .collect()
}

fn prem(a: &ZB, b: &ZB) -> ZB {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    btrim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        let mut next: ZB = r.iter().map(|c| zmul(c, lb)).collect();
        for (i, bi) in b.iter().enumerate() {
            zsub_assign(&mut next[shift + i], &zmul(&lr, bi));
        }
        next.pop();
        btrim(&mut next);
        r = next;
    }
    r
}

/// Whether `b` divides `a` in Z[x][y].
fn divides(a: &ZB, b: &ZB) -> bool {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    btrim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let Some(q) = zdiv_exact(&r[top], lb) else {
            return false;
        };
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            zsub_assign(&mut r[shift + i], &zmul(&q, bi));
        }
        debug_assert!(r[top].is_empty());
        btrim(&mut r);
    }
    r.is_empty()
}

fn degree_x(b: &ZB) -> usize {
    b.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
}

fn interpolated(a: &ZB, b: &ZB) -> Option<ZB> {
    let k = Field::Rational;
    let (la, lb) = (a.last()?, b.last()?);
    let gamma = zgcd(la, lb);
    let need = gamma.len() + degree_x(a).min(degree_x(b));
    let mut best: Option<usize> = None;
    let mut xs = Vec::new();
    let mut hs: Vec<Vec<BigRational>> = Vec::new();
    let mut x0 = 0i64;
    let mut tries = 0usize;
    while xs.len() < need {
        tries += 1;
        if tries > 4 * need + 64 {
            return None;
        }
        x0 += 1;
        if eval(la, x0).is_zero() || eval(lb, x0).is_zero() {
            continue;
        }
        let mut sa: ZU = a.iter().map(|c| eval(c, x0)).collect();
        let mut sb: ZU = b.iter().map(|c| eval(c, x0)).collect();
        ztrim(&mut sa);
        ztrim(&mut sb);
        let g = zgcd(&sa, &sb);
        let e = g.len() - 1;
        if e == 0 {
            return Some(vec![vec![BigInt::one()]]);
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
        let s = BigRational::new(eval(&gamma, x0), g[e].clone());
        hs.push(g.iter().map(|c| &s * c).collect());
        xs.push(k.from_int(x0));
    }
    let e = best?;
    let mut h = interpolate_rows(&k, &xs, &hs, e);
    btrim(&mut h);
    let g = primitive(&h);
    (divides(a, &g) && divides(b, &g)).then_some(g)
}

/// Interpolates each y-coefficient and clears the common denominator.
fn interpolate_rows(k: &Field, xs: &[Scalar], hs: &[Vec<BigRational>], e: usize) -> ZB {
    let rows: Vec<Vec<BigRational>> = (0..=e)
        .map(|j| {
            let vals: Vec<_> = hs.iter().map(|v| k.from_rational(v[j].clone())).collect();
            upoly::interpolate(k, xs, &vals)
                .expect("distinct nodes")
                .into_iter()
                .map(|c| c.as_rational().unwrap().clone())
                .collect()
        })
        .collect();
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    rows.into_iter()
        .map(|r| {
            let mut v: ZU = r.iter().map(|c| c.numer() * (&den / c.denom())).collect();
            ztrim(&mut v);
            v
        })
        .collect()
}

/// Gcd in Z[x][y] up to sign; the result has positive leading coefficient
/// and no integer content.
pub(crate) fn bivariate_gcd(a: &ZB, b: &ZB) -> ZB {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let c = zgcd(&content(a), &content(b));
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let g = if y.len() == 1 {
        vec![vec![BigInt::one()]]
    } else if let Some(g) = interpolated(&x, &y) {
        g
    } else {
        while y.len() > 1 {
            let r = prem(&x, &y);
            x = std::mem::replace(&mut y, if r.is_empty() { r } else { primitive(&r) });
        }
        if y.len() == 1 {
            vec![vec![BigInt::one()]]
        } else {
            x
        }
    };
    g.iter().map(|r| zmul(r, &c)).collect()
}
