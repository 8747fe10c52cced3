//! Arithmetic in Z/p for word-sized primes, used only for certificates that
//! are exact in the direction they are applied.

pub const P61: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of univariate polynomials (index = degree), `b` nonzero.
pub fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc_inv = inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul(r[top], lc_inv, p);
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(c, *bi, p), p);
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd; the empty vector stands for zero.
pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    if let Some(&lc) = x.last() {
        let li = inv(lc, p);
        for c in &mut x {
            *c = mul(*c, li, p);
        }
    }
    x
}
