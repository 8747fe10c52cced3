//! Rational roots of rational univariate polynomials by p-adic lifting.
//!
//! If r = p/q is a root of an integer polynomial with leading coefficient a_n,
//! then q divides a_n, so N = a_n r is an integer with |N| <= |a_n a_0|. Each
//! such root reduces to a simple root modulo a good prime; lifting those roots
//! far enough and reconstructing N gives a complete candidate list, which is
//! then checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Scalar};
use super::upoly::{self, UPoly};

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn to_integer_primitive(f: &[BigRational]) -> Vec<BigInt> {
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = super::int_content(ints.iter());
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Distinct rational roots, sorted ascending.
pub fn rational_roots(f: &[BigRational]) -> Vec<BigRational> {
    let k = Field::Rational;
    let mut fs: Vec<_> = f.iter().cloned().map(Scalar::Rat).collect();
    upoly::trim(&mut fs);
    if fs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // zero roots first
    if fs[0].is_zero() {
        roots.push(BigRational::zero());
        let skip = fs.iter().take_while(|c| c.is_zero()).count();
        fs.drain(..skip);
    }
    // square-free part
    let g = upoly::gcd(&k, &fs, &upoly::derivative(&k, &fs));
    let sf = upoly::div_exact(&k, &fs, &g).expect("gcd divides");
    let rat: Vec<BigRational> = sf.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let ints = to_integer_primitive(&rat);
    let n = ints.len() - 1;
    if n == 0 {
        roots.sort();
        return roots;
    }
    let an = ints[n].clone();
    let a0 = ints[0].clone();
    let bound: BigInt = (&an * &a0).abs() * 2 + 1;

    let deriv: Vec<BigInt> = ints.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    for p in small_primes() {
        let pb = BigInt::from(p);
        if (&an % &pb).is_zero() {
            continue;
        }
        let red: Vec<u64> = ints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        let dred: Vec<u64> = deriv.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        if super::modp::poly_gcd(&red, &dred, p).len() != 1 {
            continue;
        }
        let base_roots: Vec<u64> = (0..p)
            .filter(|&x| red.iter().rev().fold(0u64, |acc, &c| super::modp::add(super::modp::mul(acc, x, p), c, p)) == 0)
            .collect();
        for r0 in base_roots {
            let mut modulus = pb.clone();
            let mut r = BigInt::from(r0);
            while modulus < bound {
                modulus = &modulus * &modulus;
                let fv = eval_mod(&ints, &r, &modulus);
                let dv = eval_mod(&deriv, &r, &modulus);
                let di = modinv(&dv, &modulus).expect("simple root lifts");
                r = (r - fv * di).mod_floor(&modulus);
            }
            let mut nn = (&an * &r).mod_floor(&modulus);
            if nn > &modulus / 2 {
                nn -= &modulus;
            }
            let cand = BigRational::new(nn, an.clone());
            let v = ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
            if v.is_zero() {
                roots.push(cand);
            }
        }
        break;
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Roots of `f` lying in the field that can be found exactly, and the
/// monic square-free cofactor carrying the remaining roots. Over Q every
/// rational root is found; over an extension only rational roots and the
/// root of a linear cofactor are.
pub fn field_roots(k: &Field, f: &[Scalar]) -> (Vec<Scalar>, UPoly) {
    let mut f = f.to_vec();
    upoly::trim(&mut f);
    if f.len() <= 1 {
        return (Vec::new(), Vec::new());
    }
    let g = upoly::gcd(k, &f, &upoly::derivative(k, &f));
    let mut sf = upoly::monic(k, &upoly::div_exact(k, &f, &g).expect("gcd divides"));
    let rational: Option<Vec<BigRational>> = sf.iter().map(|c| rational_part(c)).collect();
    let mut roots: Vec<Scalar> = match rational {
        Some(q) => rational_roots(&q).into_iter().map(|r| k.from_rational(r)).collect(),
        None => Vec::new(),
    };
    for r in &roots {
        sf = upoly::div_exact(k, &sf, &[k.neg(r), k.one()]).expect("root divides");
    }
    if sf.len() == 2 {
        roots.push(k.neg(&sf[0]));
        sf = vec![k.one()];
    }
    if sf.len() == 1 {
        sf.clear();
    }
    (roots, sf)
}

fn rational_part(c: &Scalar) -> Option<BigRational> {
    match c {
        Scalar::Rat(q) => Some(q.clone()),
        Scalar::Ext(v) => v[1..].iter().all(Zero::is_zero).then(|| v[0].clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_roots(roots: &[BigRational], extra: &[BigRational]) -> Vec<BigRational> {
        let mut f = extra.to_vec();
        for root in roots {
            let mut g = vec![BigRational::zero(); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                g[i + 1] += c;
                g[i] -= c * root;
            }
            f = g;
        }
        f
    }

    #[test]
    fn finds_planted_roots() {
        // (x + 1)(3x - 2)(x^2 + 1)
        let f = from_roots(&[r(-1, 1), r(2, 3)], &[r(1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(rational_roots(&f), vec![r(-1, 1), r(2, 3)]);
    }

    #[test]
    fn field_roots_split_off_linear_part() {
        let q = Field::Rational;
        // (x - 1)^2 (x + 1/2) (x^2 - 2)
        let f: Vec<Scalar> = from_roots(&[r(1, 1), r(1, 1), r(-1, 2)], &[r(-2, 1), r(0, 1), r(1, 1)])
            .into_iter()
            .map(Scalar::Rat)
            .collect();
        let (roots, rest) = field_roots(&q, &f);
        assert_eq!(roots, vec![q.from_frac(-1, 2), q.from_int(1)]);
        assert_eq!(rest, vec![q.from_int(-2), q.zero(), q.one()]);
        let k = Field::parse("t^2+1").unwrap();
        let t = k.generator().unwrap();
        // (x - t)(x - 3)
        let f = vec![k.mul(&t, &k.from_int(3)), k.neg(&k.add(&t, &k.from_int(3))), k.one()];
        let (roots, rest) = field_roots(&k, &f);
        assert!(roots.is_empty() && rest.len() == 3, "mixed coefficients stay unsplit");
        let (roots, rest) = field_roots(&k, &[k.neg(&t), k.one()]);
        assert_eq!((roots, rest), (vec![t], vec![]));
    }

    #[test]
    fn irreducible_has_none() {
        assert!(rational_roots(&[r(-2, 1), r(0, 1), r(1, 1)]).is_empty());
    }

    proptest! {
        #[test]
        fn planted_roots_are_recovered(
            nums in proptest::collection::vec(-50i64..50, 1..5),
            dens in proptest::collection::vec(1i64..20, 5),
        ) {
            let planted: Vec<_> = nums.iter().zip(&dens).map(|(n, d)| r(*n, *d)).collect();
            // multiply by x^2 + x + 1, which has no rational roots
            let f = from_roots(&planted, &[r(1, 1), r(1, 1), r(1, 1)]);
            let mut want = planted.clone();
            want.sort();
            want.dedup();
            prop_assert_eq!(rational_roots(&f), want);
        }
    }
}
