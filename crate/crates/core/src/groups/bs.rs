//! BS(m, n) = ⟨r, s | r s^m r⁻¹ = s^n⟩.

use num_rational::BigRational;
use serde::Serialize;

use super::affine_pow;
use crate::cremap::AffineBirMap;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, RatFn};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NoEmbedding,
    KnownEmbedding {
        r: String,
        s: String,
        /// r s^m r⁻¹ = s^n checked by exact composition.
        relation_verified: bool,
    },
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BsVerdict {
    pub m: i64,
    pub n: i64,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub citation: &'static str,
}

/// Witness pair s = (x, y + 1), r = (x, (n/m) y), with r⁻¹.
pub fn witness(m: i64, n: i64) -> Result<(AffineBirMap, AffineBirMap, AffineBirMap)> {
    let k = Field::Rational;
    let (x, y) = (Poly::var(&k, 0), Poly::var(&k, 1));
    let ratio = |p: i64, q: i64| k.from_rational(BigRational::new(p.into(), q.into()));
    let s = AffineBirMap::new(RatFn::from_poly(x.clone()), RatFn::from_poly(y.add(&Poly::one(&k))))?;
    let r = AffineBirMap::new(RatFn::from_poly(x.clone()), RatFn::from_poly(y.scale(&ratio(n, m))))?;
    let r_inv = AffineBirMap::new(RatFn::from_poly(x), RatFn::from_poly(y.scale(&ratio(m, n))))?;
    Ok((r, s, r_inv))
}

/// Checks r s^m r⁻¹ = s^n and r r⁻¹ = id by composing.
pub fn verify_relation(m: i64, n: i64, r: &AffineBirMap, s: &AffineBirMap, r_inv: &AffineBirMap) -> Result<bool> {
    let id = AffineBirMap::identity(r.field());
    if !r.compose(r_inv)?.equals(&id) {
        return Ok(false);
    }
    let k = Field::Rational;
    let (x, y) = (Poly::var(&k, 0), Poly::var(&k, 1));
    let s_inv = AffineBirMap::new(RatFn::from_poly(x), RatFn::from_poly(y.sub(&Poly::one(&k))))?;
    if !s.compose(&s_inv)?.equals(&id) {
        return Ok(false);
    }
    let lhs = r.compose(&affine_pow(s, &s_inv, m)?)?.compose(r_inv)?;
    Ok(lhs.equals(&affine_pow(s, &s_inv, n)?))
}

pub fn bs_check(m: i64, n: i64) -> Result<BsVerdict> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroExponent);
    }
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    let (verdict, citation) = if am != an && am != 1 && an != 1 {
        (Verdict::NoEmbedding, "obstruction: |m|, |n| and 1 pairwise distinct")
    } else if am == 1 || an == 1 {
        let (r, s, r_inv) = witness(m, n)?;
        let ok = verify_relation(m, n, &r, &s, &r_inv)?;
        if !ok {
            return Err(Error::RelationFailed(format!("r s^{m} r^-1 = s^{n}")));
        }
        let v = Verdict::KnownEmbedding { r: r.to_string(), s: s.to_string(), relation_verified: ok };
        (v, "construction: affine maps (x, y + 1) and (x, (n/m) y)")
    } else {
        (Verdict::Unresolved, "no claim: |m| = |n| != 1")
    };
    Ok(BsVerdict { m, n, verdict, citation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_three() {
        assert_eq!(bs_check(2, 3).unwrap().verdict, Verdict::NoEmbedding);
        assert_eq!(bs_check(-2, 3).unwrap().verdict, Verdict::NoEmbedding);
    }

    #[test]
    fn one_five() {
        let v = bs_check(1, 5).unwrap();
        match v.verdict {
            Verdict::KnownEmbedding { relation_verified, ref r, .. } => {
                assert!(relation_verified);
                assert_eq!(r, "[x, 5*y]");
            }
            other => panic!("{other:?}"),
        }
        // independent: (x, 5y)∘(x, y+1)∘(x, y/5) = (x, y + 5)
        let k = Field::Rational;
        let lhs = AffineBirMap::parse(&k, "x", "5*y")
            .unwrap()
            .compose(&AffineBirMap::parse(&k, "x", "y + 1").unwrap())
            .unwrap()
            .compose(&AffineBirMap::parse(&k, "x", "y/5").unwrap())
            .unwrap();
        assert!(lhs.equals(&AffineBirMap::parse(&k, "x", "y + 5").unwrap()));
    }

    #[test]
    fn equal_exponents() {
        assert_eq!(bs_check(3, 3).unwrap().verdict, Verdict::Unresolved);
        assert_eq!(bs_check(3, -3).unwrap().verdict, Verdict::Unresolved);
        assert!(matches!(bs_check(1, 1).unwrap().verdict, Verdict::KnownEmbedding { .. }));
        assert!(matches!(bs_check(1, -1).unwrap().verdict, Verdict::KnownEmbedding { .. }));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(bs_check(0, 2), Err(Error::ZeroExponent));
        assert_eq!(bs_check(4, 0), Err(Error::ZeroExponent));
    }

    #[test]
    fn wrong_relation_detected() {
        let (r, s, r_inv) = witness(1, 5).unwrap();
        assert!(!verify_relation(1, 4, &r, &s, &r_inv).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn witnesses_satisfy_relation(n in -30i64..30, flip in any::<bool>(), sign in any::<bool>()) {
            prop_assume!(n != 0);
            let one = if sign { 1 } else { -1 };
            let (m, n) = if flip { (n, one) } else { (one, n) };
            let v = bs_check(m, n).unwrap();
            let verified = matches!(v.verdict, Verdict::KnownEmbedding { relation_verified: true, .. });
            prop_assert!(verified);
        }
    }
}
