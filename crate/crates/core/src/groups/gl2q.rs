//! ρ([[a, b], [c, d]]) = (x χ(ad − bc) / (cy + d)^k, (ay + b) / (cy + d))
//! for odd k and a character χ of Q* given on −1 and finitely many primes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::affine_pow;
use crate::cremap::AffineBirMap;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Poly, RatFn};
use crate::torus_normal::intlin::{solve_integer, IMat};

pub type QMat = [[BigRational; 2]; 2];

pub fn qmat(m: [[i64; 2]; 2]) -> QMat {
    m.map(|row| row.map(|v| BigRational::from_integer(v.into())))
}

fn det(m: &QMat) -> BigRational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

fn fmt_mat(m: &QMat) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn factor(n: &BigInt) -> Result<BTreeMap<u64, i64>> {
    let mut n = n.abs().to_u64().ok_or_else(|| Error::CharacterUndefined(format!("cannot factor {n}")))?;
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    Ok(out)
}

/// p-adic valuations of a nonzero rational.
fn valuations(q: &BigRational) -> Result<BTreeMap<u64, i64>> {
    let mut v = factor(q.numer())?;
    for (p, e) in factor(q.denom())? {
        *v.entry(p).or_insert(0) -= e;
    }
    v.retain(|_, e| *e != 0);
    Ok(v)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// A homomorphism Q* → Q*, trivial on primes that are not listed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    minus_one: bool,
    primes: BTreeMap<u64, BigRational>,
}

impl Character {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `χ(-1) = sign`, which must be ±1.
    pub fn new(sign: i64, primes: BTreeMap<u64, BigRational>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument(format!("χ(-1) must be ±1, got {sign}")));
        }
        for (p, v) in &primes {
            if !is_prime(*p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            if v.is_zero() {
                return Err(Error::InvalidArgument(format!("χ({p}) = 0")));
            }
        }
        Ok(Self { minus_one: sign == -1, primes })
    }

    /// `"2->4, 3->9, -1->-1"`; an empty string or `trivial` gives χ = 1.
    pub fn parse(src: &str) -> Result<Self> {
        let src = src.trim();
        if src.is_empty() || src == "trivial" {
            return Ok(Self::trivial());
        }
        let mut sign = 1;
        let mut primes = BTreeMap::new();
        for item in src.split(',') {
            let (key, val) =
                item.split_once("->").ok_or_else(|| Error::Parse(format!("expected 'p->value', got '{}'", item.trim())))?;
            let val: BigRational =
                val.trim().parse().map_err(|_| Error::Parse(format!("bad character value '{}'", val.trim())))?;
            match key.trim() {
                "-1" => {
                    sign = if val == -BigRational::one() {
                        -1
                    } else if val.is_one() {
                        1
                    } else {
                        return Err(Error::InvalidArgument(format!("χ(-1) must be ±1, got {val}")));
                    }
                }
                k => {
                    let p: u64 = k.parse().map_err(|_| Error::Parse(format!("bad prime '{k}'")))?;
                    primes.insert(p, val);
                }
            }
        }
        Self::new(sign, primes)
    }

    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        if q.is_zero() {
            return Err(Error::CharacterUndefined("χ(0)".into()));
        }
        let mut out = BigRational::one();
        if q.is_negative() && self.minus_one {
            out = -out;
        }
        for (p, e) in valuations(q)? {
            if let Some(v) = self.primes.get(&p) {
                out *= pow_rat(v, e);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        Self { minus_one: self.minus_one, primes: self.primes.iter().map(|(p, v)| (*p, v.recip())).collect() }
    }
}

fn pow_rat(v: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.minus_one {
            parts.push("-1->-1".into());
        }
        parts.extend(self.primes.iter().filter(|(_, v)| !v.is_one()).map(|(p, v)| format!("{p}->{v}")));
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Injectivity {
    pub injective: bool,
    /// Primes carrying the exponent system.
    pub primes: Vec<u64>,
    /// Row q, column p: 2 v_q(χ(p)) − k δ_pq.
    pub system: IMat,
    /// Integer kernel of the system; nonzero vectors are exponent vectors of
    /// positive a ≠ 1 with χ(a²) = a^k.
    pub kernel: Vec<Vec<i64>>,
    /// χ((-1)²) ≠ (-1)^k, so no negative a is in the kernel.
    pub torsion_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gl2qEmbedding {
    k: i64,
    chi: Character,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gl2qReport {
    pub k: i64,
    pub chi: String,
    pub seed: u64,
    pub pairs_checked: usize,
    pub homomorphism_failures: Vec<String>,
    /// (ρ(M) ρ(t₁))³ = id with M = [[0, 1], [-1, 0]].
    pub mt_cubed_identity: bool,
    pub m_fourth_identity: bool,
    /// ρ(M)², expected (x (-1)^k, y).
    pub m_squared: String,
    /// ρ(d_a) ρ(t₁) ρ(d_a)⁻¹ = ρ(t_a) for the listed a.
    pub diagonal_conjugation: Vec<(String, bool)>,
    /// (1/x, y) ρ(A) (1/x, y) equals the map built with −k and χ⁻¹.
    pub k_sign_flip: bool,
    pub injectivity: Injectivity,
    pub passed: bool,
}

impl Gl2qEmbedding {
    pub fn new(k: i64, chi: Character) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::EvenK(k));
        }
        if k < 0 {
            return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
        }
        Ok(Self { k, chi })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn build(&self, m: &QMat) -> Result<AffineBirMap> {
        build_with(self.k, &self.chi, m)
    }

    pub fn injectivity(&self) -> Result<Injectivity> {
        let mut support: BTreeSet<u64> = self.chi.primes.keys().copied().collect();
        let mut vals = BTreeMap::new();
        for (p, v) in &self.chi.primes {
            let val = valuations(v)?;
            support.extend(val.keys().copied());
            vals.insert(*p, val);
        }
        let primes: Vec<u64> = support.into_iter().collect();
        let system: IMat = primes
            .iter()
            .map(|q| {
                primes
                    .iter()
                    .map(|p| {
                        let e = vals.get(p).and_then(|v| v.get(q)).copied().unwrap_or(0);
                        2 * e - if p == q { self.k } else { 0 }
                    })
                    .collect()
            })
            .collect();
        let kernel = if primes.is_empty() {
            Vec::new()
        } else {
            solve_integer(&system, &vec![0; primes.len()])?.map(|(_, ker)| ker).unwrap_or_default()
        };
        let torsion_ok = self.k % 2 != 0;
        Ok(Injectivity { injective: kernel.is_empty() && torsion_ok, primes, system, kernel, torsion_ok })
    }

    /// Random pairs with entries in [-3, 3] plus the defining relations.
    pub fn verify(&self, pairs: usize, seed: u64) -> Result<Gl2qReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut homomorphism_failures = Vec::new();
        for _ in 0..pairs {
            let a = random_invertible(&mut rng);
            let b = random_invertible(&mut rng);
            let lhs = self.build(&a)?.compose(&self.build(&b)?)?;
            if !lhs.equals(&self.build(&mat_mul(&a, &b))?) {
                homomorphism_failures.push(format!("A = {}, B = {}", fmt_mat(&a), fmt_mat(&b)));
            }
        }
        let k = Field::Rational;
        let id = AffineBirMap::identity(&k);
        let m = qmat([[0, 1], [-1, 0]]);
        let rm = self.build(&m)?;
        let rt = self.build(&qmat([[1, 1], [0, 1]]))?;
        let mt = rm.compose(&rt)?;
        let mt_cubed_identity = mt.compose(&mt)?.compose(&mt)?.equals(&id);
        let m2 = rm.compose(&rm)?;
        let m_fourth_identity = m2.compose(&m2)?.equals(&id);
        let mut diagonal_conjugation = Vec::new();
        for a in [2i64, 3, -1, -2] {
            let d = qmat([[a, 0], [0, 1]]);
            let d_inv = [[BigRational::new(1.into(), a.into()), BigRational::zero()], [BigRational::zero(), BigRational::one()]];
            let lhs = self.build(&d)?.compose(&rt)?.compose(&self.build(&d_inv)?)?;
            diagonal_conjugation.push((a.to_string(), lhs.equals(&self.build(&qmat([[1, a], [0, 1]]))?)));
        }
        let k_sign_flip = self.k_flip(&qmat([[1, 2], [3, 4]]))?;
        let injectivity = self.injectivity()?;
        let passed = homomorphism_failures.is_empty()
            && mt_cubed_identity
            && m_fourth_identity
            && diagonal_conjugation.iter().all(|(_, ok)| *ok)
            && k_sign_flip
            && injectivity.injective;
        Ok(Gl2qReport {
            k: self.k,
            chi: self.chi.to_string(),
            seed,
            pairs_checked: pairs,
            homomorphism_failures,
            mt_cubed_identity,
            m_fourth_identity,
            m_squared: m2.to_string(),
            diagonal_conjugation,
            k_sign_flip,
            injectivity,
            passed,
        })
    }

    /// Conjugation by (1/x, y) replaces (k, χ) with (−k, χ⁻¹).
    pub fn k_flip(&self, a: &QMat) -> Result<bool> {
        let k = Field::Rational;
        let iota = AffineBirMap::parse(&k, "1/x", "y")?;
        let lhs = iota.compose(&self.build(a)?)?.compose(&iota)?;
        Ok(lhs.equals(&build_with(-self.k, &self.chi.inverse(), a)?))
    }
}

fn build_with(k: i64, chi: &Character, m: &QMat) -> Result<AffineBirMap> {
    let dt = det(m);
    if dt.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let f = Field::Rational;
    let y = Poly::var(&f, 1);
    let c = |q: &BigRational| Poly::constant(&f, f.from_rational(q.clone()));
    let j = RatFn::from_poly(y.scale(&f.from_rational(m[1][0].clone())).add(&c(&m[1][1])));
    let top = RatFn::from_poly(y.scale(&f.from_rational(m[0][0].clone())).add(&c(&m[0][1])));
    let x = RatFn::from_poly(Poly::var(&f, 0).scale(&f.from_rational(chi.eval(&dt)?)));
    AffineBirMap::new(x.div(&j.pow(k)?)?, top.div(&j)?)
}

fn random_invertible(rng: &mut ChaCha8Rng) -> QMat {
    loop {
        let m = [[rng.gen_range(-3..=3), rng.gen_range(-3..=3)], [rng.gen_range(-3..=3), rng.gen_range(-3..=3)]];
        if m[0][0] * m[1][1] != m[0][1] * m[1][0] {
            return qmat(m);
        }
    }
}

/// ρ(A)^e for a single matrix, using ρ(A⁻¹) for negative exponents.
pub fn rho_pow(e: &Gl2qEmbedding, a: &QMat, n: i64) -> Result<AffineBirMap> {
    let d = det(a);
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let inv = [[&a[1][1] / &d, -&a[0][1] / &d], [-&a[1][0] / &d, &a[0][0] / &d]];
    affine_pow(&e.build(a)?, &e.build(&inv)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn emb(k: i64, chi: &str) -> Gl2qEmbedding {
        Gl2qEmbedding::new(k, Character::parse(chi).unwrap()).unwrap()
    }

    fn aff(f1: &str, f2: &str) -> AffineBirMap {
        AffineBirMap::parse(&Field::Rational, f1, f2).unwrap()
    }

    #[test]
    fn examples() {
        let e = emb(1, "trivial");
        assert!(e.build(&qmat([[1, 0], [0, 1]])).unwrap().equals(&aff("x", "y")));
        assert!(e.build(&qmat([[1, 1], [0, 1]])).unwrap().equals(&aff("x", "y + 1")));
        assert!(e.build(&qmat([[0, 1], [-1, 0]])).unwrap().equals(&aff("-x/y", "-1/y")));
        let e3 = emb(3, "2->4,3->9");
        assert!(e3.build(&qmat([[2, 0], [0, 1]])).unwrap().equals(&aff("4*x", "2*y")));
        assert!(e3.build(&qmat([[1, 0], [1, 1]])).unwrap().equals(&aff("x/(y + 1)^3", "y/(y + 1)")));
    }

    #[test]
    fn even_k_rejected() {
        assert_eq!(Gl2qEmbedding::new(2, Character::trivial()), Err(Error::EvenK(2)));
        assert_eq!(Gl2qEmbedding::new(0, Character::trivial()), Err(Error::EvenK(0)));
        assert!(Gl2qEmbedding::new(-1, Character::trivial()).is_err());
    }

    #[test]
    fn even_k_loses_minus_identity() {
        // with k even, ρ(-I) would be the identity
        let m = qmat([[-1, 0], [0, -1]]);
        assert!(build_with(2, &Character::trivial(), &m).unwrap().equals(&aff("x", "y")));
        assert!(build_with(1, &Character::trivial(), &m).unwrap().equals(&aff("-x", "y")));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(emb(1, "").build(&qmat([[1, 2], [2, 4]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn character_parsing() {
        let c = Character::parse("2->4, 3->1/9, -1->-1").unwrap();
        assert_eq!(c.eval(&BigRational::new((-6).into(), 1.into())).unwrap(), BigRational::new((-4).into(), 9.into()));
        assert_eq!(c.eval(&BigRational::new(5.into(), 2.into())).unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(c.to_string(), "-1->-1,2->4,3->1/9");
        assert!(Character::parse("4->2").is_err());
        assert!(Character::parse("-1->3").is_err());
        assert!(Character::parse("2=>3").is_err());
        assert!(Character::parse("2->0").is_err());
    }

    #[test]
    fn injectivity_examples() {
        assert!(emb(1, "trivial").injectivity().unwrap().injective);
        let i = emb(3, "2->2,3->3").injectivity().unwrap();
        assert!(i.injective);
        assert_eq!(i.system, vec![vec![-1, 0], vec![0, -1]]);
        let i = emb(1, "2->3,3->2").injectivity().unwrap();
        assert_eq!(i.system, vec![vec![-1, 2], vec![2, -1]]);
        assert!(i.injective);
        // value primes join the support
        assert_eq!(emb(1, "2->5").injectivity().unwrap().primes, vec![2, 5]);
    }

    #[test]
    fn injectivity_kernel_found() {
        // bypasses the constructor: χ(2) = 2 with k = 2 sends a = 2 to 1
        let e = Gl2qEmbedding { k: 2, chi: Character::parse("2->2").unwrap() };
        let i = e.injectivity().unwrap();
        assert!(!i.injective && !i.torsion_ok);
        assert_eq!(i.kernel.len(), 1);
        assert_eq!(i.kernel[0].iter().map(|v| v.abs()).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn verify_trivial() {
        let r = emb(1, "trivial").verify(20, 7).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.m_squared, "[-x, y]");
    }

    #[test]
    fn verify_k3_square_character() {
        let r = emb(3, "2->4,3->9").verify(10, 1).unwrap();
        assert!(r.mt_cubed_identity && r.m_fourth_identity && r.k_sign_flip);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn powers() {
        let e = emb(1, "");
        let t = qmat([[1, 1], [0, 1]]);
        assert!(rho_pow(&e, &t, -3).unwrap().equals(&aff("x", "y - 3")));
    }

    fn small_invertible() -> impl Strategy<Value = QMat> {
        prop::array::uniform4(-3i64..=3)
            .prop_filter("invertible", |v| v[0] * v[3] != v[1] * v[2])
            .prop_map(|v| qmat([[v[0], v[1]], [v[2], v[3]]]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn triple_products(a in small_invertible(), b in small_invertible(), c in small_invertible(), k in prop::sample::select(vec![1i64, 3])) {
            let e = emb(k, "2->4,3->9,-1->-1");
            let lhs = e.build(&a).unwrap().compose(&e.build(&b).unwrap()).unwrap().compose(&e.build(&c).unwrap()).unwrap();
            let rhs = e.build(&mat_mul(&mat_mul(&a, &b), &c)).unwrap();
            prop_assert!(lhs.equals(&rhs));
        }
    }
}
