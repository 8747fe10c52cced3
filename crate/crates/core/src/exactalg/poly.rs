//! Sparse polynomials in x, y, z over an exact [`Field`].
//!
//! Terms are kept sorted in graded lexicographic order with x > y > z
//! (largest first) and zero coefficients are never stored, so structural
//! equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rug::integer::Order;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Exponents of x, y, z.
pub type Monomial = [u32; 3];

pub fn mono_degree(m: &Monomial) -> u32 {
    m[0] + m[1] + m[2]
}

/// Graded lexicographic comparison, larger monomial first when used with `sort_by`.
pub fn grlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    mono_degree(b).cmp(&mono_degree(a)).then_with(|| b.cmp(a))
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_divides(a: &Monomial, b: &Monomial) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Arithmetic on homogeneous polynomials with the homogeneity contract checked.
pub fn poly_arith(p: &Poly, q: &Poly, op: PolyOp) -> Result<Poly> {
    if p.field != q.field {
        return Err(Error::FieldMismatch);
    }
    let dp = p.homogeneous_degree()?;
    let dq = q.homogeneous_degree()?;
    match op {
        PolyOp::Add => {
            if let (Some(a), Some(b)) = (dp, dq) {
                if a != b {
                    return Err(Error::DegreeMismatch(a, b));
                }
            }
            Ok(p.add(q))
        }
        PolyOp::Mul => Ok(p.mul(q)),
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Self { field: field.clone(), terms: Vec::new() }
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        Self::monomial(field, [0, 0, 0], c)
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn monomial(field: &Field, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        Self { field: field.clone(), terms: vec![(m, c)] }
    }

    /// The variable x (0), y (1) or z (2).
    pub fn var(field: &Field, index: usize) -> Self {
        let mut m = [0u32; 3];
        m[index] = 1;
        Self::monomial(field, m, field.one())
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged,
    /// zeros dropped and the result sorted.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        terms.sort_by(|a, b| grlex_desc(&a.0, &b.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { field: field.clone(), terms: out }
    }

    /// Terms already sorted and merged; only zeros are dropped.
    fn from_sorted(field: &Field, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        Self { field: field.clone(), terms }
    }

    /// Builds from integer terms over the rational field.
    pub fn from_int_terms(terms: &[(Monomial, i64)]) -> Self {
        let q = Field::Rational;
        Self::from_terms(&q, terms.iter().map(|(m, c)| (*m, q.from_int(*c))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| mono_degree(m) == 0)
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(tm, _)| grlex_desc(tm, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    /// Highest total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| mono_degree(m)).unwrap_or(0)
    }

    /// Lowest total degree among the terms (order at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[var]).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` for a nonzero form of degree d.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let Some(d) = self.terms.first().map(|(m, _)| mono_degree(m)) else {
            return Ok(None);
        };
        if self.terms.iter().all(|(m, _)| mono_degree(m) == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bit_size()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        Self::from_sorted(
            &self.field,
            self.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect(),
        )
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(tm, c)| (mono_mul(tm, m), c.clone())).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => grlex_desc(&a.0, &b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate { f.sub(a, b) } else { f.add(a, b) };
                    if !c.is_zero() {
                        out.push((*m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { field: f.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        if self.field.is_rational() {
            return self.mul_rational_field(other);
        }
        let f = &self.field;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let p = f.mul(ca, cb);
                acc.entry(mono_mul(ma, mb))
                    .and_modify(|e| *e = f.add(e, &p))
                    .or_insert(p);
            }
        }
        Self::from_terms(f, acc)
    }

    fn mul_rational_field(&self, other: &Self) -> Self {
        let (a, da) = self.integer_parts();
        let (b, db) = other.integer_parts();
        let prod = int_mul(&a, &b);
        let den = da * db;
        let q = &self.field;
        Self::from_sorted(
            q,
            prod.into_iter()
                .map(|(m, c)| (m, Scalar::Rat(BigRational::new(c, den.clone()))))
                .collect(),
        )
    }

    /// Over Q: integer coefficients and a common denominator with
    /// `self = terms / den`.
    fn integer_parts(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if let Scalar::Rat(q) = c {
                if !q.denom().is_one() {
                    den = den.lcm(q.denom());
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let Scalar::Rat(q) = c else { unreachable!("rational field") };
                if den.is_one() {
                    (*m, q.numer().clone())
                } else {
                    (*m, q.numer() * (&den / q.denom()))
                }
            })
            .collect();
        (terms, den)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        let f = &self.field;
        let mut cache: [Vec<Scalar>; 3] = [vec![f.one()], vec![f.one()], vec![f.one()]];
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                let e = m[v] as usize;
                while cache[v].len() <= e {
                    let next = f.mul(cache[v].last().unwrap(), &point[v]);
                    cache[v].push(next);
                }
                t = f.mul(&t, &cache[v][e]);
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `subs[v]` for each variable.
    pub fn substitute(&self, subs: [&Poly; 3]) -> Poly {
        substitute_all(std::slice::from_ref(self), subs).pop().unwrap()
    }

    /// Exact division; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lc_inv = f.inv(lc)?;
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            if !mono_divides(lm, &rm) {
                return Err(Error::NotIntegral("polynomial division has a remainder".into()));
            }
            let tm = [rm[0] - lm[0], rm[1] - lm[1], rm[2] - lm[2]];
            let tc = f.mul(&rc, &lc_inv);
            let sub = d.shift(&tm).scale(&tc);
            r = r.sub(&sub);
            q.push((tm, tc));
        }
        Ok(Self::from_terms(f, q))
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&self.field.inv(c)?)),
        }
    }

    /// Coefficients reduced modulo a prime; `None` if a denominator vanishes.
    /// Rational field only.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<(Monomial, u64)>> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let Scalar::Rat(q) = c else { return None };
            let n = q.numer().mod_floor(&pb);
            let d = q.denom().mod_floor(&pb);
            let d = u64::try_from(d).ok()?;
            if d == 0 {
                return None;
            }
            let n = u64::try_from(n).ok()?;
            let v = crate::exactalg::modp::mul(n, crate::exactalg::modp::inv(d, p), p);
            if v != 0 {
                out.push((*m, v));
            }
        }
        Some(out)
    }
}

/// Substitutes the same three polynomials into several polynomials, sharing
/// the table of monomial values between them.
pub fn substitute_all(polys: &[Poly], subs: [&Poly; 3]) -> Vec<Poly> {
    let field = subs[0].field().clone();
    if field.is_rational() {
        return substitute_all_rational(polys, subs);
    }
    let mut table: HashMap<Monomial, Poly> = HashMap::new();
    table.insert([0, 0, 0], Poly::one(&field));
    fn value(table: &mut HashMap<Monomial, Poly>, m: Monomial, subs: [&Poly; 3]) -> Poly {
        if let Some(p) = table.get(&m) {
            return p.clone();
        }
        let v = (0..3).find(|&v| m[v] > 0).unwrap();
        let mut prev = m;
        prev[v] -= 1;
        let p = value(table, prev, subs).mul(subs[v]);
        table.insert(m, p.clone());
        p
    }
    polys
        .iter()
        .map(|p| {
            let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
            for (m, c) in &p.terms {
                let v = value(&mut table, *m, subs);
                for (vm, vc) in &v.terms {
                    let t = field.mul(vc, c);
                    acc.entry(*vm).and_modify(|e| *e = field.add(e, &t)).or_insert(t);
                }
            }
            Poly::from_terms(&field, acc)
        })
        .collect()
}

/// `substitute_all` over Q with integer arithmetic: each substitution is
/// `s_i / den_i`, and the monomial values are computed on the numerators.
fn substitute_all_rational(polys: &[Poly], subs: [&Poly; 3]) -> Vec<Poly> {
    let field = Field::Rational;
    let parts: [(Vec<(Monomial, BigInt)>, BigInt); 3] = std::array::from_fn(|i| subs[i].integer_parts());
    let mut table: HashMap<Monomial, Vec<(Monomial, BigInt)>> = HashMap::new();
    table.insert([0, 0, 0], vec![([0, 0, 0], BigInt::one())]);
    fn fill(table: &mut HashMap<Monomial, Vec<(Monomial, BigInt)>>, m: Monomial, parts: &[(Vec<(Monomial, BigInt)>, BigInt); 3]) {
        if table.contains_key(&m) {
            return;
        }
        let v = (0..3).find(|&v| m[v] > 0).unwrap();
        let mut prev = m;
        prev[v] -= 1;
        fill(table, prev, parts);
        let p = int_mul(&table[&prev], &parts[v].0);
        table.insert(m, p);
    }
    polys
        .iter()
        .map(|p| {
            if p.is_zero() {
                return Poly::zero(&field);
            }
            // c_m / prod den_i^{m_i}, brought to a common denominator
            let scaled: Vec<(Monomial, BigRational)> = p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut q = c.as_rational().expect("rational field").clone();
                    for (i, (_, den)) in parts.iter().enumerate() {
                        q /= BigRational::from_integer(Pow::pow(den, m[i]));
                    }
                    (*m, q)
                })
                .collect();
            let common = scaled.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
            let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
            for (m, q) in &scaled {
                fill(&mut table, *m, &parts);
                let e = q.numer() * (&common / q.denom());
                for (vm, vc) in &table[m] {
                    *acc.entry(*vm).or_default() += vc * &e;
                }
            }
            let coeff = |c: BigInt| if common.is_one() { BigRational::from_integer(c) } else { BigRational::new(c, common.clone()) };
            Poly::from_terms(&field, acc.into_iter().map(|(m, c)| (m, Scalar::Rat(coeff(c)))))
        })
        .collect()
}

fn homogeneous_int_degree(a: &[(Monomial, BigInt)]) -> Option<u32> {
    let d = mono_degree(&a.first()?.0);
    a.iter().all(|(m, _)| mono_degree(m) == d).then_some(d)
}

/// Index of a degree-`d` monomial in the dense triangle, ordered like grlex descending.
fn dense_index(m: &Monomial, d: u32) -> usize {
    let a = (d - m[0]) as usize;
    a * (a + 1) / 2 + m[2] as usize
}

const KRONECKER_THRESHOLD: usize = 4096;

/// Product of integer polynomials, sorted grlex descending.
pub(crate) fn int_mul(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> Vec<(Monomial, BigInt)> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    match (homogeneous_int_degree(a), homogeneous_int_degree(b)) {
        (Some(da), Some(db)) => {
            if a.len().min(b.len()) >= 32 && a.len() * b.len() >= KRONECKER_THRESHOLD {
                kronecker_mul(a, da, b, db)
            } else {
                dense_mul(a, da, b, db)
            }
        }
        _ => {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
            for (ma, ca) in a {
                for (mb, cb) in b {
                    *acc.entry(mono_mul(ma, mb)).or_default() += ca * cb;
                }
            }
            let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by(|x, y| grlex_desc(&x.0, &y.0));
            v
        }
    }
}

fn unindex(idx: usize, d: u32) -> Monomial {
    // inverse of dense_index: a(a+1)/2 <= idx
    let mut a = (((8 * idx + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
    while (a + 1) * (a + 2) / 2 <= idx {
        a += 1;
    }
    while a * (a + 1) / 2 > idx {
        a -= 1;
    }
    let k = (idx - a * (a + 1) / 2) as u32;
    let i = d - a as u32;
    [i, a as u32 - k, k]
}

pub(crate) fn dense_mul(
    a: &[(Monomial, BigInt)],
    da: u32,
    b: &[(Monomial, BigInt)],
    db: u32,
) -> Vec<(Monomial, BigInt)> {
    let d = da + db;
    let n = ((d + 1) * (d + 2) / 2) as usize;
    let mut acc = vec![BigInt::zero(); n];
    for (ma, ca) in a {
        for (mb, cb) in b {
            acc[dense_index(&mono_mul(ma, mb), d)] += ca * cb;
        }
    }
    acc.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (unindex(i, d), c))
        .collect()
}

/// Multiplication by Kronecker substitution: both forms are packed into
/// single integers (x^i y^j -> 2^(B (i S + j))), multiplied once, and the
/// signed digits unpacked.
pub(crate) fn kronecker_mul(
    a: &[(Monomial, BigInt)],
    da: u32,
    b: &[(Monomial, BigInt)],
    db: u32,
) -> Vec<(Monomial, BigInt)> {
    let d = da + db;
    let stride = d as usize + 1;
    let bits_a = a.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let log_len = (usize::BITS - a.len().min(b.len()).leading_zeros()) as u64;
    let need = bits_a + bits_b + log_len + 2;
    let words = need.div_ceil(32) as usize;

    let pack = |p: &[(Monomial, BigInt)]| -> rug::Integer {
        let top = p.iter().map(|(m, _)| m[0] as usize * stride + m[1] as usize).max().unwrap();
        let mut pos = vec![0u32; (top + 1) * words];
        let mut neg = vec![0u32; (top + 1) * words];
        for (m, c) in p {
            let slot = m[0] as usize * stride + m[1] as usize;
            let digits = c.magnitude().to_u32_digits();
            let dst = if c.sign() == Sign::Minus { &mut neg } else { &mut pos };
            dst[slot * words..slot * words + digits.len()].copy_from_slice(&digits);
        }
        rug::Integer::from_digits(&pos, Order::Lsf) - rug::Integer::from_digits(&neg, Order::Lsf)
    };

    // the one large product goes through GMP
    let prod = pack(a) * pack(b);
    let negative = prod.cmp0() == Ordering::Less;
    let digits = prod.as_abs().to_digits::<u32>(Order::Lsf);
    let slots = digits.len().div_ceil(words) + 1;
    let half = BigUint::one() << (32 * words - 1);
    let full = BigUint::one() << (32 * words);
    let mut carry = false;
    let mut out = Vec::new();
    for slot in 0..slots {
        let lo = (slot * words).min(digits.len());
        let hi = ((slot + 1) * words).min(digits.len());
        let mut v = BigUint::new(digits[lo..hi].to_vec());
        if carry {
            v += 1u32;
        }
        let c = if v >= half {
            carry = true;
            -BigInt::from(&full - v)
        } else {
            carry = false;
            BigInt::from(v)
        };
        if c.is_zero() {
            continue;
        }
        let i = slot / stride;
        let j = slot % stride;
        debug_assert!(i + j <= d as usize);
        let m = [i as u32, j as u32, d - (i + j) as u32];
        out.push((m, if negative { -c } else { c }));
    }
    out.sort_by(|x, y| grlex_desc(&x.0, &y.0));
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c {
                Scalar::Rat(q) if q.is_negative() => (true, Scalar::Rat(-q)),
                _ => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_const = mono_degree(m) == 0;
            let mut wrote = false;
            if is_const || !mag.is_one() {
                if matches!(mag, Scalar::Ext(_)) && mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                wrote = true;
            }
            for (v, name) in ["x", "y", "z"].iter().enumerate() {
                if m[v] == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if m[v] == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{}", m[v])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        parse_poly(&Field::Rational, s).unwrap()
    }

    #[test]
    fn product_of_monomials() {
        let r = poly_arith(&p("x^2"), &p("y*z"), PolyOp::Mul).unwrap();
        assert_eq!(r, p("x^2*y*z"));
        assert_eq!(r.homogeneous_degree().unwrap(), Some(4));
    }

    #[test]
    fn cancellation_drops_term() {
        let r = poly_arith(&p("x*y + z^2"), &p("-x*y"), PolyOp::Add).unwrap();
        assert_eq!(r, p("z^2"));
        assert_eq!(r.num_terms(), 1);
    }

    #[test]
    fn jonquieres_component_times_z() {
        // ((alpha x + y) z) * z with alpha = 2
        let r = poly_arith(&p("(2*x+y)*z"), &p("z"), PolyOp::Mul).unwrap();
        assert_eq!(r, p("2*x*z^2 + y*z^2"));
    }

    #[test]
    fn degree_mismatch_on_add() {
        assert_eq!(poly_arith(&p("x"), &p("x^2"), PolyOp::Add), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(a.div_exact(&p("x+y")).unwrap(), p("x-y"));
        assert!(a.div_exact(&p("x+z")).is_err());
    }

    #[test]
    fn grlex_order_is_readable() {
        assert_eq!(p("z^2 + y*z + x^2 + x*y").to_string(), "x^2 + x*y + y*z + z^2");
    }

    #[test]
    fn substitution() {
        let q = p("x*y");
        let s = q.substitute([&p("x+z"), &p("y-z"), &p("z")]);
        assert_eq!(s, p("(x+z)*(y-z)"));
    }

    #[test]
    fn evaluation() {
        let f = Field::Rational;
        let v = p("x^2*y - 3*z").eval(&[f.from_int(2), f.from_int(5), f.from_frac(1, 3)]);
        assert_eq!(v, f.from_int(19));
    }

    fn dense_form(d: u32, coeffs: &[i64]) -> Vec<(Monomial, BigInt)> {
        let mut out = Vec::new();
        let mut it = coeffs.iter().cycle();
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                let c = *it.next().unwrap();
                if c != 0 {
                    out.push(([i, j, d - i - j], BigInt::from(c)));
                }
            }
        }
        out
    }

    #[test]
    fn kronecker_matches_schoolbook_large() {
        let a = dense_form(20, &[3, -7, 0, 11, 1 << 40, -5, 2]);
        let b = dense_form(17, &[-1, 4, 9, -(1 << 33), 0, 6]);
        assert_eq!(kronecker_mul(&a, 20, &b, 17), dense_mul(&a, 20, &b, 17));
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(
            da in 0u32..7, db in 0u32..7,
            ca in proptest::collection::vec(-1000i64..1000, 1..40),
            cb in proptest::collection::vec(-1000i64..1000, 1..40),
        ) {
            let a = dense_form(da, &ca);
            let b = dense_form(db, &cb);
            prop_assume!(!a.is_empty() && !b.is_empty());
            prop_assert_eq!(kronecker_mul(&a, da, &b, db), dense_mul(&a, da, &b, db));
        }

        #[test]
        fn products_stay_homogeneous(
            da in 0u32..5, db in 0u32..5,
            ca in proptest::collection::vec(-9i64..9, 1..20),
            cb in proptest::collection::vec(-9i64..9, 1..20),
        ) {
            let f = Field::Rational;
            let a = Poly::from_terms(&f, dense_form(da, &ca).into_iter().map(|(m, c)| (m, f.from_bigint(c))));
            let b = Poly::from_terms(&f, dense_form(db, &cb).into_iter().map(|(m, c)| (m, f.from_bigint(c))));
            let prod = a.mul(&b);
            if !prod.is_zero() {
                prop_assert_eq!(prod.homogeneous_degree().unwrap(), Some(da + db));
            }
            let norm = Poly::from_terms(&f, prod.terms().to_vec());
            prop_assert_eq!(norm, prod);
        }
    }
}
