//! Pic of P^2 blown up in r points.
//!
//! A class is stored as (d; a_1, ..., a_r) meaning d L - Σ a_i E_i, so the
//! intersection form is d d' - Σ a_i a_i', E_i is (0; 0..-1..0) and the
//! canonical class K = -3L + Σ E_i is (-3; -1, ..., -1).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicClass {
    pub d: i64,
    pub a: Vec<i64>,
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("lattice arithmetic"))
}

impl PicClass {
    pub fn new(d: i64, a: Vec<i64>) -> Self {
        Self { d, a }
    }

    pub fn zero(r: usize) -> Self {
        Self { d: 0, a: vec![0; r] }
    }

    pub fn line(r: usize) -> Self {
        Self { d: 1, a: vec![0; r] }
    }

    /// E_i, 1-based.
    pub fn exceptional(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i > r {
            return Err(Error::InvalidArgument(format!("E{i} out of range 1..={r}")));
        }
        let mut a = vec![0; r];
        a[i - 1] = -1;
        Ok(Self { d: 0, a })
    }

    pub fn canonical(r: usize) -> Self {
        Self { d: -3, a: vec![-1; r] }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Coordinates (d, a_1, ..., a_r).
    pub fn coords(&self) -> Vec<i64> {
        std::iter::once(self.d).chain(self.a.iter().copied()).collect()
    }

    pub fn from_coords(v: &[i64]) -> Self {
        Self { d: v[0], a: v[1..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.d == 0 && self.a.iter().all(|&x| x == 0)
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(self.rank(), other.rank()))
        }
    }

    pub fn inner(&self, other: &Self) -> Result<i64> {
        self.same_rank(other)?;
        let mut s = ck(self.d.checked_mul(other.d))?;
        for (x, y) in self.a.iter().zip(&other.a) {
            s = ck(s.checked_sub(ck(x.checked_mul(*y))?))?;
        }
        Ok(s)
    }

    pub fn square(&self) -> Result<i64> {
        self.inner(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let a = self.a.iter().zip(&other.a).map(|(x, y)| ck(x.checked_add(*y))).collect::<Result<_>>()?;
        Ok(Self { d: ck(self.d.checked_add(other.d))?, a })
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let a = self.a.iter().map(|x| ck(x.checked_mul(c))).collect::<Result<_>>()?;
        Ok(Self { d: ck(self.d.checked_mul(c))?, a })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    /// Parses sums like "3L - E1 - E2", "E2 + E3 - 2E6" or "-K".
    pub fn parse(src: &str, r: usize) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("class {src:?}: {why}"));
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = Self::zero(r);
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| bad("missing L, K or E<i>"))?;
            let coeff: i64 = if split == 0 { 1 } else { term[..split].parse().map_err(|_| bad("bad coefficient"))? };
            let c = ck(coeff.checked_mul(sign))?;
            let basis = match &term[split..] {
                "L" => Self::line(r),
                "K" => Self::canonical(r),
                e if e.starts_with('E') => {
                    let i: usize = e[1..].parse().map_err(|_| bad("bad exceptional index"))?;
                    Self::exceptional(r, i)?
                }
                other => return Err(bad(&format!("unknown symbol {other:?}"))),
            };
            out = out.add(&basis.scale(c)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = std::iter::once((self.d, "L".to_string()))
            .chain(self.a.iter().enumerate().map(|(i, &x)| (-x, format!("E{}", i + 1))))
            .filter(|(c, _)| *c != 0);
        let mut first = true;
        for (c, name) in terms {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let sep = if first { "" } else { " " };
            let gap = if first || sign.is_empty() { "" } else { " " };
            if mag == 1 {
                write!(f, "{sep}{sign}{gap}{name}")?;
            } else {
                write!(f, "{sep}{sign}{gap}{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer matrix acting on coordinates (d, a_1, ..., a_r) by M v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    pub rows: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(r: usize) -> Self {
        let n = r + 1;
        Self { rows: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect() }
    }

    /// The matrix whose j-th column is the image of the j-th basis vector.
    pub fn from_columns(cols: &[PicClass]) -> Self {
        let n = cols.len();
        let coords: Vec<Vec<i64>> = cols.iter().map(PicClass::coords).collect();
        Self { rows: (0..n).map(|i| (0..n).map(|j| coords[j][i]).collect()).collect() }
    }

    /// E_i -> E_{perm[i-1]} (1-based targets), fixing L.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let r = perm.len();
        let mut seen = vec![false; r];
        for &p in perm {
            if p == 0 || p > r || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 1..={r}")));
            }
        }
        let mut m = Self::identity(r);
        for row in m.rows.iter_mut().skip(1) {
            row.iter_mut().for_each(|x| *x = 0);
        }
        for (i, &p) in perm.iter().enumerate() {
            m.rows[p][i + 1] = 1;
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn apply(&self, v: &PicClass) -> Result<PicClass> {
        if v.rank() != self.rank() {
            return Err(Error::LatticeMismatch(self.rank(), v.rank()));
        }
        let c = v.coords();
        let out = self
            .rows
            .iter()
            .map(|row| row.iter().zip(&c).try_fold(0i64, |s, (x, y)| s.checked_add(x.checked_mul(*y)?)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("lattice map"))?;
        Ok(PicClass::from_coords(&out))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::LatticeMismatch(self.rank(), other.rank()));
        }
        let n = self.rows.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..n)
                    .try_fold(0i64, |s, l| s.checked_add(self.rows[i][l].checked_mul(other.rows[l][j])?))
                    .ok_or(Error::Overflow("lattice map product"))?;
            }
        }
        Ok(Self { rows })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity(self.rank());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a permutation-like or form-preserving map: M^-1 = J M^T J
    /// with J = diag(1, -1, ..., -1).
    pub fn form_inverse(&self) -> Result<Self> {
        if !self.preserves_form()? {
            return Err(Error::InvalidArgument("map does not preserve the intersection form".into()));
        }
        let n = self.rows.len();
        let sign = |i: usize| if i == 0 { 1 } else { -1 };
        Ok(Self { rows: (0..n).map(|i| (0..n).map(|j| sign(i) * sign(j) * self.rows[j][i]).collect()).collect() })
    }

    fn basis(&self) -> Vec<PicClass> {
        let n = self.rows.len();
        (0..n)
            .map(|j| PicClass::from_coords(&(0..n).map(|i| i64::from(i == j)).collect::<Vec<_>>()))
            .collect()
    }

    /// (M u_i)·(M u_j) = u_i·u_j on the coordinate basis.
    pub fn preserves_form(&self) -> Result<bool> {
        let basis = self.basis();
        let images = basis.iter().map(|b| self.apply(b)).collect::<Result<Vec<_>>>()?;
        for i in 0..basis.len() {
            for j in i..basis.len() {
                if images[i].inner(&images[j])? != basis[i].inner(&basis[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn fixes(&self, v: &PicClass) -> Result<bool> {
        Ok(&self.apply(v)? == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_convention() {
        let k = PicClass::canonical(9);
        let l = PicClass::line(9);
        assert_eq!(k.square().unwrap(), 0);
        assert_eq!(k.inner(&l).unwrap(), -3);
        let e1 = PicClass::exceptional(9, 1).unwrap();
        assert_eq!(e1.square().unwrap(), -1);
        assert_eq!(k.inner(&e1).unwrap(), -1);
    }

    #[test]
    fn parse_and_display() {
        let d = PicClass::parse("E2 - E6", 9).unwrap();
        assert_eq!(d.square().unwrap(), -2);
        assert_eq!(d.inner(&PicClass::canonical(9)).unwrap(), 0);
        assert_eq!(d.to_string(), "E2 - E6");
        let c = PicClass::parse("3L -E1 -E2 - 2E3", 3).unwrap();
        assert_eq!(c, PicClass::new(3, vec![1, 1, 2]));
        assert_eq!(c.to_string(), "3L - E1 - E2 - 2E3");
        assert_eq!(PicClass::parse("-K", 9).unwrap().to_string(), "3L - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - E9");
        assert_eq!(PicClass::parse("K + 3L", 2).unwrap(), PicClass::new(0, vec![-1, -1]));
        assert!(PicClass::parse("E10", 9).is_err());
        assert!(PicClass::parse("3Q", 9).is_err());
        assert!(PicClass::parse("", 9).is_err());
    }

    #[test]
    fn mismatch() {
        assert_eq!(PicClass::line(9).inner(&PicClass::line(8)), Err(Error::LatticeMismatch(9, 8)));
    }

    #[test]
    fn permutations() {
        let p = LatticeMap::permutation(&[2, 3, 1]).unwrap();
        let e1 = PicClass::exceptional(3, 1).unwrap();
        assert_eq!(p.apply(&e1).unwrap(), PicClass::exceptional(3, 2).unwrap());
        assert!(p.preserves_form().unwrap());
        assert!(p.fixes(&PicClass::canonical(3)).unwrap());
        assert_eq!(p.pow(3).unwrap(), LatticeMap::identity(3));
        assert_eq!(p.compose(&p.form_inverse().unwrap()).unwrap(), LatticeMap::identity(3));
        assert!(LatticeMap::permutation(&[1, 1]).is_err());
    }
}
