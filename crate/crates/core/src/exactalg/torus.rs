//! Multiplicative constants modeled in a declared finitely generated abelian
//! group Z/N + Z^r. The torsion generator stands for a primitive N-th root of
//! unity and the free generators for multiplicatively independent numbers.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusGroup {
    torsion: u64,
    free_rank: usize,
}

/// An element zeta_N^e0 * g_1^e1 * ... * g_r^er.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusConstant {
    torsion: i64,
    free: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl TorusGroup {
    /// `torsion` is N >= 1 (N = 1 means no torsion part).
    pub fn new(torsion: u64, free_rank: usize) -> Result<Self> {
        if torsion == 0 {
            return Err(Error::InvalidArgument("torsion order must be >= 1".into()));
        }
        Ok(Self { torsion, free_rank })
    }

    /// Parses `N=5, free=2`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut n = 1u64;
        let mut r = 0usize;
        for part in src.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in torus spec, got {part:?}")))?;
            let v = v.trim();
            match k.trim() {
                "N" | "n" => n = v.parse().map_err(|_| Error::Parse(format!("bad N: {v}")))?,
                "free" | "r" => r = v.parse().map_err(|_| Error::Parse(format!("bad free rank: {v}")))?,
                other => return Err(Error::Parse(format!("unknown torus key {other:?}"))),
            }
        }
        Self::new(n, r)
    }

    pub fn torsion(&self) -> u64 {
        self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn element(&self, torsion: i64, free: Vec<i64>) -> Result<TorusConstant> {
        if free.len() != self.free_rank {
            return Err(Error::TorusMismatch);
        }
        Ok(TorusConstant { torsion: torsion.mod_floor(&(self.torsion as i64)), free })
    }

    pub fn identity(&self) -> TorusConstant {
        TorusConstant { torsion: 0, free: vec![0; self.free_rank] }
    }

    /// The torsion generator (primitive N-th root of unity).
    pub fn root_of_unity(&self) -> TorusConstant {
        TorusConstant { torsion: 1 % self.torsion as i64, free: vec![0; self.free_rank] }
    }

    /// The i-th free generator, 0-based.
    pub fn free_generator(&self, i: usize) -> Result<TorusConstant> {
        if i >= self.free_rank {
            return Err(Error::TorusMismatch);
        }
        let mut free = vec![0; self.free_rank];
        free[i] = 1;
        Ok(TorusConstant { torsion: 0, free })
    }

    pub fn check(&self, u: &TorusConstant) -> Result<()> {
        if u.free.len() != self.free_rank || u.torsion < 0 || u.torsion as u64 >= self.torsion {
            return Err(Error::TorusMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, u: &TorusConstant, v: &TorusConstant) -> Result<TorusConstant> {
        self.check(u)?;
        self.check(v)?;
        let free = u.free.iter().zip(&v.free).map(|(a, b)| a + b).collect();
        self.element(u.torsion + v.torsion, free)
    }

    pub fn pow(&self, u: &TorusConstant, k: i64) -> Result<TorusConstant> {
        self.check(u)?;
        let t = ((u.torsion as i128 * k as i128).rem_euclid(self.torsion as i128)) as i64;
        self.element(t, u.free.iter().map(|e| e * k).collect())
    }

    pub fn inv(&self, u: &TorusConstant) -> Result<TorusConstant> {
        self.pow(u, -1)
    }

    pub fn order(&self, u: &TorusConstant) -> Result<Order> {
        self.check(u)?;
        if u.free.iter().any(|&e| e != 0) {
            return Ok(Order::Infinite);
        }
        let n = self.torsion as i64;
        Ok(Order::Finite((n / u.torsion.gcd(&n)) as u64))
    }

    /// Parses `(e0; e1,e2,...)`; `(e0)` when the free rank is 0.
    pub fn parse_constant(&self, src: &str) -> Result<TorusConstant> {
        let s = src.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (e0; e1,...), got {s:?}")))?;
        let (t, rest) = match inner.split_once(';') {
            Some((t, rest)) => (t, rest),
            None => (inner, ""),
        };
        let t: i64 = t.trim().parse().map_err(|_| Error::Parse(format!("bad torsion exponent {t:?}")))?;
        let free: Vec<i64> = rest
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad exponent {p:?}"))))
            .collect::<Result<_>>()?;
        self.element(t, free)
    }
}

impl TorusConstant {
    pub fn torsion_exponent(&self) -> i64 {
        self.torsion
    }

    pub fn free_exponents(&self) -> &[i64] {
        &self.free
    }

    pub fn is_identity(&self) -> bool {
        self.torsion == 0 && self.free.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for TorusConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.torsion)?;
        if !self.free.is_empty() {
            write!(f, ";")?;
            for (i, e) in self.free.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let g = TorusGroup::new(5, 1).unwrap();
        assert_eq!(g.order(&g.element(1, vec![0]).unwrap()).unwrap(), Order::Finite(5));
        assert_eq!(g.order(&g.element(0, vec![1]).unwrap()).unwrap(), Order::Infinite);
        assert_eq!(g.order(&g.identity()).unwrap(), Order::Finite(1));
        let g6 = TorusGroup::new(6, 0).unwrap();
        assert_eq!(g6.order(&g6.element(4, vec![]).unwrap()).unwrap(), Order::Finite(3));
    }

    #[test]
    fn exponentwise_product() {
        let g = TorusGroup::new(5, 1).unwrap();
        let u = g.element(2, vec![3]).unwrap();
        let v = g.element(4, vec![-3]).unwrap();
        assert_eq!(g.mul(&u, &v).unwrap(), g.element(1, vec![0]).unwrap());
        assert!(g.mul(&u, &g.inv(&u).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn context_mismatch() {
        let g = TorusGroup::new(5, 1).unwrap();
        let h = TorusGroup::new(5, 2).unwrap();
        assert_eq!(g.mul(&g.identity(), &h.identity()), Err(Error::TorusMismatch));
    }

    #[test]
    fn parse_round_trip() {
        let g = TorusGroup::parse("N=5, free=2").unwrap();
        let u = g.parse_constant("(7; 1,-2)").unwrap();
        assert_eq!(u, g.element(2, vec![1, -2]).unwrap());
        assert_eq!(g.parse_constant(&u.to_string()).unwrap(), u);
    }
}
