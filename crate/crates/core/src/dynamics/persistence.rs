//! Which proper base-points of φ and φ⁻¹ stay base-points of the forward
//! and backward iterates over a finite window.

use serde::{Serialize, Serializer};

use super::basepoints::{normalize_point, proper_base_points, same_point, BaseLocus, BasePoint, PointCluster};
use super::jonquieres::jonquieres_bp_count;
use crate::cremap::{verify_inverse, RationalMapP2, DEFAULT_BIT_CAP};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};
use crate::report::JsonScalar;

/// b(φ^k) when the proper data pins it down, otherwise the count of proper
/// base-points only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseCount {
    Exact(u64),
    ProperOnly(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterateRecord {
    pub k: i64,
    pub degree: u32,
    pub points: Vec<BasePoint>,
    pub clusters: Vec<PointCluster>,
    pub b_count: BaseCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PersistenceReport {
    pub horizon: usize,
    /// Iterates k with window.0 <= |k| <= window.1 decide the signs.
    pub window: (usize, usize),
    pub iterates: Vec<IterateRecord>,
    #[serde(serialize_with = "points_json")]
    pub b_pp: Vec<[Scalar; 3]>,
    #[serde(serialize_with = "points_json")]
    pub b_pm: Vec<[Scalar; 3]>,
    #[serde(serialize_with = "points_json")]
    pub b_mp: Vec<[Scalar; 3]>,
    #[serde(serialize_with = "points_json")]
    pub b_mm: Vec<[Scalar; 3]>,
    pub nu_proper: usize,
    /// Points or clusters that could not be tracked.
    pub flagged: Vec<String>,
}

fn points_json<S: Serializer>(v: &[[Scalar; 3]], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(JsonScalar::point).collect::<Vec<_>>().serialize(s)
}

fn fmt_point(p: &[Scalar; 3]) -> String {
    format!("({}:{}:{})", p[0], p[1], p[2])
}

fn base_count(degree: u32, locus: &BaseLocus) -> BaseCount {
    let d = degree as u64;
    if d <= 1 {
        return BaseCount::Exact(0);
    }
    // a point of multiplicity d-1 forces the profile (d-1, 1^(2d-2))
    if locus.points.iter().any(|b| b.multiplicity as u64 == d - 1) {
        BaseCount::Exact(jonquieres_bp_count(d))
    } else {
        BaseCount::ProperOnly(locus.proper_count() as u64)
    }
}

fn record(k: i64, map: &RationalMapP2) -> Result<(IterateRecord, BaseLocus)> {
    let locus = proper_base_points(map)?;
    let rec = IterateRecord {
        k,
        degree: map.degree(),
        points: locus.points.clone(),
        clusters: locus.clusters.clone(),
        b_count: base_count(map.degree(), &locus),
    };
    Ok((rec, locus))
}

/// Forward and backward orbit of `p` for up to `n` steps, stopping where
/// the image is undefined.
fn orbit(k: &Field, phi: &RationalMapP2, phi_inv: &RationalMapP2, p: &[Scalar; 3], n: usize) -> Vec<[Scalar; 3]> {
    let mut out = Vec::new();
    for map in [phi, phi_inv] {
        let mut cur = p.clone();
        for _ in 0..n {
            match map.apply(&cur) {
                Some(q) => {
                    cur = normalize_point(k, &q).expect("nonzero image");
                    out.push(cur.clone());
                }
                None => break,
            }
        }
    }
    out
}

/// Scan over k in [-N, N]. Candidates are the split proper base-points of
/// φ and φ⁻¹; a candidate has sign + forward if it is a base-point of φ^k
/// for every k in the window [ceil(N/2), N], likewise backward.
pub fn persistence_scan(phi: &RationalMapP2, phi_inv: &RationalMapP2, n: usize) -> Result<PersistenceReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("horizon N must be >= 2, got {n}")));
    }
    if !verify_inverse(phi, phi_inv) {
        return Err(Error::NotInverse);
    }
    let k = phi.field();
    let fwd = phi.iterates(n, DEFAULT_BIT_CAP)?;
    let bwd = phi_inv.iterates(n, DEFAULT_BIT_CAP)?;

    let mut iterates = Vec::with_capacity(2 * n);
    let mut first_loci = Vec::new();
    for (j, map) in bwd.iter().enumerate().rev() {
        let (rec, locus) = record(-(j as i64 + 1), map)?;
        if j == 0 {
            first_loci.push(locus);
        }
        iterates.push(rec);
    }
    for (j, map) in fwd.iter().enumerate() {
        let (rec, locus) = record(j as i64 + 1, map)?;
        if j == 0 {
            first_loci.push(locus);
        }
        iterates.push(rec);
    }

    let mut flagged = Vec::new();
    let mut candidates: Vec<[Scalar; 3]> = Vec::new();
    for locus in &first_loci {
        for b in &locus.points {
            if !candidates.iter().any(|c| same_point(k, c, &b.point)) {
                candidates.push(b.point.clone());
            }
        }
        for c in &locus.clusters {
            flagged.push(format!("cluster not tracked: {} with {} = 0", c.location, c.poly));
        }
    }

    let lo = n.div_ceil(2);
    let window = &fwd[lo - 1..];
    let window_inv = &bwd[lo - 1..];
    let (mut b_pp, mut b_pm, mut b_mp, mut b_mm) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for p in candidates {
        let plus = window.iter().all(|m| m.is_base_point(&p));
        let minus = window_inv.iter().all(|m| m.is_base_point(&p));
        match (plus, minus) {
            (true, true) => b_pp.push(p),
            (true, false) => b_pm.push(p),
            (false, true) => b_mp.push(p),
            (false, false) => b_mm.push(p),
        }
    }

    let mut reps: Vec<[Scalar; 3]> = Vec::new();
    for p in &b_pm {
        let orb = orbit(k, phi, phi_inv, p, n);
        let known = reps.iter().any(|r| orb.iter().any(|q| same_point(k, q, r)));
        if !known {
            reps.push(p.clone());
        }
        if orb.is_empty() {
            flagged.push(format!("orbit of {} undefined in both directions", fmt_point(p)));
        }
    }

    Ok(PersistenceReport {
        horizon: n,
        window: (lo, n),
        iterates,
        b_pp,
        b_pm,
        b_mp,
        b_mm,
        nu_proper: reps.len(),
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cremap::{make_map, solve_inverse};

    fn pt(k: &Field, v: [i64; 3]) -> [Scalar; 3] {
        v.map(|c| k.from_int(c))
    }

    fn contains(v: &[[Scalar; 3]], p: &[Scalar; 3]) -> bool {
        v.iter().any(|q| same_point(&Field::Rational, q, p))
    }

    #[test]
    fn jonquieres_example() {
        let k = Field::Rational;
        let f = make_map(&k, ["(2*x+y)*z", "3*y*(x+z)", "z*(x+z)"]).unwrap();
        let g = solve_inverse(&f).unwrap();
        let r = persistence_scan(&f, &g, 6).unwrap();
        assert!(contains(&r.b_pm, &pt(&k, [-1, 2, 1])), "{r:?}");
        assert_eq!(r.nu_proper, 1);
        for rec in &r.iterates {
            assert!(matches!(rec.b_count, BaseCount::Exact(b) if b == jonquieres_bp_count(rec.degree as u64)), "{rec:?}");
        }
        let back = persistence_scan(&g, &f, 6).unwrap();
        assert_eq!(back.b_mp, r.b_pm);
        assert_eq!(back.b_pm, r.b_mp);
    }

    #[test]
    fn involution() {
        let k = Field::Rational;
        let s = make_map(&k, ["y*z", "x*z", "x*y"]).unwrap();
        let r = persistence_scan(&s, &s, 4).unwrap();
        assert!(r.b_pm.is_empty());
        assert_eq!(r.nu_proper, 0);
        assert_eq!(r.iterates.iter().filter(|i| i.degree == 2).count(), 4);
    }

    #[test]
    fn linear_map_has_nothing() {
        let k = Field::Rational;
        let a = make_map(&k, ["x + y", "y", "z"]).unwrap();
        let ai = make_map(&k, ["x - y", "y", "z"]).unwrap();
        let r = persistence_scan(&a, &ai, 3).unwrap();
        assert!(r.b_pp.is_empty() && r.b_pm.is_empty() && r.b_mp.is_empty() && r.b_mm.is_empty());
        assert!(r.iterates.iter().all(|i| i.b_count == BaseCount::Exact(0)));
    }

    #[test]
    fn rejects_bad_input() {
        let k = Field::Rational;
        let s = make_map(&k, ["y*z", "x*z", "x*y"]).unwrap();
        assert_eq!(persistence_scan(&s, &s, 1), Err(Error::InvalidArgument("horizon N must be >= 2, got 1".into())));
        let id = RationalMapP2::identity(&k);
        assert_eq!(persistence_scan(&s, &id, 3), Err(Error::NotInverse));
    }
}
