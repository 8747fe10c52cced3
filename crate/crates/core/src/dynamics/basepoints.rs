//! Proper base-points: common zeros of the three components in P^2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cremap::RationalMapP2;
use crate::error::{Error, Result};
use crate::exactalg::gcd::{resultant_y, specialize_x};
use crate::exactalg::roots::field_roots;
use crate::exactalg::upoly::{self, UPoly};
use crate::exactalg::{vanishing_order_at, Field, Poly, Scalar};
use crate::report::JsonScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoint {
    /// Normalized so that the last nonzero coordinate is 1.
    pub point: [Scalar; 3],
    pub multiplicity: u32,
}

/// Points whose coordinates were not split in the field: the roots of
/// `poly` (a square-free polynomial in `variable`), located as described by
/// `location`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCluster {
    pub location: String,
    pub variable: char,
    pub poly: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocus {
    pub field: Field,
    pub points: Vec<BasePoint>,
    pub clusters: Vec<PointCluster>,
}

impl BaseLocus {
    /// Split points plus cluster degrees.
    pub fn proper_count(&self) -> usize {
        self.points.len() + self.clusters.iter().map(|c| c.degree).sum::<usize>()
    }

    pub fn contains(&self, p: &[Scalar; 3]) -> bool {
        self.points.iter().any(|b| same_point(&self.field, &b.point, p))
    }
}

#[derive(Serialize)]
struct BasePointJson {
    point: [JsonScalar; 3],
    multiplicity: u32,
}

impl Serialize for BasePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasePointJson { point: JsonScalar::point(&self.point), multiplicity: self.multiplicity }.serialize(s)
    }
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize_point(k: &Field, p: &[Scalar; 3]) -> Result<[Scalar; 3]> {
    let v = (0..3).rev().find(|&i| !p[i].is_zero()).ok_or(Error::InvalidArgument("(0:0:0) is not a point".into()))?;
    let inv = k.inv(&p[v])?;
    Ok(std::array::from_fn(|i| k.mul(&p[i], &inv)))
}

/// Projective equality.
pub fn same_point(k: &Field, a: &[Scalar; 3], b: &[Scalar; 3]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| k.mul(&a[i], &b[j]) == k.mul(&a[j], &b[i])))
}

fn upoly_string(k: &Field, f: &UPoly, var: char) -> String {
    let idx = if var == 'x' { 0 } else { 1 };
    let terms = f.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        let mut m = [0u32; 3];
        m[idx] = i as u32;
        (m, c.clone())
    });
    Poly::from_terms(k, terms).to_string()
}

fn restrict_to_infinity(p: &Poly) -> UPoly {
    // P(x, 1, 0) as a polynomial in x
    let k = p.field();
    let mut out: UPoly = vec![k.zero(); p.total_degree() as usize + 1];
    for (m, c) in p.terms() {
        if m[2] == 0 {
            out[m[0] as usize] = k.add(&out[m[0] as usize], c);
        }
    }
    upoly::trim(&mut out);
    out
}

fn gcd_all(k: &Field, polys: impl IntoIterator<Item = UPoly>) -> UPoly {
    polys.into_iter().fold(Vec::new(), |g, p| upoly::gcd(k, &g, &p))
}

fn multiplicity(comps: &[&Poly], p: &[Scalar; 3]) -> Result<u32> {
    let mut m = u32::MAX;
    for c in comps {
        m = m.min(vanishing_order_at(c, p)?);
    }
    Ok(m)
}

fn combination(k: &Field, comps: &[&Poly], coeffs: &[i64]) -> Poly {
    comps.iter().zip(coeffs).fold(Poly::zero(k), |acc, (c, &a)| acc.add(&c.scale(&k.from_int(a))))
}

/// Candidate x-coordinates of affine base-points (z = 1): the gcd of
/// resultants in y of random combinations of the components.
fn affine_x_candidates(k: &Field, comps: &[&Poly]) -> Result<UPoly> {
    if comps.len() == 1 {
        return Err(Error::PositiveDimensionalLocus);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6261_7365);
    for _ in 0..16 {
        let mut pick = || -> Vec<i64> { (0..comps.len()).map(|_| rng.gen_range(-9..=9)).collect() };
        let (a, b, c) = (combination(k, comps, &pick()), combination(k, comps, &pick()), combination(k, comps, &pick()));
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let r1 = resultant_y(&a, &b)?;
        let r2 = resultant_y(&a, &c)?;
        let r3 = resultant_y(&b, &c)?;
        if r1.is_empty() || r2.is_empty() || r3.is_empty() {
            continue;
        }
        return Ok(gcd_all(k, [r1, r2, r3]));
    }
    Err(Error::PositiveDimensionalLocus)
}

/// Proper base-points of a map: split points with their multiplicities, and
/// unsplit clusters for coordinates outside the field.
pub fn proper_base_points(phi: &RationalMapP2) -> Result<BaseLocus> {
    let k = phi.field();
    let comps: Vec<&Poly> = phi.components().iter().filter(|c| !c.is_zero()).collect();
    let mut locus = BaseLocus { field: k.clone(), points: Vec::new(), clusters: Vec::new() };
    if phi.degree() <= 1 {
        return Ok(locus);
    }
    let (zero, one) = (k.zero(), k.one());

    // the line z = 0: first (1:0:0), then (x:1:0)
    let corner = [one.clone(), zero.clone(), zero.clone()];
    if phi.is_base_point(&corner) {
        locus.points.push(BasePoint { multiplicity: multiplicity(&comps, &corner)?, point: corner });
    }
    let at_inf: Vec<UPoly> = comps.iter().map(|c| restrict_to_infinity(c)).collect();
    if at_inf.iter().all(Vec::is_empty) {
        return Err(Error::PositiveDimensionalLocus);
    }
    let g = gcd_all(k, at_inf);
    let (roots, rest) = field_roots(k, &g);
    for r in roots {
        let p = [r, one.clone(), zero.clone()];
        locus.points.push(BasePoint { multiplicity: multiplicity(&comps, &p)?, point: p });
    }
    if !rest.is_empty() {
        locus.clusters.push(PointCluster {
            location: "line z = 0, points (x:1:0)".into(),
            variable: 'x',
            poly: upoly_string(k, &rest, 'x'),
            degree: rest.len() - 1,
        });
    }

    // affine part z = 1
    let cand = affine_x_candidates(k, &comps)?;
    let (xs, rest) = field_roots(k, &cand);
    for x0 in xs {
        let spec: Vec<UPoly> = comps.iter().map(|c| specialize_x(c, &x0)).collect();
        if spec.iter().all(Vec::is_empty) {
            return Err(Error::PositiveDimensionalLocus);
        }
        let g = gcd_all(k, spec);
        let (ys, rest_y) = field_roots(k, &g);
        for y0 in ys {
            let p = [x0.clone(), y0, one.clone()];
            locus.points.push(BasePoint { multiplicity: multiplicity(&comps, &p)?, point: p });
        }
        if !rest_y.is_empty() {
            locus.clusters.push(PointCluster {
                location: format!("points (x0:y:1) with x0 = {x0}"),
                variable: 'y',
                poly: upoly_string(k, &rest_y, 'y'),
                degree: rest_y.len() - 1,
            });
        }
    }
    if !rest.is_empty() {
        locus.clusters.push(PointCluster {
            location: "affine points (x:y:1), x-coordinates".into(),
            variable: 'x',
            poly: upoly_string(k, &rest, 'x'),
            degree: rest.len() - 1,
        });
    }
    locus.points.sort_by_key(|b| b.point.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(locus)
}
