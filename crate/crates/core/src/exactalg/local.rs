//! Local data at a point: charts and vanishing orders.

use super::field::{Field, Scalar};
use super::poly::{mono_degree, Poly};
use crate::error::{Error, Result};

/// An invertible linear change of coordinates `old = M * new` followed by
/// setting the new coordinate `affine_var` to 1. The chart origin is the
/// point where the two remaining coordinates vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub matrix: [[Scalar; 3]; 3],
    pub affine_var: usize,
}

impl Chart {
    /// No change of coordinates; dehomogenize at `affine_var`.
    pub fn standard(field: &Field, affine_var: usize) -> Self {
        let m = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { field.one() } else { field.zero() }));
        Self { matrix: m, affine_var }
    }

    /// A chart whose origin is the given point of P^2.
    pub fn at_point(field: &Field, point: &[Scalar; 3]) -> Result<Self> {
        let v = (0..3).rev().find(|&i| !point[i].is_zero()).ok_or(Error::InvalidArgument("(0:0:0) is not a point".into()))?;
        let inv = field.inv(&point[v])?;
        let mut chart = Self::standard(field, v);
        for w in 0..3 {
            chart.matrix[w][v] = field.mul(&point[w], &inv);
        }
        Ok(chart)
    }

    fn apply(&self, p: &Poly) -> Poly {
        let k = p.field();
        let lin: Vec<Poly> = (0..3)
            .map(|w| {
                let terms = (0..3).map(|u| {
                    let mut m = [0u32; 3];
                    m[u] = 1;
                    (m, self.matrix[w][u].clone())
                });
                Poly::from_terms(k, terms)
            })
            .collect();
        p.substitute([&lin[0], &lin[1], &lin[2]])
    }
}

/// Order of vanishing of `p` at the chart origin.
pub fn vanishing_order(p: &Poly, chart: &Chart) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = chart.apply(p);
    let a = chart.affine_var;
    let mut min = None;
    for (m, _) in dehomogenized_terms(&q, a) {
        let d = mono_degree(&m);
        min = Some(min.map_or(d, |x: u32| x.min(d)));
    }
    min.ok_or(Error::ZeroPolynomial)
}

fn dehomogenized_terms(q: &Poly, a: usize) -> Vec<([u32; 3], Scalar)> {
    let terms = q.terms().iter().map(|(mono, c)| {
        let mut mono = *mono;
        mono[a] = 0;
        (mono, c.clone())
    });
    Poly::from_terms(q.field(), terms).terms().to_vec()
}

/// Vanishing order of a form at a point of P^2.
pub fn vanishing_order_at(p: &Poly, point: &[Scalar; 3]) -> Result<u32> {
    vanishing_order(p, &Chart::at_point(p.field(), point)?)
}
