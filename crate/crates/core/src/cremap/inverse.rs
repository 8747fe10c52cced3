//! Inverses of small-degree maps by linear algebra.
//!
//! A plane Cremona map and its inverse have the same degree d. Writing the
//! unknown inverse ψ with undetermined coefficients, ψ ∘ φ ∝ (x, y, z) means
//! x_j ψ_i(φ) − x_i ψ_j(φ) = 0 for all i < j, which is linear in the
//! unknowns once the monomials of degree d are evaluated on φ.

use std::collections::HashMap;

use super::map::{verify_inverse, RationalMapP2};
use crate::error::{Error, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::poly::{substitute_all, Monomial, Poly};
use crate::exactalg::Scalar;

pub const MAX_INVERSE_DEGREE: u32 = 3;

fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Computes and verifies the inverse of a map of degree at most 3.
pub fn solve_inverse(phi: &RationalMapP2) -> Result<RationalMapP2> {
    let d = phi.degree();
    if d > MAX_INVERSE_DEGREE {
        return Err(Error::NoInverse(format!("degree {d} exceeds the helper's limit {MAX_INVERSE_DEGREE}")));
    }
    let k = phi.field();
    let monos = monomials(d);
    let n = monos.len();
    let mono_polys: Vec<Poly> = monos.iter().map(|m| Poly::monomial(k, *m, k.one())).collect();
    let [a, b, c] = phi.components();
    let images = substitute_all(&mono_polys, [a, b, c]);
    let vars: Vec<Poly> = (0..3).map(|v| Poly::var(k, v)).collect();

    // column index: component i, monomial m -> i * n + m
    let mut rows: HashMap<(usize, Monomial), Vec<Scalar>> = HashMap::new();
    for (pair, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        for (mi, img) in images.iter().enumerate() {
            for (sign, comp, var) in [(1i64, i, j), (-1, j, i)] {
                for (mono, coef) in img.mul(&vars[var]).terms() {
                    let row = rows.entry((pair, *mono)).or_insert_with(|| vec![k.zero(); 3 * n]);
                    let col = comp * n + mi;
                    let v = if sign > 0 { coef.clone() } else { k.neg(coef) };
                    row[col] = k.add(&row[col], &v);
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let matrix: Vec<Vec<Scalar>> = keys.iter().map(|key| rows[key].clone()).collect();
    let ns = nullspace(k, &matrix, 3 * n);
    if ns.len() != 1 {
        return Err(Error::NoInverse(format!("solution space has dimension {}", ns.len())));
    }
    let v = &ns[0];
    let comps: [Poly; 3] = std::array::from_fn(|i| {
        Poly::from_terms(k, monos.iter().enumerate().map(|(mi, m)| (*m, v[i * n + mi].clone())))
    });
    let psi = RationalMapP2::new(comps)?;
    if !verify_inverse(phi, &psi) {
        return Err(Error::NoInverse("candidate failed verification".into()));
    }
    Ok(psi.normalized())
}
