//! Shape of elements commuting with (αx, βy) or (αx, y + 1).

use serde::Serialize;

use crate::cremap::affine::reduce;
use crate::cremap::AffineBirMap;
use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFn, Scalar};

/// An elliptic map over the field of the candidate ψ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EllipticMap {
    /// (αx, βy) in normal form: α^i β^j = 1 only for k | i and j = 0.
    Diagonal { alpha: Scalar, beta: Scalar },
    /// (αx, y + 1)
    Translation { alpha: Scalar },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ShapeVerdict {
    /// ψ = (η(x), y R(x)) or (η(x), y + R(x)).
    InForm { eta: String, r: String },
    NotInForm { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerCheck {
    pub verdict: ShapeVerdict,
    /// Brute-force commutation, computed independently.
    pub commutes: bool,
}

impl EllipticMap {
    pub fn to_affine(&self, psi: &AffineBirMap) -> Result<AffineBirMap> {
        let k = psi.field();
        let (x, y) = (Poly::var(k, 0), Poly::var(k, 1));
        let (alpha, second) = match self {
            EllipticMap::Diagonal { alpha, beta } => (alpha, y.scale(beta)),
            EllipticMap::Translation { alpha } => (alpha, y.add(&Poly::one(k))),
        };
        AffineBirMap::new(RatFn::from_poly(x.scale(alpha)), RatFn::from_poly(second))
    }

    fn alpha(&self) -> &Scalar {
        match self {
            EllipticMap::Diagonal { alpha, .. } | EllipticMap::Translation { alpha } => alpha,
        }
    }
}

fn free_of_y(r: &RatFn) -> bool {
    r.num().degree_in(1) == 0 && r.den().degree_in(1) == 0
}

/// r(αx, y)
fn scale_x(r: &RatFn, alpha: &Scalar) -> Result<RatFn> {
    let k = r.field();
    let (x, y, z) = (Poly::var(k, 0), Poly::var(k, 1), Poly::var(k, 2));
    r.substitute([&x.scale(alpha), &y, &z])
}

fn shape(phi: &EllipticMap, psi: &AffineBirMap) -> Result<ShapeVerdict> {
    let not = |reason: &str| Ok(ShapeVerdict::NotInForm { reason: reason.into() });
    let k = psi.field();
    let alpha = phi.alpha();
    let eta = reduce(psi.first())?;
    if !free_of_y(&eta) {
        return not("first coordinate depends on y");
    }
    if eta.num().total_degree() > 1 || eta.den().total_degree() > 1 {
        return not("first coordinate is not a Möbius function of x");
    }
    let a = RatFn::constant(k, alpha.clone());
    if !scale_x(&eta, alpha)?.same_as(&a.mul(&eta)) {
        return not("η(αx) ≠ αη(x)");
    }
    let y = RatFn::from_poly(Poly::var(k, 1));
    let r = match phi {
        EllipticMap::Diagonal { .. } => reduce(&psi.second().div(&y)?)?,
        EllipticMap::Translation { .. } => reduce(&psi.second().sub(&y))?,
    };
    if !free_of_y(&r) {
        return not(match phi {
            EllipticMap::Diagonal { .. } => "second coordinate is not y·R(x)",
            EllipticMap::Translation { .. } => "second coordinate is not y + R(x)",
        });
    }
    if !scale_x(&r, alpha)?.same_as(&r) {
        return not("R(αx) ≠ R(x)");
    }
    Ok(ShapeVerdict::InForm { eta: eta.to_string(), r: r.to_string() })
}

/// Matches ψ against the centralizer shape of φ and cross-checks the answer
/// with a direct commutation test.
pub fn centralizer_shape_check(phi: &EllipticMap, psi: &AffineBirMap) -> Result<CentralizerCheck> {
    let verdict = shape(phi, psi)?;
    let f = phi.to_affine(psi)?;
    let commutes = f.compose(psi)?.equals(&psi.compose(&f)?);
    let in_form = matches!(verdict, ShapeVerdict::InForm { .. });
    if in_form != commutes {
        return Err(Error::Inconsistent(format!("shape check says {in_form}, commutation says {commutes}")));
    }
    Ok(CentralizerCheck { verdict, commutes })
}
