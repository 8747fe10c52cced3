//! Exact arithmetic: scalars, torus constants, sparse polynomials in three
//! variables and their gcds.

pub mod field;
pub mod gcd;
pub mod linalg;
pub mod local;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod roots;
pub mod torus;
pub mod upoly;
mod zgcd;

pub use field::{scalar_arith, Field, MinPoly, Scalar, ScalarOp};
pub use gcd::{gcd2, gcd3};
pub use local::{vanishing_order, vanishing_order_at, Chart};
pub use parse::{parse_poly, parse_ratfn, parse_scalar};
pub use poly::{poly_arith, Monomial, Poly, PolyOp};
pub use ratfn::RatFn;
pub use torus::{Order, TorusConstant, TorusGroup};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer gcd; the larger operand is reduced by one division first.
pub(crate) fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    small.gcd(&(big % small))
}

/// Gcd of all values (zero for none), stopping early at 1.
pub(crate) fn int_content<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = int_gcd(&g, v);
        if g.is_one() {
            break;
        }
    }
    g
}
