use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::exactalg::{Poly, Scalar};

fn q() -> Field {
    Field::Rational
}

fn m(a: &str, b: &str, c: &str) -> RationalMapP2 {
    make_map(&q(), [a, b, c]).unwrap()
}

fn sigma() -> RationalMapP2 {
    m("y*z", "x*z", "x*y")
}

fn f23() -> RationalMapP2 {
    m("(2*x+y)*z", "3*y*(x+z)", "z*(x+z)")
}

fn linear(entries: [[i64; 3]; 3]) -> RationalMapP2 {
    let k = q();
    let mat = entries.map(|row| row.map(|e| k.from_int(e)));
    RationalMapP2::linear(&k, &mat).unwrap()
}

fn det3(a: [[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Projective equality of two points by cross products.
fn same_point(a: &[Scalar; 3], b: &[Scalar; 3]) -> bool {
    let k = q();
    [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| k.mul(&a[i], &b[j]) == k.mul(&a[j], &b[i]))
}

#[test]
fn identity_and_degrees() {
    let id = m("x", "y", "z");
    assert_eq!(id.degree(), 1);
    assert!(id.is_identity());
    assert_eq!(f23().degree(), 2);
}

#[test]
fn affine_translation_is_linear() {
    let t = make_affine_map(&q(), "x", "y+1").unwrap();
    assert_eq!(t.degree(), 1);
    assert!(t.equals(&m("x", "y+z", "z")));
}

#[test]
fn construction_errors() {
    let k = q();
    let z = Poly::zero(&k);
    assert_eq!(RationalMapP2::new([z.clone(), z.clone(), z]), Err(Error::AllZero));
    assert_eq!(make_map(&k, ["x", "y^2", "z"]), Err(Error::DegreeMismatch(1, 2)));
}

#[test]
fn involution_cancels() {
    let s2 = sigma().compose(&sigma()).unwrap();
    assert!(s2.is_identity());
    assert_eq!(s2.degree(), 1);
}

#[test]
fn del_pezzo_map_has_order_six() {
    let h = m("2*x*z", "3*x*y", "y*z");
    let powers: Vec<_> = (1..=6).map(|n| h.power(n).unwrap()).collect();
    assert!(powers[5].is_identity());
    assert!(!powers[1].is_identity());
    assert!(!powers[2].is_identity());
}

#[test]
fn projective_equality() {
    assert!(m("x", "y", "z").equals(&m("2*x", "2*y", "2*z")));
    assert!(!m("x", "y", "z").equals(&m("y", "x", "z")));
}

#[test]
fn degenerate_composition_is_rejected() {
    // the constant-ish map onto a base point of sigma: image is the line x = y = 0
    let c = m("0", "0", "z");
    assert_eq!(sigma().compose(&c), Err(Error::DegenerateComposition));
}

#[test]
fn generic_quadratic_iterates_double() {
    let a = linear([[1, 2, -1], [3, -1, 2], [-2, 1, 1]]);
    let phi = sigma().compose(&a).unwrap();
    assert_eq!(phi.iterate_degrees(5).unwrap(), vec![2, 4, 8, 16, 32]);
    // pointwise oracle for the second and third iterate
    let k = q();
    let its = phi.iterates(3, DEFAULT_BIT_CAP).unwrap();
    for pt in [[3, 5, 7], [-2, 11, 4], [1, -6, 13]] {
        let p = pt.map(|v| k.from_int(v));
        let once = phi.apply(&p).unwrap();
        let twice = phi.apply(&once).unwrap();
        let thrice = phi.apply(&twice).unwrap();
        assert!(same_point(&its[1].apply(&p).unwrap(), &twice));
        assert!(same_point(&its[2].apply(&p).unwrap(), &thrice));
    }
}

#[test]
fn jonquieres_degrees_stay_near_half_k() {
    let d = f23().iterate_degrees(20).unwrap();
    let worst = d.iter().enumerate().map(|(i, &dk)| (2.0 * dk as f64 - (i + 1) as f64).abs() / 2.0).fold(0.0, f64::max);
    assert!(worst <= 2.0, "{d:?}");
}

#[test]
fn bit_cap_aborts() {
    let a = linear([[1, 2, -1], [3, -1, 2], [-2, 1, 1]]);
    let phi = sigma().compose(&a).unwrap();
    assert!(matches!(phi.iterate_degrees_capped(6, 8), Err(Error::CoefficientCap { .. })));
}

#[test]
fn inverses() {
    assert!(verify_inverse(&sigma(), &sigma()));
    assert!(verify_inverse(&m("3*x", "3*y", "3*z"), &m("x", "y", "z")));
    let g = solve_inverse(&f23()).unwrap();
    assert!(verify_inverse(&f23(), &g));
    assert_eq!(g.degree(), 2);
}

#[test]
fn jordan_block_conjugation() {
    let psi = m("x*z - 1/2*y*(y-z)", "y*z", "z^2");
    // affine (x - y(y-1)/2, y) is inverted by (x + y(y-1)/2, y)
    let hand = m("x*z + 1/2*y*(y-z)", "y*z", "z^2");
    let solved = solve_inverse(&psi).unwrap();
    assert!(solved.equals(&hand));
    let phi = m("x+y", "y+z", "z");
    let c = conjugate(&psi, &hand, &phi).unwrap();
    assert!(c.equals(&m("x", "y+z", "z")));
    assert!(conjugate(&psi, &psi, &phi).is_err());
}

#[test]
fn conjugation_by_identity() {
    let id = m("x", "y", "z");
    assert!(conjugate(&id, &id, &f23()).unwrap().equals(&f23()));
}

#[test]
fn commutation() {
    let k = q();
    let a = |f1: &str, f2: &str| make_affine_map(&k, f1, f2).unwrap();
    assert!(commutes(&a("2*x", "3*y"), &a("5*x", "7*y")).unwrap());
    assert!(commutes(&a("-x", "y+1"), &a("x", "y+x^2")).unwrap());
    assert!(!commutes(&a("2*x", "y+1"), &a("x", "x*y")).unwrap());
}

#[test]
fn affine_round_trip() {
    let k = q();
    let a = AffineBirMap::parse(&k, "x/(x+y)", "y/(x+y)^2").unwrap();
    let back = AffineBirMap::from_p2(&a.to_p2().unwrap()).unwrap();
    assert!(back.equals(&a));
}

#[test]
fn map_file() {
    let src = "# f_{2,3}\nmap P2 [(2*x+y)*z, 3*y*(x+z), z*(x+z)]\npencil: (1:0:0)\n";
    let f = MapFile::parse(src, None).unwrap();
    assert!(f.map.equals(&f23()));
    assert!(f.pencil.is_some());
    let g = MapFile::parse("field: t^2+1\nmap A2 [t*x, y + 1]", None).unwrap();
    assert_eq!(g.map.degree(), 1);
    assert!(MapFile::parse("map Q3 [x]", None).is_err());
    assert!(MapFile::parse("pencil: (1:0:0)", None).is_err());
}

fn arb_unimodular() -> impl Strategy<Value = [[i64; 3]; 3]> {
    proptest::array::uniform3(proptest::array::uniform3(-3i64..4)).prop_filter("invertible", |a| det3(*a) != 0)
}

fn arb_quadratic() -> impl Strategy<Value = RationalMapP2> {
    (arb_unimodular(), arb_unimodular()).prop_map(|(a, b)| linear(a).compose(&sigma()).unwrap().compose(&linear(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn submultiplicative(f in arb_quadratic(), g in arb_quadratic()) {
        let h = f.compose(&g).unwrap();
        prop_assert!(h.degree() <= f.degree() * g.degree());
    }

    #[test]
    fn associative(f in arb_quadratic(), g in arb_quadratic(), h in arb_quadratic()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.equals(&right));
    }

    #[test]
    fn inverse_has_same_degree(f in arb_quadratic()) {
        let g = solve_inverse(&f).unwrap();
        prop_assert!(verify_inverse(&f, &g));
        prop_assert_eq!(g.degree(), f.degree());
    }

    #[test]
    fn affine_projective_round_trip(f in arb_quadratic()) {
        if let Ok(a) = AffineBirMap::from_p2(&f) {
            prop_assert!(a.to_p2().unwrap().equals(&f));
        }
    }
}
