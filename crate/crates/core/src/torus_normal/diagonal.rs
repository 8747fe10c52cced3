//! Diagonal maps (x, y) ↦ (αx, βy) with α, β in a declared group Z/N + Z^r,
//! their kernel lattices and conjugacy under monomial maps.

use num_integer::Integer;
use serde::Serialize;

use super::intlin::{lattice_hnf, smith_normal_form, solve_integer, IMat};
use crate::error::{Error, Result};
use crate::exactalg::{Order, TorusConstant, TorusGroup};

pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY2: Mat2 = [[1, 0], [0, 1]];

/// Default bound on the free coset parameters searched by [`diag_conjugacy`].
pub const DEFAULT_SEARCH_BOUND: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalAuto {
    pub alpha: TorusConstant,
    pub beta: TorusConstant,
}

/// (x, y) ↦ (αx, βy + 1). Only β = 1 is in normal form; see
/// [`AlmostDiagonalAuto::normalized`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostDiagonalAuto {
    pub alpha: TorusConstant,
    pub beta: TorusConstant,
}

impl AlmostDiagonalAuto {
    pub fn new(g: &TorusGroup, alpha: TorusConstant) -> Self {
        Self { alpha, beta: g.identity() }
    }

    /// (αx, y + 1). With β ≠ 1 the map is conjugate to the diagonal map
    /// (αx, βy) by a translation in y and has no such form.
    pub fn normalized(&self) -> Result<TorusConstant> {
        if self.beta.is_identity() {
            Ok(self.alpha.clone())
        } else {
            Err(Error::Shape(format!("β = {} ≠ 1: conjugate to the diagonal map (αx, βy)", self.beta)))
        }
    }
}

impl DiagonalAuto {
    pub fn new(g: &TorusGroup, alpha: TorusConstant, beta: TorusConstant) -> Result<Self> {
        g.check(&alpha)?;
        g.check(&beta)?;
        Ok(Self { alpha, beta })
    }

    pub fn pow(&self, g: &TorusGroup, k: i64) -> Result<Self> {
        Ok(Self { alpha: g.pow(&self.alpha, k)?, beta: g.pow(&self.beta, k)? })
    }

    pub fn order(&self, g: &TorusGroup) -> Result<Order> {
        Ok(match (g.order(&self.alpha)?, g.order(&self.beta)?) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a.lcm(&b)),
            _ => Order::Infinite,
        })
    }
}

/// {(i, j) : α^i β^j = 1} with its Hermite basis and Smith profile
/// (k₁, k₁k₂): the lattice is generated by k₁e₁ and k₁k₂e₂ after a change
/// of basis. A zero entry means that direction is missing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelLattice {
    pub generators: Vec<[i64; 2]>,
    pub profile: (i64, i64),
}

impl KernelLattice {
    pub fn from_generators(gens: &[[i64; 2]]) -> Result<Self> {
        let generators = lattice_hnf(gens)?;
        let profile = match generators.len() {
            0 => (0, 0),
            _ => {
                let m: IMat = generators.iter().map(|g| g.to_vec()).collect();
                let d = smith_normal_form(&m)?.diagonal();
                (d[0], d.get(1).copied().unwrap_or(0))
            }
        };
        Ok(Self { generators, profile })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn transform(&self, m: &Mat2) -> Result<Self> {
        let gens: Vec<[i64; 2]> = self.generators.iter().map(|g| apply2(m, g)).collect();
        Self::from_generators(&gens)
    }
}

fn apply2(m: &Mat2, v: &[i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

pub fn det2(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// ᵗM⁻¹ for unimodular M.
pub fn transpose_inverse(m: &Mat2) -> Result<Mat2> {
    let e = det2(m);
    if e.abs() != 1 {
        return Err(Error::NotUnimodular(e));
    }
    Ok([[e * m[1][1], -e * m[1][0]], [-e * m[0][1], e * m[0][0]]])
}

/// Rows: r free-part equations and the torsion congruence with an extra
/// unknown for the modulus. Unknowns are (i, j, t).
fn exponent_system(g: &TorusGroup, alpha: &TorusConstant, beta: &TorusConstant) -> IMat {
    let n = g.torsion() as i64;
    let mut rows: IMat = (0..g.free_rank()).map(|l| vec![alpha.free_exponents()[l], beta.free_exponents()[l], 0]).collect();
    rows.push(vec![alpha.torsion_exponent(), beta.torsion_exponent(), n]);
    rows
}

fn target(g: &TorusGroup, c: &TorusConstant) -> Vec<i64> {
    let mut v: Vec<i64> = c.free_exponents().to_vec();
    debug_assert_eq!(v.len(), g.free_rank());
    v.push(c.torsion_exponent());
    v
}

/// All (i, j) with α^i β^j = c: a particular solution and the kernel lattice
/// directions, or `None`.
fn exponent_coset(g: &TorusGroup, psi: &DiagonalAuto, c: &TorusConstant) -> Result<Option<([i64; 2], Vec<[i64; 2]>)>> {
    g.check(c)?;
    let a = exponent_system(g, &psi.alpha, &psi.beta);
    Ok(solve_integer(&a, &target(g, c))?.map(|(x, ker)| {
        let dirs: Vec<[i64; 2]> = ker.iter().map(|k| [k[0], k[1]]).collect();
        ([x[0], x[1]], dirs)
    }))
}

pub fn kernel_lattice(g: &TorusGroup, psi: &DiagonalAuto) -> Result<KernelLattice> {
    g.check(&psi.alpha)?;
    g.check(&psi.beta)?;
    let (_, dirs) = exponent_coset(g, psi, &g.identity())?.expect("the identity has exponent (0, 0)");
    KernelLattice::from_generators(&dirs)
}

/// M(ψ) = (α^a β^b, α^c β^d), the conjugate of ψ by the monomial map
/// (x^a y^b, x^c y^d). Checks that the kernel moves by ᵗM⁻¹.
pub fn monomial_conjugate(g: &TorusGroup, m: &Mat2, psi: &DiagonalAuto) -> Result<DiagonalAuto> {
    let tinv = transpose_inverse(m)?;
    let pw = |a: i64, b: i64| -> Result<TorusConstant> { g.mul(&g.pow(&psi.alpha, a)?, &g.pow(&psi.beta, b)?) };
    let out = DiagonalAuto { alpha: pw(m[0][0], m[0][1])?, beta: pw(m[1][0], m[1][1])? };
    let expected = kernel_lattice(g, psi)?.transform(&tinv)?;
    if kernel_lattice(g, &out)? != expected {
        return Err(Error::Inconsistent("kernel did not transform by the inverse transpose".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedDiagonal {
    pub m: Mat2,
    pub psi: DiagonalAuto,
    /// Kernel of the result is generated by (k, 0).
    pub k: i64,
}

/// M ∈ GL(2, Z) such that the kernel of M(ψ) is generated by (k, 0).
pub fn normalize_diagonal(g: &TorusGroup, psi: &DiagonalAuto) -> Result<NormalizedDiagonal> {
    if let Order::Finite(_) = psi.order(g)? {
        return Err(Error::FiniteOrder);
    }
    let ker = kernel_lattice(g, psi)?;
    let (m, k) = match ker.generators.as_slice() {
        [] => (IDENTITY2, 0),
        [v] => {
            let k = v[0].gcd(&v[1]);
            let (p, q) = (v[0] / k, v[1] / k);
            // first row (p, q), completed to det 1: p s - q r = 1
            let eg = p.extended_gcd(&q);
            debug_assert_eq!(eg.gcd, 1);
            ([[p, q], [-eg.y, eg.x]], k)
        }
        _ => unreachable!("infinite order leaves a kernel of rank <= 1"),
    };
    let out = monomial_conjugate(g, &m, psi)?;
    debug_assert_eq!(kernel_lattice(g, &out)?.generators, if k == 0 { vec![] } else { vec![[k, 0]] });
    Ok(NormalizedDiagonal { m, psi: out, k })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Conjugacy {
    Conjugate { witness: Option<Mat2> },
    NotConjugate { reason: String },
    Undecided { bound: u64 },
}

/// s e + t f = want, if solvable.
fn solve_linear2(e: i64, f: i64, want: i64) -> Option<(i64, i64)> {
    if e == 0 && f == 0 {
        return (want == 0).then_some((0, 0));
    }
    let eg = e.extended_gcd(&f);
    if want % eg.gcd != 0 {
        return None;
    }
    let s = want / eg.gcd;
    Some((eg.x * s, eg.y * s))
}

fn det_of(ab: [i64; 2], cd: [i64; 2]) -> i64 {
    ab[0] * cd[1] - ab[1] * cd[0]
}

fn add_multiple(p: [i64; 2], s: i64, v: [i64; 2]) -> [i64; 2] {
    [p[0] + s * v[0], p[1] + s * v[1]]
}

/// Looks for the remaining row (c, d) ∈ p2 + lattice with det ±1 against a
/// fixed (a, b).
fn complete_row(ab: [i64; 2], p2: [i64; 2], dirs: &[[i64; 2]]) -> Option<[i64; 2]> {
    let d0 = det_of(ab, p2);
    let es: Vec<i64> = dirs.iter().map(|g| det_of(ab, *g)).collect();
    for want in [1, -1] {
        match es.as_slice() {
            [] if d0 == want => return Some(p2),
            [e] => {
                if let Some((t, _)) = solve_linear2(*e, 0, want - d0) {
                    return Some(add_multiple(p2, t, dirs[0]));
                }
            }
            [e, f] => {
                if let Some((t1, t2)) = solve_linear2(*e, *f, want - d0) {
                    return Some(add_multiple(add_multiple(p2, t1, dirs[0]), t2, dirs[1]));
                }
            }
            _ => {}
        }
    }
    None
}

/// Is ψ' = M(ψ) for some M ∈ GL(2, Z)? Each row of M ranges over a coset of
/// the kernel of ψ. With a kernel of rank <= 1 the determinant condition is
/// linear in the coset parameters and decided exactly; with rank 2 the first
/// row is searched with parameters bounded by `bound`.
pub fn diag_conjugacy(g: &TorusGroup, psi: &DiagonalAuto, psi2: &DiagonalAuto, bound: u64) -> Result<Conjugacy> {
    for c in [&psi.alpha, &psi.beta, &psi2.alpha, &psi2.beta] {
        g.check(c)?;
    }
    let Some((p1, dirs)) = exponent_coset(g, psi, &psi2.alpha)? else {
        return Ok(Conjugacy::NotConjugate { reason: format!("no (a, b) with α^a β^b = {}", psi2.alpha) });
    };
    let Some((p2, _)) = exponent_coset(g, psi, &psi2.beta)? else {
        return Ok(Conjugacy::NotConjugate { reason: format!("no (c, d) with α^c β^d = {}", psi2.beta) });
    };
    let dirs = lattice_hnf(&dirs)?;
    let found = |ab: [i64; 2]| complete_row(ab, p2, &dirs).map(|cd| Conjugacy::Conjugate { witness: Some([ab, cd]) });
    match dirs.len() {
        0 | 1 => {
            if let Some(c) = found(p1) {
                return Ok(c);
            }
            if let [g1] = dirs.as_slice() {
                // det is linear in both coset parameters: D0 + s e + t f
                let e = det_of(*g1, p2);
                let f = det_of(p1, *g1);
                for want in [1, -1] {
                    if let Some((s, _)) = solve_linear2(e, f, want - det_of(p1, p2)) {
                        // fix s, then the second row is found exactly
                        let ab = add_multiple(p1, s, *g1);
                        if let Some(c) = found(ab) {
                            return Ok(c);
                        }
                    }
                }
            }
            Ok(Conjugacy::NotConjugate { reason: "no exponent matrix in the solution coset has determinant ±1".into() })
        }
        _ => {
            let b = bound as i64;
            for s1 in -b..=b {
                for s2 in -b..=b {
                    let ab = add_multiple(add_multiple(p1, s1, dirs[0]), s2, dirs[1]);
                    if let Some(c) = found(ab) {
                        return Ok(c);
                    }
                }
            }
            Ok(Conjugacy::Undecided { bound })
        }
    }
}

/// (αx, y+1) and (γx, y+1) are conjugate iff α = γ^{±1}.
pub fn almost_diag_conjugacy(g: &TorusGroup, alpha: &TorusConstant, gamma: &TorusConstant) -> Result<bool> {
    g.check(alpha)?;
    g.check(gamma)?;
    Ok(alpha == gamma || *alpha == g.inv(gamma)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EllipticData {
    Diagonal(DiagonalAuto),
    AlmostDiagonal(AlmostDiagonalAuto),
}

/// Whether φ^m and φ^n can be conjugate, for |m| ≠ |n| and mn ≠ 0.
pub fn iterate_conjugacy_constraints(g: &TorusGroup, phi: &EllipticData, m: i64, n: i64, bound: u64) -> Result<Conjugacy> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroExponent);
    }
    if m.abs() == n.abs() {
        return Err(Error::EqualAbsoluteExponents);
    }
    match phi {
        EllipticData::Diagonal(psi) => diag_conjugacy(g, &psi.pow(g, m)?, &psi.pow(g, n)?, bound),
        EllipticData::AlmostDiagonal(a) => {
            // φ^m = (α^m x, y + m) ~ (α^m x, y + 1)
            let alpha = a.normalized()?;
            let (am, an) = (g.pow(&alpha, m)?, g.pow(&alpha, n)?);
            Ok(if almost_diag_conjugacy(g, &am, &an)? {
                Conjugacy::Conjugate { witness: None }
            } else {
                let reason = match g.order(&alpha)? {
                    Order::Infinite => "α has infinite order".to_string(),
                    Order::Finite(o) => format!("ord(α) = {o} divides neither m + n = {} nor m - n = {}", m + n, m - n),
                };
                Conjugacy::NotConjugate { reason }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g52() -> TorusGroup {
        TorusGroup::new(5, 2).unwrap()
    }

    fn c(g: &TorusGroup, t: i64, f: &[i64]) -> TorusConstant {
        g.element(t, f.to_vec()).unwrap()
    }

    fn diag(g: &TorusGroup, a: (i64, &[i64]), b: (i64, &[i64])) -> DiagonalAuto {
        DiagonalAuto::new(g, c(g, a.0, a.1), c(g, b.0, b.1)).unwrap()
    }

    #[test]
    fn kernels() {
        let g = g52();
        let zeta_g1 = diag(&g, (1, &[0, 0]), (0, &[1, 0]));
        assert_eq!(kernel_lattice(&g, &zeta_g1).unwrap().generators, vec![[5, 0]]);
        assert_eq!(kernel_lattice(&g, &zeta_g1).unwrap().profile, (5, 0));
        let g1g1 = diag(&g, (0, &[1, 0]), (0, &[1, 0]));
        assert_eq!(kernel_lattice(&g, &g1g1).unwrap().generators, vec![[1, -1]]);
        let ones = diag(&g, (0, &[0, 0]), (0, &[0, 0]));
        let k = kernel_lattice(&g, &ones).unwrap();
        assert_eq!(k.generators, vec![[1, 0], [0, 1]]);
        assert_eq!(k.profile, (1, 1));
        let free = diag(&g, (0, &[1, 0]), (0, &[0, 1]));
        assert_eq!(kernel_lattice(&g, &free).unwrap().rank(), 0);
    }

    #[test]
    fn swap_conjugate() {
        let g = g52();
        let psi = diag(&g, (1, &[0, 0]), (0, &[1, 0]));
        let out = monomial_conjugate(&g, &[[0, 1], [1, 0]], &psi).unwrap();
        assert_eq!(out, diag(&g, (0, &[1, 0]), (1, &[0, 0])));
        assert_eq!(kernel_lattice(&g, &out).unwrap().generators, vec![[0, 5]]);
        assert_eq!(monomial_conjugate(&g, &IDENTITY2, &psi).unwrap(), psi);
        assert_eq!(monomial_conjugate(&g, &[[2, 0], [0, 1]], &psi), Err(Error::NotUnimodular(2)));
    }

    #[test]
    fn normalization() {
        let g = g52();
        let n = normalize_diagonal(&g, &diag(&g, (1, &[0, 0]), (0, &[1, 0]))).unwrap();
        assert_eq!((n.m, n.k), (IDENTITY2, 5));
        let n = normalize_diagonal(&g, &diag(&g, (0, &[1, 0]), (0, &[-1, 0]))).unwrap();
        assert_eq!(n.k, 1);
        assert_eq!(kernel_lattice(&g, &n.psi).unwrap().generators, vec![[1, 0]]);
        let n = normalize_diagonal(&g, &diag(&g, (0, &[1, 0]), (0, &[0, 1]))).unwrap();
        assert_eq!(n.k, 0);
        assert_eq!(normalize_diagonal(&g, &diag(&g, (1, &[0, 0]), (2, &[0, 0]))), Err(Error::FiniteOrder));
    }

    #[test]
    fn conjugacy_examples() {
        let g = g52();
        let psi = diag(&g, (0, &[1, 0]), (0, &[0, 1]));
        assert_eq!(diag_conjugacy(&g, &psi, &psi, 50).unwrap(), Conjugacy::Conjugate { witness: Some(IDENTITY2) });
        let psi2 = diag(&g, (0, &[1, 1]), (0, &[0, 1]));
        assert_eq!(diag_conjugacy(&g, &psi, &psi2, 50).unwrap(), Conjugacy::Conjugate { witness: Some([[1, 1], [0, 1]]) });
        // (g1, g1) and (g1, g1²): M = [[1, 0], [1, 1]] sends one to the other
        let a = diag(&g, (0, &[1, 0]), (0, &[1, 0]));
        let b = diag(&g, (0, &[1, 0]), (0, &[2, 0]));
        match diag_conjugacy(&g, &a, &b, 50).unwrap() {
            Conjugacy::Conjugate { witness: Some(m) } => assert_eq!(monomial_conjugate(&g, &m, &a).unwrap(), b),
            other => panic!("{other:?}"),
        }
        // (g1, g2) vs (g1, g2²) has no solution
        let sq = diag(&g, (0, &[1, 0]), (0, &[0, 2]));
        assert!(matches!(diag_conjugacy(&g, &psi, &sq, 50).unwrap(), Conjugacy::NotConjugate { .. }));
    }

    #[test]
    fn almost_diagonal() {
        let g = g52();
        assert!(almost_diag_conjugacy(&g, &c(&g, 1, &[0, 0]), &c(&g, 4, &[0, 0])).unwrap());
        assert!(!almost_diag_conjugacy(&g, &c(&g, 1, &[0, 0]), &c(&g, 2, &[0, 0])).unwrap());
        assert!(almost_diag_conjugacy(&g, &c(&g, 0, &[1, 0]), &c(&g, 0, &[1, 0])).unwrap());
    }

    #[test]
    fn iterates() {
        let g = g52();
        let zeta = AlmostDiagonalAuto::new(&g, c(&g, 1, &[0, 0]));
        let v = iterate_conjugacy_constraints(&g, &EllipticData::AlmostDiagonal(zeta), 2, 3, 50).unwrap();
        assert_eq!(v, Conjugacy::Conjugate { witness: None });
        let g1 = AlmostDiagonalAuto::new(&g, c(&g, 0, &[1, 0]));
        let v = iterate_conjugacy_constraints(&g, &EllipticData::AlmostDiagonal(g1), 2, 3, 50).unwrap();
        assert!(matches!(v, Conjugacy::NotConjugate { .. }));
        let d = EllipticData::Diagonal(diag(&g, (1, &[0, 0]), (0, &[1, 0])));
        assert!(matches!(iterate_conjugacy_constraints(&g, &d, 2, 3, 50).unwrap(), Conjugacy::NotConjugate { .. }));
        assert_eq!(iterate_conjugacy_constraints(&g, &d, 2, -2, 50), Err(Error::EqualAbsoluteExponents));
        assert_eq!(iterate_conjugacy_constraints(&g, &d, 0, 2, 50), Err(Error::ZeroExponent));
    }

    #[test]
    fn finite_order_search() {
        let g = TorusGroup::new(6, 0).unwrap();
        let a = diag(&g, (1, &[]), (2, &[]));
        let b = diag(&g, (2, &[]), (1, &[]));
        match diag_conjugacy(&g, &a, &b, 10).unwrap() {
            Conjugacy::Conjugate { witness: Some(m) } => {
                assert_eq!(det2(&m).abs(), 1);
                assert_eq!(monomial_conjugate(&g, &m, &a).unwrap(), b);
            }
            other => panic!("{other:?}"),
        }
    }

    fn unimodular() -> impl Strategy<Value = Mat2> {
        proptest::collection::vec(0usize..4, 1..6).prop_map(|ops| {
            let gens: [Mat2; 4] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]], [[1, -1], [0, 1]]];
            ops.iter().fold(IDENTITY2, |m, &i| {
                let s = gens[i];
                [
                    [m[0][0] * s[0][0] + m[0][1] * s[1][0], m[0][0] * s[0][1] + m[0][1] * s[1][1]],
                    [m[1][0] * s[0][0] + m[1][1] * s[1][0], m[1][0] * s[0][1] + m[1][1] * s[1][1]],
                ]
            })
        })
    }

    fn diagonal() -> impl Strategy<Value = DiagonalAuto> {
        (0i64..5, -2i64..=2, -2i64..=2, 0i64..5, -2i64..=2, -2i64..=2).prop_map(|(a0, a1, a2, b0, b1, b2)| {
            let g = g52();
            diag(&g, (a0, &[a1, a2]), (b0, &[b1, b2]))
        })
    }

    proptest! {
        #[test]
        fn kernel_transform(m in unimodular(), psi in diagonal()) {
            let g = g52();
            let out = monomial_conjugate(&g, &m, &psi).unwrap();
            let lhs = kernel_lattice(&g, &out).unwrap();
            let rhs = kernel_lattice(&g, &psi).unwrap().transform(&transpose_inverse(&m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn planted_pairs(m in unimodular(), psi in diagonal()) {
            let g = g52();
            let target = monomial_conjugate(&g, &m, &psi).unwrap();
            match diag_conjugacy(&g, &psi, &target, DEFAULT_SEARCH_BOUND).unwrap() {
                Conjugacy::Conjugate { witness: Some(w) } => {
                    prop_assert_eq!(det2(&w).abs(), 1);
                    prop_assert_eq!(monomial_conjugate(&g, &w, &psi).unwrap(), target);
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
