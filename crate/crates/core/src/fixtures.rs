//! Named end-to-end checks with the exact values they compare against.

use num_rational::BigRational;
use serde::Serialize;

use crate::cremap::{conjugate, make_map, solve_inverse, AffineBirMap, RationalMapP2};
use crate::dynamics::{classify_growth, mu_estimate, proper_base_points, GrowthClass};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Scalar};
use crate::groups::gl2q::qmat;
use crate::groups::{bs_check, Character, Gl2qEmbedding, Verdict};
use crate::halphen::example_9_4_pipeline;

pub const FIXTURE_NAMES: [&str; 7] = [
    "bs-1-5",
    "delpezzo6-order6",
    "f-alpha-beta",
    "gl2q-k1",
    "halphen-9-4",
    "jordan-conjugation",
    "sigma-involution",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub pass: bool,
    pub comparisons: Vec<Comparison>,
}

struct Recorder(Vec<Comparison>);

impl Recorder {
    fn eq<T: ToString + PartialEq>(&mut self, quantity: &str, expected: T, actual: T) {
        let pass = expected == actual;
        self.0.push(Comparison { quantity: quantity.into(), expected: expected.to_string(), actual: actual.to_string(), pass });
    }

    fn holds(&mut self, quantity: &str, actual: bool) {
        self.eq(quantity, true, actual);
    }
}

fn q() -> Field {
    Field::Rational
}

fn m(a: &str, b: &str, c: &str) -> Result<RationalMapP2> {
    make_map(&q(), [a, b, c])
}

fn point(v: [i64; 3]) -> [Scalar; 3] {
    v.map(|x| q().from_int(x))
}

pub fn f23() -> Result<RationalMapP2> {
    m("(2*x+y)*z", "3*y*(x+z)", "z*(x+z)")
}

fn sigma_involution(r: &mut Recorder) -> Result<()> {
    let s = m("y*z", "x*z", "x*y")?;
    let s2 = s.compose(&s)?;
    r.holds("sigma^2 = id", s2.is_identity());
    r.eq("deg sigma^2", 1, s2.degree());
    Ok(())
}

fn delpezzo6(r: &mut Recorder) -> Result<()> {
    let h = m("2*x*z", "3*x*y", "y*z")?;
    r.holds("h^6 = id", h.power(6)?.is_identity());
    r.holds("h^2 != id", !h.power(2)?.is_identity());
    r.holds("h^3 != id", !h.power(3)?.is_identity());
    Ok(())
}

fn jordan(r: &mut Recorder) -> Result<()> {
    let psi = m("x*z - 1/2*y*(y-z)", "y*z", "z^2")?;
    let psi_inv = solve_inverse(&psi)?;
    let c = conjugate(&psi, &psi_inv, &m("x+y", "y+z", "z")?)?;
    r.holds("psi (x+y:y+z:z) psi^-1 = (x:y+z:z)", c.equals(&m("x", "y+z", "z")?));
    Ok(())
}

fn f_alpha_beta(r: &mut Recorder) -> Result<()> {
    let f = f23()?;
    let degrees: Vec<u64> = f.iterate_degrees(20)?.into_iter().map(u64::from).collect();
    let worst = degrees.iter().zip(1..).map(|(&d, k)| (2 * d as i64 - k).abs()).max().unwrap_or(0);
    r.holds("max |2 deg f^k - k| <= 4 for k <= 20", worst <= 4);
    let mu = mu_estimate(&f, Some(&point([1, 0, 0])), 20)?;
    r.eq("mu", 1, mu.mu);
    r.eq("class", format!("{:?}", GrowthClass::Jonquieres), format!("{:?}", classify_growth(&degrees)?.class));
    let locus = proper_base_points(&f)?;
    for p in [[1, 0, 0], [0, 1, 0], [-1, 2, 1]] {
        r.holds(&format!("({}:{}:{}) is a base-point", p[0], p[1], p[2]), locus.contains(&point(p)));
    }
    r.eq("number of base-points", 3, locus.proper_count());
    Ok(())
}

fn halphen_9_4(r: &mut Recorder) -> Result<()> {
    let ex = example_9_4_pipeline()?;
    r.eq("orbit sum", "E2 + E3 + E4 + E5 - 2E6 - 2E7".to_string(), ex.orbit_sum.to_string());
    r.eq("orbit sum square", -8, ex.orbit_sum_square);
    r.eq("kappa", BigRational::new(9.into(), 4.into()), ex.kappa);
    r.holds("(alpha T)^4 = T_sum", ex.matrix_identity);
    Ok(())
}

fn bs_1_5(r: &mut Recorder) -> Result<()> {
    let v = bs_check(1, 5)?;
    let ok = matches!(v.verdict, Verdict::KnownEmbedding { relation_verified: true, .. });
    r.holds("BS(1,5): r s r^-1 = s^5", ok);
    r.eq("BS(2,3)", "NoEmbedding".to_string(), format!("{:?}", bs_check(2, 3)?.verdict));
    Ok(())
}

fn gl2q_k1(r: &mut Recorder) -> Result<()> {
    let e = Gl2qEmbedding::new(1, Character::trivial())?;
    let report = e.verify(100, 0)?;
    r.eq("homomorphism failures on 100 pairs", 0, report.homomorphism_failures.len());
    r.holds("(rho(M) rho(t1))^3 = id", report.mt_cubed_identity);
    r.holds("rho(M)^4 = id", report.m_fourth_identity);
    let rm = e.build(&qmat([[0, 1], [-1, 0]]))?;
    r.holds("rho(M) = (-x/y, -1/y)", rm.equals(&AffineBirMap::parse(&q(), "-x/y", "-1/y")?));
    r.holds("even k rejected", matches!(Gl2qEmbedding::new(2, Character::trivial()), Err(Error::EvenK(2))));
    Ok(())
}

pub fn run_fixture(name: &str) -> Result<FixtureResult> {
    let mut r = Recorder(Vec::new());
    match name {
        "sigma-involution" => sigma_involution(&mut r)?,
        "delpezzo6-order6" => delpezzo6(&mut r)?,
        "jordan-conjugation" => jordan(&mut r)?,
        "f-alpha-beta" => f_alpha_beta(&mut r)?,
        "halphen-9-4" => halphen_9_4(&mut r)?,
        "bs-1-5" => bs_1_5(&mut r)?,
        "gl2q-k1" => gl2q_k1(&mut r)?,
        other => {
            return Err(Error::InvalidArgument(format!("unknown fixture '{other}' (known: {})", FIXTURE_NAMES.join(", "))))
        }
    }
    let pass = r.0.iter().all(|c| c.pass);
    Ok(FixtureResult { name: name.into(), pass, comparisons: r.0 })
}

/// Runs every fixture on its own thread; results are ordered by name.
pub fn run_all() -> Vec<(String, Result<FixtureResult>)> {
    std::thread::scope(|s| {
        let handles: Vec<_> = FIXTURE_NAMES.iter().map(|&n| (n, s.spawn(move || run_fixture(n)))).collect();
        handles
            .into_iter()
            .map(|(n, h)| (n.to_string(), h.join().unwrap_or_else(|_| Err(Error::Inconsistent(format!("fixture {n} panicked"))))))
            .collect()
    })
}
