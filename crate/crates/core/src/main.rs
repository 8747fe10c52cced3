use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use cremona::cremap::mapfile::MapFile;
use cremona::cremap::{solve_inverse, AffineBirMap};
use cremona::dynamics::{classify_growth, mu_estimate, persistence_scan, proper_base_points};
use cremona::exactalg::{Field, TorusGroup};
use cremona::fixtures::{run_all, run_fixture, FIXTURE_NAMES};
use cremona::groups::{bs_check, Character, Gl2qEmbedding};
use cremona::halphen::{
    a_invariant, degree_growth_by_power, degree_growth_closed_form, example_9_4_pipeline, kappa, parity_check,
    HalphenData, PicClass, HALPHEN_RANK,
};
use cremona::report::SCHEMA_VERSION;
use cremona::torus_normal::{diag_conjugacy, kernel_lattice, reduce_triangular, DiagonalAuto, DEFAULT_SEARCH_BOUND};
use cremona::{Error, Result};

/// Exact computations with plane birational maps. Reports are JSON on stdout.
#[derive(Parser)]
#[command(name = "cremona", version)]
struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Minimal polynomial of the coefficient field, e.g. `t^2+t+1`.
    #[arg(long, global = true, value_name = "POLY")]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    #[arg(long, value_name = "FILE")]
    map: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Degrees of the first K iterates.
    Degrees {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Print `k,degree` rows instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Growth class and λ bracket from the first K degrees.
    Classify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 20)]
        k: usize,
    },
    /// Proper base-points with multiplicities.
    Basepoints {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Dynamical number of base-points from the iterate degrees.
    Mu {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Pencil point `(a:b:c)`; overrides the map file.
        #[arg(long)]
        pencil: Option<String>,
    },
    /// Persistent base-points over the horizon K.
    Persistence {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 8)]
        k: usize,
    },
    /// κ for a Halphen translation, or the worked example with --example.
    Kappa {
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Δ as a class, e.g. `E2 - E6`.
        #[arg(long, required_unless_present = "example")]
        delta: Option<String>,
        #[arg(long)]
        example: bool,
    },
    /// Degree growth Λ·T^nΛ, closed form against matrix powers.
    Lattice {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value = "L")]
        lambda: String,
        /// Largest n.
        #[arg(long, default_value_t = 10)]
        k: u32,
    },
    /// Conjugacy of (αx, βy) and (α'x, β'y) by monomial maps.
    ConjDiag {
        /// Torus group, e.g. `N=5, free=2`.
        #[arg(long)]
        torus: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        alpha2: String,
        #[arg(long)]
        beta2: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u64,
    },
    /// Normal form of a triangular map (A2 map file or --f1/--f2).
    Reduce {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["f1", "f2"])]
        map: Option<PathBuf>,
        #[arg(long, requires = "f2")]
        f1: Option<String>,
        #[arg(long, requires = "f1")]
        f2: Option<String>,
    },
    /// Baumslag–Solitar verdict for BS(m, n).
    Bs {
        #[arg(allow_hyphen_values = true)]
        m: i64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// GL(2, Q) representation with odd k and character χ.
    Gl2q {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        /// `p->value` pairs, e.g. `2->4,3->9,-1->-1`.
        #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
        chi: String,
        /// Number of random pairs for the homomorphism check.
        #[arg(long, default_value_t = 100)]
        verify: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Named end-to-end checks.
    Fixtures {
        #[arg(long, conflicts_with = "names")]
        all: bool,
        names: Vec<String>,
        /// List fixture names.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Serialize)]
#[serde(transparent)]
struct Rational(#[serde(with = "cremona::report::rational")] num_rational::BigRational);

struct Outcome {
    report: Value,
    ok: bool,
}

fn out(report: impl Serialize) -> Result<Outcome> {
    Ok(Outcome { report: to_value(report)?, ok: true })
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistent(format!("serialization: {e}")))
}

fn load(path: &PathBuf, field: Option<&Field>) -> Result<MapFile> {
    let src =
        std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    MapFile::parse(&src, field)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    let field = field.as_ref();
    match &cli.command {
        Command::Degrees { map, k, .. } => {
            let f = load(&map.map, field)?;
            out(json!({ "degrees": f.map.iterate_degrees(*k)? }))
        }
        Command::Classify { map, k } => {
            let f = load(&map.map, field)?;
            let d: Vec<u64> = f.map.iterate_degrees(*k)?.into_iter().map(u64::from).collect();
            out(classify_growth(&d)?)
        }
        Command::Basepoints { map } => {
            let f = load(&map.map, field)?;
            let locus = proper_base_points(&f.map)?;
            out(json!({
                "points": locus.points,
                "clusters": locus.clusters,
                "proper_count": locus.proper_count(),
            }))
        }
        Command::Mu { map, k, pencil } => {
            let f = load(&map.map, field)?;
            let p = pencil.as_deref().map(|s| cremona::cremap::mapfile::parse_point(&f.field, s)).transpose()?;
            out(mu_estimate(&f.map, p.as_ref().or(f.pencil.as_ref()), *k)?)
        }
        Command::Persistence { map, k } => {
            let f = load(&map.map, field)?;
            let inv = match &f.inverse {
                Some(g) => g.clone(),
                None => solve_inverse(&f.map)?,
            };
            out(persistence_scan(&f.map, &inv, *k)?)
        }
        Command::Kappa { m, delta, example } => {
            if *example {
                return out(example_9_4_pipeline()?);
            }
            let d = PicClass::parse(delta.as_deref().unwrap_or_default(), HALPHEN_RANK)?;
            let h = HalphenData::new(*m, d)?;
            let kap = kappa(&h)?;
            out(json!({
                "m": m,
                "delta": h.delta.to_string(),
                "kappa": to_value(Rational(kap))?,
                "parity": parity_check(&h.delta)?,
            }))
        }
        Command::Lattice { m, delta, lambda, k } => {
            let h = HalphenData::new(*m, PicClass::parse(delta, HALPHEN_RANK)?)?;
            let lam = PicClass::parse(lambda, HALPHEN_RANK)?;
            let mut rows = Vec::new();
            let mut agree = true;
            for n in 0..=*k {
                let closed = degree_growth_closed_form(&lam, &h, i64::from(n))?;
                let power = degree_growth_by_power(&lam, &h, n)?;
                agree &= closed == power;
                rows.push(json!({ "n": n, "closed_form": closed, "by_power": power }));
            }
            Ok(Outcome {
                report: json!({
                    "delta": h.delta.to_string(),
                    "lambda": lam.to_string(),
                    "a": a_invariant(&lam)?,
                    "parity": parity_check(&h.delta)?,
                    "values": rows,
                    "agree": agree,
                }),
                ok: agree,
            })
        }
        Command::ConjDiag { torus, alpha, beta, alpha2, beta2, bound } => {
            let g = TorusGroup::parse(torus)?;
            let c = |s: &str| g.parse_constant(s);
            let psi = DiagonalAuto::new(&g, c(alpha)?, c(beta)?)?;
            let psi2 = DiagonalAuto::new(&g, c(alpha2)?, c(beta2)?)?;
            out(json!({
                "kernel": kernel_lattice(&g, &psi)?,
                "kernel2": kernel_lattice(&g, &psi2)?,
                "result": diag_conjugacy(&g, &psi, &psi2, *bound)?,
            }))
        }
        Command::Reduce { map, f1, f2 } => {
            let k = field.cloned().unwrap_or(Field::Rational);
            let g = match (map, f1, f2) {
                (Some(path), _, _) => load(path, field)?
                    .affine
                    .ok_or_else(|| Error::InvalidArgument("reduce needs an A2 map".into()))?,
                (None, Some(a), Some(b)) => AffineBirMap::parse(&k, a, b)?,
                _ => return Err(Error::InvalidArgument("give --map or both --f1 and --f2".into())),
            };
            let r = reduce_triangular(&g)?;
            Ok(Outcome { ok: r.verified, report: to_value(r)? })
        }
        Command::Bs { m, n } => out(bs_check(*m, *n)?),
        Command::Gl2q { k, chi, verify, seed } => {
            let e = Gl2qEmbedding::new(*k, Character::parse(chi)?)?;
            let r = e.verify(*verify, *seed)?;
            Ok(Outcome { ok: r.passed, report: to_value(r)? })
        }
        Command::Fixtures { all, names, list } => {
            if *list {
                return out(json!({ "fixtures": FIXTURE_NAMES }));
            }
            let results = if *all || names.is_empty() {
                run_all()
            } else {
                let mut names = names.clone();
                names.sort();
                names.dedup();
                names.into_iter().map(|n| {
                    let r = run_fixture(&n);
                    (n, r)
                }).collect()
            };
            let mut ok = true;
            let mut rows = Vec::new();
            for (name, r) in results {
                match r {
                    Ok(r) => {
                        ok &= r.pass;
                        rows.push(to_value(r)?);
                    }
                    Err(e) if e.is_input_error() => return Err(e),
                    Err(e) => {
                        ok = false;
                        rows.push(json!({ "name": name, "pass": false, "error": e.to_string() }));
                    }
                }
            }
            Ok(Outcome { report: json!({ "fixtures": rows, "all_pass": ok }), ok })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Degrees { .. } => "degrees",
        Command::Classify { .. } => "classify",
        Command::Basepoints { .. } => "basepoints",
        Command::Mu { .. } => "mu",
        Command::Persistence { .. } => "persistence",
        Command::Kappa { .. } => "kappa",
        Command::Lattice { .. } => "lattice",
        Command::ConjDiag { .. } => "conj-diag",
        Command::Reduce { .. } => "reduce",
        Command::Bs { .. } => "bs",
        Command::Gl2q { .. } => "gl2q",
        Command::Fixtures { .. } => "fixtures",
    }
}

fn envelope(command: &str, report: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    m.insert("command".into(), Value::from(command));
    match report {
        Value::Object(fields) => m.extend(fields),
        other => {
            m.insert("result".into(), other);
        }
    }
    Value::Object(m)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One line per top-level field; arrays of objects become aligned tables.
fn pretty(v: &Value) -> String {
    let Value::Object(m) = v else { return v.to_string() };
    let width = m.keys().map(String::len).max().unwrap_or(0);
    let mut s = String::new();
    for (k, val) in m {
        match val {
            Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                s.push_str(&format!("{k}:\n"));
                let cols: Vec<String> = rows[0].as_object().unwrap().keys().cloned().collect();
                let cells: Vec<Vec<String>> =
                    rows.iter().map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect();
                let w: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
                    .collect();
                let line = |r: &[String]| {
                    r.iter().zip(&w).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                };
                s.push_str(&format!("  {}\n", line(&cols)));
                for r in &cells {
                    s.push_str(&format!("  {}\n", line(r)));
                }
            }
            other => s.push_str(&format!("{k:<width$}  {}\n", cell(other))),
        }
    }
    s
}

fn pretty_fixtures(v: &Value) -> String {
    let mut s = String::new();
    for f in v["fixtures"].as_array().into_iter().flatten() {
        let verdict = if f["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        s.push_str(&format!("{verdict}  {}\n", cell(&f["name"])));
        if let Some(e) = f.get("error") {
            s.push_str(&format!("      error: {}\n", cell(e)));
        }
        for c in f["comparisons"].as_array().into_iter().flatten() {
            let mark = if c["pass"].as_bool() == Some(true) { "ok" } else { "MISMATCH" };
            s.push_str(&format!(
                "      {}: expected {}, got {}  [{mark}]\n",
                cell(&c["quantity"]),
                cell(&c["expected"]),
                cell(&c["actual"])
            ));
        }
    }
    s.push_str(&format!("all_pass: {}\n", v["all_pass"]));
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(o) => {
            let v = envelope(command_name(&cli.command), o.report);
            let text = if let Command::Degrees { csv: true, .. } = cli.command {
                let rows = v["degrees"].as_array().into_iter().flatten().zip(1..);
                std::iter::once("k,degree\n".to_string()).chain(rows.map(|(d, k)| format!("{k},{d}\n"))).collect::<String>()
            } else if !cli.pretty {
                format!("{v}\n")
            } else if matches!(cli.command, Command::Fixtures { .. }) {
                pretty_fixtures(&v)
            } else {
                pretty(&v)
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
