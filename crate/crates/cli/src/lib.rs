//! The `nullpoly` command line, as a library so tests can drive it in-process.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use nullpoly::construct::index_i;
use nullpoly::count::CountResult;
use nullpoly::{
    build_g, build_h, canonical_form, count_monic, count_monic_le, count_null_le, crt_combine_poly,
    digits_of_d, enumerate_null, equivalent, factor, is_null_binomial, kempner_basis, mu_bounded,
    null_order, null_witness_binomial, null_witness_eval, omega0_composite, omega1_composite,
    omega1_prime_power, parse_polynomial, poly_congruent, reduce_degree, to_csv, CanonicalForm,
    Error, Polynomial, PrimePower,
};

/// Exhaustive evaluation is skipped above this many points.
const EVAL_LIMIT: u64 = 1 << 22;
/// `omega` gives up computing `mu` directly beyond this.
const MU_LIMIT: u64 = 1_000_000;
/// Largest `mu(m)` accepted by `reduce` and `equiv`.
const CANONICAL_MU_LIMIT: u64 = 4096;
/// Largest polynomial degree `construct` will build.
const CONSTRUCT_DEGREE_LIMIT: u64 = 3000;

#[derive(Parser, Debug)]
#[command(name = "nullpoly", version, about = "Null polynomials modulo prime powers and composites")]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least degrees of null and monic null polynomials, and Kempner's mu.
    Omega { m: String },
    /// Build G_{p,d}, H_{p,d} or the Kempner basis for p^d.
    Construct {
        p: u64,
        d: u64,
        #[arg(long, value_enum, default_value_t = Family::H)]
        family: Family,
    },
    /// Decide whether a polynomial vanishes everywhere modulo m.
    CheckNull {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        m: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Largest d with the polynomial null modulo p^d.
    Order {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        p: u64,
        #[arg(long = "max", default_value_t = 64)]
        max: u64,
    },
    /// Whether two polynomials induce the same function modulo m.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        m: String,
    },
    /// An equivalent polynomial of degree below mu(m), with its canonical form.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        m: String,
    },
    /// Number of null polynomials of degree <= n modulo p^d.
    Count {
        n: u64,
        p: u64,
        d: u64,
        /// Count monic null polynomials of degree exactly n.
        #[arg(long)]
        monic: bool,
        /// With --monic, count degrees up to n.
        #[arg(long, requires = "monic")]
        cumulative: bool,
    },
    /// List every null polynomial of degree <= n modulo p^d.
    Enumerate {
        n: u64,
        p: u64,
        d: u64,
        /// Refuse when there are more than this many.
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
    },
    /// Combine per-prime-power polynomials: f1 p1^d1 f2 p2^d2 ...
    Crt {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        parts: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "kempner")]
    Kempner,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Eval,
    Binomial,
    Both,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    result: Map<String, Value>,
    trace: Vec<Value>,
    verified: bool,
    lines: Vec<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            result: Map::new(),
            trace: Vec::new(),
            verified: false,
            lines: Vec::new(),
        }
    }

    fn input(&mut self, k: &str, v: Value) {
        self.inputs.insert(k.into(), v);
    }

    fn result(&mut self, k: &str, v: Value) {
        self.result.insert(k.into(), v);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn render(self, as_json: bool) -> String {
        if as_json {
            let v = json!({
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "trace": self.trace,
                "verified": self.verified,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        } else {
            let mut out = self.lines.join("\n");
            out.push('\n');
            out
        }
    }
}

pub fn poly_json(f: &Polynomial) -> Value {
    json!({ "csv": to_csv(f), "text": f.to_string() })
}

fn canonical_json(c: &CanonicalForm) -> Value {
    Value::Array(c.coeffs().iter().map(|a| Value::String(a.to_string())).collect())
}

fn parse_poly(s: &str) -> Res<Polynomial> {
    parse_polynomial(s).map_err(Failure::from)
}

/// `p^d` or a plain integer.
fn parse_modulus(s: &str) -> Res<BigUint> {
    let s = s.trim();
    if let Some((p, d)) = s.split_once('^') {
        let p: u64 = p.trim().parse().map_err(|_| Failure::Parse(format!("bad prime in modulus {s:?}")))?;
        let d: u64 = d.trim().parse().map_err(|_| Failure::Parse(format!("bad exponent in modulus {s:?}")))?;
        return Ok(PrimePower::new(p, d)?.value());
    }
    s.parse::<BigUint>()
        .map_err(|_| Failure::Parse(format!("bad modulus {s:?}")))
}

fn parse_prime_power(s: &str) -> Res<PrimePower> {
    let s = s.trim();
    if s.contains('^') {
        let (p, d) = s.split_once('^').expect("checked");
        let p: u64 = p.parse().map_err(|_| Failure::Parse(format!("bad prime power {s:?}")))?;
        let d: u64 = d.parse().map_err(|_| Failure::Parse(format!("bad prime power {s:?}")))?;
        return Ok(PrimePower::new(p, d)?);
    }
    let q = s
        .parse::<BigUint>()
        .map_err(|_| Failure::Parse(format!("bad prime power {s:?}")))?;
    Ok(PrimePower::from_integer(&q)?)
}

fn require_modulus(m: &BigUint) -> Res<()> {
    if m < &BigUint::from(2u32) {
        return Err(Failure::Domain(format!("modulus must be at least 2, got {m}")));
    }
    Ok(())
}

fn bounded_mu(m: &BigUint, limit: u64) -> Res<u64> {
    mu_bounded(m, limit)?
        .ok_or_else(|| Failure::Domain(format!("mu({m}) exceeds {limit}; modulus too large for this command")))
}

fn eval_feasible(m: &BigUint) -> bool {
    m <= &BigUint::from(EVAL_LIMIT)
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render(cli.json),
            stderr: String::new(),
        },
        Err(Failure::Parse(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(cmd: &Command) -> Res<Report> {
    match cmd {
        Command::Omega { m } => omega(m),
        Command::Construct { p, d, family } => construct(*p, *d, *family),
        Command::CheckNull { poly, m, method } => check_null(poly, m, *method),
        Command::Order { poly, p, max } => order(poly, *p, *max),
        Command::Equiv { f, g, m } => equiv(f, g, m),
        Command::Reduce { poly, m } => reduce(poly, m),
        Command::Count { n, p, d, monic, cumulative } => count(*n, *p, *d, *monic, *cumulative),
        Command::Enumerate { n, p, d, limit } => enumerate(*n, *p, *d, *limit),
        Command::Crt { parts } => crt(parts),
    }
}

fn omega(m_arg: &str) -> Res<Report> {
    let m = parse_modulus(m_arg)?;
    require_modulus(&m)?;
    let fm = factor(&m)?;
    let w0 = omega0_composite(&fm)?;
    let w1 = omega1_composite(&fm)?;
    let mu = mu_bounded(&m, MU_LIMIT)?;
    let mut r = Report::new("omega");
    r.input("m", json!(m.to_string()));
    r.result("factorization", json!(fm.to_string()));
    r.result("omega0", json!(w0));
    r.result("omega1", json!(w1));
    r.result("mu", mu.map_or(Value::Null, |v| json!(v)));
    r.verified = mu == Some(w1);
    if let Some(v) = mu {
        if v != w1 {
            return Err(Failure::Domain(format!("internal error: omega1={w1} but mu={v}")));
        }
    }
    let mu_text = mu.map_or(format!("skipped(>{MU_LIMIT})"), |v| v.to_string());
    r.line(format!("omega0={w0} omega1={w1} mu={mu_text}"));
    Ok(r)
}

fn oracle_check(f: &Polynomial, m: &BigUint, r: &mut Report) -> Res<()> {
    let mut methods = vec!["binomial"];
    let mut ok = is_null_binomial(f, m);
    if eval_feasible(m) {
        methods.insert(0, "eval");
        ok &= null_witness_eval(f, m).is_none();
    }
    if !ok {
        return Err(Failure::Domain(format!("internal error: construction is not null modulo {m}")));
    }
    r.verified = true;
    r.result("verified_by", json!(methods));
    r.line(format!("verified: {}", methods.join(", ")));
    Ok(())
}

fn construct(p: u64, d: u64, family: Family) -> Res<Report> {
    let mut r = Report::new("construct");
    r.input("p", json!(p));
    r.input("d", json!(d));
    let (name, f, modulus) = match family {
        Family::G => {
            let n = u32::try_from(d).ok().filter(|&n| p.checked_pow(n).is_some_and(|deg| deg <= CONSTRUCT_DEGREE_LIMIT));
            let n = n.ok_or_else(|| Failure::Domain(format!("G_{{{p},{d}}} has degree beyond {CONSTRUCT_DEGREE_LIMIT}")))?;
            let tower = build_g(p, n)?;
            let e = index_i(p, n);
            let e32 = e.to_u32().ok_or_else(|| Failure::Domain("index too large".into()))?;
            r.result("index", json!(e.to_string()));
            ("G", tower.level(n).clone(), BigUint::from(p).pow(e32))
        }
        Family::H => {
            let digits = digits_of_d(p, d)?;
            let w = omega1_prime_power(p, d)?;
            if w > CONSTRUCT_DEGREE_LIMIT {
                return Err(Failure::Domain(format!("H_{{{p},{d}}} has degree {w}, beyond {CONSTRUCT_DEGREE_LIMIT}")));
            }
            r.result("digits", json!(digits.digits()));
            r.result("digit_vector", json!(digits.to_radix_string()));
            r.line(format!("digits: {}", digits.to_radix_string()));
            let m = PrimePower::new(p, d)?.value();
            ("H", build_h(p, d)?, m)
        }
        Family::Kempner => {
            let m = PrimePower::new(p, d)?.value();
            bounded_mu(&m, CONSTRUCT_DEGREE_LIMIT)?;
            ("kempner", kempner_basis(&m)?, m)
        }
    };
    r.input("family", json!(name));
    let degree = f.degree().expect("constructions are monic");
    r.result("polynomial", poly_json(&f));
    r.result("degree", json!(degree));
    r.result("modulus", json!(modulus.to_string()));
    let mut head = vec![
        format!("family={name} p={p} d={d}"),
        format!("poly: {f}"),
        format!("csv: {}", to_csv(&f)),
        format!("degree: {degree}"),
        format!("null modulo: {modulus}"),
    ];
    head.append(&mut r.lines);
    r.lines = head;
    oracle_check(&f, &modulus, &mut r)?;
    Ok(r)
}

fn check_null(poly_arg: &str, m_arg: &str, method: Method) -> Res<Report> {
    let f = parse_poly(poly_arg)?;
    let m = parse_modulus(m_arg)?;
    require_modulus(&m)?;
    let mut r = Report::new("check-null");
    r.input("poly", poly_json(&f));
    r.input("m", json!(m.to_string()));

    let want_eval = matches!(method, Method::Eval | Method::Both);
    let want_binomial = matches!(method, Method::Binomial | Method::Both);
    let eval_skipped = want_eval && !eval_feasible(&m);
    let mut used = Vec::new();
    let mut notes = Vec::new();

    let by_eval = if want_eval && !eval_skipped {
        used.push("eval");
        Some(null_witness_eval(&f, &m))
    } else {
        None
    };
    let by_binomial = if want_binomial || eval_skipped {
        used.push("binomial");
        Some(null_witness_binomial(&f, &m))
    } else {
        None
    };
    if eval_skipped {
        notes.push(format!("eval skipped: modulus above {EVAL_LIMIT}"));
    }

    // Both witnesses are the least x with f(x) != 0 mod m, so they must coincide.
    let witness: Option<BigUint> = match (&by_eval, &by_binomial) {
        (Some(e), Some(b)) => {
            let b = b.map(|k| BigUint::from(k as u64));
            if e != &b {
                return Err(Failure::Domain(format!(
                    "internal error: eval and binomial disagree ({e:?} vs {b:?})"
                )));
            }
            b
        }
        (Some(e), None) => e.clone(),
        (None, Some(b)) => b.map(|k| BigUint::from(k as u64)),
        (None, None) => unreachable!("at least one method runs"),
    };
    r.verified = true;
    r.result("null", json!(witness.is_none()));
    r.result("witness", witness.as_ref().map_or(Value::Null, |x| json!(x.to_string())));
    r.result("methods", json!(used));
    if !notes.is_empty() {
        r.result("notes", json!(notes));
    }
    match &witness {
        None => r.line(format!("NULL (verified: {})", used.join(", "))),
        Some(x) => {
            let value = f.eval_mod(&BigInt::from(x.clone()), &BigInt::from(m.clone()));
            r.result("value_at_witness", json!(value.to_string()));
            r.line(format!(
                "NOT NULL (witness x={x}, f(x) = {value} mod {m}; checked: {})",
                used.join(", ")
            ));
        }
    }
    for n in notes {
        r.line(n);
    }
    Ok(r)
}

fn order(poly_arg: &str, p: u64, max: u64) -> Res<Report> {
    let f = parse_poly(poly_arg)?;
    if !nullpoly::is_prime(p) {
        return Err(Error::NotPrime(BigUint::from(p)).into());
    }
    if max == 0 {
        return Err(Failure::Domain("--max must be at least 1".into()));
    }
    let d = null_order(&f, p, max);
    let mut r = Report::new("order");
    r.input("poly", poly_json(&f));
    r.input("p", json!(p));
    r.input("max", json!(max));
    r.result("order", json!(d));
    r.result("capped", json!(d == max));
    // Cross-check the boundary with the binomial test.
    let pd = BigUint::from(p).pow(d as u32);
    let next = &pd * p;
    r.verified = (d == 0 || is_null_binomial(&f, &pd)) && (d == max || !is_null_binomial(&f, &next));
    if d == max {
        r.line(format!("order>={max} (search capped by --max)"));
    } else {
        r.line(format!("order={d}"));
    }
    Ok(r)
}

fn canonical_modulus(m_arg: &str) -> Res<BigUint> {
    let m = parse_modulus(m_arg)?;
    require_modulus(&m)?;
    bounded_mu(&m, CANONICAL_MU_LIMIT)?;
    Ok(m)
}

fn equiv(f_arg: &str, g_arg: &str, m_arg: &str) -> Res<Report> {
    let f = parse_poly(f_arg)?;
    let g = parse_poly(g_arg)?;
    let m = canonical_modulus(m_arg)?;
    let same = equivalent(&f, &g, &m)?;
    let cf = canonical_form(&f, &m)?;
    let cg = canonical_form(&g, &m)?;
    let diff = &f - &g;
    let witness = null_witness_binomial(&diff, &m);
    let mut r = Report::new("equiv");
    r.input("f", poly_json(&f));
    r.input("g", poly_json(&g));
    r.input("m", json!(m.to_string()));
    r.result("equivalent", json!(same));
    r.result("canonical_f", canonical_json(&cf));
    r.result("canonical_g", canonical_json(&cg));
    r.verified = (same == (cf == cg)) && (same == witness.is_none());
    if same {
        r.line("EQUIVALENT");
    } else {
        let x = witness.expect("inequivalent polynomials differ somewhere");
        r.result("witness", json!(x.to_string()));
        r.line(format!("NOT EQUIVALENT (witness x={x})"));
    }
    r.line(format!("canonical(f) = {cf}"));
    r.line(format!("canonical(g) = {cg}"));
    Ok(r)
}

fn reduce(poly_arg: &str, m_arg: &str) -> Res<Report> {
    let f = parse_poly(poly_arg)?;
    let m = canonical_modulus(m_arg)?;
    let red = reduce_degree(&f, &m)?;
    let c = canonical_form(&f, &m)?;
    let mut r = Report::new("reduce");
    r.input("poly", poly_json(&f));
    r.input("m", json!(m.to_string()));
    r.result("reduced", poly_json(&red));
    r.result("canonical", canonical_json(&c));
    r.verified = null_witness_binomial(&(&f - &red), &m).is_none();
    r.line(format!("reduced: {red}"));
    r.line(format!("csv: {}", to_csv(&red)));
    r.line(format!("canonical: {c}"));
    Ok(r)
}

fn count(n: u64, p: u64, d: u64, monic: bool, cumulative: bool) -> Res<Report> {
    let (label, res): (String, CountResult) = if monic && cumulative {
        (format!("N_mnp(<={n}, {p}^{d})"), count_monic_le(n, p, d)?)
    } else if monic {
        (format!("N_mnp({n}, {p}^{d})"), count_monic(n, p, d)?)
    } else {
        (format!("N_np(<={n}, {p}^{d})"), count_null_le(n, p, d)?)
    };
    let v = &res.value;
    let mut r = Report::new("count");
    r.input("n", json!(n));
    r.input("p", json!(p));
    r.input("d", json!(d));
    r.input("monic", json!(monic));
    r.input("cumulative", json!(cumulative));
    r.result("value", v.expanded().map_or(Value::Null, |x| json!(x.to_string())));
    r.result("factor", json!(v.factor.to_string()));
    r.result("base", json!(v.base));
    r.result("exponent", json!(v.exponent.to_string()));
    r.result("power_form", json!(v.symbolic()));
    r.trace = res
        .trace
        .iter()
        .map(|t| json!({ "rule": t.rule, "value": t.value }))
        .collect();
    r.verified = true;
    r.line(format!("{label} = {v}"));
    r.line(format!("power form: {}", v.symbolic()));
    r.line("trace:");
    for t in &res.trace {
        r.line(format!("  {}: {}", t.rule, t.value));
    }
    Ok(r)
}

fn enumerate(n: u64, p: u64, d: u64, limit: u64) -> Res<Report> {
    let stream = enumerate_null(p, d, n, limit)?;
    let total = stream.total();
    let width = usize::try_from(n + 1).map_err(|_| Failure::Domain("n too large".into()))?;
    let mut all: Vec<(Vec<BigInt>, Polynomial)> = stream
        .map(|f| {
            let mut key = f.coeffs().to_vec();
            key.resize(width, BigInt::zero());
            (key, f)
        })
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    let mut r = Report::new("enumerate");
    r.input("n", json!(n));
    r.input("p", json!(p));
    r.input("d", json!(d));
    r.input("limit", json!(limit));
    r.result("count", json!(total));
    r.result("polynomials", Value::Array(all.iter().map(|(_, f)| poly_json(f)).collect()));
    r.verified = all.len() as u64 == total;
    r.line(format!("# {total} null polynomials of degree <= {n} modulo {p}^{d}"));
    for (_, f) in &all {
        r.line(f.to_string());
    }
    Ok(r)
}

fn crt(parts: &[String]) -> Res<Report> {
    if !parts.len().is_multiple_of(2) {
        return Err(Failure::Parse("crt expects pairs: <poly> <p^d> ...".into()));
    }
    let pairs = parts
        .chunks(2)
        .map(|c| Ok((parse_poly(&c[0])?, parse_prime_power(&c[1])?)))
        .collect::<Res<Vec<_>>>()?;
    let f = crt_combine_poly(&pairs)?;
    let m: BigUint = pairs.iter().map(|(_, q)| q.value()).product();
    let mut r = Report::new("crt");
    r.input(
        "parts",
        Value::Array(
            pairs
                .iter()
                .map(|(g, q)| json!({ "poly": poly_json(g), "modulus": q.to_string() }))
                .collect(),
        ),
    );
    r.result("polynomial", poly_json(&f));
    r.result("modulus", json!(m.to_string()));
    r.verified = pairs.iter().all(|(g, q)| poly_congruent(&f, g, &q.value()));
    r.line(format!("{f} (mod {m})"));
    r.line(format!("csv: {}", to_csv(&f)));
    Ok(r)
}
