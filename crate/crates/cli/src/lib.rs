//! Argument handling and dispatch for the `mldlab` binary.
//!
//! Exit codes: 0 success, 1 selftest failures, 2 parse or usage error,
//! 3 precondition violation, 4 I/O failure.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mldlab::bounds_lab::{acc_probe, ell_search, value_set, DccSet, EllConfig};
use mldlab::discrepancy::{
    brute_force_mld, coordinate_search, lct, mld, monomialized_upper_bound, DiscrepancyError, MldValue, PolyMultiIdeal,
    SearchOptions,
};
use mldlab::parse::{parse_multiideal, parse_scalar, ParseError};
use mldlab::poly_algebra::integer_pool;
use mldlab::report;
use mldlab::scalars::{ExactScalar, Rational};
use mldlab::selftest::{run_selftest, Status};

/// Environment variable naming a `key = value` file of default flags.
pub const CONFIG_ENV: &str = "MLDLAB_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "mldlab", version, about = "Minimal log discrepancies and lcts of plane multiideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Characteristic of the coefficient field (0 or a prime).
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Generator box bound; a comma list gives one bound per exponent.
    #[arg(long = "box", global = true, value_delimiter = ',')]
    boxes: Vec<u32>,
    /// Per-ideal scan budget (ell), or candidate cap (coord-search).
    #[arg(long, global = true)]
    budget: Option<i64>,
    /// Degree bound for elementary coordinate changes.
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Comma-separated coefficient pool, e.g. "-1,0,1".
    #[arg(long, global = true)]
    pool: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write a CSV table (ell) to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    include_trivial: bool,
    /// Composition depth for coord-search.
    #[arg(long, global = true)]
    steps: Option<u32>,
    /// Number of exponent tuples drawn by acc-probe.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Limit points for acc-probe, e.g. "1,1/2".
    #[arg(long, global = true)]
    limits: Option<String>,
    /// Longest exponent tuple drawn by acc-probe.
    #[arg(long, global = true)]
    arity: Option<usize>,
    /// Include the slow exhaustive sweeps in selftest.
    #[arg(long, global = true)]
    full: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// mld at the origin (monomializes polynomial input).
    Mld { input: String },
    /// Log canonical threshold (monomializes polynomial input).
    Lct { input: String },
    /// Monomial ideal spanned by the generators' supports.
    Monomialize { input: String },
    /// mld of the monomialized input as an upper bound.
    UpperBound { input: String },
    /// Least upper bound over bounded elementary coordinate changes.
    CoordSearch { input: String },
    /// Largest least-k computing divisor over staircases; exponents like "1 ; 1/2".
    Ell { exponents: String },
    /// mld values attained over staircases.
    ValueSet { exponents: String },
    /// Ascending chains of mld values over exponents from a DCC set.
    AccProbe { points: String },
    /// Newton polygons, merged fan and ray values.
    Fan { input: String },
    /// Compare the fan computation with a box scan.
    Oracle { input: String },
    /// Run the regression table of reference values.
    Selftest,
}

/// Resolved settings: flags over config file over defaults.
struct Settings {
    characteristic: u64,
    boxes: Vec<u32>,
    budget: Option<i64>,
    degree: u32,
    pool: Vec<Rational>,
    seed: u64,
    out: Option<PathBuf>,
    include_trivial: bool,
    steps: u32,
    samples: usize,
    limits: Vec<Rational>,
    arity: usize,
    full: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Precondition(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Precondition(m) | Failure::Io(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<DiscrepancyError> for Failure {
    fn from(e: DiscrepancyError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<mldlab::bounds_lab::LabError> for Failure {
    fn from(e: mldlab::bounds_lab::LabError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Failure> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::Parse(format!("config line {}: expected key = value", n + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn load_config() -> Result<BTreeMap<String, String>, Failure> {
    match std::env::var_os(CONFIG_ENV) {
        None => Ok(BTreeMap::new()),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Io(format!("cannot read config {}: {e}", PathBuf::from(&path).display())))?;
            parse_config(&text)
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse().map_err(|_| Failure::Parse(format!("invalid value '{v}' for {key}")))
}

fn rational_list(key: &str, text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let x = parse_scalar(s)?;
            x.as_rational().cloned().ok_or_else(|| Failure::Parse(format!("{key}: {s} is not rational")))
        })
        .collect()
}

fn resolve(flags: Flags, config: &BTreeMap<String, String>) -> Result<Settings, Failure> {
    let get = |k: &str| config.get(k).map(String::as_str);
    let boxes = if !flags.boxes.is_empty() {
        flags.boxes
    } else if let Some(v) = get("box") {
        v.split(',').map(|s| parse_value("box", s.trim())).collect::<Result<_, _>>()?
    } else {
        vec![4]
    };
    let pool_text = flags.pool.or_else(|| get("pool").map(String::from));
    let pool = match pool_text {
        Some(t) => rational_list("pool", &t)?,
        None => integer_pool(&[-1, 0, 1]),
    };
    let limits_text = flags.limits.or_else(|| get("limits").map(String::from));
    let limits = match limits_text {
        Some(t) => rational_list("limits", &t)?,
        None => Vec::new(),
    };
    macro_rules! pick {
        ($flag:expr, $key:literal, $default:expr) => {
            match $flag {
                Some(v) => v,
                None => match get($key) {
                    Some(v) => parse_value($key, v)?,
                    None => $default,
                },
            }
        };
    }
    let budget = match flags.budget {
        Some(b) => Some(b),
        None => get("budget").map(|v| parse_value("budget", v)).transpose()?,
    };
    let bool_key = |k: &str| -> Result<bool, Failure> { get(k).map(|v| parse_value(k, v)).transpose().map(|b| b.unwrap_or(false)) };
    Ok(Settings {
        characteristic: pick!(flags.characteristic, "char", 0),
        boxes,
        budget,
        degree: pick!(flags.degree, "degree", 2),
        pool,
        seed: pick!(flags.seed, "seed", 0),
        out: flags.out.or_else(|| get("out").map(PathBuf::from)),
        include_trivial: flags.include_trivial || bool_key("include-trivial")?,
        steps: pick!(flags.steps, "steps", 1),
        samples: pick!(flags.samples, "samples", 16),
        limits,
        arity: pick!(flags.arity, "arity", 1),
        full: flags.full || bool_key("full")?,
    })
}

fn exponents(text: &str) -> Result<Vec<ExactScalar>, Failure> {
    text.split(';').map(|s| parse_scalar(s.trim()).map_err(Failure::from)).collect()
}

fn poly_input(text: &str, s: &Settings) -> Result<PolyMultiIdeal, Failure> {
    Ok(parse_multiideal(text, s.characteristic)?)
}

fn single_box(s: &Settings) -> Result<u32, Failure> {
    match s.boxes.as_slice() {
        [m] => Ok(*m),
        _ => Err(Failure::Precondition("this command takes a single --box value".into())),
    }
}

fn dispatch(command: Command, s: &Settings) -> Result<(Value, i32), Failure> {
    let ok = |v: Value| Ok((v, 0));
    match command {
        Command::Mld { input } | Command::UpperBound { input } => {
            let p = poly_input(&input, s)?;
            let monomialized = !p.is_monomial();
            ok(report::mld_bound_json(&monomialized_upper_bound(&p), monomialized))
        }
        Command::Lct { input } => {
            let p = poly_input(&input, s)?;
            let mut v = report::lct_json(&lct(&p.monomialized())?);
            v["monomialized"] = json!(!p.is_monomial());
            ok(v)
        }
        Command::Monomialize { input } => {
            let p = poly_input(&input, s)?;
            let m = p.monomialized();
            let ideals: Vec<Value> = m
                .pairs()
                .iter()
                .map(|(i, e)| {
                    let gens: Vec<Value> = i.generators().iter().map(|g| json!([g.ex, g.ey])).collect();
                    json!({"ideal": i.to_string(), "generators": gens, "exponent": report::scalar_json(e)})
                })
                .collect();
            ok(json!({"input": p.to_string(), "monomialized": m.to_string(), "ideals": ideals}))
        }
        Command::CoordSearch { input } => {
            let p = poly_input(&input, s)?;
            let options = SearchOptions {
                degree_bound: s.degree,
                pool: s.pool.clone(),
                max_steps: s.steps,
                max_candidates: s.budget.map(|b| b.max(1) as usize),
            };
            ok(report::search_json(&coordinate_search(&p, &options)?))
        }
        Command::Ell { exponents: text } => {
            let e = exponents(&text)?;
            let config = EllConfig {
                boxes: s.boxes.clone(),
                include_trivial: s.include_trivial,
                per_ideal_budget: s.budget,
                witness_limit: 32,
            };
            let r = ell_search(&e, &config)?;
            if let Some(path) = &s.out {
                let csv = report::ell_csv(&r).map_err(|e| Failure::Io(e.to_string()))?;
                std::fs::write(path, csv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            ok(report::ell_json(&r))
        }
        Command::ValueSet { exponents: text } => {
            let e = exponents(&text)?;
            ok(report::value_set_json(&value_set(&e, single_box(s)?)?))
        }
        Command::AccProbe { points } => {
            let set = DccSet { points: rational_list("points", &points)?, limit_points: s.limits.clone(), terms_per_limit: 3 };
            ok(report::acc_json(&acc_probe(&set, single_box(s)?, s.samples, s.arity, s.seed)?))
        }
        Command::Fan { input } => {
            let p = poly_input(&input, s)?;
            let mut v = report::fan_json(&p.monomialized());
            v["monomialized"] = json!(!p.is_monomial());
            ok(v)
        }
        Command::Oracle { input } => {
            let p = poly_input(&input, s)?;
            let m = p.monomialized();
            let b = i64::from(single_box(s)?);
            let fast = mld(&m);
            let brute = brute_force_mld(&m, b)?;
            let agree = match (&fast.value, &brute.value) {
                (MldValue::Finite(v), MldValue::Finite(w)) => v == w,
                (MldValue::MinusInfinity, MldValue::MinusInfinity) => true,
                _ => false,
            };
            ok(json!({
                "mld": report::mld_json(&fast),
                "box": b,
                "box_scan": {
                    "value": report::mld_value_json(&brute.value),
                    "min": report::scalar_json(&brute.min_value),
                    "argmin": report::divisor_json(&brute.argmin),
                },
                "agree": agree,
                "monomialized": !p.is_monomial(),
            }))
        }
        Command::Selftest => {
            let outcomes = run_selftest(s.full);
            let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    let status = match o.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                        Status::Skipped => "skipped",
                    };
                    json!({"name": o.name, "status": status, "detail": o.detail})
                })
                .collect();
            let v = json!({"checks": rows, "failed": failed, "passed": outcomes.iter().filter(|o| o.status == Status::Pass).count()});
            Ok((v, if failed == 0 { 0 } else { 1 }))
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = load_config().and_then(|config| resolve(cli.flags, &config)).and_then(|settings| {
        if settings.characteristic != 0 {
            mldlab::poly_algebra::CoefficientField::new(settings.characteristic)
                .map_err(|e| Failure::Parse(e.to_string()))?;
        }
        dispatch(cli.command, &settings)
    });
    match result {
        Ok((value, code)) => Outcome {
            code,
            stdout: serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
            stderr: String::new(),
        },
        Err(f) => Outcome { code: f.code(), stdout: String::new(), stderr: format!("mldlab: {}\n", f.message()) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let c = parse_config("# defaults\nbox = 3,4\ninclude_trivial=true\n\nseed = 9 # trailing\n").unwrap();
        assert_eq!(c.get("box").map(String::as_str), Some("3,4"));
        assert_eq!(c.get("include-trivial").map(String::as_str), Some("true"));
        assert_eq!(c.get("seed").map(String::as_str), Some("9"));
        assert!(parse_config("box 3").is_err());
    }

    #[test]
    fn flags_override_config() {
        let config = parse_config("box = 7\ndegree = 3\nchar = 5").unwrap();
        let flags = Flags { boxes: vec![2], ..Flags::default() };
        let s = resolve(flags, &config).unwrap();
        assert_eq!((s.boxes, s.degree, s.characteristic), (vec![2], 3, 5));
        let s = resolve(Flags::default(), &BTreeMap::new()).unwrap();
        assert_eq!((s.boxes, s.degree, s.characteristic, s.steps), (vec![4], 2, 0, 1));
    }
}
