//! Command-line surface.
//!
//! Exit codes: 0 on success, 1 for usage and parse errors, 2 when the input
//! is well formed but outside the domain of the requested operation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use betti_core::bounds::{
    algebraic_bounds, hypersurface_dim_l, pure_bounds, variety_bounds, veronese_bounds,
    veronese_codim, BoundPair, DEFAULT_MAX_EXACT_DIGITS,
};
use betti_core::decomp::decompose;
use betti_core::diagram::pure_diagram;
use betti_core::estimate::{
    digit_bracket, variety_digit_bracket, veronese_digit_bracket, BinomialPower, DEFAULT_PRECISION,
};
use betti_core::rational::{self, render, Rational};
use betti_core::{Constants, DegreeSequence, DigitBracket, Error as CoreError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::render::diagram;
use crate::table_file;

#[derive(Debug, Parser)]
#[command(name = "betti", version, about = "Pure Betti diagrams, Boij-Söderberg decompositions and Betti number bounds")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normalized pure diagram of a degree sequence such as 0,2,4,5.
    Pure {
        #[arg(allow_hyphen_values = true)]
        degrees: String,
    },
    /// Decompose a BT1 table file into its chain of pure diagrams.
    Decompose {
        path: PathBuf,
        /// Verify the reconstruction (and type lengths when --codim is given).
        #[arg(long)]
        check: bool,
        #[arg(long, requires = "check", value_parser = parse_int, allow_negative_numbers = true)]
        codim: Option<BigInt>,
    },
    /// Bounds on total Betti numbers.
    Bounds {
        #[command(subcommand)]
        target: BoundsTarget,
    },
    /// dim |L| for L = O(e) on a degree-delta hypersurface in P^m.
    DimL {
        #[arg(short = 'm', value_parser = parse_int, allow_negative_numbers = true)]
        m: BigInt,
        #[arg(long, value_parser = parse_int, allow_negative_numbers = true)]
        delta: BigInt,
        #[arg(short = 'e', value_parser = parse_int, allow_negative_numbers = true)]
        e: BigInt,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsTarget {
    /// C(N,i) N^-r <= beta_i <= C(N,i) N^r for pure diagrams of regularity r.
    Pure {
        #[arg(short = 'N', value_parser = parse_int, allow_negative_numbers = true)]
        n: BigInt,
        #[arg(short = 'r', value_parser = parse_int, allow_negative_numbers = true)]
        r: BigInt,
        #[arg(short = 'i', value_parser = parse_int, allow_negative_numbers = true)]
        i: BigInt,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
    /// Bounds for a module generated in degree 0.
    Module {
        #[arg(long, value_parser = parse_int, allow_negative_numbers = true)]
        codim: BigInt,
        #[arg(long, value_parser = parse_int, allow_negative_numbers = true)]
        pdim: BigInt,
        #[arg(long, value_parser = parse_int, allow_negative_numbers = true)]
        reg: BigInt,
        #[arg(long, value_parser = parse_rational, default_value = "1", allow_negative_numbers = true)]
        beta0: Rational,
        #[arg(short = 'i', value_parser = parse_int, allow_negative_numbers = true)]
        i: BigInt,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
    /// Bounds for the degree-d Veronese embedding of P^n.
    Veronese {
        #[arg(short = 'n', value_parser = parse_int, allow_negative_numbers = true)]
        n: BigInt,
        #[arg(short = 'd', value_parser = parse_int, allow_negative_numbers = true)]
        d: BigInt,
        #[arg(short = 'i', value_parser = parse_int, allow_negative_numbers = true)]
        i: BigInt,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
    /// Bounds for a variety X embedded by a complete linear system |L|.
    Variety {
        #[arg(long = "dim-l", value_parser = parse_int, allow_negative_numbers = true)]
        dim_l: BigInt,
        #[arg(long = "dim-x", value_parser = parse_int, allow_negative_numbers = true)]
        dim_x: BigInt,
        #[arg(long, value_parser = parse_int, allow_negative_numbers = true)]
        reg: BigInt,
        #[arg(short = 'i', value_parser = parse_int, allow_negative_numbers = true)]
        i: BigInt,
        #[command(flatten)]
        estimate: EstimateArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    /// Report a decimal digit bracket instead of the exact pair.
    #[arg(long)]
    pub estimate: bool,
    /// Fractional decimal digits in the log brackets.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Use the simpler constants of the textbook integral estimates.
    #[arg(long)]
    pub paper_constants: bool,
    /// Refuse exact bounds with more digits than this and estimate instead.
    #[arg(long, default_value_t = DEFAULT_MAX_EXACT_DIGITS)]
    pub max_exact_digits: u64,
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not an integer"));
    }
    s.parse().map_err(|_| format!("{s:?} is not an integer"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).ok_or_else(|| format!("{s:?} is not an integer or num/den"))
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    /// The exact value is out of reach; callers may estimate instead.
    TooLarge(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Domain(_) | Failure::TooLarge(_) => 2,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse_error",
            Failure::Domain(_) | Failure::TooLarge(_) => "domain_error",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::TooLarge(m) => m,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::TooLarge { .. } => Failure::TooLarge(e.to_string()),
            CoreError::Domain(m) => Failure::Domain(m),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    results: Value,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    1
                }
            };
        }
    };
    let argv: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let (name, inputs) = describe(&cli.command);
    let outcome = execute(&cli.command);
    let code = outcome.as_ref().map_or_else(Failure::code, |_| 0);
    match cli.format {
        Format::Text => match &outcome {
            Ok(o) => {
                let _ = write!(out, "{}", o.text);
            }
            Err(f) => {
                let _ = writeln!(err, "error: {}", f.message());
            }
        },
        Format::Machine => {
            let mut report = Map::new();
            report.insert("command".into(), json!(name));
            report.insert("argv".into(), json!(argv));
            report.insert("inputs".into(), Value::Object(inputs));
            match &outcome {
                Ok(o) => {
                    report.insert("results".into(), o.results.clone());
                    report.insert("status".into(), json!("ok"));
                }
                Err(f) => {
                    report.insert("status".into(), json!(f.status()));
                    report.insert("error".into(), json!(f.message()));
                    let _ = writeln!(err, "error: {}", f.message());
                }
            }
            let text = serde_json::to_string_pretty(&Value::Object(report))
                .expect("reports are plain JSON values");
            let _ = writeln!(out, "{text}");
        }
    }
    code
}

fn describe(command: &Command) -> (&'static str, Map<String, Value>) {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.into(), v);
    };
    let int = |v: &BigInt| json!(v.to_string());
    let est = |put: &mut dyn FnMut(&str, Value), e: &EstimateArgs| {
        put("estimate", json!(e.estimate));
        put("precision", json!(e.precision));
        put("paper_constants", json!(e.paper_constants));
        put("max_exact_digits", json!(e.max_exact_digits));
    };
    let name = match command {
        Command::Pure { degrees } => {
            put("degrees", json!(degrees));
            "pure"
        }
        Command::Decompose { path, check, codim } => {
            put("path", json!(path.display().to_string()));
            put("check", json!(check));
            put("codim", codim.as_ref().map_or(Value::Null, int));
            "decompose"
        }
        Command::DimL { m, delta, e } => {
            put("m", int(m));
            put("delta", int(delta));
            put("e", int(e));
            "dim-l"
        }
        Command::Bounds { target } => match target {
            BoundsTarget::Pure { n, r, i, estimate } => {
                put("N", int(n));
                put("r", int(r));
                put("i", int(i));
                est(&mut put, estimate);
                "bounds pure"
            }
            BoundsTarget::Module { codim, pdim, reg, beta0, i, estimate } => {
                put("codim", int(codim));
                put("pdim", int(pdim));
                put("reg", int(reg));
                put("beta0", json!(render(beta0)));
                put("i", int(i));
                est(&mut put, estimate);
                "bounds module"
            }
            BoundsTarget::Veronese { n, d, i, estimate } => {
                put("n", int(n));
                put("d", int(d));
                put("i", int(i));
                est(&mut put, estimate);
                "bounds veronese"
            }
            BoundsTarget::Variety { dim_l, dim_x, reg, i, estimate } => {
                put("dim_l", int(dim_l));
                put("dim_x", int(dim_x));
                put("reg", int(reg));
                put("i", int(i));
                est(&mut put, estimate);
                "bounds variety"
            }
        },
    };
    (name, m)
}

fn execute(command: &Command) -> Result<Output, Failure> {
    match command {
        Command::Pure { degrees } => cmd_pure(degrees),
        Command::Decompose { path, check, codim } => cmd_decompose(path, *check, codim.as_ref()),
        Command::DimL { m, delta, e } => {
            let dim = hypersurface_dim_l(small("m", m)?, small("delta", delta)?, small("e", e)?)?;
            Ok(Output { text: format!("{dim}\n"), results: json!({ "dim_l": dim.to_string() }) })
        }
        Command::Bounds { target } => cmd_bounds(target),
    }
}

fn nonneg(name: &str, v: &BigInt) -> Result<BigUint, Failure> {
    v.to_biguint()
        .ok_or_else(|| Failure::Domain(format!("{name} must be nonnegative, got {v}")))
}

fn small(name: &str, v: &BigInt) -> Result<u64, Failure> {
    nonneg(name, v)?
        .to_u64()
        .ok_or_else(|| Failure::Domain(format!("{name} = {v} is too large")))
}

/// An exact-path parameter that must fit in 64 bits.
fn exact_arg(name: &str, v: &BigInt) -> Result<u64, Failure> {
    nonneg(name, v)?
        .to_u64()
        .ok_or_else(|| Failure::TooLarge(format!("{name} = {v} does not fit in 64 bits")))
}

/// An index for the exact path; beyond 64 bits it exceeds every feasible
/// top, where all bounds vanish, so it saturates.
fn exact_index(v: &BigInt) -> Result<u64, Failure> {
    Ok(nonneg("i", v)?.to_u64().unwrap_or(u64::MAX))
}

fn cmd_pure(spec: &str) -> Result<Output, Failure> {
    let degrees = spec
        .split(',')
        .map(|s| {
            parse_int(s.trim())
                .ok()
                .and_then(|v| v.to_i64())
                .ok_or_else(|| Failure::Parse(format!("{s:?} is not a degree")))
        })
        .collect::<Result<Vec<i64>, Failure>>()?;
    let d = DegreeSequence::new(degrees).map_err(|e| Failure::Parse(e.to_string()))?;
    let t = pure_diagram(&d);
    let entries: Vec<Value> = t
        .iter()
        .map(|(i, j, v)| json!({ "i": i, "j": j, "value": render(v) }))
        .collect();
    let totals: Vec<String> = (0..d.len()).map(|i| render(&t.total_betti(i))).collect();
    Ok(Output {
        text: diagram(&t),
        results: json!({ "degrees": d.degrees(), "entries": entries, "totals": totals }),
    })
}

fn cmd_decompose(
    path: &std::path::Path,
    check: bool,
    codim: Option<&BigInt>,
) -> Result<Output, Failure> {
    let t = table_file::read(path).map_err(|e| Failure::Parse(e.to_string()))?;
    let dec = decompose(&t)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    for term in dec.terms() {
        text.push_str(&format!("{} {}\n", render(&term.coefficient), term.degrees));
        terms.push(json!({
            "coefficient": render(&term.coefficient),
            "degrees": term.degrees.degrees(),
        }));
    }
    let mut results = Map::new();
    results.insert("terms".into(), Value::Array(terms));
    results.insert("coefficient_sum".into(), json!(render(&dec.coefficient_sum())));
    if check {
        if dec.reconstruct() != t {
            return Err(Failure::Domain("reconstruction does not reproduce the table".into()));
        }
        text.push_str("check: reconstruction exact\n");
        results.insert("reconstruction_exact".into(), json!(true));
        if let Some(c) = codim {
            let c = usize::try_from(small("codim", c)?)
                .map_err(|_| Failure::Domain("codim is too large".into()))?;
            let pdim = t.pdim().expect("decomposed tables are nonempty");
            dec.check_lengths(c, pdim)?;
            text.push_str(&format!("check: type lengths within [{}, {}]\n", c + 1, pdim + 1));
            results.insert("lengths_ok".into(), json!(true));
        }
    }
    Ok(Output { text, results: Value::Object(results) })
}

/// What a bounds target needs: the exact evaluation, the upper bound in
/// binomial-power form for the size guard, and the digit bracket.
struct BoundsPlan<'a> {
    exact: Box<dyn Fn(u64) -> Result<BoundPair, Failure> + 'a>,
    upper: Option<BinomialPower>,
    bracket: Box<dyn Fn(u32, Constants) -> Result<DigitBracket, CoreError> + 'a>,
}

fn cmd_bounds(target: &BoundsTarget) -> Result<Output, Failure> {
    let (plan, args) = match target {
        BoundsTarget::Pure { n, r, i, estimate } => {
            let (nb, ib, rr) = (nonneg("N", n)?, nonneg("i", i)?, small("r", r)?);
            let exponent = signed(rr)?;
            let (lower, upper) = (
                BinomialPower::new(nb.clone(), ib.clone(), nb.clone(), -exponent),
                BinomialPower::new(nb.clone(), ib.clone(), nb.clone(), exponent),
            );
            let upper_guard = upper.clone();
            let plan = BoundsPlan {
                exact: Box::new(move |_| Ok(pure_bounds(exact_arg("N", n)?, rr, exact_index(i)?)?)),
                upper: Some(upper_guard),
                bracket: Box::new(move |prec, c| {
                    if nb.is_zero() {
                        return Err(CoreError::Domain("N must be at least 1".into()));
                    }
                    digit_bracket(&lower, &upper, prec, c)
                }),
            };
            (plan, estimate)
        }
        BoundsTarget::Module { codim, pdim, reg, beta0, i, estimate } => {
            let (cb, pb, ib, rr) = (nonneg("codim", codim)?, nonneg("pdim", pdim)?, nonneg("i", i)?, small("reg", reg)?);
            if pb < cb {
                return Err(Failure::Domain("pdim must be at least codim".into()));
            }
            if !beta0.is_positive() {
                return Err(Failure::Domain("beta0 must be positive".into()));
            }
            let exponent = signed(rr)?;
            let lower = BinomialPower::new(cb.clone(), ib.clone(), cb, -exponent).with_factor(beta0.clone());
            let upper = BinomialPower::new(pb.clone(), ib, pb, exponent).with_factor(beta0.clone());
            let plan = BoundsPlan {
                exact: Box::new(move |_| {
                    Ok(algebraic_bounds(
                        exact_arg("codim", codim)?,
                        exact_arg("pdim", pdim)?,
                        rr,
                        beta0,
                        exact_index(i)?,
                    )?)
                }),
                upper: Some(upper.clone()),
                bracket: Box::new(move |prec, c| digit_bracket(&lower, &upper, prec, c)),
            };
            (plan, estimate)
        }
        BoundsTarget::Veronese { n, d, i, estimate } => {
            let (nn, dd, ib) = (small("n", n)?, small("d", d)?, nonneg("i", i)?);
            let codim = veronese_codim(nn, dd)?.codim;
            let upper = BinomialPower::new(codim.clone(), ib.clone(), codim, signed(nn)?);
            let plan = BoundsPlan {
                exact: Box::new(move |limit| Ok(veronese_bounds(nn, dd, exact_index(i)?, limit)?)),
                upper: Some(upper),
                bracket: Box::new(move |prec, c| veronese_digit_bracket(nn, dd, &ib, prec, c)),
            };
            (plan, estimate)
        }
        BoundsTarget::Variety { dim_l, dim_x, reg, i, estimate } => {
            let (lb, xb, ib, rr) = (nonneg("dim-l", dim_l)?, nonneg("dim-x", dim_x)?, nonneg("i", i)?, small("reg", reg)?);
            let upper = BinomialPower::new(lb.clone(), ib.clone(), lb.clone(), signed(rr)?);
            let plan = BoundsPlan {
                exact: Box::new(move |limit| {
                    Ok(variety_bounds(
                        exact_arg("dim-l", dim_l)?,
                        exact_arg("dim-x", dim_x)?,
                        rr,
                        exact_index(i)?,
                        limit,
                    )?)
                }),
                upper: Some(upper),
                bracket: Box::new(move |prec, c| variety_digit_bracket(&lb, &xb, rr, &ib, prec, c)),
            };
            (plan, estimate)
        }
    };
    let constants = if args.paper_constants { Constants::Paper } else { Constants::Sound };
    if args.estimate {
        let b = (plan.bracket)(args.precision, constants)?;
        return Ok(bracket_output(&b, args, constants, None));
    }
    if let Some(reason) = too_large(&plan, args.max_exact_digits) {
        let b = (plan.bracket)(args.precision, constants)?;
        return Ok(bracket_output(&b, args, constants, Some(reason)));
    }
    match (plan.exact)(args.max_exact_digits) {
        Ok(pair) => Ok(Output {
            text: format!("lower {}\nupper {}\n", render(&pair.lower), render(&pair.upper)),
            results: json!({
                "kind": "exact",
                "lower": render(&pair.lower),
                "upper": render(&pair.upper),
            }),
        }),
        Err(Failure::TooLarge(m)) => {
            let b = (plan.bracket)(args.precision, constants)?;
            Ok(bracket_output(&b, args, constants, Some(m)))
        }
        Err(e) => Err(e),
    }
}

fn signed(v: u64) -> Result<i64, Failure> {
    i64::try_from(v).map_err(|_| Failure::Domain(format!("{v} is too large")))
}

/// Returns the reason when the exact upper bound would exceed `limit` digits.
fn too_large(plan: &BoundsPlan<'_>, limit: u64) -> Option<String> {
    let upper = plan.upper.as_ref()?;
    let b = digit_bracket(upper, upper, 2, Constants::Sound).ok()?;
    let digits = u64::try_from(b.exp_hi.saturating_add(1)).unwrap_or(0);
    (digits > limit).then(|| {
        CoreError::TooLarge { n: upper.top.clone(), digits, limit }.to_string()
    })
}

fn bracket_output(
    b: &DigitBracket,
    args: &EstimateArgs,
    constants: Constants,
    fallback: Option<String>,
) -> Output {
    let (dlo, dhi) = b.digits();
    let mut text = String::new();
    if let Some(reason) = &fallback {
        text.push_str(&format!("note: {reason}; reporting a digit bracket\n"));
    }
    text.push_str(&format!("exp_lo {}\nexp_hi {}\n", b.exp_lo, b.exp_hi));
    text.push_str(&format!("digits {dlo} to {dhi}\n"));
    text.push_str(&format!("ln(lower) {}\nln(upper) {}\n", b.log_lower, b.log_upper));
    let bracket = |l: &betti_core::LogBracket| json!({ "lo": l.lo().to_string(), "hi": l.hi().to_string() });
    let results = json!({
        "kind": "digit_bracket",
        "exp_lo": b.exp_lo,
        "exp_hi": b.exp_hi,
        "digits": [dlo, dhi],
        "ln_lower": bracket(&b.log_lower),
        "ln_upper": bracket(&b.log_upper),
        "precision": args.precision,
        "constants": match constants { Constants::Sound => "sound", Constants::Paper => "simple" },
        "fallback": fallback.map_or(Value::Null, Value::String),
    });
    Output { text, results }
}
