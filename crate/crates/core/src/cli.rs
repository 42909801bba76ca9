//! Command-line front end. [`run`] parses an argument vector and returns the
//! exit code with the text destined for stdout and stderr, so the binary is a
//! thin wrapper and the behaviour is testable in-process.
//!
//! Exit codes: 0 on success, 1 when a verification or series check fails,
//! 2 on usage errors (bad arguments, unknown names, out-of-domain input).

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::convolution::verify::{self, VerificationReport};
use crate::convolution::{convolve_at, dirichlet_convolve, tabulate, FunctionExpr};
use crate::error::{Error, Result};
use crate::factor::{factorize, factorize_rational, PrimePower};
use crate::ladditive::LAdditiveFunction;
use crate::mangoldt::MangoldtOf;
use crate::rational::{to_fraction_string, ExactRational};
use crate::series::{self, ComplexPoint, SeriesCheckReport, SeriesPreset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "arith-deriv",
    version,
    about = "Arithmetic derivative, L-additive functions and Dirichlet convolution identities"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prime factorization of a natural number or a positive rational.
    Factor {
        n: Option<u64>,
        /// A positive rational p/q.
        #[arg(long)]
        rational: Option<String>,
    },
    /// Evaluate delta, delta_p:<prime>, ld, big_omega or mangoldt:<fn>.
    Eval {
        function: String,
        n: Option<u64>,
        /// Evaluate at a positive rational p/q.
        #[arg(long)]
        rational: Option<String>,
    },
    /// Dirichlet convolution of two expressions, e.g. `convolve id delta --limit 20`.
    Convolve {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Tabulate on [1, limit]. The sieve costs about 4 bytes per integer.
        #[arg(long)]
        limit: Option<usize>,
        /// Evaluate at a single n by divisor enumeration instead.
        #[arg(long)]
        at: Option<u64>,
    },
    /// Check a named identity (or `all`) exactly on [1, limit].
    Verify {
        identity: String,
        /// Range upper end. The sieve costs about 4 bytes per integer.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
        /// Seed for identities over random functions.
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Add 1 to one builtin table entry, given as <builtin>@<n>.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
    /// Compare a truncated Dirichlet series with its closed form.
    Series {
        preset: String,
        /// The point s as `re` or `re,im`.
        #[arg(long = "s", allow_hyphen_values = true)]
        s: String,
        /// Number of series terms.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        /// Largest prime in the prime sum F.
        #[arg(long, default_value_t = 1_000_000)]
        primes: usize,
        /// Absolute tolerance for |lhs - rhs|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// List every identity and series preset.
    ListIdentities,
}

/// Exit code plus captured output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { code: 0, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        CliOutput { code, stdout, stderr: String::new() }
    }
}

pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CliOutput::ok(text)
            };
        }
    };
    match execute(&config) {
        Ok(out) => out,
        Err(e) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(config: &CliConfig) -> Result<CliOutput> {
    let fmt = config.format;
    match &config.command {
        Command::Factor { n, rational } => factor_cmd(*n, rational.as_deref(), fmt),
        Command::Eval { function, n, rational } => eval_cmd(function, *n, rational.as_deref(), fmt),
        Command::Convolve { a, b, limit, at } => convolve_cmd(a, b, *limit, *at, fmt),
        Command::Verify { identity, limit, seed, corrupt } => {
            verify_cmd(identity, *limit, *seed, corrupt.as_deref(), fmt)
        }
        Command::Series { preset, s, limit, primes, tol } => series_cmd(preset, s, *limit, *primes, *tol, fmt),
        Command::ListIdentities => list_cmd(fmt),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_positive_rational(src: &str) -> Result<(u64, u64)> {
    let bad = || Error::Parse(format!("malformed rational '{src}', expected p/q with p, q >= 1"));
    let (p, q) = src.split_once('/').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    if p == 0 || q == 0 {
        return Err(bad());
    }
    Ok((p, q))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct FactorRecord {
    value: String,
    factors: Vec<(u64, i64)>,
}

fn factor_cmd(n: Option<u64>, rational: Option<&str>, fmt: OutputFormat) -> Result<CliOutput> {
    let (value, text, factors): (String, String, Vec<PrimePower>) = match (n, rational) {
        (Some(n), None) => {
            let f = factorize(n, None)?;
            (n.to_string(), f.to_string(), f.factors().to_vec())
        }
        (None, Some(r)) => {
            let (p, q) = parse_positive_rational(r)?;
            let f = factorize_rational(p, q)?;
            let (num, den) = f.to_fraction();
            let value = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
            (value, f.to_string(), f.factors().to_vec())
        }
        _ => return Err(usage("factor takes either <n> or --rational p/q")),
    };
    let out = match fmt {
        OutputFormat::Table => format!("{value} = {text}\n"),
        OutputFormat::Csv => {
            let mut s = String::from("prime,exponent\n");
            for pp in &factors {
                let _ = writeln!(s, "{},{}", pp.prime, pp.exponent);
            }
            s
        }
        OutputFormat::Json => {
            to_json(&FactorRecord { value, factors: factors.iter().map(|pp| (pp.prime, pp.exponent)).collect() })
        }
    };
    Ok(CliOutput::ok(out))
}

#[derive(Serialize)]
struct EvalRecord {
    function: String,
    argument: String,
    value: String,
}

fn eval_cmd(function: &str, n: Option<u64>, rational: Option<&str>, fmt: OutputFormat) -> Result<CliOutput> {
    let (argument, value): (String, ExactRational) = if let Some(inner) = function.strip_prefix("mangoldt:") {
        let m = MangoldtOf::new(LAdditiveFunction::from_name(inner)?);
        match (n, rational) {
            (Some(n), None) => (n.to_string(), m.eval(n)?),
            (None, Some(_)) => {
                return Err(Error::OutOfDomain("the von Mangoldt function is defined on naturals only".into()))
            }
            _ => return Err(usage("eval takes either <n> or --rational p/q")),
        }
    } else {
        let f = LAdditiveFunction::from_name(function)?;
        match (n, rational) {
            (Some(n), None) => (n.to_string(), f.eval_natural(n)?),
            (None, Some(r)) => {
                let (p, q) = parse_positive_rational(r)?;
                (format!("{p}/{q}"), f.eval_rational(p, q)?)
            }
            _ => return Err(usage("eval takes either <n> or --rational p/q")),
        }
    };
    let out = match fmt {
        OutputFormat::Table => format!("{value}\n"),
        OutputFormat::Csv => format!("function,argument,value\n{function},{argument},{}\n", to_fraction_string(&value)),
        OutputFormat::Json => {
            to_json(&EvalRecord { function: function.to_string(), argument, value: to_fraction_string(&value) })
        }
    };
    Ok(CliOutput::ok(out))
}

#[derive(Serialize)]
struct PointRecord {
    expression: String,
    n: u64,
    value: String,
}

fn convolve_cmd(a: &str, b: &str, limit: Option<usize>, at: Option<u64>, fmt: OutputFormat) -> Result<CliOutput> {
    let ea = FunctionExpr::parse(a)?;
    let eb = FunctionExpr::parse(b)?;
    let expression = ea.clone().conv(eb.clone()).to_string();
    if let Some(n) = at {
        let v = convolve_at(&ea, &eb, n)?;
        let out = match fmt {
            OutputFormat::Table => format!("({expression})({n}) = {v}\n"),
            OutputFormat::Csv => format!("n,value\n{n},{}\n", to_fraction_string(&v)),
            OutputFormat::Json => to_json(&PointRecord { expression, n, value: to_fraction_string(&v) }),
        };
        return Ok(CliOutput::ok(out));
    }
    let limit = limit.ok_or_else(|| usage("convolve needs --limit N or --at n"))?;
    let (ta, tb) = rayon::join(|| tabulate(&ea, limit), || tabulate(&eb, limit));
    let t = dirichlet_convolve(&ta?, &tb?)?;
    let out = match fmt {
        OutputFormat::Table => {
            let mut s = format!("# {expression}\n");
            for (i, v) in t.values().iter().enumerate() {
                let _ = writeln!(s, "{:>8}  {v}", i + 1);
            }
            s
        }
        OutputFormat::Csv => t.to_csv(),
        OutputFormat::Json => to_json(&t),
    };
    Ok(CliOutput::ok(out))
}

fn report_line(r: &VerificationReport) -> String {
    match &r.mismatch {
        None => format!(
            "{:<16} holds     n <= {:<9} {} instance(s)  {:.3}s",
            r.identity, r.range, r.instances, r.elapsed_secs
        ),
        Some(m) => {
            format!("{:<16} MISMATCH  n = {} [{}]  lhs = {}  rhs = {}", r.identity, m.n, m.instance, m.lhs, m.rhs)
        }
    }
}

fn verify_csv(reports: &[VerificationReport]) -> String {
    let mut s = String::from("identity,range,holds,instances,mismatch_n,mismatch_instance,lhs,rhs,elapsed_secs\n");
    for r in reports {
        let (n, inst, lhs, rhs) = match &r.mismatch {
            Some(m) => (m.n.to_string(), m.instance.clone(), to_fraction_string(&m.lhs), to_fraction_string(&m.rhs)),
            None => Default::default(),
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.identity, r.range, r.holds, r.instances, n, inst, lhs, rhs, r.elapsed_secs
        );
    }
    s
}

fn verify_cmd(identity: &str, limit: usize, seed: u64, corrupt: Option<&str>, fmt: OutputFormat) -> Result<CliOutput> {
    let corruption = corrupt.map(verify::Corruption::parse).transpose()?;
    let all = identity == "all";
    let reports = if all {
        verify::verify_all_corrupted(limit, seed, corruption.as_ref())?
    } else {
        let id = verify::find_identity(identity, seed)?;
        vec![verify::verify_instances_corrupted(&id.name, &id.instances, limit, corruption.as_ref())?]
    };
    let code = if reports.iter().all(|r| r.holds) { 0 } else { 1 };
    let out = match fmt {
        OutputFormat::Table => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&report_line(r));
                s.push('\n');
            }
            if all {
                let failed = reports.iter().filter(|r| !r.holds).count();
                let _ = writeln!(s, "{} identities, {} failed", reports.len(), failed);
            }
            s
        }
        OutputFormat::Csv => verify_csv(&reports),
        OutputFormat::Json if all => to_json(&reports),
        OutputFormat::Json => to_json(&reports[0]),
    };
    Ok(CliOutput::with_code(code, out))
}

fn series_cmd(preset: &str, s: &str, limit: usize, primes: usize, tol: f64, fmt: OutputFormat) -> Result<CliOutput> {
    let point = ComplexPoint::parse(s)?;
    let r: SeriesCheckReport = series::check_series_identity(preset, point, limit, primes, tol)?;
    let code = if r.pass { 0 } else { 1 };
    let c = |z: num_complex::Complex64| format!("{:.16e}{:+.16e}i", z.re, z.im);
    let out = match fmt {
        OutputFormat::Table => format!(
            "preset     {}\ns          {}\nN          {}\nprimes     {}\nlhs        {}\nrhs        {}\nabs_error  {:.16e}\ntolerance  {:e}\nresult     {}\n",
            r.name,
            r.s,
            r.limit,
            r.prime_limit,
            c(r.lhs),
            c(r.rhs),
            r.abs_error,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" }
        ),
        OutputFormat::Csv => format!(
            "name,s_re,s_im,N,prime_limit,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,tolerance,pass\n{},{:.16e},{:.16e},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:e},{}\n",
            r.name,
            r.s.re(),
            r.s.im(),
            r.limit,
            r.prime_limit,
            r.lhs.re,
            r.lhs.im,
            r.rhs.re,
            r.rhs.im,
            r.abs_error,
            r.tolerance,
            r.pass
        ),
        OutputFormat::Json => to_json(&r),
    };
    Ok(CliOutput::with_code(code, out))
}

#[derive(Serialize)]
struct ListEntry {
    name: String,
    kind: &'static str,
    statement: String,
}

fn list_cmd(fmt: OutputFormat) -> Result<CliOutput> {
    let mut entries: Vec<ListEntry> = verify::catalog(verify::DEFAULT_SEED)
        .into_iter()
        .map(|id| ListEntry { name: id.name, kind: "convolution", statement: id.statement })
        .collect();
    for name in SeriesPreset::ALL_NAMES {
        let preset = SeriesPreset::from_name(&name.replace("(k)", "(2)"))?;
        let statement = match preset {
            SeriesPreset::CorSigmaK(_) => {
                "sum sigma_k(n)delta(n)/n^s = zeta(s-1) zeta(s-k-1) (F(s-1) + F(s-k-1))".to_string()
            }
            _ => preset.statement(),
        };
        entries.push(ListEntry { name: name.to_string(), kind: "series", statement });
    }
    let out = match fmt {
        OutputFormat::Table => {
            let mut s = String::new();
            for e in &entries {
                let _ = writeln!(s, "{:<16} {:<12} {}", e.name, e.kind, e.statement);
            }
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("name,kind,statement\n");
            for e in &entries {
                let _ = writeln!(s, "{},{},\"{}\"", e.name, e.kind, e.statement);
            }
            s
        }
        OutputFormat::Json => to_json(&entries),
    };
    Ok(CliOutput::ok(out))
}
