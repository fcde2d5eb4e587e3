//! Batch command-line front end.
//!
//! Parsing and execution live here so the binary stays a thin wrapper and
//! every command can be driven from tests with an in-memory writer.

pub mod cache;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{
    compute_rho, estimate_rk, scaled_count, solve_quartic, subexp_factor, ComplexNumber,
    GrowthReport, QuarticProblem, PUBLISHED_GROWTH, R3,
};
use crate::count::Count;
use crate::error::Error;
use crate::oracle::{enumerate_count, EnumSpec, DEFAULT_BUDGET};
use crate::powerseries::{
    default_order, verify_bessel_egf, verify_functional_equation, verify_laplace_identity,
    verify_phi_identity, IdentityReport,
};
use crate::structures::{isolated_histogram, structure_counts, StructureCount};
use cache::{CountCache, Key, Kind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Laplace,
    Functional,
    Phi,
    Bessel,
    All,
}

/// Exact enumeration and asymptotics of k-noncrossing RNA structures with
/// arc-length >= 3.
#[derive(Debug, Parser)]
#[command(name = "crossing-count", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Persistent count cache (CSV).
    #[arg(long, env = "CROSSING_COUNT_CACHE", global = true)]
    pub cache: Option<PathBuf>,

    /// Search-node budget for `oracle`.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact S_{k,3}(n), or S_{k,3}(n, ell) with --ell.
    Count {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Exact vs. asymptotic subexponential factors for k = 3.
    Table(TableArgs),
    /// r_k, rho_k, 1/rho_k and the singularities induced by theta(z) = ±r_k.
    Growth {
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Largest m in f_k(2m, 0) used to estimate r_k (k > 3).
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// Exact count and asymptotic approximation of S_{3,3}(n).
    Asym {
        #[arg(long)]
        n: usize,
    },
    /// Check generating-function identities to a finite order.
    Verify {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        order: Option<usize>,
        /// Index of phi_n; `all` checks n = 0..=5.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Brute-force count of diagrams straight from the definition.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        min_arc: usize,
        /// Report a histogram over the number of isolated vertices.
        #[arg(long)]
        by_isolated: bool,
    },
    /// Roots of A x^4 + B x^3 + C x^2 + D x + E.
    Roots {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<f64>,
    },
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 100)]
    pub n_max: usize,
    #[arg(long, default_value_t = 10)]
    pub step: usize,
    #[arg(long, default_value_t = PUBLISHED_GROWTH, conflicts_with = "computed_base")]
    pub base: f64,
    /// Use the computed 1/rho_3 instead of --base.
    #[arg(long)]
    pub computed_base: bool,
    /// Significant digits in text output.
    #[arg(long, default_value_t = 4)]
    pub digits: usize,
}

/// Failure of a command, carrying the exit code it maps to.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Scientific notation with `digits` significant digits, e.g. `3.016e-4`.
pub fn sci(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Round to `digits` significant digits.
fn round_sig(x: f64, digits: usize) -> f64 {
    sci(x, digits).parse().unwrap_or(x)
}

const MACHINE_DIGITS: usize = 6;

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn open_cache(cfg: &RunConfig, err: &mut dyn Write) -> Option<CountCache> {
    let cache = CountCache::open(cfg.cache.as_ref()?);
    for w in &cache.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Some(cache)
}

fn store(cache: &mut Option<CountCache>, items: Vec<(Key, Count)>, err: &mut dyn Write) {
    if let Some(c) = cache {
        if let Err(e) = c.store(items) {
            let _ = writeln!(err, "warning: cannot write cache: {e}");
        }
    }
}

/// `S_{k,3}(n)` for `n` in `ns`, served from the cache where possible.
fn structure_values(
    k: usize,
    ns: &[usize],
    cache: &mut Option<CountCache>,
    err: &mut dyn Write,
) -> CliResult<Vec<Count>> {
    let key = |n| Key { kind: Kind::S, k, n, ell: None };
    if let Some(c) = cache {
        if let Some(hit) = ns.iter().map(|&n| c.get(&key(n)).cloned()).collect::<Option<Vec<_>>>() {
            return Ok(hit);
        }
    }
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let all = structure_counts(k, n_max)?;
    let picked: Vec<Count> = ns.iter().map(|&n| all[n].clone()).collect();
    store(cache, ns.iter().map(|&n| key(n)).zip(picked.iter().cloned()).collect(), err);
    Ok(picked)
}

fn check_k(k: usize) -> CliResult<()> {
    if k < 3 {
        return Err(CliError::Usage(format!("--k must be at least 3, got {k}")));
    }
    Ok(())
}

fn cmd_count(cfg: &RunConfig, k: usize, n: usize, ell: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    check_k(k)?;
    let mut cache = open_cache(cfg, err);
    let count = match ell {
        None => structure_values(k, &[n], &mut cache, err)?.remove(0),
        Some(l) => {
            if l > n {
                return Err(CliError::Usage(format!("--ell {l} exceeds --n {n}")));
            }
            let key = Key { kind: Kind::S, k, n, ell: Some(l) };
            match cache.as_ref().and_then(|c| c.get(&key)).cloned() {
                Some(c) => c,
                None => {
                    let c = isolated_histogram(k, n)?.swap_remove(l);
                    store(&mut cache, vec![(key, c.clone())], err);
                    c
                }
            }
        }
    };
    let sc = StructureCount { k, n, ell, count };
    match cfg.format {
        Format::Text => writeln!(out, "{}", sc.count)?,
        Format::Json => write_json(out, &sc)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["k", "n", "ell", "count"])?;
            w.write_record([
                k.to_string(),
                n.to_string(),
                ell.map(|l| l.to_string()).unwrap_or_default(),
                sc.count.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRowOut {
    pub n: usize,
    pub exact: f64,
    pub asymptotic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOut {
    pub base: f64,
    pub rows: Vec<TableRowOut>,
}

fn cmd_table(cfg: &RunConfig, args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    if args.step == 0 || args.n_max < args.step {
        return Err(CliError::Usage(format!(
            "need --n-max >= --step >= 1, got --n-max {} --step {}",
            args.n_max, args.step
        )));
    }
    let base = if args.computed_base {
        compute_rho(3, R3)?.growth_rate
    } else {
        args.base
    };
    if !(base >= 1.0 && base.is_finite()) {
        return Err(CliError::Usage(format!("--base must be >= 1, got {base}")));
    }
    let ns: Vec<usize> = (args.step..=args.n_max).step_by(args.step).collect();
    let mut cache = open_cache(cfg, err);
    let counts = structure_values(3, &ns, &mut cache, err)?;
    let rows: Vec<TableRowOut> = ns
        .iter()
        .zip(&counts)
        .map(|(&n, c)| TableRowOut {
            n,
            exact: scaled_count(c, n, base),
            asymptotic: subexp_factor(n).ok(),
        })
        .collect();

    match cfg.format {
        Format::Text => {
            let d = args.digits.max(1);
            writeln!(out, "{:>6}  {:>14}  {:>14}", "n", "S/base^n", "s(n)")?;
            for r in &rows {
                let asym = r.asymptotic.map(|a| sci(a, d)).unwrap_or_else(|| "-".into());
                writeln!(out, "{:>6}  {:>14}  {:>14}", r.n, sci(r.exact, d), asym)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "exact", "asymptotic"])?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    sci(r.exact, MACHINE_DIGITS),
                    r.asymptotic.map(|a| sci(a, MACHINE_DIGITS)).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let table = TableOut {
                base,
                rows: rows
                    .into_iter()
                    .map(|r| TableRowOut {
                        n: r.n,
                        exact: round_sig(r.exact, MACHINE_DIGITS),
                        asymptotic: r.asymptotic.map(|a| round_sig(a, MACHINE_DIGITS)),
                    })
                    .collect(),
            };
            write_json(out, &table)?;
        }
    }
    Ok(EXIT_OK)
}

fn fmt_complex(z: &ComplexNumber) -> String {
    if z.im.abs() < 5e-11 {
        format!("{:.10}", z.re)
    } else {
        format!("{:.10} {} {:.10}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

fn cmd_growth(cfg: &RunConfig, k: usize, n_max: usize, out: &mut dyn Write) -> CliResult<i32> {
    check_k(k)?;
    let (r_k, source) = if k == 3 {
        (R3, "exact".to_string())
    } else {
        let e = estimate_rk(k, n_max)?;
        (e.value, format!("estimated, ±{:.1e}", e.error_bound))
    };
    let report: GrowthReport = compute_rho(k, r_k)?;
    match cfg.format {
        Format::Text => {
            writeln!(out, "k           {}", report.k)?;
            writeln!(out, "r_k         {:.10} ({source})", report.r_k)?;
            writeln!(out, "rho_k       {:.10}", report.rho_k)?;
            writeln!(out, "1/rho_k     {:.10}", report.growth_rate)?;
            writeln!(out, "residual    {:.3e}", report.residual)?;
            writeln!(out, "singularities (theta(z) = +r_k, then -r_k):")?;
            for z in &report.all_roots {
                writeln!(out, "  {}", fmt_complex(z))?;
            }
        }
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["k", "r_k", "rho_k", "growth_rate", "residual"])?;
            w.write_record([
                report.k.to_string(),
                report.r_k.to_string(),
                report.rho_k.to_string(),
                report.growth_rate.to_string(),
                report.residual.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymOut {
    pub n: usize,
    pub count: Count,
    /// `S_{3,3}(n) / 4.54920^n`
    pub exact: f64,
    /// `K' 4! / (n)_5`
    pub asymptotic: Option<f64>,
    /// `S_{3,3}(n) rho_3^n (n)_5 / 4!`
    pub kprime: Option<f64>,
}

fn cmd_asym(cfg: &RunConfig, n: usize, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let mut cache = open_cache(cfg, err);
    let count = structure_values(3, &[n], &mut cache, err)?.remove(0);
    let rho = compute_rho(3, R3)?.rho_k;
    let kprime = (n >= 5).then(|| {
        let falling: f64 = (0..5).map(|i| ((n - i) as f64).ln()).sum();
        (count.ln() + n as f64 * rho.ln() + falling - 24f64.ln()).exp()
    });
    let report = AsymOut {
        n,
        exact: scaled_count(&count, n, PUBLISHED_GROWTH),
        asymptotic: subexp_factor(n).ok(),
        kprime,
        count,
    };
    let opt = |v: Option<f64>| v.map(|x| sci(x, MACHINE_DIGITS)).unwrap_or_default();
    match cfg.format {
        Format::Text => {
            writeln!(out, "n             {}", report.n)?;
            writeln!(out, "S_3,3(n)      {}", report.count)?;
            writeln!(out, "S/4.54920^n   {}", sci(report.exact, MACHINE_DIGITS))?;
            writeln!(out, "s_3,3(n)      {}", opt(report.asymptotic))?;
            writeln!(out, "K'(n)         {}", opt(report.kprime))?;
        }
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "count", "exact", "asymptotic", "kprime"])?;
            w.write_record([
                report.n.to_string(),
                report.count.to_string(),
                sci(report.exact, MACHINE_DIGITS),
                opt(report.asymptotic),
                opt(report.kprime),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn bessel_default_order(k: usize) -> usize {
    if k <= 3 {
        16
    } else {
        12
    }
}

fn cmd_verify(
    cfg: &RunConfig,
    which: Which,
    k: usize,
    order: Option<usize>,
    n: Option<usize>,
    out: &mut dyn Write,
) -> CliResult<i32> {
    check_k(k)?;
    let mut reports: Vec<IdentityReport> = Vec::new();
    let wants = |w: Which| which == w || which == Which::All;
    if wants(Which::Laplace) {
        reports.push(verify_laplace_identity(k, order.unwrap_or(default_order(k)))?);
    }
    if wants(Which::Functional) {
        reports.push(verify_functional_equation(k, order.unwrap_or(default_order(k)))?);
    }
    if wants(Which::Bessel) {
        reports.push(verify_bessel_egf(k, order.unwrap_or(bessel_default_order(k)))?);
    }
    if wants(Which::Phi) {
        let ns: Vec<usize> = match n {
            Some(n) => vec![n],
            None => (0..=5).collect(),
        };
        for n in ns {
            reports.push(verify_phi_identity(n, order.unwrap_or(15))?);
        }
    }

    match cfg.format {
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["identity", "parameter", "order", "holds", "first_mismatch"])?;
            for r in &reports {
                w.write_record([
                    r.identity.to_string(),
                    r.parameter.to_string(),
                    r.order.to_string(),
                    r.holds().to_string(),
                    r.first_mismatch.as_ref().map(|m| m.index.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(if reports.iter().all(IdentityReport::holds) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleOut {
    pub n: usize,
    pub k: usize,
    pub min_arc: usize,
    pub total: Count,
    pub histogram: Option<Vec<Count>>,
}

fn cmd_oracle(cfg: &RunConfig, n: usize, k: usize, min_arc: usize, by_isolated: bool, out: &mut dyn Write) -> CliResult<i32> {
    let mut spec = EnumSpec::new(n, min_arc, k).with_budget(cfg.budget);
    spec.by_isolated = by_isolated;
    let e = enumerate_count(&spec)?;
    let report = OracleOut {
        n,
        k,
        min_arc,
        total: e.total,
        histogram: e.histogram,
    };
    match cfg.format {
        Format::Text => {
            writeln!(out, "{}", report.total)?;
            if let Some(h) = &report.histogram {
                for (ell, c) in h.iter().enumerate() {
                    writeln!(out, "ell={ell} {c}")?;
                }
            }
        }
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "k", "min_arc", "ell", "count"])?;
            let base = [n.to_string(), k.to_string(), min_arc.to_string()];
            match &report.histogram {
                None => w.write_record(base.iter().cloned().chain([String::new(), report.total.to_string()]))?,
                Some(h) => {
                    for (ell, c) in h.iter().enumerate() {
                        w.write_record(base.iter().cloned().chain([ell.to_string(), c.to_string()]))?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_roots(cfg: &RunConfig, coeffs: &[f64], out: &mut dyn Write) -> CliResult<i32> {
    let [a, b, c, d, e] = coeffs else {
        return Err(CliError::Usage(format!("--coeffs needs 5 values, got {}", coeffs.len())));
    };
    let q = QuarticProblem::new(*a, *b, *c, *d, *e)?;
    // `+ 0.0` turns negative zeros into positive ones for stable output
    let roots = solve_quartic(&q)?.map(|z| ComplexNumber::new(z.re + 0.0, z.im + 0.0));
    match cfg.format {
        Format::Text => {
            for z in &roots {
                writeln!(out, "{}", fmt_complex(z))?;
            }
        }
        Format::Json => write_json(out, &roots)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["re", "im"])?;
            for z in &roots {
                w.write_record([z.re.to_string(), z.im.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

/// Run a parsed command; returns the process exit code.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cfg.command {
        Command::Count { k, n, ell } => cmd_count(cfg, *k, *n, *ell, out, err),
        Command::Table(args) => cmd_table(cfg, args, out, err),
        Command::Growth { k, n_max } => cmd_growth(cfg, *k, *n_max, out),
        Command::Asym { n } => cmd_asym(cfg, *n, out, err),
        Command::Verify { which, k, order, n } => cmd_verify(cfg, *which, *k, *order, *n, out),
        Command::Oracle { n, k, min_arc, by_isolated } => cmd_oracle(cfg, *n, *k, *min_arc, *by_isolated, out),
        Command::Roots { coeffs } => cmd_roots(cfg, coeffs, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => execute(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}
