//! Command-line front end. `run_cli` returns the process exit code:
//! 0 success, 1 usage error, 2 data error, 3 verification failure.

use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith;
use crate::coeffs::{CoefficientTable, Sign};
use crate::curves::{self, ApTable, EllipticCurve};
use crate::density::{self, Normalization, Predicate};
use crate::error::Error;
use crate::integrality;
use crate::io::{self, fmt_float, LoadedCurve};
use crate::measures::{self, Interval, MeasureKind};
use crate::series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "GMF_THREADS";

#[derive(Debug, Parser)]
#[command(name = "gmf", version, about = "q-exponents of generalized modular functions from elliptic curves")]
struct Cli {
    /// Omit timestamps so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    reproducible: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Point-count a_p for all good primes up to a bound.
    ApCompute {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Build b(n), c(n) up to N and write a coefficient cache.
    Coeffs {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        cache: PathBuf,
    },
    /// Empirical densities with convergence checkpoints.
    Density(DensityArgs),
    /// CM interval density for c(p)√p/2; rejects intervals touching the atom at 0.
    CmInterval {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        interval: Vec<f64>,
        /// Treat the interval as closed; otherwise it is (LO, HI].
        #[arg(long)]
        closed: bool,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Scan for primes with c(p) zero or a nonzero integer.
    Integrality(IntegralityArgs),
    /// Check q·f'/f = g exactly up to a given order.
    VerifySeries {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        order: usize,
        /// Also write the coefficients a(n) of f as `n,num,den`.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Re-emit a density report as CSV or JSON.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SourceArgs {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long)]
    bound: u64,
    /// Read a_p from a `p,ap` CSV instead of point counting.
    #[arg(long)]
    ap_table: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IntegralityArgs {
    #[arg(long, required_unless_present = "cache")]
    curve: Option<PathBuf>,
    #[arg(long, required_unless_present = "cache")]
    bound: Option<u64>,
    #[arg(long, conflicts_with = "cache")]
    ap_table: Option<PathBuf>,
    /// Scan a coefficient cache written by `coeffs` instead of a curve.
    #[arg(long, conflicts_with_all = ["curve", "bound"])]
    cache: Option<PathBuf>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum)]
    sign: Option<SignArg>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    norm: Option<NormArg>,
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[arg(long = "res", allow_negative_numbers = true)]
    residue: Option<i64>,
    /// Comma-separated ascending bounds; defaults to powers of ten up to the bound.
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
    Zero,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormArg {
    B1,
    C1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Pos => Sign::Pos,
            SignArg::Neg => Sign::Neg,
            SignArg::Zero => Sign::Zero,
        }
    }
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::B1 => Normalization::B1,
            NormArg::C1 => Normalization::C1,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn verify(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TheoremContradiction { .. } => EXIT_VERIFY,
            Error::AtomAmbiguity(_)
            | Error::InvalidInterval(_)
            | Error::NotCoprime { .. }
            | Error::BadCheckpoints { .. } => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the chosen subcommand.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> CliResult {
    let stamp = (!cli.reproducible).then(timestamp);
    match cli.command {
        Command::ApCompute { curve, bound, out } => {
            let loaded = io::load_curve(&curve)?;
            let table = compute_ap(&loaded.curve, bound)?;
            let w = io::create_output(&out)?;
            io::write_ap_csv(&table, w).map_err(|e| io::write_failed(&out, e))?;
            Ok(())
        }
        Command::Coeffs { curve, bound, cache } => {
            let loaded = io::load_curve(&curve)?;
            let table = build_table(&loaded, bound)?;
            let label = loaded.curve.label().unwrap_or("unlabeled").to_string();
            let w = io::create_output(&cache)?;
            io::write_cache(&table, &label, w).map_err(|e| io::write_failed(&cache, e))?;
            Ok(())
        }
        Command::Density(args) => run_density(args),
        Command::CmInterval {
            source,
            interval,
            closed,
            out,
        } => {
            let (loaded, table) = load_source(&source)?;
            if !loaded.curve.is_cm() {
                return Err(Error::NotCm.into());
            }
            let interval = Interval::new(interval[0], interval[1], closed, true)?;
            let (empirical, theoretical) = density::cm_interval_density(&table, source.bound, &interval)?;
            let mut w = io::create_output(&out)?;
            writeln!(w, "interval,x,empirical,theoretical,deviation")
                .and_then(|_| {
                    writeln!(
                        w,
                        "\"{interval}\",{},{},{},{}",
                        source.bound,
                        fmt_float(empirical),
                        fmt_float(theoretical),
                        fmt_float((empirical - theoretical).abs())
                    )
                })
                .map_err(|e| io::write_failed(&out, e))?;
            Ok(())
        }
        Command::Integrality(IntegralityArgs {
            curve,
            bound,
            ap_table,
            cache,
            out,
        }) => {
            let result = match (cache, curve, bound) {
                (Some(path), _, _) => {
                    let (_, table) = io::read_cache(&path)?;
                    integrality::scan(&table, table.bound())?
                }
                (None, Some(curve), Some(bound)) => {
                    let (_, table) = load_source(&SourceArgs { curve, bound, ap_table })?;
                    integrality::scan(&table, bound)?
                }
                _ => unreachable!("clap enforces --curve and --bound without --cache"),
            };
            let mut json = result.to_json();
            if let Some(t) = stamp {
                json["generated_at"] = t.into();
            }
            let mut w = io::create_output(&out)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&json).expect("json"))
                .map_err(|e| io::write_failed(&out, e))?;
            Ok(())
        }
        Command::VerifySeries { curve, order, dump } => {
            let loaded = io::load_curve(&curve)?;
            let table = build_table(&loaded, order as u64)?;
            if let Some(path) = &dump {
                let f = series::product_expand(table.c_values(), order)?;
                let w = io::create_output(path)?;
                io::write_series_csv(&f, w).map_err(|e| io::write_failed(path, e))?;
            }
            let check = series::roundtrip_verify(&table, order)?;
            match check.first_mismatch {
                None => {
                    println!("round trip exact through q^{order}");
                    Ok(())
                }
                Some(k) => Err(Failure::verify(format!("round trip fails at coefficient {k}"))),
            }
        }
        Command::Report { input, format, out } => {
            let rows = io::read_report_csv(&input)?;
            let mut w = io::create_output(&out)?;
            match format {
                ReportFormat::Csv => io::write_report_csv(&rows, w),
                ReportFormat::Json => {
                    let mut json = serde_json::json!({ "rows": io::report_json(&rows) });
                    if let Some(t) = stamp {
                        json["generated_at"] = t.into();
                    }
                    writeln!(w, "{}", serde_json::to_string_pretty(&json).expect("json"))
                }
            }
            .map_err(|e| io::write_failed(&out, e))?;
            Ok(())
        }
    }
}

fn run_density(args: DensityArgs) -> CliResult {
    let (loaded, table) = load_source(&args.source)?;
    let kind = if loaded.curve.is_cm() {
        MeasureKind::DeuringCm
    } else {
        MeasureKind::SatoTate
    };
    let interval = match &args.interval {
        Some(v) => Interval::closed(v[0], v[1])?,
        None => Interval::full(),
    };
    let mut predicates: Vec<(Predicate, f64)> = Vec::new();
    match (args.sign, &args.interval, args.modulus, args.residue) {
        (Some(_), _, Some(_), _) | (Some(_), Some(_), _, _) => {
            return Err(Failure::usage("--sign cannot be combined with --interval or --mod"));
        }
        (_, _, Some(_), None) | (_, _, None, Some(_)) => {
            return Err(Failure::usage("--mod and --res must be given together"));
        }
        (Some(sign), None, None, None) => {
            let sign = Sign::from(sign);
            predicates.push((Predicate::Sign(sign), measures::theoretical_sign_density(kind, sign)));
        }
        (None, _, Some(q), Some(a)) => {
            let norm = args.norm.map_or(Normalization::C1, Normalization::from);
            let predicate = Predicate::progression(q, a, interval, norm)?;
            predicates.push((predicate, kind.mass(&interval) / arith::euler_phi(q) as f64));
        }
        (None, Some(_), None, None) => {
            let norm = args.norm.map_or(Normalization::B1, Normalization::from);
            predicates.push((Predicate::Interval { interval, norm }, kind.mass(&interval)));
        }
        (None, None, None, None) => {
            for sign in [Sign::Pos, Sign::Neg, Sign::Zero] {
                predicates.push((Predicate::Sign(sign), measures::theoretical_sign_density(kind, sign)));
            }
        }
    }
    let checkpoints = args
        .checkpoints
        .clone()
        .unwrap_or_else(|| density::default_checkpoints(args.source.bound));
    let mut rows = Vec::new();
    for (predicate, theoretical) in &predicates {
        rows.extend(density::convergence_report(&table, &checkpoints, predicate, *theoretical)?.rows);
    }
    let w = io::create_output(&args.out)?;
    io::write_report_csv(&rows, w).map_err(|e| io::write_failed(&args.out, e))?;
    Ok(())
}

fn load_source(source: &SourceArgs) -> Result<(LoadedCurve, ApTable), Failure> {
    let loaded = io::load_curve(&source.curve)?;
    let table = match &source.ap_table {
        Some(path) => {
            let values = io::import_ap_csv(path)?;
            ApTable::from_entries(&loaded.curve, source.bound, values)?
        }
        None => compute_ap(&loaded.curve, source.bound)?,
    };
    Ok((loaded, table))
}

fn build_table(loaded: &LoadedCurve, bound: u64) -> Result<CoefficientTable, Failure> {
    let ap = compute_ap(&loaded.curve, bound)?;
    Ok(CoefficientTable::build(&ap, &loaded.overrides, bound)?)
}

/// Point counts on a rayon pool sized by `GMF_THREADS` when set.
fn compute_ap(curve: &EllipticCurve, bound: u64) -> Result<ApTable, Failure> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::usage(format!("{THREADS_ENV}={v:?} is not a thread count")))?,
        Err(_) => 0,
    };
    if threads == 1 {
        return Ok(curves::ap_table(curve, bound));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(pool.install(|| curves::ap_table_parallel(curve, bound)))
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or_default()
}

