//! The `sumfree` command line.
//!
//! Every subcommand writes its result to `--output` (or stdout) and nothing
//! else; identical arguments give byte-identical output regardless of
//! `--workers`.
//!
//! Exit codes: 0 success, 1 failed checks or I/O, 2 budget exceeded,
//! 3 invalid input set, 64 usage.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumfree_core::census::{
    census_classify, census_csv, count_sum_free_bb, count_sum_free_naive, CountResult, UniverseKind,
};
use sumfree_core::granular::cover_with;
use sumfree_core::report::sig6;
use sumfree_core::sets::{find_additive_triple, Ambient, IntSet};
use sumfree_core::spectral::{choose_prime, dft};
use sumfree_core::suites::{self, Suite, SuiteConfig};
use sumfree_core::{setfile, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVALID_SET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "sumfree",
    version,
    about = "Sum-free set counting and granularization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the sum-free subsets of a universe.
    Count(CountArgs),
    /// Census rows: total, all-odd, upper-third, overlap and exceptional counts.
    Census(RangeArgs),
    /// |SF(N)| / 2^{N/2} over a range of N.
    Ratios(RangeArgs),
    /// Granularize a sum-free set and write the covering set.
    Granularize(GranularizeArgs),
    /// Dump the Fourier transform of a set over Z/pZ.
    Spectrum(SpectrumArgs),
    /// Run a seeded invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Naive,
    Bb,
}

#[derive(Debug, Clone)]
pub enum UniverseArg {
    Named(UniverseKind),
    File(PathBuf),
}

fn parse_universe(s: &str) -> Result<UniverseArg, String> {
    match s {
        "full" => Ok(UniverseArg::Named(UniverseKind::Full)),
        "odd" => Ok(UniverseArg::Named(UniverseKind::Odd)),
        "upper-third" => Ok(UniverseArg::Named(UniverseKind::UpperThird)),
        _ => s
            .strip_prefix("file:")
            .map(|p| UniverseArg::File(p.into()))
            .ok_or_else(|| format!("expected full, odd, upper-third or file:PATH, got {s:?}")),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: usize = a.parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: usize = b.parse().map_err(|_| format!("bad bound {b:?}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid range {s}"));
    }
    Ok((lo, hi))
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} must lie in (0, 1)"))
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// full, odd, upper-third, or file:PATH
    #[arg(long, default_value = "full", value_parser = parse_universe)]
    pub universe: UniverseArg,
    #[arg(long, value_enum, default_value = "bb")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range LO:HI.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<(usize, usize)>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GranularizeArgs {
    /// Set file holding a sum-free subset of [N].
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "0.25", value_parser = parse_unit)]
    pub eps1: f64,
    #[arg(long, value_parser = parse_unit, requires = "eps3")]
    pub eps2: Option<f64>,
    #[arg(long, value_parser = parse_unit, requires = "eps2")]
    pub eps3: Option<f64>,
    /// Number of progression cells (default ⌈p/16⌉).
    #[arg(long)]
    pub m: Option<usize>,
    /// Where to write the covering set.
    #[arg(long)]
    pub family_out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Set file holding a subset of [N]; transformed over the least prime in [2N, 4N].
    #[arg(long, conflicts_with = "n")]
    pub input: Option<PathBuf>,
    #[arg(long, requires = "universe")]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_universe)]
    pub universe: Option<UniverseArg>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// parseval, kernel, prop3, prop4, lemma11 or star
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "0.25", value_parser = parse_unit)]
    pub eps1: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

/// A failure carrying its exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } | Error::PartialEnumeration { .. } => EXIT_BUDGET,
            Error::NotSumFree { .. } | Error::Parse { .. } | Error::ZeroInInterval => {
                EXIT_INVALID_SET
            }
            Error::OutOfUniverse { .. } => EXIT_INVALID_SET,
            Error::InvalidArgument(_) => EXIT_USAGE,
            Error::Io(_) => EXIT_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_FAILED,
            message: e.to_string(),
        }
    }
}

/// Output of a successful run; `code` is nonzero when checks failed.
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

fn ok(body: String) -> Result<Outcome, Failure> {
    Ok(Outcome {
        code: EXIT_OK,
        body,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn in_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        builder = builder.num_threads(workers);
    }
    builder.build().expect("thread pool").install(job)
}

fn load_universe(arg: &UniverseArg, n: Option<usize>) -> Result<(IntSet, UniverseKind), Failure> {
    match arg {
        UniverseArg::Named(kind) => {
            let n = n.ok_or_else(|| Failure::usage("--n is required for named universes"))?;
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            Ok((kind.build(n).expect("named"), *kind))
        }
        UniverseArg::File(path) => Ok((
            setfile::read(path, Ambient::Interval)?,
            UniverseKind::Custom,
        )),
    }
}

fn render_count(r: &CountResult, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => format!(
            "N,universe,universe_size,method,count,node_visits\n{},{},{},{},{},{}\n",
            r.n,
            r.universe.name(),
            r.universe_size,
            r.method.name(),
            r.count,
            r.node_visits
        ),
        Format::Text => format!(
            "N={}\nuniverse={}\nuniverse_size={}\nmethod={}\ncount={}\nnode_visits={}\n",
            r.n,
            r.universe.name(),
            r.universe_size,
            r.method.name(),
            r.count,
            r.node_visits
        ),
    }
}

fn cmd_count(args: &CountArgs) -> Result<Outcome, Failure> {
    let (universe, kind) = load_universe(&args.universe, args.n)?;
    let w = args.common.workers;
    let mut result = match args.method {
        MethodArg::Naive => count_sum_free_naive(&universe, w)?,
        MethodArg::Bb => count_sum_free_bb(&universe, w)?,
    };
    result.universe = kind;
    ok(render_count(
        &result,
        args.common.format.unwrap_or(Format::Text),
    ))
}

fn range_of(args: &RangeArgs) -> Result<(usize, usize), Failure> {
    match (args.n, args.n_range) {
        (Some(0), _) => Err(Failure::usage("--n must be at least 1")),
        (Some(n), _) => Ok((n, n)),
        (None, Some(r)) => Ok(r),
        (None, None) => Err(Failure::usage("give --n or --n-range")),
    }
}

fn cmd_census(args: &RangeArgs) -> Result<Outcome, Failure> {
    let (lo, hi) = range_of(args)?;
    let records = (lo..=hi)
        .map(|n| census_classify(n, args.common.workers))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => census_csv(&records),
        Format::Json => json(&records),
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                writeln!(
                    s,
                    "N={} total={} odd_only={} upper_third={} overlap={} exceptional={} ratio={} exceptional_ratio={}",
                    r.n,
                    r.total,
                    r.odd_only,
                    r.upper_third,
                    r.overlap,
                    r.exceptional,
                    sig6(r.ratio),
                    sig6(r.exceptional_ratio)
                )
                .expect("String write");
            }
            s
        }
    };
    ok(body)
}

fn cmd_ratios(args: &RangeArgs) -> Result<Outcome, Failure> {
    let (lo, hi) = range_of(args)?;
    let records = (lo..=hi)
        .map(|n| census_classify(n, args.common.workers))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => census_csv(&records),
        Format::Json => json(&records),
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let parity = if r.n % 2 == 0 { "even" } else { "odd" };
                writeln!(s, "N={} ratio={} parity={parity}", r.n, sig6(r.ratio))
                    .expect("String write");
            }
            s
        }
    };
    ok(body)
}

fn cmd_granularize(args: &GranularizeArgs) -> Result<Outcome, Failure> {
    let a = setfile::read(&args.input, Ambient::Interval)?;
    if let Some(t) = find_additive_triple(&a) {
        return Err(Failure {
            code: EXIT_INVALID_SET,
            message: format!("input set is not sum-free: {t}"),
        });
    }
    let n = a.n().max(1);
    let ctx = choose_prime(n)?;
    let eps23 = args.eps2.zip(args.eps3);
    let witness = in_pool(args.common.workers, || {
        cover_with(&a, &ctx, args.eps1, eps23, args.m)
    })?;
    assert!(a.is_subset(&witness.member));
    if let Some(path) = &args.family_out {
        setfile::write(path, &witness.member)?;
    }
    ok(json(&witness.report()))
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<Outcome, Failure> {
    let a = match (&args.input, &args.universe) {
        (Some(path), _) => setfile::read(path, Ambient::Interval)?,
        (None, Some(u)) => load_universe(u, args.n)?.0,
        (None, None) => return Err(Failure::usage("give --input or --n with --universe")),
    };
    let ctx = choose_prime(a.n().max(1))?;
    let s = dft(&a.embed_mod(ctx.p())?, &ctx)?;
    ok(s.to_csv())
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let suite = Suite::parse(&args.suite).map_err(|e| Failure::usage(e.to_string()))?;
    let cfg = SuiteConfig {
        trials: args.trials,
        seed: args.seed,
        n: args.n.unwrap_or(suite.default_n()),
        eps1: args.eps1,
    };
    let report = in_pool(args.workers, || suites::run(suite, &cfg))?;
    let body = match args.format.unwrap_or(Format::Text) {
        Format::Json => json(&report),
        _ => report.render(),
    };
    Ok(Outcome {
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
        body,
    })
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Count(a) => a.common.output.as_ref(),
        Command::Census(a) | Command::Ratios(a) => a.common.output.as_ref(),
        Command::Granularize(a) => a.common.output.as_ref(),
        Command::Spectrum(a) => a.output.as_ref(),
        Command::Verify(a) => a.output.as_ref(),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let outcome = match &cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Census(a) => cmd_census(a),
        Command::Ratios(a) => cmd_ratios(a),
        Command::Granularize(a) => cmd_granularize(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
    }?;
    if let Some(path) = output_path(&cli.command) {
        std::fs::write(path, &outcome.body)?;
        return Ok(Outcome {
            code: outcome.code,
            body: String::new(),
        });
    }
    Ok(outcome)
}

/// Parses `args` (program name first), runs, and writes to the given streams.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let stream: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if stdout.write_all(outcome.body.as_bytes()).is_err() {
                return EXIT_FAILED;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "sumfree: {}", f.message);
            f.code
        }
    }
}
