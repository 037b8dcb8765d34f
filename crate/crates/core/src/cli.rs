//! The `integen` command line: `generate`, `verify` and `stats`.
//!
//! Exit codes are 0 on success, 1 on runtime or verification failure and
//! 2 on usage errors. Data goes to standard output (or `--out`), logs to
//! standard error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::dataset::{dataset_stats, read_jsonl, write_jsonl, Record};
use crate::generator::{generate, ExtensionChoice, GenConfig, Method};
use crate::verifier::verify_dataset;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable read when `--seed` is absent.
pub const SEED_ENV: &str = "INTEGEN_SEED";

#[derive(Parser, Debug)]
#[command(name = "integen", version, about = "Generate and verify elementary-integrable pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write seeded (integrand, integral) pairs as JSON Lines.
    Generate(GenerateArgs),
    /// Re-verify every record of a JSON Lines file.
    Verify(VerifyArgs),
    /// Length and uniqueness statistics of a JSON Lines file.
    Stats(StatsArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Number of pairs.
    #[arg(long)]
    count: usize,
    /// Master seed; falls back to $INTEGEN_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// poly, sqfree, hermite or mixed; omitted means a third each of
    /// poly, rational and mixed.
    #[arg(long, value_parser = parse_method)]
    method: Option<Method>,
    /// log, exp or random.
    #[arg(long, default_value = "random", value_parser = parse_extension)]
    extension: ExtensionChoice,
    #[arg(long, default_value_t = 1)]
    tower_height: usize,
    #[arg(long, default_value_t = 4)]
    max_theta_degree: usize,
    #[arg(long, default_value_t = 3)]
    max_factors: usize,
    /// Arctangent factors; defaults to on unless --extension exp.
    #[arg(long)]
    arctan_factors: Option<bool>,
    /// Worker threads; output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Input file, `-` for standard input.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Input file, `-` for standard input.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 10)]
    closeness_threshold: usize,
    /// Also write the length histogram as CSV to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print the statistics as JSON instead of aligned text.
    #[arg(long)]
    json: bool,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_extension(s: &str) -> Result<ExtensionChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    fn runtime(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_FAILURE, msg: msg.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::runtime(format!("i/o error: {e}"))
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats(a) => cmd_stats(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("integen: {}", f.msg);
            f.code
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Err(Failure::usage(format!("no seed: pass --seed or set {SEED_ENV}"))),
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::usage("--threads must be positive")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::runtime(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>, Failure> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let f = File::open(path)
        .map_err(|e| Failure::runtime(format!("cannot open {}: {e}", path.display())))?;
    Ok(Box::new(BufReader::new(f)))
}

fn read_records(path: &Path) -> Result<Vec<Result<Record, String>>, Failure> {
    Ok(read_jsonl(open_input(path)?)?)
}

fn cmd_generate(a: GenerateArgs) -> Result<i32, Failure> {
    let seed = resolve_seed(a.seed)?;
    let arctan_default = a.extension != ExtensionChoice::Exp;
    let cfg = GenConfig {
        seed,
        method: a.method,
        extension_kind: a.extension,
        tower_height: a.tower_height,
        max_theta_degree: a.max_theta_degree,
        max_factor_count: a.max_factors,
        arctan_factors: a.arctan_factors.unwrap_or(arctan_default),
        ..GenConfig::default()
    };
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;

    let start = Instant::now();
    let pairs = with_threads(a.threads, || generate(&cfg, a.count))?
        .map_err(|e| Failure::runtime(e.to_string()))?;
    let records: Vec<Record> =
        pairs.iter().enumerate().map(|(i, p)| Record::from_pair(i as u64, p)).collect();
    let unverified = records.iter().filter(|r| !r.verified).count();

    match &a.out {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| Failure::runtime(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(f);
            write_jsonl(&mut w, &records)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_jsonl(&mut w, &records)?;
            w.flush()?;
        }
    }
    eprintln!("generated {} pairs in {:.2?}", records.len(), start.elapsed());
    if unverified > 0 {
        return Err(Failure::runtime(format!("{unverified} pairs failed self-verification")));
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, Failure> {
    let records = read_records(&a.input)?;
    let ids: Vec<String> = records
        .iter()
        .enumerate()
        .map(|(i, r)| r.as_ref().map_or_else(|_| format!("#{i}"), |r| r.id.to_string()))
        .collect();
    let pairs: Vec<_> = records
        .into_iter()
        .map(|r| r.and_then(|r| r.exprs().map_err(|e| format!("record {}: {e}", r.id))))
        .collect();
    let start = Instant::now();
    let summary = with_threads(a.threads, || verify_dataset(&pairs))?;
    for o in summary.outcomes.iter().filter(|o| !o.passed) {
        eprintln!("record {}: {}", ids[o.index], o.reason.as_deref().unwrap_or("failed"));
    }
    println!("{} pass, {} fail", summary.passed, summary.failed);
    eprintln!("verified {} records in {:.2?}", pairs.len(), start.elapsed());
    Ok(if summary.all_passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_stats(a: StatsArgs) -> Result<i32, Failure> {
    let records = read_records(&a.input)?;
    let mut pairs = Vec::with_capacity(records.len());
    for r in records {
        let r = r.map_err(Failure::runtime)?;
        let p = r.exprs().map_err(|e| Failure::runtime(format!("record {}: {e}", r.id)))?;
        pairs.push(p);
    }
    let stats =
        dataset_stats(&pairs, a.closeness_threshold).map_err(|e| Failure::runtime(e.to_string()))?;
    if a.json {
        let s = serde_json::to_string_pretty(&stats)
            .map_err(|e| Failure::runtime(format!("json: {e}")))?;
        println!("{s}");
    } else {
        print!("{}", stats.to_text());
    }
    if let Some(path) = &a.csv {
        std::fs::write(path, stats.to_csv())
            .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}
