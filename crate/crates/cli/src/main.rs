//! `lassalle`: compute and check rows of the refined Lassalle sequence.

mod cache_file;
mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use lassalle_core::engine::{self, GapMultiset, MemoCache};
use lassalle_core::sequence::{self, SequenceReport, Verdict};
use lassalle_core::{orient, selftest, stacksort};

use crate::render::Format;

/// Exit status: 0 all checks hold, 1 a property or oracle check failed,
/// 2 usage or input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Violation = 1,
    Usage = 2,
}

const DEFAULT_MATCHING_MAX_K: u32 = 5;
const LARGE_MATCHING_MAX_K: u32 = 7;
const LARGE_STACKSORT_BOUND: usize = 11;

#[derive(Debug, Parser)]
#[command(name = "lassalle", version, about = "Exact rows A_{k+1}(l) of the refined Lassalle sequence")]
struct Cli {
    /// Memo cache file; read at startup if present, rewritten atomically at exit.
    #[arg(long, global = true, env = "LASSALLE_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    parallel: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the row (A_{k+1}(l)) for l = 1..2k+1.
    Row {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Compare the Lassalle recurrence with row sums for k = 0..=max-k.
    Total {
        #[arg(long, conflicts_with = "max_k")]
        k: Option<u32>,
        #[arg(long)]
        max_k: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Check a sequence property for every k up to max-k.
    Verify {
        #[arg(long, value_enum, default_value_t = Property::All)]
        property: Property,
        #[arg(long)]
        max_k: u32,
        /// Check log-concavity only between the first and last nonzero entries.
        #[arg(long)]
        positive_support: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Recompute a row by brute force and compare it with the engine.
    Oracle {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        method: Method,
        /// Raise the exhaustive bounds (matching: k <= 7, stacksort: 2k+1 <= 11).
        #[arg(long)]
        allow_large: bool,
    },
    /// Evaluate A for an arbitrary gap multiset.
    Eval {
        /// Comma-separated gaps, e.g. 3,3 or 2,1,4,1.
        #[arg(long, value_delimiter = ',', required = true)]
        gaps: Vec<u32>,
    },
    /// Sweep one root element between fixed neighbours and check symmetry and unimodality.
    Sweep {
        /// Fixed gaps, comma-separated (may be omitted for none).
        #[arg(long, value_delimiter = ',', requires = "width")]
        fixed: Vec<u32>,
        /// Distance between the two neighbours of the moving element.
        #[arg(long, conflicts_with = "max_n")]
        width: Option<u32>,
        /// Instead: sweep every valid configuration with at most this many points.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Run the cross-module invariant suite at small scale.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Symmetric,
    Unimodal,
    LogConcave,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Matching,
    Stacksort,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new().stack_size(256 << 20);
    if let Some(n) = cli.parallel {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    let status = pool.install(|| run(cli));
    ExitCode::from(status as u8)
}

fn run(cli: Cli) -> Status {
    let cache = match &cli.cache {
        Some(path) => match cache_file::load(path) {
            Ok(cache) => cache,
            Err(e) => {
                eprintln!("error: cache {}: {e}", path.display());
                return Status::Usage;
            }
        },
        None => MemoCache::new(),
    };
    let mut out = io::stdout().lock();
    let status = match dispatch(cli.command, &cache, &mut out) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            Status::Usage
        }
    };
    if out.flush().is_err() {
        return Status::Usage;
    }
    if let Some(path) = &cli.cache {
        if let Err(e) = cache_file::save(path, &cache) {
            eprintln!("error: cannot write cache {}: {e}", path.display());
            return Status::Usage;
        }
    }
    status
}

type CmdResult = Result<Status, Box<dyn std::error::Error>>;

fn dispatch(command: Command, cache: &MemoCache, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Row { k, format } => {
            let row = engine::refinement_row(k, cache);
            out.write_all(render::row(k, &row, format).as_bytes())?;
            Ok(Status::Ok)
        }
        Command::Total { k, max_k, format } => cmd_total(k, max_k, format, cache, out),
        Command::Verify {
            property,
            max_k,
            positive_support,
            format,
        } => cmd_verify(property, max_k, positive_support, format, cache, out),
        Command::Oracle {
            k,
            method,
            allow_large,
        } => cmd_oracle(k, method, allow_large, cache, out),
        Command::Eval { gaps } => {
            let d = GapMultiset::new(gaps)?;
            let key = engine::canonicalize(&d);
            writeln!(out, "{}", engine::evaluate(&key, cache))?;
            Ok(Status::Ok)
        }
        Command::Sweep {
            fixed,
            width,
            max_n,
        } => cmd_sweep(fixed, width, max_n, cache, out),
        Command::Selftest => cmd_selftest(out),
    }
}

fn cmd_total(
    k: Option<u32>,
    max_k: Option<u32>,
    format: Format,
    cache: &MemoCache,
    out: &mut impl Write,
) -> CmdResult {
    let (lo, hi) = match (k, max_k) {
        (Some(k), None) => (k, k),
        (None, Some(m)) => (0, m),
        _ => return Err("pass exactly one of --k or --max-k".into()),
    };
    let recurrence = sequence::lassalle_terms(hi as u64 + 1);
    let mut rows = Vec::new();
    let mut status = Status::Ok;
    for k in lo..=hi {
        let sum: BigUint = engine::refinement_row(k, cache).iter().sum();
        let want = &recurrence[k as usize];
        if &sum != want {
            status = Status::Violation;
        }
        rows.push((k, want.clone(), sum));
    }
    out.write_all(render::totals(&rows, format).as_bytes())?;
    Ok(status)
}

fn property_verdict(report: &SequenceReport, property: Property) -> Vec<(&'static str, &Verdict)> {
    let all = [
        ("symmetric", &report.symmetric),
        ("unimodal", &report.unimodal),
        ("log-concave", &report.log_concave),
    ];
    match property {
        Property::Symmetric => vec![all[0]],
        Property::Unimodal => vec![all[1]],
        Property::LogConcave => vec![all[2]],
        Property::All => all.to_vec(),
    }
}

fn cmd_verify(
    property: Property,
    max_k: u32,
    positive_support: bool,
    format: Format,
    cache: &MemoCache,
    out: &mut impl Write,
) -> CmdResult {
    let mut lines = Vec::new();
    let mut first_failure = None;
    for k in 0..=max_k {
        let report = SequenceReport::new(k, engine::refinement_row(k, cache), positive_support);
        let verdicts = property_verdict(&report, property);
        if first_failure.is_none() {
            if let Some((name, v)) = verdicts.iter().find(|(_, v)| !v.holds()) {
                first_failure = Some((k, *name, v.witness().cloned().expect("failed verdict")));
            }
        }
        lines.push(render::VerifyLine {
            k,
            verdicts: verdicts
                .into_iter()
                .map(|(name, v)| (name, v.holds()))
                .collect(),
        });
    }
    out.write_all(render::verify(&lines, first_failure.as_ref(), format).as_bytes())?;
    Ok(if first_failure.is_some() {
        Status::Violation
    } else {
        Status::Ok
    })
}

fn cmd_oracle(
    k: u32,
    method: Method,
    allow_large: bool,
    cache: &MemoCache,
    out: &mut impl Write,
) -> CmdResult {
    let oracle: Vec<BigUint> = match method {
        Method::Matching => {
            let bound = if allow_large {
                LARGE_MATCHING_MAX_K
            } else {
                DEFAULT_MATCHING_MAX_K
            };
            if k > bound {
                return Err(format!(
                    "matching oracle is limited to k <= {bound}{}",
                    if allow_large { "" } else { " (see --allow-large)" }
                )
                .into());
            }
            orient::brute_refinement_row(k as usize)
        }
        Method::Stacksort => {
            let bound = if allow_large {
                LARGE_STACKSORT_BOUND
            } else {
                stacksort::DEFAULT_EXHAUSTIVE_BOUND
            };
            stacksort::uniquely_sorted_counts_bounded(2 * k as usize + 1, bound)?
                .into_iter()
                .map(BigUint::from)
                .collect()
        }
    };
    let fast = engine::refinement_row(k, cache);
    let name = match method {
        Method::Matching => "matching",
        Method::Stacksort => "stacksort",
    };
    writeln!(out, "{name:<9} {}", render::plain(&oracle))?;
    writeln!(out, "{:<9} {}", "engine", render::plain(&fast))?;
    if oracle == fast {
        writeln!(out, "agree")?;
        Ok(Status::Ok)
    } else {
        let at = oracle
            .iter()
            .zip(&fast)
            .position(|(a, b)| a != b)
            .map_or(0, |i| i + 1);
        writeln!(out, "MISMATCH at l = {at}")?;
        Ok(Status::Violation)
    }
}

fn cmd_sweep(
    fixed: Vec<u32>,
    width: Option<u32>,
    max_n: Option<u32>,
    cache: &MemoCache,
    out: &mut impl Write,
) -> CmdResult {
    let cases = match (width, max_n) {
        (Some(w), None) => vec![(fixed, w)],
        (None, Some(n)) => sequence::sweep_domain(n),
        _ => return Err("pass either --width (with optional --fixed) or --max-n".into()),
    };
    let mut status = Status::Ok;
    for (d0, w) in &cases {
        let report = sequence::sweep_check(d0, *w, cache)?;
        let fixed: Vec<String> = d0.iter().map(u32::to_string).collect();
        let verdict = if report.holds() { "ok" } else { "FAIL" };
        writeln!(
            out,
            "fixed=[{}] width={w} values={} symmetric={} unimodal={} {verdict}",
            fixed.join(","),
            render::plain(&report.values),
            report.symmetric.holds(),
            report.unimodal.holds(),
        )?;
        if !report.holds() {
            status = Status::Violation;
        }
    }
    if cases.len() > 1 {
        writeln!(out, "{} configurations checked", cases.len())?;
    }
    Ok(status)
}

fn cmd_selftest(out: &mut impl Write) -> CmdResult {
    match selftest::run() {
        Ok(passed) => {
            for name in &passed {
                writeln!(out, "ok   {name}")?;
            }
            writeln!(out, "selftest: {} invariants hold", passed.len())?;
            Ok(Status::Ok)
        }
        Err(failure) => {
            for name in selftest::invariant_names()
                .into_iter()
                .take_while(|&n| n != failure.invariant)
            {
                writeln!(out, "ok   {name}")?;
            }
            writeln!(out, "FAIL {}: {}", failure.invariant, failure.detail)?;
            Ok(Status::Violation)
        }
    }
}
