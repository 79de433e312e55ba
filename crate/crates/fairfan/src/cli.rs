//! Argument parsing and dispatch. Exit codes: 0 when every guarantee is
//! certified, 1 when one fails, 2 for parameter, scope or input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fairfan_core::adversarial::gen_adversarial;
use fairfan_core::Error as CoreError;

use crate::error::{CliError, CliResult};
use crate::format::{family_from_json, family_to_json, parse_rat};
use crate::generate::random_family;
use crate::run::{run, run_batch, RunConfig, Theorem};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fairfan", version, about = "Convex partitions where every piece meets many measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Random,
    Adversarial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Fan,
    T5,
    T7,
    T8,
    Optimal,
    Poset,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a measure family as JSON.
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        kind: Kind,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        /// Defaults to n(c−d)+d for random families.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and certify a partition or a combinatorial object.
    Run {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Report path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Hasse diagram path for `poset`.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// A rational `p/q`.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `point` or `nu` for t5, `a` or `tilde` for poset.
        #[arg(long)]
        mode: Option<String>,
        /// Random candidate partitions for `optimal`.
        #[arg(long, default_value_t = 1000)]
        candidates: usize,
        /// Run this many seeded instances in parallel, seeds counting up
        /// from `--seed`.
        #[arg(long)]
        batch: Option<usize>,
    },
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Poset enumeration cap from `FAIRFAN_MAX_POSET`.
pub fn poset_cap() -> CliResult<usize> {
    match std::env::var("FAIRFAN_MAX_POSET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("FAIRFAN_MAX_POSET must be a count, got {v:?}"))),
        Err(_) => Ok(fairfan_core::arrangement::DEFAULT_CAP),
    }
}

pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Core(
            CoreError::NoCutFound | CoreError::PerturbationFailed | CoreError::NotAFace | CoreError::Degenerate,
        ) => EXIT_VIOLATED,
        _ => EXIT_USAGE,
    }
}

fn generate(kind: Kind, d: usize, n: usize, c: usize, m: Option<usize>, seed: u64) -> CliResult<String> {
    let family = match kind {
        Kind::Random => {
            if c < d {
                return Err(CoreError::Hypothesis("need c ≥ d".into()).into());
            }
            let m = m.unwrap_or(n * (c - d) + d);
            if m < c {
                return Err(CoreError::Hypothesis(format!("need m ≥ c, got m = {m} < c = {c}")).into());
            }
            random_family(d, m, seed)?
        }
        Kind::Adversarial => gen_adversarial(d, n, c)?,
    };
    family_to_json(&family)
}

/// Runs a parsed command, printing to standard output where no path is
/// given, and returns the exit code.
pub fn execute(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Gen {
            kind,
            d,
            n,
            c,
            m,
            seed,
            out,
        } => {
            let text = generate(kind, d, n, c, m, seed)?;
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_CERTIFIED)
        }
        Command::Run {
            theorem,
            input,
            out,
            svg,
            dot,
            d,
            n,
            c,
            m,
            alpha,
            seed,
            mode,
            candidates,
            batch,
        } => {
            let mut config = RunConfig::new(match theorem {
                TheoremArg::Fan => Theorem::Fan,
                TheoremArg::T5 => Theorem::T5,
                TheoremArg::T7 => Theorem::T7,
                TheoremArg::T8 => Theorem::T8,
                TheoremArg::Optimal => Theorem::Optimal,
                TheoremArg::Poset => Theorem::Poset,
            });
            config.d = d;
            config.n = n;
            config.c = c;
            config.m = m;
            config.alpha = alpha.as_deref().map(parse_rat).transpose()?;
            config.seed = seed;
            config.mode = mode;
            config.candidates = candidates;
            config.cap = poset_cap()?;
            if let Some(path) = &input {
                config.family = Some(family_from_json(&read(path)?)?);
            }
            let outcome = match batch {
                Some(count) => run_batch(&config, count)?,
                None => run(&config)?,
            };
            match out {
                Some(path) => write(&path, &outcome.report)?,
                None => print!("{}", outcome.report),
            }
            if let (Some(path), Some(text)) = (svg, &outcome.svg) {
                write(&path, text)?;
            }
            if let (Some(path), Some(text)) = (dot, &outcome.dot) {
                write(&path, text)?;
            }
            Ok(if outcome.certified { EXIT_CERTIFIED } else { EXIT_VIOLATED })
        }
    }
}
