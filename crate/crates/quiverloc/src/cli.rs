//! Command-line front end. Exit codes: 0 pass, 1 failure, 2 usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::combinatorics::Stability;
use crate::report::{run_compute, run_suite, run_verify, Profile, Request, DEFAULT_CAP};
use crate::scalars::Mode;

pub const SEED_ENV: &str = "QUIVERLOC_SEED";

#[derive(Parser, Debug)]
#[command(name = "quiverloc", version, about = "Localization sums and coefficientwise identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Exact,
    Prime,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProfileArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StabilityArg {
    #[value(name = "-", alias = "minus")]
    Minus,
    #[value(name = "+", alias = "plus")]
    Plus,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Number of vertices
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Framing, comma separated
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<usize>>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one identity and print a verdict report
    Verify {
        #[arg(long)]
        identity: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        seeds: Option<Vec<u64>>,
        /// Random trials for sampled lemmas
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long = "cap-fixed-points", default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Record wall time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Print a truncated series
    Compute {
        /// One of z-adj, z-adj-dual, z-fund, z-fund-dual, hs-z-adj, hs-z-fund-hat, phi-ratio, kajihara-phi, gl-n
        #[arg(long = "series")]
        series: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "-")]
        stability: StabilityArg,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Run a battery of checks as JSON lines followed by a summary
    Suite {
        #[arg(value_enum)]
        profile: ProfileArg,
        #[arg(long, env = SEED_ENV, default_value_t = 1)]
        seed: u64,
        /// Only run these identities
        #[arg(long, value_delimiter = ',')]
        identity: Option<Vec<String>>,
        #[arg(long)]
        timing: bool,
    },
}

fn mode(m: Option<ModeArg>) -> Option<Mode> {
    m.map(|m| match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Prime => Mode::Prime,
    })
}

fn request(c: &Common) -> Request {
    Request { n: c.n, r: c.r.clone(), order: c.order, mode: mode(c.mode), ..Request::default() }
}

fn usage(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    2
}

/// Run with explicit arguments and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match cli.command {
        Command::Verify { identity, common, seeds, trials, cap, timing } => {
            let req = Request { seeds, trials, ..request(&common) };
            match run_verify(&identity, &req, cap, timing) {
                Ok(rep) => {
                    let _ = writeln!(out, "{}", serde_json::to_string(&rep).expect("report serializes"));
                    if rep.passed() {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => usage(err, e),
            }
        }
        Command::Compute { series, common, seed, stability, emit } => {
            let st = match stability {
                StabilityArg::Minus => Stability::Negative,
                StabilityArg::Plus => Stability::Positive,
            };
            match run_compute(&series, &request(&common), st, seed) {
                Ok(s) => {
                    let _ = match emit {
                        Emit::Json => writeln!(out, "{}", s.to_json()),
                        Emit::Csv => write!(out, "{}", s.to_csv()),
                    };
                    0
                }
                Err(e) => usage(err, e),
            }
        }
        Command::Suite { profile, seed, identity, timing } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            match run_suite(profile, seed, identity.as_deref(), timing) {
                Ok((reports, summary)) => {
                    for r in &reports {
                        let _ = writeln!(out, "{}", serde_json::to_string(r).expect("report serializes"));
                    }
                    let _ = writeln!(out, "{}", serde_json::json!({ "summary": summary }));
                    if summary.failed == 0 {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => usage(err, e),
            }
        }
    }
}
