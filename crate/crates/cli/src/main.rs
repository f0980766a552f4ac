//! `kucera`: certified covers, transform checks, Birkhoff traces and the
//! product construction from the command line.
//!
//! Exit status: 0 success, 1 malformed input, 2 failed hypothesis, 3 budget
//! exhausted, 4 a requested verification failed.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kucera_core::ErrorKind;

#[derive(Parser)]
#[command(name = "kucera", version, about = "Certified covers and ergodic averages on Cantor space")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cover certificate.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Check a built-in transform.
    #[command(subcommand)]
    Transform(TransformCmd),
    /// Orbit frequencies and their exceedance sets.
    #[command(subcommand)]
    Birkhoff(BirkhoffCmd),
    /// Product-space construction along orbits.
    #[command(subcommand)]
    Lambalgen(LambalgenCmd),
    /// Split a point prefix into blocks from a prefix-free set.
    Factorize {
        /// JSON array of words.
        #[arg(long)]
        blocks: String,
        /// JSON point.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        max_len: usize,
    },
    /// Recompute every stage measure of a certificate.
    Verify {
        /// Certificate JSON (inline, @file or -).
        #[arg(long, default_value = "-")]
        certificate: String,
    },
}

#[derive(Args, Clone)]
pub struct BudgetArgs {
    /// Largest clopen depth a construction may build.
    #[arg(long)]
    depth: Option<usize>,
    /// Largest n tried by the ergodic search.
    #[arg(long)]
    budget: Option<u64>,
    /// Largest n for the L2 stopping rule.
    #[arg(long)]
    l2_n: Option<u64>,
    /// Largest number of shifts pulled.
    #[arg(long)]
    pulls: Option<usize>,
    /// Largest prefix family.
    #[arg(long)]
    family: Option<usize>,
}

#[derive(Subcommand)]
pub enum CoverCmd {
    /// Iterated `A_{j+1} = ⋃ xA` cover.
    Kucera {
        /// Word array, or a generator descriptor for assumed mode.
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: Option<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Cylinders pulled from an enumerated set.
        #[arg(long, default_value_t = 64)]
        fuel: usize,
    },
    FiniteChange {
        #[arg(long)]
        set: String,
        #[arg(long)]
        x: String,
    },
    PrefixAdd {
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        x: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    Bidirectional {
        /// Zig-zag words, or an array of assignments `{"index": bit}`.
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        /// Assignment `{"index": bit}` naming the interval.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    EnumShift {
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        x: String,
        /// JSON array of shifts, pulled in order.
        #[arg(long, conflicts_with = "stride")]
        shifts: Option<String>,
        /// Pull the shifts stride, 2·stride, 3·stride, ...
        #[arg(long)]
        stride: Option<i64>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    Ergodic {
        #[arg(long)]
        transform: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        /// Interval word; ignored when --k is given.
        #[arg(long, default_value = "")]
        x: String,
        /// Iterate over the intervals of each stage this many times.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        measure: Option<String>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
}

#[derive(Subcommand)]
pub enum TransformCmd {
    /// Check measure preservation on all cylinders up to a depth.
    Check {
        #[arg(long, conflicts_with = "transform")]
        name: Option<String>,
        #[arg(long)]
        transform: Option<String>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        measure: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
pub enum BirkhoffCmd {
    /// Frequencies g_1..g_n along one orbit.
    Trace {
        #[arg(long)]
        transform: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Frequencies for many points against a 3σ binomial tolerance.
    Experiment {
        #[arg(long)]
        transform: String,
        #[arg(long)]
        set: String,
        /// Seeded points.
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<u64>,
        /// Further points as a JSON array.
        #[arg(long)]
        points: Option<String>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        measure: Option<String>,
        /// Replaces the 3σ tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Truncated exceedance set ⋃_{N<=n<=n_max} {g_n > r}.
    Gn {
        #[arg(long)]
        transform: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        r: String,
        #[arg(long = "big-n")]
        big_n: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        measure: Option<String>,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Averages of a lower semicomputable function given by its stages.
    Lsc {
        /// JSON array of stages, each an array of {"coef", "word"} terms.
        #[arg(long)]
        stages: String,
        #[arg(long)]
        transform: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: u64,
    },
    /// Inner and outer frequencies of an approximable set.
    Approx {
        /// `{"kind":"exact","set":[...]}` or `{"kind":"interval","lo":...,"hi":...}`.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 8)]
        precision: usize,
        #[arg(long)]
        transform: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
pub enum LambalgenCmd {
    /// Choose orbit indices that move a point tuple out of a product set.
    Construct {
        /// Array of cylinders `{"coord": "word"}`.
        #[arg(long)]
        u: String,
        /// JSON array of points, one per coordinate.
        #[arg(long)]
        points: String,
        #[arg(long, default_value = "odometer")]
        transform: String,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
}

/// Exit status for a command that ran to completion.
pub enum Outcome {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(cli.command).and_then(|(text, outcome)| {
        match &cli.output {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| kucera_core::Error::Malformed(format!("--output {}: {e}", path.display())))?,
            None => {
                let mut out = std::io::stdout().lock();
                // A closed pipe (`| head`) is not an error of ours.
                match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        return Err(kucera_core::Error::Malformed(format!("stdout: {e}")));
                    }
                    _ => {}
                }
            }
        }
        Ok(outcome)
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => {
            eprintln!("verification failed");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Budget => 3,
            })
        }
    }
}
