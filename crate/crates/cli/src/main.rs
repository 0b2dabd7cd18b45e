//! `ramdiv`: ramification divisors, oracle cross-checks and genus
//! predictions for coverings given as JSON files.
//!
//! Exit status: 0 success, 1 usage or input error, 2 model rejected,
//! 3 internal invariant violated.

mod commands;
mod fuzz;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "ramdiv", version, about = "Ramification of inseparable coverings of curves over F_p")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Covering file.
    #[arg(long, short)]
    pub(crate) input: PathBuf,

    /// Infinity-chart degrees `d(m)` in element order, comma separated.
    /// Overrides the file and the canonical choice.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub(crate) degrees: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check normalization, symmetry and associativity of the cocycle.
    Validate(InputArgs),
    /// Ramification divisor, place by place.
    Ramify {
        #[command(flatten)]
        input: InputArgs,
        /// Include the place at infinity.
        #[arg(long)]
        infinity: bool,
        /// Take the given cocycle as the normal model without certification.
        #[arg(long)]
        assume_normal: bool,
    },
    /// Compare the multiplicity formula with the Smith-normal-form length.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Place as a coefficient array (lowest degree first, e.g. `[0,1]`)
        /// or `inf`. Defaults to every candidate place.
        #[arg(long)]
        place: Option<String>,
        /// Include the place at infinity when no place is given.
        #[arg(long)]
        infinity: bool,
    },
    /// Check `R_G = R_H + g^* R_{G/H}` for the subgroup of index `p^m`.
    Devissage {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        infinity: bool,
    },
    /// Gorenstein verdicts and witnesses, or a random search for
    /// non-Gorenstein integral cocycles.
    Gorenstein {
        #[arg(long, short, required_unless_present = "search")]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Option<Vec<i64>>,
        #[arg(long)]
        infinity: bool,
        /// Search random cocycles instead of reading a file.
        #[arg(long, conflicts_with = "input")]
        search: bool,
        /// Group for the search as `p:e1,e2,...`.
        #[arg(long, default_value = "3:1")]
        group: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Riemann-Hurwitz genus of the covering curve.
    Genus {
        #[command(flatten)]
        input: InputArgs,
        /// Genus of the base, overriding the file.
        #[arg(long)]
        g_x: Option<i64>,
    },
    /// Divisor arithmetic of the Frobenius-kernel example on GL_n.
    RegressGln {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        n: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long)]
        gamma: u32,
    },
    /// Random models through every cross-check.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest degree of the random Kummer functions.
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
}

fn run(cli: Cli) -> Result<Report, Failure> {
    use commands::*;
    match cli.command {
        Command::Validate(a) => validate(&a),
        Command::Ramify { input, infinity, assume_normal } => ramify(&input, infinity, assume_normal),
        Command::Oracle { input, place, infinity } => oracle(&input, place.as_deref(), infinity),
        Command::Devissage { input, m, infinity } => devissage(&input, m, infinity),
        Command::Gorenstein { input, degrees, infinity, search, group, seed, count } => {
            if search {
                gorenstein_search(&group, seed, count)
            } else {
                let input = InputArgs { input: input.expect("clap requires --input"), degrees };
                gorenstein(&input, infinity)
            }
        }
        Command::Genus { input, g_x } => genus(&input, g_x),
        Command::RegressGln { p, n, beta, gamma } => regress_gln(p, n, beta, gamma),
        Command::Fuzz { seed, count, max_degree } => fuzz::run(seed, count, max_degree),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let outcome = run(cli);
    output::emit(format, outcome)
}
