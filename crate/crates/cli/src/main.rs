//! `composita`: composita tables, EGF composition, sequence dumps and
//! prime-congruence scans from the command line.
//!
//! Exit codes: 0 success (witnesses found in a scan are data, not errors),
//! 1 usage or input error, 2 computation bound exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

/// Environment variable capping every requested order / scan bound.
pub const MAX_ORDER_ENV: &str = "COMPOSITA_MAX_ORDER";
pub const DEFAULT_MAX_ORDER: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "composita",
    version,
    about = "Exact composita, EGF composition and prime congruences"
)]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest order or scan bound accepted.
    #[arg(long, global = true, env = MAX_ORDER_ENV, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the composita table F^Δ(n,k), 1 ≤ k ≤ n ≤ order (default: csv).
    Composita {
        /// Built-in name (x, exp, expm1, sin, artanh, geom, poly3) or a coefficient file.
        #[arg(long)]
        series: String,
        #[arg(long)]
        order: usize,
    },
    /// Print the EGF coefficients g(0..=order) of outer(inner(x)) (default: text).
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long)]
        order: usize,
    },
    /// Evaluate a prime-congruence family over from..=to (default: jsonl).
    ///
    /// Families: touchard_k0, touchard_k<K>, euler, poly3, artanh, expm1, sin,
    /// and corollary1 / corollary1_via_g (need --inner), general / theorem2
    /// (need --outer and --inner).
    Scan {
        #[arg(long)]
        family: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        inner: Option<String>,
    },
    /// Dump an integer sequence, one value per line (default: text).
    ///
    /// Names: bell, euler_zigzag, stirling2_row, stirling1_row,
    /// a001680_style, a000246_style. For the *_row names COUNT is the row index.
    Seq { name: String, count: usize },
    /// Write a series in the coefficient-file form read back by --series/--outer/--inner.
    Series {
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = commands::Context {
        format: cli.format,
        max_order: cli.max_order,
    };
    let out = match cli.command {
        Command::Composita { series, order } => commands::composita(&ctx, &series, order)?,
        Command::Compose {
            outer,
            inner,
            order,
        } => commands::compose(&ctx, &outer, &inner, order)?,
        Command::Scan {
            family,
            from,
            to,
            outer,
            inner,
        } => commands::scan(&ctx, &family, from, to, outer.as_deref(), inner.as_deref())?,
        Command::Seq { name, count } => commands::seq(&ctx, &name, count)?,
        Command::Series { name, order } => commands::series(&ctx, &name, order)?,
    };
    commands::emit(cli.output.as_deref(), &out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
