//! `partstat`: exact set-partition statistics from the command line.
//!
//! Exit status is 0 on success, 1 on a user error and 2 when an internal
//! check fails. `PARTSTAT_THREADS` sets the worker count for enumeration.

mod commands;
mod error;

use std::io::Write;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "partstat",
    version,
    about = "Exact statistics of set partitions"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Dim,
    Int,
}

#[derive(Debug, Args)]
pub struct StatisticSource {
    /// Pattern document describing the statistic.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pattern: Option<PathBuf>,

    /// Named statistic, e.g. `blocks`, `levels`, `blocks_of_size:2`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bell numbers B_0..=B_max, optionally reduced modulo M.
    Bell {
        #[arg(long)]
        max: usize,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Distribution of the dimension or intertwining exponent as CSV.
    Dist {
        target: Target,
        #[arg(long)]
        n: usize,
        /// Count by enumerating every partition instead of the recursion.
        #[arg(long)]
        brute: bool,
        /// Lift the enumeration size guard.
        #[arg(long)]
        force: bool,
    },
    /// Exact moment sums M(f^k; n) for k = 0..=K.
    Moments {
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Value of a statistic on one partition.
    Eval {
        #[command(flatten)]
        source: StatisticSource,
        /// Blocks (`1356|27|4`) or a restricted growth string (`0,1,0,2`).
        #[arg(long, allow_hyphen_values = true)]
        partition: String,
    },
    /// M(f; n) by enumeration.
    Aggregate {
        #[command(flatten)]
        source: StatisticSource,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        force: bool,
    },
    /// Closed form as a shifted Bell polynomial.
    Fit(FitArgs),
    /// Asymptotic estimates against exact values.
    Asym {
        #[arg(long)]
        target: Target,
        #[arg(long)]
        n: u64,
    },
    /// Emit a Python script that draws a `value,count` histogram.
    Plot {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Fit a moment of the dimension or intertwining exponent.
    #[arg(long, conflicts_with_all = ["pattern", "builtin"])]
    target: Option<Target>,
    /// Moment order, with --target.
    #[arg(long, requires = "target")]
    k: Option<usize>,
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long, conflicts_with = "pattern")]
    builtin: Option<String>,
    /// Upper shift bound N of the generic profile.
    #[arg(long)]
    profile_degree: Option<usize>,
    /// Lower shift bound -K of the generic profile.
    #[arg(long)]
    profile_k: Option<usize>,
    #[arg(long, default_value_t = 3)]
    holdout: usize,
    #[arg(long)]
    force: bool,
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("PARTSTAT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().map_err(|_| {
        CliError::Usage(format!(
            "PARTSTAT_THREADS must be a positive integer, got `{value}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    let text = match cli.command {
        Command::Bell { max, modulus } => commands::bell(max, modulus)?,
        Command::Dist {
            target,
            n,
            brute,
            force,
        } => commands::dist(target, n, brute, force)?,
        Command::Moments { target, n, k } => commands::moments(target, n, k),
        Command::Eval { source, partition } => commands::eval(&source, &partition)?,
        Command::Aggregate { source, n, force } => commands::aggregate(&source, n, force)?,
        Command::Fit(args) => commands::fit(&args)?,
        Command::Asym { target, n } => commands::asym(target, n)?,
        Command::Plot { input } => commands::plot(&input, cli.out.as_deref())?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let line = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    panic::set_hook(Box::new(|info| {
        let msg = info
            .payload()
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| info.payload().downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        eprintln!("internal error: {}", msg.replace('\n', " "));
    }));
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(2),
    }
}
