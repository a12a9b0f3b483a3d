use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use duropoly_cli::sweep::SweepParams;
use duropoly_cli::{run, Command, OutputFormat, RunConfig};
use duropoly_core::Rational;

/// Exact equilibria of finite-horizon durable-good monopoly games.
#[derive(Parser)]
#[command(name = "duropoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format [default: csv for sweep, table otherwise]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Equilibrium price path, sales and profit
    Solve { file: PathBuf },
    /// Static, duropoly and suffix-price profit bounds
    Bounds { file: PathBuf },
    /// Check an equilibrium for profitable unilateral deviations
    Verify {
        file: PathBuf,
        /// Two-period threshold profile to check instead of the solver output
        #[arg(long, conflicts_with = "solution")]
        profile: Option<PathBuf>,
        /// Solution written by `solve --format json`
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Full surplus extraction test and Pacman simulation
    Pacman { file: PathBuf },
    /// Two-period instance whose profit ratio approaches two
    Tight {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// High value, as p or p/q
        #[arg(long, default_value = "1")]
        vh: Rational,
    },
    /// Two-period threshold profiles and the swap to skimming
    Nonskim {
        /// Use the built-in three-consumer example
        #[arg(long, conflicts_with_all = ["file", "profile"])]
        demo: bool,
        /// Instance file; without --profile, search for the best equilibrium
        #[arg(required_unless_present = "demo")]
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        profile: Option<PathBuf>,
    },
    /// Compare the solver with exhaustive search
    Oracle { file: PathBuf },
    /// Bounds over seeded random instances
    Sweep {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_t: usize,
        #[arg(long, default_value_t = 100)]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Solve { file } => Command::Solve { input: file },
        Cmd::Bounds { file } => Command::Bounds { input: file },
        Cmd::Verify {
            file,
            profile,
            solution,
        } => Command::Verify {
            input: file,
            profile,
            solution,
        },
        Cmd::Pacman { file } => Command::Pacman { input: file },
        Cmd::Tight { n, k, vh } => Command::Tight { n, k, v_high: vh },
        Cmd::Nonskim { file, profile, .. } => Command::Nonskim { input: file, profile },
        Cmd::Oracle { file } => Command::Oracle { input: file },
        Cmd::Sweep {
            count,
            max_n,
            max_t,
            max_value,
            seed,
        } => Command::Sweep(SweepParams {
            count,
            max_n,
            max_t,
            max_value,
            seed,
        }),
    };
    let format = cli.format.map(|f| match f {
        Format::Table => OutputFormat::Table,
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    });
    let config = RunConfig {
        command,
        format,
        out: cli.out,
    };
    ExitCode::from(run(&config) as u8)
}
