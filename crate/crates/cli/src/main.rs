use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use monotone_cli::report::EXIT_CONFIG;
use monotone_cli::{emit_report, parse_config, run_suite, Format, Suite, SuiteConfig};

/// Exact certificates for a linear maximal monotone operator on c0 that is
/// not of type (D).
#[derive(Parser)]
#[command(name = "certify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites selected in the config (all suites by default).
    Run(RunArgs),
    /// Skew identity, tail law and range law of G.
    Skew(RunArgs),
    /// Monotone products between graph points.
    Monotone(RunArgs),
    /// Maximality witnesses and T round trips.
    Maximal(RunArgs),
    /// Closure margins and distinctness of the extension family.
    Extensions(RunArgs),
    /// Fitzpatrick-type gap.
    Gap(RunArgs),
    /// Every suite, regardless of the config's selection.
    All(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Config document (JSON or TOML); `-` reads standard input. Without it
    /// the built-in default config is used.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `off` omits the timestamp and durations so reports are reproducible.
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    timestamp: Toggle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, only) = match cli.command {
        Command::Run(a) => (a, None),
        Command::Skew(a) => (a, Some(vec![Suite::Skew])),
        Command::Monotone(a) => (a, Some(vec![Suite::Monotone])),
        Command::Maximal(a) => (a, Some(vec![Suite::Maximal])),
        Command::Extensions(a) => (a, Some(vec![Suite::Extensions])),
        Command::Gap(a) => (a, Some(vec![Suite::Gap])),
        Command::All(a) => (a, Some(Suite::ALL.to_vec())),
    };

    let config = match &args.config {
        Some(path) => match parse_config(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        },
        None => SuiteConfig::default(),
    };
    let config = match only {
        Some(suites) => config.with_suites(suites),
        None => config,
    };

    let mut report = run_suite(&config);
    if args.timestamp == Toggle::On {
        report.timestamp =
            Some(SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    } else {
        report.strip_timing();
    }
    ExitCode::from(emit_report(&report, args.format, args.out.as_deref()) as u8)
}
