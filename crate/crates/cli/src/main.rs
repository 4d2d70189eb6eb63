use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use contractio::series::SeriesMode;
use contractio_cli::run::EXIT_INVALID;
use contractio_cli::{parse, run_command, Command, Format, Options};

/// Analyse contraction groups described in a group file.
#[derive(Debug, Parser)]
#[command(name = "contractio", version)]
struct Cli {
    command: Command,
    file: PathBuf,
    /// Restrict series output to one mode.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<SeriesMode>,
    /// Working p-adic precision N (default 32, or `set precision` in the file).
    #[arg(long)]
    precision: Option<u32>,
    /// Seed for tie-breaking and sampling (default 0, or `set seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Elements sampled per group by structure checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Exit with code 3 when a result is not certified.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_mode(s: &str) -> Result<SeriesMode, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let src = match std::fs::read_to_string(&cli.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let doc = match parse(&src) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    if cli.precision == Some(0) {
        eprintln!("error: precision must be at least 1");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    let opts = Options {
        mode: cli.mode,
        precision: cli.precision,
        seed: cli.seed,
        samples: Some(cli.samples),
        strict: cli.strict,
    };
    let (code, out) = run_command(cli.command, &doc, &opts, cli.format);
    print!("{out}");
    ExitCode::from(code as u8)
}
