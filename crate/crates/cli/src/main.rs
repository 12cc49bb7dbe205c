use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fpp_verify::{emit, run, Check, Envelope, Format, Options};

/// Exact verification of fake projective plane quotient computations.
#[derive(Debug, Parser)]
#[command(name = "fpp-verify", version)]
struct Cli {
    /// Which check to run.
    #[arg(value_enum)]
    check: Check,

    /// Coefficient of M for `exclude` (1 or 2); both when omitted.
    #[arg(long)]
    m: Option<i64>,

    /// Value of n for `fibres`; 1 through 12 when omitted.
    #[arg(long)]
    n: Option<u32>,

    /// Include the stage-1 list in the report; with a path, also write it there as JSON.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    emit_list: Option<Option<PathBuf>>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        m: cli.m,
        n: cli.n,
        emit_list: cli.emit_list,
        fixtures_dir: None,
    };
    let reports = match run(cli.check, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let envelope = Envelope::new(reports);
    print!("{}", emit(&envelope, cli.format));
    if let Some((report, assertion)) = envelope.first_failure() {
        eprintln!("first failure: {} / {}", report.check, assertion.name);
    }
    ExitCode::from(envelope.exit_code() as u8)
}
