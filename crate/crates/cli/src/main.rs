//! `wordring`: evaluate conditional models of primary alternating word
//! orders, inspect the permutation ring and produce analysis reports.
//!
//! Exit codes: 0 on success, 1 on any input problem (bad flags, unreadable
//! or malformed files, unsupported fit requests), 2 on internal errors.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use wordring_cli::commands::{
    cmd_evaluate, cmd_fit, cmd_report, cmd_ring, CliError, EvaluateFormat, ReportFormat,
};
use wordring_cli::report::SortKey;

#[derive(Parser)]
#[command(
    name = "wordring",
    version,
    about = "Word order permutation ring and models of primary alternating orders"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the models on a pair-count dataset and rank them by AICc and BIC
    Evaluate(EvaluateArgs),
    /// Plug-in estimates for one model family, optionally verified by grid search
    Fit(FitArgs),
    /// Show the permutation ring, its distance measures and their correlation
    Ring,
    /// Produce the full analysis bundle as text, CSV or JSON
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SortFlag {
    Aicc,
    Bic,
    Loglik,
}

impl From<SortFlag> for SortKey {
    fn from(v: SortFlag) -> SortKey {
        match v {
            SortFlag::Aicc => SortKey::Aicc,
            SortFlag::Bic => SortKey::Bic,
            SortFlag::Loglik => SortKey::Loglik,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvaluateFormatFlag {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormatFlag {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Pair-count file `order1,order2,count` (default: built-in dataset)
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Dominant-order file `order,count` (default: shipped WALS counts)
    #[arg(long)]
    frequencies: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: EvaluateFormatFlag,
    /// Criterion the table is sorted by
    #[arg(long, value_enum, default_value = "bic")]
    sort: SortFlag,
    /// Also score the reduced variants of models 1 and 2
    #[arg(long)]
    include_reduced: bool,
}

#[derive(Args)]
struct FitArgs {
    /// Model family: model1, model2, model3, model2_reduced or model1_trunc_exp
    family: String,
    /// Pair-count file (default: built-in dataset)
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Verify the plug-in fit with a grid search at this resolution
    #[arg(long, value_name = "RESOLUTION")]
    grid: Option<f64>,
}

#[derive(Args)]
struct ReportArgs {
    /// Pair-count file (default: built-in dataset)
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Dominant-order file (default: shipped WALS counts)
    #[arg(long)]
    frequencies: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormatFlag,
    /// Write to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Criterion the model table is sorted by
    #[arg(long, value_enum, default_value = "bic")]
    sort: SortFlag,
    /// Omit the timestamp so repeated runs are byte-identical
    #[arg(long)]
    no_timestamp: bool,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evaluate(args) => {
            let format = match args.format {
                EvaluateFormatFlag::Text => EvaluateFormat::Text,
                EvaluateFormatFlag::Json => EvaluateFormat::Json,
            };
            let text = cmd_evaluate(
                args.dataset.as_deref(),
                args.frequencies.as_deref(),
                format,
                args.sort.into(),
                args.include_reduced,
            )?;
            print!("{text}");
        }
        Command::Fit(args) => {
            let text = cmd_fit(&args.family, args.dataset.as_deref(), args.grid)?;
            print!("{text}");
        }
        Command::Ring => {
            print!("{}", cmd_ring()?);
        }
        Command::Report(args) => {
            let format = match args.format {
                ReportFormatFlag::Text => ReportFormat::Text,
                ReportFormatFlag::Csv => ReportFormat::Csv,
                ReportFormatFlag::Json => ReportFormat::Json,
            };
            let text = cmd_report(
                args.dataset.as_deref(),
                args.frequencies.as_deref(),
                format,
                args.sort.into(),
                !args.no_timestamp,
            )?;
            match &args.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| {
                    CliError::Input(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // argument misuse is an input error
            let _ = write!(std::io::stderr(), "{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
