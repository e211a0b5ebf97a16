use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jacobi_curves::cli::{self, PencilDocument, ReportDocument};
use jacobi_curves::{Error, Result};

/// Exact spectral curves of Jacobi pencils.
#[derive(Parser)]
#[command(name = "jacobi", version)]
struct Args {
    /// Input document (standard input when absent).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report destination (standard output when absent).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Overrides the seed of a campaign document.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Outer variable of reported polynomials.
    #[arg(long, global = true, default_value = "w", value_parser = ["t", "w"])]
    form: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral curve of a pencil.
    Charpoly,
    /// Certificates from the elementary reducibility mechanisms.
    Detect,
    /// Exact absolute irreducibility decision.
    Decide,
    /// Numerical monodromy group of the sheets.
    Monodromy,
    /// Run a campaign document.
    Campaign {
        /// Also write one CSV row per sample here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the acceptance suite (all criteria, or the listed ids).
    Selftest { ids: Vec<u8> },
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p).map_err(|e| Error::Validation(format!("{}: {e}", p.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Validation(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn write_to(path: &Option<PathBuf>, text: &str) -> Result<()> {
    let io_err = |e: io::Error| Error::Validation(format!("writing output: {e}"));
    match path {
        Some(p) => fs::write(p, text).map_err(io_err),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn execute(args: &Args) -> Result<ReportDocument> {
    let form = cli::parse_form(&args.form)?;
    let pencil = || PencilDocument::parse(&read_input(&args.input)?);
    match &args.command {
        Command::Charpoly => cli::cmd_charpoly(&pencil()?, form),
        Command::Detect => cli::cmd_detect(&pencil()?, form),
        Command::Decide => cli::cmd_decide(&pencil()?, form),
        Command::Monodromy => cli::cmd_monodromy(&pencil()?),
        Command::Campaign { csv } => {
            let campaign = cli::parse_campaign(&read_input(&args.input)?)?;
            let report = cli::cmd_campaign(&campaign, args.seed)?;
            if let (Some(path), cli::Payload::Campaign(c)) = (csv, &report.result) {
                write_to(&Some(path.clone()), &c.to_csv()?)?;
            }
            Ok(report)
        }
        Command::Selftest { ids } => {
            let report = cli::cmd_selftest(ids)?;
            if let cli::Payload::Selftest(s) = &report.result {
                for c in &s.criteria {
                    eprintln!("{c}");
                }
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = execute(&args).and_then(|report| {
        write_to(&args.output, &(report.to_json()? + "\n"))?;
        Ok(report)
    });
    match outcome {
        Ok(r) if r.is_unsupported() => ExitCode::from(3),
        Ok(cli::ReportDocument {
            result: cli::Payload::Selftest(s),
            ..
        }) if !s.passed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jacobi: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
