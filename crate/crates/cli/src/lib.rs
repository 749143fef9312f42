//! Command-line front end for `su11-core`: single operating points,
//! parameter sweeps, figure tables and the validation suite, written as CSV
//! or JSON.
//!
//! Exit codes: `0` success, `1` a self-check or validation failed, `2` bad
//! usage (flags, ranges, files).

pub mod args;
pub mod commands;
pub mod config;
mod error;
pub mod format;
pub mod validate;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command, Format, OutputArgs};
use crate::commands::Output;
use crate::config::Grid;
pub use crate::error::CliError;

fn render(output: &Output, format: Format) -> String {
    match format {
        Format::Csv => output.table.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output.json).expect("JSON values serialise");
            s.push('\n');
            s
        }
    }
}

fn emit(output: &Output, args: &OutputArgs, default: Format) -> Result<(), CliError> {
    let text = render(output, args.format.unwrap_or(default));
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Usage(format!("cannot write to standard output: {e}")))
        }
    }
}

fn finish(output: Output, args: &OutputArgs, default: Format) -> Result<(), CliError> {
    emit(&output, args, default)?;
    match output.failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Point(a) => {
            let cfg = config::resolve(&a.config)?;
            finish(commands::point(&cfg)?, &a.output, Format::Json)
        }
        Command::FigEtaOpt(a) => finish(commands::fig_eta_opt(&Grid::parse(&a.grid)?)?, &a.output, Format::Csv),
        Command::FigQcrbRatio(a) => {
            let out = commands::fig_qcrb_ratio(&Grid::parse(&a.grid)?, &Grid::parse(&a.alpha2_grid)?)?;
            finish(out, &a.output, Format::Csv)
        }
        Command::FigLmax(a) => {
            let alpha2 = commands::parse_alpha2_list(&a.alpha2)?;
            finish(commands::fig_lmax(&Grid::parse(&a.grid)?, &alpha2, a.n_th)?, &a.output, Format::Csv)
        }
        Command::Sweep(a) => {
            let cfg = config::resolve(&a.config)?;
            let grid = match &a.grid {
                Some(g) => Grid::parse(g)?,
                None => commands::default_sweep_grid(a.param),
            };
            finish(commands::sweep(&cfg, a.param, &grid)?, &a.output, Format::Csv)
        }
        Command::Validate(a) => {
            let report = match a.inject_fault {
                None => validate::validate(a.level),
                Some(args::Fault::RealBeamSplitter) => {
                    validate::run_suite(&validate::real_beam_splitter_pipeline, a.level)
                }
            };
            let output = Output {
                table: report.to_table(),
                json: report.to_json(),
                failure: (!report.passed()).then(|| report.diagnostics()),
            };
            finish(output, &a.output, Format::Json)
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("su11: {}", e.to_string().trim_end());
            e.exit_code()
        }
    }
}
