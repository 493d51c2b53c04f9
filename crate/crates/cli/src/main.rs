//! `ppf`: pattern propagation factor runs from the command line.

mod error;
mod report;
mod run;
mod scenario_args;
mod turbines;
mod volume;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "ppf", version, about = "Radar pattern propagation factor over terrain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the FE or PE model and write the output file, plot grids and a manifest.
    Run(run::RunArgs),
    /// Run the PE along a fan of azimuths through an elevation grid.
    Volume(volume::VolumeArgs),
    /// Export the complex field column around each turbine of a table.
    ExtractTurbines(turbines::TurbineArgs),
    /// Check a scenario file and print the PE numerics it would use.
    Validate(report::ValidateArgs),
    /// Report phase discontinuities outside nulls.
    PhaseReport(report::PhaseReportArgs),
}

fn dispatch(command: &Command) -> CliResult<()> {
    match command {
        Command::Run(a) => run::run(a),
        Command::Volume(a) => volume::volume(a),
        Command::ExtractTurbines(a) => turbines::extract_turbines(a),
        Command::Validate(a) => report::validate(a),
        Command::PhaseReport(a) => report::phase_report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
