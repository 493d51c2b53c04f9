use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use ppf::io::write_plot_grid;
use ppf::pe::{phase_continuity_report, unwrap_phase_grid, PeConfig, DEFAULT_NULL_THRESHOLD_DB};

use crate::error::{write_output, CliResult};
use crate::run::{evaluate, AmplitudeArg, ModelArg};
use crate::scenario_args::ScenarioArgs;

pub const JUMPS_FILE: &str = "phase_jumps.csv";
pub const UNWRAPPED_FILE: &str = "phase_unwrapped.csv";

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

/// Checks a scenario and prints the PE numerics it would run with.
pub fn validate(args: &ValidateArgs) -> CliResult<()> {
    let (scenario, _) = args.scenario.load()?;
    let config = PeConfig::for_scenario(&scenario)?;
    println!("{}: ok", args.scenario.input.display());
    println!("digest {}", scenario.digest());
    println!(
        "pe transform_size {} z_max {} m dz {} m range_step {} m absorber {}",
        config.transform_size, config.z_max, config.dz(), config.delta_r, config.absorber_fraction
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct PhaseReportArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,

    #[arg(long, value_enum, default_value = "pe")]
    pub model: ModelArg,

    /// Pairs with either amplitude at or below this level are ignored, dB.
    #[arg(long, default_value_t = DEFAULT_NULL_THRESHOLD_DB, allow_hyphen_values = true)]
    pub threshold: f64,

    #[arg(long, short)]
    pub out: PathBuf,

    /// Also write the height-wise unwrapped phase grid.
    #[arg(long)]
    pub unwrapped: bool,
}

/// Lists vertically adjacent phase samples more than π apart outside nulls.
pub fn phase_report(args: &PhaseReportArgs) -> CliResult<()> {
    let (scenario, _) = args.scenario.load()?;
    let (result, warnings, _) = evaluate(&scenario, args.model, AmplitudeArg::Coherent)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let jumps = phase_continuity_report(&result, args.threshold);
    let mut csv = String::from("range_m,height_m,range_index,height_index,jump_rad\n");
    for j in &jumps {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            j.range, j.height, j.range_index, j.height_index, j.jump
        );
    }
    write_output(&args.out.join(JUMPS_FILE), &csv)?;
    if args.unwrapped {
        let grid = unwrap_phase_grid(&result.phase_rad);
        write_output(
            &args.out.join(UNWRAPPED_FILE),
            &write_plot_grid(&result.ranges, &result.heights, &grid),
        )?;
    }
    println!(
        "{} phase jumps above {} dB in {} points",
        jumps.len(),
        args.threshold,
        result.ranges.len() * result.heights.len()
    );
    Ok(())
}
