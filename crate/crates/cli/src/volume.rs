use std::path::PathBuf;

use clap::Args;
use ppf::io::read_elevation_grid;
use ppf::pseudo3d::{export_volume, run_volume, AzimuthFan, ElevationGrid};

use crate::error::{read_input, CliError, CliResult};
use crate::scenario_args::ScenarioArgs;

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,

    /// Elevation grid file.
    #[arg(long)]
    pub grid: PathBuf,

    /// Radar position in grid coordinates, `x,y` in meters.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub origin: (f64, f64),

    /// Azimuths in degrees clockwise from north, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub azimuths: Vec<f64>,

    /// Terrain sampling step along each azimuth, m. Defaults to the grid
    /// cell size.
    #[arg(long)]
    pub sample_step: Option<f64>,

    #[arg(long, short)]
    pub out: PathBuf,
}

pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("{t:?}: {e}"))
    };
    Ok((num(x)?, num(y)?))
}

pub fn load_grid(path: &std::path::Path) -> CliResult<ElevationGrid> {
    let text = read_input(path)?;
    read_elevation_grid(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn volume(args: &VolumeArgs) -> CliResult<()> {
    let (scenario, _) = args.scenario.load()?;
    let grid = load_grid(&args.grid)?;
    let fan = AzimuthFan {
        origin: args.origin,
        azimuths: args.azimuths.clone(),
        max_range: scenario.output.max_range,
        range_step: args.sample_step.unwrap_or(grid.cell_size),
    };
    let result = run_volume(&scenario, &grid, &fan)?;
    let written = export_volume(&result, &args.out)?;
    let failed: Vec<String> = result
        .slices
        .iter()
        .filter_map(|s| s.result.as_ref().err().map(|e| format!("azimuth {}: {e}", s.azimuth)))
        .collect();
    for f in &failed {
        eprintln!("error: {f}");
    }
    println!(
        "volume {}: {} of {} azimuths written to {}",
        result.scenario_digest,
        written.len() - 1,
        result.slices.len(),
        args.out.display()
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Partial(format!(
            "{} of {} azimuths failed",
            failed.len(),
            result.slices.len()
        )))
    }
}
