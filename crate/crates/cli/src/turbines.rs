use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ppf::domain::AmplitudeInterpolation;
use ppf::io::{write_complex_field_export, ComplexFieldExport};
use ppf::pe::run_pe_with;
use ppf::pseudo3d::{scenario_for_azimuth, AzimuthFan};
use ppf::scenario::Scenario;
use ppf::turbine::{
    blade_tip_speed, extraction_window, field_column_at_turbine, TipSpeed, TurbinePlacement,
    TurbineSpec,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{read_input, write_output, CliError, CliResult};
use crate::scenario_args::ScenarioArgs;
use crate::volume::{load_grid, parse_point};

pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TurbineModel {
    /// Vestas V66.
    V66,
    /// GE Energy 3.6 MW.
    #[value(name = "ge3.6")]
    Ge36,
}

impl TurbineModel {
    fn spec(self) -> TurbineSpec {
        match self {
            TurbineModel::V66 => TurbineSpec::vestas_v66(),
            TurbineModel::Ge36 => TurbineSpec::ge_3_6mw(),
        }
    }
}

#[derive(Debug, Args)]
pub struct TurbineArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,

    /// CSV table with columns id, distance_m, azimuth_deg.
    #[arg(long)]
    pub turbines: PathBuf,

    #[arg(long, value_enum, default_value = "v66")]
    pub model: TurbineModel,

    /// Rotor speed for the tip-speed figures. Defaults to the nominal speed.
    #[arg(long)]
    pub rpm: Option<f64>,

    /// Extra depth below the tower base, m.
    #[arg(long, default_value_t = 1.0)]
    pub margin_below: f64,

    /// Extra height above the blade tip, m.
    #[arg(long, default_value_t = 1.1)]
    pub margin_above: f64,

    /// Vertical sample step, m.
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,

    /// Elevation grid; each turbine then gets the terrain under its azimuth.
    /// Without it every turbine uses the scenario terrain.
    #[arg(long, requires = "origin")]
    pub grid: Option<PathBuf>,

    /// Radar position in grid coordinates, `x,y` in meters.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub origin: Option<(f64, f64)>,

    /// Bearing of the table's zero azimuth, degrees clockwise from north.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub boresight: f64,

    /// Terrain sampling step along each azimuth, m. Defaults to the grid
    /// cell size.
    #[arg(long)]
    pub sample_step: Option<f64>,

    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Deserialize)]
struct Row {
    id: String,
    distance_m: f64,
    azimuth_deg: f64,
}

pub fn read_turbine_table(path: &Path) -> CliResult<Vec<TurbinePlacement>> {
    let text = read_input(path)?;
    let bad = |msg: String| CliError::Input(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut seen = HashSet::new();
    let mut placements = Vec::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        if !seen.insert(file_name(&row.id)) {
            return Err(bad(format!("duplicate turbine id {:?}", row.id)));
        }
        let p = TurbinePlacement {
            id: row.id,
            distance: row.distance_m,
            azimuth: row.azimuth_deg,
        };
        p.validate().map_err(|e| bad(e.to_string()))?;
        placements.push(p);
    }
    Ok(placements)
}

/// Export file name for a turbine id; characters outside `[A-Za-z0-9._-]`
/// become `_`.
pub fn file_name(id: &str) -> String {
    let safe: String = id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' })
        .collect();
    format!("turbine_{safe}.txt")
}

#[derive(Serialize)]
struct WindowSummary {
    from_m: f64,
    to_m: f64,
    step_m: f64,
    samples: usize,
}

#[derive(Serialize)]
struct TipSummary {
    rpm: f64,
    speed_m_s: f64,
    speed_km_h: f64,
    warning: Option<String>,
}

#[derive(Serialize)]
struct TurbineEntry<'a> {
    id: &'a str,
    profile_index: usize,
    distance_m: f64,
    azimuth_deg: f64,
    file: Option<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct Summary<'a> {
    scenario_digest: String,
    turbine: &'a TurbineSpec,
    tip_speed: TipSummary,
    window: WindowSummary,
    turbines: Vec<TurbineEntry<'a>>,
}

type Column = ppf::Result<Vec<ppf::domain::ComplexSample>>;

/// Field columns for every placement, in table order.
fn columns(
    scenario: &Scenario,
    placements: &[TurbinePlacement],
    spec: &TurbineSpec,
    window: &[f64],
    args: &TurbineArgs,
) -> CliResult<Vec<Column>> {
    let grid = args.grid.as_deref().map(load_grid).transpose()?;
    let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, p) in placements.iter().enumerate() {
        let key = if grid.is_some() { p.azimuth.to_bits() } else { 0 };
        groups.entry(key).or_default().push(i);
    }
    let max_range = scenario.output.max_range;
    let per_group: Vec<Vec<(usize, Column)>> = groups
        .into_par_iter()
        .map(|(_, members)| {
            let local = match (&grid, args.origin) {
                (Some(grid), Some(origin)) => {
                    let azimuth = args.boresight + placements[members[0]].azimuth;
                    let fan = AzimuthFan {
                        origin,
                        azimuths: vec![azimuth],
                        max_range,
                        range_step: args.sample_step.unwrap_or(grid.cell_size),
                    };
                    scenario_for_azimuth(scenario, grid, &fan, azimuth)
                }
                _ => Ok(scenario.clone()),
            };
            let probes: Vec<f64> = members
                .iter()
                .map(|&i| placements[i].distance)
                .filter(|&d| d <= max_range)
                .collect();
            let run = local.and_then(|s| {
                run_pe_with(&s, &probes, AmplitudeInterpolation::Coherent).map(|(g, _)| (s, g))
            });
            members
                .iter()
                .map(|&i| {
                    let p = &placements[i];
                    let column = if p.distance > max_range {
                        Err(ppf::Error::OutOfRange(format!(
                            "turbine {}: distance {} m lies beyond the maximum range {max_range} m",
                            p.id, p.distance
                        )))
                    } else {
                        match &run {
                            Ok((s, g)) => field_column_at_turbine(g, p, spec, window, &s.terrain),
                            Err(e) => Err(ppf::Error::OutOfRange(format!("turbine {}: {e}", p.id))),
                        }
                    };
                    (i, column)
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Option<Column>> = (0..placements.len()).map(|_| None).collect();
    for (i, c) in per_group.into_iter().flatten() {
        out[i] = Some(c);
    }
    Ok(out.into_iter().map(|c| c.expect("every turbine grouped")).collect())
}

pub fn extract_turbines(args: &TurbineArgs) -> CliResult<()> {
    let (scenario, _) = args.scenario.load()?;
    let placements = read_turbine_table(&args.turbines)?;
    let spec = args.model.spec();
    let window = extraction_window(&spec, args.margin_below, args.margin_above, args.step)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let rpm = args.rpm.unwrap_or(spec.rpm_nominal);
    let tip: TipSpeed = blade_tip_speed(&spec, rpm).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(w) = &tip.warning {
        eprintln!("warning: {w}");
    }

    let columns = if placements.is_empty() {
        Vec::new()
    } else {
        columns(&scenario, &placements, &spec, &window, args)?
    };

    let mut entries = Vec::with_capacity(placements.len());
    let mut failed = 0;
    for (row, (p, column)) in placements.iter().zip(columns).enumerate() {
        let profile_index = row + 1;
        let (file, error) = match column {
            Ok(values) => {
                let export = ComplexFieldExport {
                    profile_index: profile_index as i64,
                    heights: window.clone(),
                    values,
                };
                let name = file_name(&p.id);
                write_output(&args.out.join(&name), &write_complex_field_export(&export)?)?;
                (Some(name), None)
            }
            Err(e) => {
                eprintln!("error: {e}");
                failed += 1;
                (None, Some(e.to_string()))
            }
        };
        entries.push(TurbineEntry {
            id: &p.id,
            profile_index,
            distance_m: p.distance,
            azimuth_deg: p.azimuth,
            file,
            error,
        });
    }

    let summary = Summary {
        scenario_digest: scenario.digest(),
        turbine: &spec,
        tip_speed: TipSummary {
            rpm,
            speed_m_s: tip.speed,
            speed_km_h: tip.kmh(),
            warning: tip.warning.clone(),
        },
        window: WindowSummary {
            from_m: window[0],
            to_m: window[window.len() - 1],
            step_m: args.step,
            samples: window.len(),
        },
        turbines: entries,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    write_output(&args.out.join(SUMMARY_FILE), &json)?;
    println!(
        "{} of {} turbines exported to {} (tip speed {:.1} m/s at {rpm} rpm)",
        placements.len() - failed,
        placements.len(),
        args.out.display(),
        tip.speed
    );
    if failed > 0 {
        return Err(CliError::Partial(format!("{failed} of {} turbines failed", placements.len())));
    }
    Ok(())
}
