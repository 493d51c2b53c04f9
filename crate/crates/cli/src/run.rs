use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use ppf::domain::{AmplitudeInterpolation, Model, PpfResult, RunMetadata};
use ppf::fe::run_fe;
use ppf::io::{write_output_file, write_plot_grid};
use ppf::pe::{run_pe_with, PeConfig};
use ppf::scenario::Scenario;
use serde::Serialize;

use crate::error::{write_output, CliResult};
use crate::scenario_args::{OverrideRecord, ScenarioArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Fe,
    Pe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmplitudeArg {
    /// Magnitude of the interpolated complex field.
    Coherent,
    /// Interpolated bin magnitudes.
    Magnitude,
}

impl From<AmplitudeArg> for AmplitudeInterpolation {
    fn from(a: AmplitudeArg) -> Self {
        match a {
            AmplitudeArg::Coherent => AmplitudeInterpolation::Coherent,
            AmplitudeArg::Magnitude => AmplitudeInterpolation::Magnitude,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,

    #[arg(long, value_enum, default_value = "pe")]
    pub model: ModelArg,

    /// Directory for the output file, plot grids and manifest.
    #[arg(long, short)]
    pub out: PathBuf,

    /// How PE amplitudes are interpolated between bins.
    #[arg(long, value_enum, default_value = "coherent")]
    pub amplitude: AmplitudeArg,

    /// Report wall-clock time per phase on stderr and in the manifest.
    #[arg(long)]
    pub timing: bool,
}

pub const OUTPUT_FILE: &str = "output.txt";
pub const AMPLITUDE_FILE: &str = "amplitude.csv";
pub const PHASE_FILE: &str = "phase.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Serialize)]
struct Timing {
    load_s: f64,
    compute_s: f64,
    write_s: f64,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    scenario_digest: &'a str,
    model: Model,
    input: String,
    outputs: Vec<&'static str>,
    overrides: &'a [OverrideRecord],
    warnings: &'a [String],
    metadata: &'a RunMetadata,
    pe_config: Option<PeConfig>,
    timing: Option<Timing>,
}

/// Runs one model over a scenario: result, warnings and the PE numerics used.
pub fn evaluate(
    scenario: &Scenario,
    model: ModelArg,
    amplitude: AmplitudeArg,
) -> CliResult<(PpfResult, Vec<String>, Option<PeConfig>)> {
    match model {
        ModelArg::Fe => {
            let (result, warnings) = run_fe(scenario)?;
            Ok((result, warnings, None))
        }
        ModelArg::Pe => {
            let config = PeConfig::for_scenario(scenario)?;
            let (_, result) = run_pe_with(scenario, &[], amplitude.into())?;
            Ok((result, Vec::new(), Some(config)))
        }
    }
}

pub fn run(args: &RunArgs) -> CliResult<()> {
    let t0 = Instant::now();
    let (scenario, overrides) = args.scenario.load()?;
    let t1 = Instant::now();
    let (result, warnings, pe_config) = evaluate(&scenario, args.model, args.amplitude)?;
    let t2 = Instant::now();

    let out = &args.out;
    write_output(&out.join(OUTPUT_FILE), &write_output_file(&result))?;
    write_output(
        &out.join(AMPLITUDE_FILE),
        &write_plot_grid(&result.ranges, &result.heights, &result.amplitude_db),
    )?;
    write_output(
        &out.join(PHASE_FILE),
        &write_plot_grid(&result.ranges, &result.heights, &result.phase_rad),
    )?;
    let t3 = Instant::now();

    let timing = args.timing.then(|| Timing {
        load_s: (t1 - t0).as_secs_f64(),
        compute_s: (t2 - t1).as_secs_f64(),
        write_s: (t3 - t2).as_secs_f64(),
    });
    if let Some(t) = &timing {
        eprintln!(
            "timing: load {:.3} s, compute {:.3} s, write {:.3} s",
            t.load_s, t.compute_s, t.write_s
        );
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let manifest = RunManifest {
        scenario_digest: &result.scenario_digest,
        model: result.metadata.model,
        input: args.scenario.input.display().to_string(),
        outputs: vec![OUTPUT_FILE, AMPLITUDE_FILE, PHASE_FILE, MANIFEST_FILE],
        overrides: &overrides,
        warnings: &warnings,
        metadata: &result.metadata,
        pe_config,
        timing,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_output(&out.join(MANIFEST_FILE), &json)?;
    println!(
        "{} run {}: {} ranges x {} heights written to {}",
        match result.metadata.model {
            Model::Fe => "FE",
            Model::Pe => "PE",
        },
        result.scenario_digest,
        result.ranges.len(),
        result.heights.len(),
        out.display()
    );
    Ok(())
}
