//! Loading a scenario file and applying command-line overrides.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ppf::domain::Polarization;
use ppf::io::parse_input_file;
use ppf::scenario::Scenario;
use serde::Serialize;

use crate::error::{read_input, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolarizationArg {
    #[value(name = "h")]
    Horizontal,
    #[value(name = "v")]
    Vertical,
}

impl From<PolarizationArg> for Polarization {
    fn from(p: PolarizationArg) -> Self {
        match p {
            PolarizationArg::Horizontal => Polarization::Horizontal,
            PolarizationArg::Vertical => Polarization::Vertical,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Scenario input file.
    pub input: PathBuf,

    /// Override the radar frequency, MHz.
    #[arg(long)]
    pub frequency_mhz: Option<f64>,

    /// Override the antenna height above ground, m.
    #[arg(long)]
    pub antenna_height: Option<f64>,

    /// Override the polarization.
    #[arg(long, value_enum)]
    pub polarization: Option<PolarizationArg>,

    /// Override the PE transform size (number of vertical bins).
    #[arg(long)]
    pub transform_size: Option<usize>,

    /// Override the PE domain height, m.
    #[arg(long)]
    pub z_max: Option<f64>,

    /// Override the PE range step, m.
    #[arg(long)]
    pub range_step: Option<f64>,

    /// Override the fraction of the PE column used by the absorber.
    #[arg(long)]
    pub absorber_fraction: Option<f64>,
}

/// One value set on the command line, with what the file said.
#[derive(Debug, Clone, Serialize)]
pub struct OverrideRecord {
    pub field: &'static str,
    pub file: Option<serde_json::Value>,
    pub flag: serde_json::Value,
}

fn record<T: Serialize>(field: &'static str, file: Option<T>, flag: T) -> OverrideRecord {
    OverrideRecord {
        field,
        file: file.map(|v| serde_json::to_value(v).unwrap_or_default()),
        flag: serde_json::to_value(flag).unwrap_or_default(),
    }
}

impl ScenarioArgs {
    /// Parses the input file, applies flag overrides and validates the
    /// result.
    pub fn load(&self) -> CliResult<(Scenario, Vec<OverrideRecord>)> {
        let text = read_input(&self.input)?;
        let mut s = parse_input_file(&text).map_err(|e| located(&self.input, e))?;
        let mut records = Vec::new();
        if let Some(f) = self.frequency_mhz {
            records.push(record("frequency_mhz", Some(s.source.frequency_mhz), f));
            s.source.frequency_mhz = f;
        }
        if let Some(h) = self.antenna_height {
            records.push(record("antenna_height", Some(s.source.antenna_height), h));
            s.source.antenna_height = h;
        }
        if let Some(p) = self.polarization {
            let p = Polarization::from(p);
            records.push(record("polarization", Some(s.source.polarization.code()), p.code()));
            s.source.polarization = p;
        }
        if let Some(n) = self.transform_size {
            records.push(record("transform_size", s.pe.transform_size, n));
            s.pe.transform_size = Some(n);
        }
        if let Some(z) = self.z_max {
            records.push(record("z_max", s.pe.z_max, z));
            s.pe.z_max = Some(z);
        }
        if let Some(dr) = self.range_step {
            records.push(record("range_step", s.pe.range_step, dr));
            s.pe.range_step = Some(dr);
        }
        if let Some(a) = self.absorber_fraction {
            records.push(record("absorber_fraction", s.pe.absorber_fraction, a));
            s.pe.absorber_fraction = Some(a);
        }
        if !records.is_empty() {
            s.validate().map_err(|e| {
                CliError::Input(format!("{} (after command-line overrides): {e}", self.input.display()))
            })?;
        }
        Ok((s, records))
    }
}

fn located(path: &Path, e: ppf::Error) -> CliError {
    if e.is_input_error() {
        CliError::Input(format!("{}: {e}", path.display()))
    } else {
        CliError::Engine(e)
    }
}
