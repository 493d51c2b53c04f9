use sha2::{Digest, Sha256};

use crate::domain::{OutputWindow, SourceSpec};
use crate::environment::{Atmosphere, RefractivityField, TerrainProfile};
use crate::error::{Error, Result};
use crate::io::write_input_file;
use crate::pe::PeConfig;

/// Optional PE numerics. `None` lets the engine size the value itself.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PeOverrides {
    pub transform_size: Option<usize>,
    /// m.
    pub z_max: Option<f64>,
    /// m.
    pub range_step: Option<f64>,
    pub absorber_fraction: Option<f64>,
}

impl PeOverrides {
    pub fn is_empty(&self) -> bool {
        *self == PeOverrides::default()
    }
}

/// A complete run description, as read from an input file.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub source: SourceSpec,
    /// Height-finder cut-back `(angle deg, factor)` pairs; carried, not used.
    pub cut_back: Vec<(f64, f64)>,
    pub output: OutputWindow,
    pub extrapolation_flag: i64,
    pub atmosphere: Atmosphere,
    pub refractivity: RefractivityField,
    pub terrain: TerrainProfile,
    pub pe: PeOverrides,
}

impl Scenario {
    /// Flat perfectly reflecting ground, vacuum refractivity.
    pub fn new(source: SourceSpec, output: OutputWindow) -> Self {
        Scenario {
            source,
            cut_back: Vec::new(),
            output,
            extrapolation_flag: 0,
            atmosphere: Atmosphere::default(),
            refractivity: RefractivityField::vacuum(),
            terrain: TerrainProfile::flat(),
            pe: PeOverrides::default(),
        }
    }

    /// Field checks plus the cross-checks that need several fields at once.
    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.output.validate()?;
        self.atmosphere.validate()?;
        self.refractivity.validate()?;
        self.terrain.validate()?;
        if let Some(first) = self.refractivity.profiles.first() {
            let n = first.levels.len();
            if self.refractivity.profiles.iter().any(|p| p.levels.len() != n) {
                return Err(Error::invalid(
                    "refractivity",
                    "all profiles must have the same number of levels",
                ));
            }
        }
        let antenna = self.terrain.height_at(0.0) + self.source.antenna_height;
        if antenna >= self.output.max_height {
            return Err(Error::invalid(
                "antenna height",
                format!(
                    "antenna at {antenna} m must lie below the maximum output height {} m",
                    self.output.max_height
                ),
            ));
        }
        PeConfig::for_scenario(self).map(|_| ())
    }

    /// Short stable identifier of the scenario's semantic content.
    pub fn digest(&self) -> String {
        let text = write_input_file(self);
        let hash = Sha256::digest(text.as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
