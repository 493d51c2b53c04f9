//! Propagation environment: refractivity, terrain, ground, atmosphere and the
//! source's vertical pattern.

mod antenna;
mod reflection;
mod refractivity;
mod terrain;

pub use antenna::{AntennaKind, AntennaPattern};
pub use reflection::reflection_coefficient;
pub use refractivity::{phase_screen_column, RefractivityField, RefractivityProfile};
pub use terrain::{GroundComposition, TerrainProfile};

use serde::Serialize;

use crate::error::{Error, Result};

/// Surface meteorology. Carried through the input format; the engines do not
/// use it.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Atmosphere {
    /// g/m³.
    pub surface_humidity: f64,
    /// °C.
    pub surface_temperature: f64,
    /// dB/km.
    pub gaseous_absorption: f64,
    /// `(range km, speed m/s)`.
    pub wind_speeds: Vec<(f64, f64)>,
}

impl Atmosphere {
    pub fn validate(&self) -> Result<()> {
        if !(self.surface_humidity >= 0.0) {
            return Err(Error::invalid("surface absolute humidity", "must be non-negative"));
        }
        if !(self.gaseous_absorption >= 0.0) {
            return Err(Error::invalid("gaseous absorption", "must be non-negative"));
        }
        Ok(())
    }
}
