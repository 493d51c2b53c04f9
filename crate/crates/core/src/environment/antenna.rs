//! Vertical antenna patterns.
//!
//! The built-in shapes are parameterized by the half-power beam width and the
//! elevation of the beam maximum, both in degrees. Every shape returns a field
//! (not power) factor in `[0, 1]` that equals 1 at its maximum.

use serde::Serialize;

use crate::error::{Error, Result};

/// Argument of `sin(x)/x` where the field drops to `1/√2` (half power).
const SINC_HALF_POWER_ARG: f64 = 1.391_557_378_251_510_5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AntennaKind {
    Omni,
    Gauss,
    SincX,
    Cosec2,
    /// `(angle in degrees, normalized field factor)`, angles ascending.
    UserDefined(Vec<(f64, f64)>),
}

impl AntennaKind {
    /// Code used by the input file (`1=OMNI,2=GAUSS,3=SINC(X),4=COSEC2,7=USRDEF`).
    pub fn code(&self) -> u32 {
        match self {
            AntennaKind::Omni => 1,
            AntennaKind::Gauss => 2,
            AntennaKind::SincX => 3,
            AntennaKind::Cosec2 => 4,
            AntennaKind::UserDefined(_) => 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntennaPattern {
    pub kind: AntennaKind,
    /// Half-power beam width, degrees.
    pub beam_width: f64,
    /// Elevation of the beam maximum, degrees.
    pub elevation: f64,
}

impl AntennaPattern {
    pub fn omni() -> Self {
        AntennaPattern {
            kind: AntennaKind::Omni,
            beam_width: 0.0,
            elevation: 0.0,
        }
    }

    pub fn gauss(beam_width: f64, elevation: f64) -> Self {
        AntennaPattern {
            kind: AntennaKind::Gauss,
            beam_width,
            elevation,
        }
    }

    pub fn user_defined(table: Vec<(f64, f64)>) -> Result<Self> {
        let p = AntennaPattern {
            kind: AntennaKind::UserDefined(table),
            beam_width: 0.0,
            elevation: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            AntennaKind::Omni => Ok(()),
            AntennaKind::UserDefined(table) => {
                if table.is_empty() {
                    return Err(Error::invalid("antenna pattern", "user-defined table is empty"));
                }
                if table.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return Err(Error::invalid(
                        "antenna pattern",
                        "user-defined angles must be strictly ascending",
                    ));
                }
                if table.iter().any(|&(_, f)| !(0.0..=1.0).contains(&f)) {
                    return Err(Error::invalid(
                        "antenna pattern",
                        "user-defined factors must lie in [0, 1]",
                    ));
                }
                let peak = table.iter().map(|&(_, f)| f).fold(0.0, f64::max);
                if (peak - 1.0).abs() > 1e-9 {
                    return Err(Error::invalid(
                        "antenna pattern",
                        "user-defined table must be normalized to a maximum of 1",
                    ));
                }
                Ok(())
            }
            kind => {
                if !(self.beam_width > 0.0 && self.beam_width.is_finite()) {
                    return Err(Error::invalid("beam width", "must be positive for this antenna type"));
                }
                if *kind == AntennaKind::Cosec2 && self.elevation + self.beam_width / 2.0 <= 0.0 {
                    return Err(Error::invalid(
                        "antenna elevation angle",
                        "cosec² shaping needs its upper half-power angle above the horizon",
                    ));
                }
                Ok(())
            }
        }
    }

    /// Field pattern factor at `angle` degrees above the horizontal.
    pub fn pattern_factor(&self, angle: f64) -> Result<f64> {
        if !(-90.0 - 1e-9..=90.0 + 1e-9).contains(&angle) {
            return Err(Error::Domain(format!("pattern angle {angle}° outside [-90°, 90°]")));
        }
        let off = angle - self.elevation;
        let f = match &self.kind {
            AntennaKind::Omni => 1.0,
            AntennaKind::Gauss => gauss(off, self.beam_width),
            AntennaKind::SincX => {
                let x = 2.0 * SINC_HALF_POWER_ARG * off / self.beam_width;
                if x == 0.0 {
                    1.0
                } else {
                    (x.sin() / x).abs()
                }
            }
            AntennaKind::Cosec2 => {
                let upper = self.elevation + self.beam_width / 2.0;
                if angle <= upper {
                    gauss(off, self.beam_width)
                } else {
                    let edge = gauss(upper - self.elevation, self.beam_width);
                    (edge * upper.to_radians().sin() / angle.to_radians().sin()).min(1.0)
                }
            }
            AntennaKind::UserDefined(table) => interpolate_table(table, angle)?,
        };
        Ok(f)
    }
}

fn gauss(off: f64, beam_width: f64) -> f64 {
    let x = off / beam_width;
    (-2.0 * std::f64::consts::LN_2 * x * x).exp()
}

fn interpolate_table(table: &[(f64, f64)], angle: f64) -> Result<f64> {
    let (first, last) = match (table.first(), table.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::invalid("antenna pattern", "user-defined table is empty")),
    };
    if angle <= first.0 {
        return Ok(first.1);
    }
    if angle >= last.0 {
        return Ok(last.1);
    }
    let i = table.partition_point(|&(a, _)| a <= angle);
    let (a0, f0) = table[i - 1];
    let (a1, f1) = table[i];
    Ok(f0 + (f1 - f0) * (angle - a0) / (a1 - a0))
}
