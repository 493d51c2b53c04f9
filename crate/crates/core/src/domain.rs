//! Value types and unit conventions shared by every model.
//!
//! Units are fixed: meters for lengths, MHz for frequency, dB for levels and
//! radians for phase. Ranges inside the engine are always meters; the input
//! file format uses kilometers in a few places and converts on the way in.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::environment::AntennaPattern;
use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Field magnitudes below this value are clamped before taking logarithms.
pub const MAGNITUDE_FLOOR: f64 = 1e-30;

/// A complex field sample. `re`/`im` are dimensionless.
pub type ComplexSample = Complex64;

/// Principal-value phase and polar helpers for [`ComplexSample`].
pub trait PhaseExt {
    /// Two-argument arctangent of `(im, re)` mapped into `(-π, π]`.
    fn phase(&self) -> f64;
    fn magnitude(&self) -> f64;
}

impl PhaseExt for Complex64 {
    fn phase(&self) -> f64 {
        let p = self.im.atan2(self.re);
        // atan2(-0.0, x<0) yields -π; the principal interval is open there.
        if p <= -PI {
            PI
        } else {
            p
        }
    }

    fn magnitude(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Wrap an arbitrary angle into `(-π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Polarization {
    Horizontal,
    Vertical,
}

impl Polarization {
    /// Code used by the input file (`0=HOR,1=VER`).
    pub fn code(self) -> u32 {
        match self {
            Polarization::Horizontal => 0,
            Polarization::Vertical => 1,
        }
    }

    pub fn from_code(code: i64) -> Option<Self> {
        match code {
            0 => Some(Polarization::Horizontal),
            1 => Some(Polarization::Vertical),
            _ => None,
        }
    }
}

/// The radiating source: carrier, mounting height and vertical pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpec {
    /// Carrier frequency, MHz.
    pub frequency_mhz: f64,
    /// Antenna height above local ground, m.
    pub antenna_height: f64,
    pub polarization: Polarization,
    /// Vertical pattern; carries the beam width and elevation angle.
    pub pattern: AntennaPattern,
}

impl SourceSpec {
    /// Omnidirectional source; the common test configuration.
    pub fn omni(frequency_mhz: f64, antenna_height: f64, polarization: Polarization) -> Self {
        SourceSpec {
            frequency_mhz,
            antenna_height,
            polarization,
            pattern: AntennaPattern::omni(),
        }
    }

    /// Wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / (self.frequency_mhz * 1e6)
    }

    /// Free-space wavenumber in rad/m.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency_mhz > 0.0 && self.frequency_mhz.is_finite()) {
            return Err(Error::invalid("frequency", "must be positive"));
        }
        if !(self.antenna_height >= 0.0 && self.antenna_height.is_finite()) {
            return Err(Error::invalid("antenna height", "must be non-negative"));
        }
        self.pattern.validate()
    }
}

/// Output lattice requested from a run.
///
/// Follows the APM convention: heights are `min + j·(max-min)/n` for
/// `j = 1..=n` and ranges are `i·max_range/n` for `i = 1..=n`; neither
/// axis includes its lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutputWindow {
    /// m above the height datum.
    pub min_height: f64,
    /// m above the height datum.
    pub max_height: f64,
    /// m.
    pub max_range: f64,
    pub n_height_points: usize,
    pub n_range_points: usize,
}

impl OutputWindow {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_height < self.max_height) {
            return Err(Error::invalid(
                "output window",
                "minimum height must be below maximum height",
            ));
        }
        if !(self.max_range > 0.0) {
            return Err(Error::invalid("maximum output range", "must be positive"));
        }
        if self.n_height_points < 2 {
            return Err(Error::invalid("number of output height points", "must be at least 2"));
        }
        if self.n_range_points < 2 {
            return Err(Error::invalid("number of output range points", "must be at least 2"));
        }
        Ok(())
    }

    pub fn heights(&self) -> Vec<f64> {
        let n = self.n_height_points;
        let span = self.max_height - self.min_height;
        (1..=n)
            .map(|j| self.min_height + span * j as f64 / n as f64)
            .collect()
    }

    pub fn ranges(&self) -> Vec<f64> {
        let n = self.n_range_points;
        (1..=n)
            .map(|i| self.max_range * i as f64 / n as f64)
            .collect()
    }

    /// Output height spacing, m.
    pub fn height_step(&self) -> f64 {
        (self.max_height - self.min_height) / self.n_height_points as f64
    }
}

/// Which model produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Fe,
    Pe,
}

/// dB normalization applied to `|u|` to obtain the propagation factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PpfNormalization {
    /// `20·log10|u| + 10·log10(r)`, r in meters.
    PeFactor,
    /// `20·log10|u| - 10·log10(r) - 10·log10(λ)`.
    FreeSpace,
    /// `20·log10|E|`; the two-ray field is already normalized.
    TwoRay,
}

/// How the amplitude at an output height is interpolated between bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeInterpolation {
    /// Magnitude of the linearly interpolated complex field. Amplitude and
    /// phase then describe the same complex number.
    #[default]
    Coherent,
    /// Linear interpolation of bin magnitudes, as APM's `getpfac` does.
    Magnitude,
}

/// Provenance recorded alongside every result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub model: Model,
    pub normalization: PpfNormalization,
    pub amplitude_interpolation: AmplitudeInterpolation,
    pub magnitude_floor: f64,
    /// Units of the range term added to the dB value.
    pub range_log_units: &'static str,
}

/// Amplitude, absolute phase and loss on the output lattice.
///
/// Grids are indexed `[range][height]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PpfResult {
    pub ranges: Vec<f64>,
    pub heights: Vec<f64>,
    pub amplitude_db: Vec<Vec<f64>>,
    pub phase_rad: Vec<Vec<f64>>,
    pub loss_db: Vec<Vec<f64>>,
    pub scenario_digest: String,
    pub metadata: RunMetadata,
}

impl PpfResult {
    /// Checks that every grid is complete and rectangular.
    pub fn is_complete(&self) -> bool {
        let nr = self.ranges.len();
        let nh = self.heights.len();
        [&self.amplitude_db, &self.phase_rad, &self.loss_db]
            .iter()
            .all(|g| g.len() == nr && g.iter().all(|col| col.len() == nh))
    }
}

/// `20·log10(x)` for a positive ratio.
pub fn db_from_linear(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("cannot take dB of non-positive value {x}")));
    }
    Ok(20.0 * x.log10())
}

fn floored_db(magnitude: f64) -> f64 {
    20.0 * magnitude.max(MAGNITUDE_FLOOR).log10()
}

/// Propagation factor with the `-10·log10(r) - 10·log10(λ)` normalization.
pub fn ppf_free_space_db(u: ComplexSample, range: f64, wavelength: f64) -> Result<f64> {
    if !(range > 0.0) || !(wavelength > 0.0) {
        return Err(Error::Domain(
            "range and wavelength must be positive".to_string(),
        ));
    }
    Ok(floored_db(u.magnitude()) - 10.0 * range.log10() - 10.0 * wavelength.log10())
}

/// Propagation factor as APM's PE computes it: `20·log10(|u|) + 10·log10(r)`.
pub fn ppf_pe_factor_db(magnitude: f64, range: f64) -> Result<f64> {
    if !(range > 0.0) {
        return Err(Error::Domain("range must be positive".to_string()));
    }
    Ok(floored_db(magnitude) + 10.0 * range.log10())
}

/// Free-space basic transmission loss `20·log10(4πr/λ)`, dB.
pub fn free_space_loss_db(range: f64, wavelength: f64) -> f64 {
    20.0 * (4.0 * PI * range / wavelength).log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn db_examples() {
        assert_eq!(db_from_linear(1.0).unwrap(), 0.0);
        assert!((db_from_linear(10.0).unwrap() - 20.0).abs() < 1e-12);
        assert!((db_from_linear(2.0).unwrap() - 6.0206).abs() < 1e-4);
        assert!(db_from_linear(0.0).is_err());
        assert!(db_from_linear(-1.0).is_err());
    }

    #[test]
    fn free_space_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert!(ppf_free_space_db(one, 1.0, 1.0).unwrap().abs() < 1e-12);
        let ten = Complex64::new(0.0, 10.0);
        assert!((ppf_free_space_db(ten, 1.0, 1.0).unwrap() - 20.0).abs() < 1e-12);
        assert!((ppf_free_space_db(one, 100.0, 0.1).unwrap() + 10.0).abs() < 1e-9);
        // zero field clamps instead of producing -inf
        let z = ppf_free_space_db(Complex64::new(0.0, 0.0), 1.0, 1.0).unwrap();
        assert!((z + 600.0).abs() < 1e-9);
        assert!(ppf_free_space_db(one, 0.0, 1.0).is_err());
    }

    #[test]
    fn phase_interval_is_half_open() {
        assert_eq!(Complex64::new(-1.0, -0.0).phase(), PI);
        assert_eq!(Complex64::new(-1.0, 0.0).phase(), PI);
        assert!((Complex64::new(0.5, 0.5).phase() - PI / 4.0).abs() < 1e-15);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
    }

    #[test]
    fn apm_output_lattice() {
        let w = OutputWindow {
            min_height: 0.0,
            max_height: 100.0,
            max_range: 1000.0,
            n_height_points: 5,
            n_range_points: 100,
        };
        assert_eq!(w.heights(), vec![20.0, 40.0, 60.0, 80.0, 100.0]);
        assert_eq!(w.ranges()[0], 10.0);
        assert_eq!(*w.ranges().last().unwrap(), 1000.0);
    }

    #[test]
    fn wavelength_from_frequency() {
        let s = SourceSpec::omni(2800.0, 15.0, Polarization::Horizontal);
        assert!((s.wavelength() - 0.107_068_735).abs() < 1e-8);
        assert!((s.wavenumber() - 58.6836).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn polar_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let s = Complex64::new(re, im);
            let back = Complex64::from_polar(s.magnitude(), s.phase());
            let scale = s.magnitude().max(1e-300);
            prop_assert!((back - s).norm() / scale < 1e-12);
            prop_assert!(s.phase() > -PI && s.phase() <= PI);
        }

        #[test]
        fn db_is_additive(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
            let lhs = db_from_linear(a * b).unwrap();
            let rhs = db_from_linear(a).unwrap() + db_from_linear(b).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }
    }
}
