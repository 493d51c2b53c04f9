use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fe::FE_MAX_RANGE;
use crate::scenario::Scenario;

/// Fraction of the column given to the absorbing taper unless overridden.
pub const DEFAULT_ABSORBER_FRACTION: f64 = 0.25;

const MIN_TRANSFORM_SIZE: usize = 64;
const MAX_TRANSFORM_SIZE: usize = 1 << 20;

/// Numerics of a split-step march.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeConfig {
    /// Number of vertical bins; a power of two.
    pub transform_size: usize,
    /// Total column height, m.
    pub z_max: f64,
    /// Range step, m.
    pub delta_r: f64,
    /// Top fraction of the column covered by the absorbing taper, `[0, 0.5)`.
    pub absorber_fraction: f64,
}

impl PeConfig {
    pub fn new(transform_size: usize, z_max: f64, delta_r: f64, absorber_fraction: f64) -> Result<Self> {
        let c = PeConfig {
            transform_size,
            z_max,
            delta_r,
            absorber_fraction,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.transform_size.is_power_of_two() || self.transform_size < 4 {
            return Err(Error::invalid("PE transform size", "must be a power of two >= 4"));
        }
        if !(self.z_max > 0.0 && self.z_max.is_finite()) {
            return Err(Error::invalid("PE domain height", "must be positive"));
        }
        if !(self.delta_r > 0.0 && self.delta_r.is_finite()) {
            return Err(Error::invalid("PE range step", "must be positive"));
        }
        if !(0.0..0.5).contains(&self.absorber_fraction) {
            return Err(Error::invalid("PE absorber fraction", "must lie in [0, 0.5)"));
        }
        Ok(())
    }

    /// Vertical bin size, m.
    pub fn dz(&self) -> f64 {
        self.z_max / self.transform_size as f64
    }

    /// Spectral mesh `π / z_max`, rad/m.
    pub fn delta_p(&self) -> f64 {
        PI / self.z_max
    }

    /// Normalization making forward + inverse sine transform the identity.
    pub fn f_norm(&self) -> f64 {
        2.0 / self.transform_size as f64
    }

    /// Height where the absorbing taper begins, m.
    pub fn usable_height(&self) -> f64 {
        self.z_max * (1.0 - self.absorber_fraction)
    }

    /// Sine of the steepest propagation angle the column represents.
    pub fn max_sin_angle(&self, wavelength: f64) -> f64 {
        wavelength / (2.0 * self.dz())
    }

    /// Resolves the scenario's overrides and fills the rest automatically,
    /// then checks the result against the scenario's requirements.
    pub fn for_scenario(scenario: &Scenario) -> Result<Self> {
        let req = Requirements::of(scenario);
        let o = &scenario.pe;
        let absorber = o.absorber_fraction.unwrap_or(DEFAULT_ABSORBER_FRACTION);
        if !(0.0..0.5).contains(&absorber) {
            return Err(Error::invalid("PE absorber fraction", "must lie in [0, 0.5)"));
        }
        let column = req.top_height.max(req.antenna_height) / (1.0 - absorber);

        let (transform_size, z_max) = match (o.transform_size, o.z_max) {
            (Some(n), Some(z)) => (n, z),
            (Some(n), None) => {
                let dz = req.dz_auto.min(req.wavelength / 2.0);
                (n, (dz * n as f64).max(column * 1.25))
            }
            (None, Some(z)) => (pow2_bins(z / req.dz_auto)?, z),
            (None, None) => {
                let n = pow2_bins(column * 1.25 / req.dz_auto)?;
                (n, n as f64 * req.dz_auto)
            }
        };
        let delta_r = o
            .range_step
            .unwrap_or_else(|| (req.wavelength * z_max).sqrt());
        let config = PeConfig::new(transform_size, z_max, delta_r, absorber)?;
        req.check(&config)?;
        Ok(config)
    }
}

fn pow2_bins(bins: f64) -> Result<usize> {
    if !(bins.is_finite()) || bins > MAX_TRANSFORM_SIZE as f64 {
        return Err(Error::invalid(
            "PE transform size",
            format!("scenario needs more than {MAX_TRANSFORM_SIZE} bins"),
        ));
    }
    Ok((bins.ceil() as usize).next_power_of_two().max(MIN_TRANSFORM_SIZE))
}

/// What a scenario demands of the column.
struct Requirements {
    wavelength: f64,
    antenna_height: f64,
    /// Highest output point above the lowest ground under the window, m.
    top_height: f64,
    /// Propagation angle (rad) the column must represent, terrain slope included.
    angle: f64,
    /// Output height step when it is finer than λ/2, m.
    nyquist_step: Option<f64>,
    /// Largest ground height change from the source, m.
    relief: (f64, f64),
    dz_auto: f64,
}

impl Requirements {
    fn of(s: &Scenario) -> Self {
        let wavelength = s.source.wavelength();
        let terrain = &s.terrain;
        let max_range = s.output.max_range;
        let datum = terrain.height_at(0.0);
        let mut grounds: Vec<(f64, f64)> = terrain
            .points
            .iter()
            .filter(|&&(r, _)| r <= max_range)
            .map(|&(r, h)| (r, h))
            .collect();
        grounds.push((0.0, datum));
        grounds.push((max_range, terrain.height_at(max_range)));
        let min_ground = grounds.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
        let relief = grounds
            .iter()
            .map(|&(r, h)| (r, (h - datum).abs()))
            .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        let top_height = s.output.max_height - min_ground;

        let near = (s.output.max_range / s.output.n_range_points as f64).max(FE_MAX_RANGE);
        let mut coverage = ((top_height + s.source.antenna_height) / near).atan();
        if s.source.pattern.beam_width > 0.0 {
            let beam = (s.source.pattern.elevation.abs() + s.source.pattern.beam_width).to_radians();
            coverage = coverage.max(beam);
        }
        let angle = (coverage + terrain.max_slope().atan()).min(PI / 2.0 - 1e-6);

        let step = s.output.height_step();
        let nyquist_step = (step < wavelength / 2.0).then_some(step);
        // A plane wave at the required angle advances π/8 in phase per bin.
        let mut dz_auto = wavelength / (16.0 * angle.sin());
        if let Some(step) = nyquist_step {
            dz_auto = dz_auto.min(step);
        }
        Requirements {
            wavelength,
            antenna_height: s.source.antenna_height,
            top_height,
            angle,
            nyquist_step,
            relief,
            dz_auto,
        }
    }

    fn check(&self, c: &PeConfig) -> Result<()> {
        if self.antenna_height >= c.z_max {
            return Err(Error::invalid(
                "antenna height",
                format!("{} m is above the PE domain height {} m", self.antenna_height, c.z_max),
            ));
        }
        if c.max_sin_angle(self.wavelength) < self.angle.sin() {
            return Err(Error::invalid(
                "PE transform size",
                format!(
                    "bin size {:.4} m represents angles up to {:.3}°, scenario needs {:.3}° \
                     (coverage plus steepest terrain slope)",
                    c.dz(),
                    c.max_sin_angle(self.wavelength).min(1.0).asin().to_degrees(),
                    self.angle.to_degrees()
                ),
            ));
        }
        if let Some(step) = self.nyquist_step {
            if c.dz() > step {
                return Err(Error::invalid(
                    "number of output height points",
                    format!(
                        "output step {step} m is finer than λ/2 and needs a PE bin size <= {step} m \
                         (have {:.4} m)",
                        c.dz()
                    ),
                ));
            }
        }
        if self.top_height > c.usable_height() {
            return Err(Error::invalid(
                "maximum output height",
                format!(
                    "{:.2} m above the lowest ground reaches into the absorber starting at {:.2} m",
                    self.top_height,
                    c.usable_height()
                ),
            ));
        }
        if self.relief.1 >= c.z_max {
            return Err(Error::DomainOverflow {
                range: self.relief.0,
                relief: self.relief.1,
                z_max: c.z_max,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{OutputWindow, Polarization, SourceSpec};
    use crate::environment::TerrainProfile;

    fn scenario() -> Scenario {
        Scenario::new(
            SourceSpec::omni(2800.0, 15.0, Polarization::Horizontal),
            OutputWindow {
                min_height: 0.0,
                max_height: 100.0,
                max_range: 10_000.0,
                n_height_points: 100,
                n_range_points: 100,
            },
        )
    }

    #[test]
    fn auto_config_is_consistent() {
        let c = PeConfig::for_scenario(&scenario()).unwrap();
        assert!(c.transform_size.is_power_of_two());
        assert!((c.delta_p() - PI / c.z_max).abs() < 1e-15);
        assert!(c.usable_height() >= 100.0);
        assert_eq!(c.f_norm(), 2.0 / c.transform_size as f64);
    }

    #[test]
    fn too_small_transform_rejected() {
        let mut s = scenario();
        s.pe.transform_size = Some(64);
        s.pe.z_max = Some(1024.0);
        let err = PeConfig::for_scenario(&s).unwrap_err();
        assert!(err.to_string().contains("transform size"), "{err}");
    }

    #[test]
    fn nyquist_rule_enforced() {
        let mut s = scenario();
        // 0.04 m output step at λ ≈ 0.107 m
        s.output.n_height_points = 2500;
        s.pe.transform_size = Some(8192);
        s.pe.z_max = Some(1024.0);
        let err = PeConfig::for_scenario(&s).unwrap_err();
        assert!(err.to_string().contains("finer than λ/2"), "{err}");
        s.pe = Default::default();
        let c = PeConfig::for_scenario(&s).unwrap();
        assert!(c.dz() <= 0.04 + 1e-12);
    }

    #[test]
    fn relief_overflow() {
        let mut s = scenario();
        s.output.max_height = 3000.0;
        s.terrain = TerrainProfile::new(vec![(0.0, 0.0), (5000.0, 2900.0)]).unwrap();
        s.pe.transform_size = Some(4096);
        s.pe.z_max = Some(2048.0);
        s.pe.absorber_fraction = Some(0.0);
        assert!(matches!(
            PeConfig::for_scenario(&s),
            Err(Error::DomainOverflow { .. }) | Err(Error::Invalid { .. })
        ));
    }

    #[test]
    fn explicit_config_validation() {
        assert!(PeConfig::new(1000, 100.0, 10.0, 0.25).is_err());
        assert!(PeConfig::new(1024, 100.0, 10.0, 0.5).is_err());
        assert!(PeConfig::new(1024, 100.0, 0.0, 0.25).is_err());
        assert!(PeConfig::new(1024, 100.0, 10.0, 0.0).is_ok());
    }
}
