//! Wind turbines: geometry, blade-tip kinematics and the complex field
//! column around each machine.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::domain::ComplexSample;
use crate::environment::TerrainProfile;
use crate::error::{Error, Result};
use crate::pe::ComplexFieldGrid;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurbineSpec {
    /// m.
    pub rotor_diameter: f64,
    /// Nacelle height above ground, m.
    pub hub_height: f64,
    pub rpm_nominal: f64,
    /// `(min, max)` operating speed, rpm.
    pub rpm_range: (f64, f64),
    pub n_blades: u32,
}

impl TurbineSpec {
    /// Vestas V66: 66 m rotor on a 67 m tower, 21.3 rpm (10.5 to 24.5).
    pub fn vestas_v66() -> Self {
        TurbineSpec {
            rotor_diameter: 66.0,
            hub_height: 67.0,
            rpm_nominal: 21.3,
            rpm_range: (10.5, 24.5),
            n_blades: 3,
        }
    }

    /// GE Energy 3.6 MW at 15.3 rpm (8.5 to 15.3), 55.1 m blade radius,
    /// 100 m hub.
    pub fn ge_3_6mw() -> Self {
        TurbineSpec {
            rotor_diameter: 110.2,
            hub_height: 100.0,
            rpm_nominal: 15.3,
            rpm_range: (8.5, 15.3),
            n_blades: 3,
        }
    }

    pub fn rotor_radius(&self) -> f64 {
        self.rotor_diameter / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rotor_diameter > 0.0) {
            return Err(Error::invalid("rotor diameter", "must be positive"));
        }
        if !(self.hub_height > 0.0) {
            return Err(Error::invalid("hub height", "must be positive"));
        }
        if self.n_blades == 0 {
            return Err(Error::invalid("number of blades", "must be at least 1"));
        }
        let (lo, hi) = self.rpm_range;
        if !(lo <= self.rpm_nominal && self.rpm_nominal <= hi) {
            return Err(Error::invalid(
                "revolution speed",
                format!("nominal {} rpm outside operating range {lo}..{hi}", self.rpm_nominal),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurbinePlacement {
    pub id: String,
    /// Ground range from the radar, m.
    pub distance: f64,
    /// Degrees from the radar boresight.
    pub azimuth: f64,
}

impl TurbinePlacement {
    pub fn validate(&self) -> Result<()> {
        if !(self.distance > 0.0 && self.distance.is_finite()) {
            return Err(Error::invalid(
                "turbine distance",
                format!("turbine {}: must be positive", self.id),
            ));
        }
        if !self.azimuth.is_finite() {
            return Err(Error::invalid("turbine azimuth", format!("turbine {}: must be finite", self.id)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TipSpeed {
    /// m/s.
    pub speed: f64,
    /// Set when the speed lies outside the turbine's operating range.
    pub warning: Option<String>,
}

impl TipSpeed {
    /// km/h.
    pub fn kmh(&self) -> f64 {
        self.speed * 3.6
    }
}

/// Linear speed of a blade tip: `2π·(rpm/60)·(diameter/2)`.
pub fn blade_tip_speed(spec: &TurbineSpec, rpm: f64) -> Result<TipSpeed> {
    if !(rpm >= 0.0 && rpm.is_finite()) {
        return Err(Error::Domain(format!("revolution speed {rpm} rpm must be non-negative")));
    }
    let (lo, hi) = spec.rpm_range;
    let warning = (!(lo..=hi).contains(&rpm))
        .then(|| format!("{rpm} rpm is outside the operating range {lo}..{hi} rpm"));
    Ok(TipSpeed {
        speed: 2.0 * PI * (rpm / 60.0) * spec.rotor_radius(),
        warning,
    })
}

/// Nacelle-relative sample heights from `-(hub + margin_below)` to
/// `radius + margin_above` at `step` meters.
pub fn extraction_window(spec: &TurbineSpec, margin_below: f64, margin_above: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid("extraction step", "must be positive"));
    }
    let lo = -(spec.hub_height + margin_below);
    let hi = spec.rotor_radius() + margin_above;
    if !(hi > lo) {
        return Err(Error::invalid("extraction window", "empty span"));
    }
    let intervals = ((hi - lo) / step).round();
    if intervals > 1e8 {
        return Err(Error::invalid("extraction step", "too many samples"));
    }
    let count = intervals as usize + 1;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo + i as f64 * step })
        .collect())
}

/// Complex field at each nacelle-relative `window` height of a turbine.
///
/// Absolute heights are terrain height at the turbine plus hub height plus
/// the window height. Samples below ground are exactly zero. The grid must
/// hold a column at the turbine's distance and the window must stay below
/// the absorbing layer.
pub fn field_column_at_turbine(
    grid: &ComplexFieldGrid,
    placement: &TurbinePlacement,
    spec: &TurbineSpec,
    window: &[f64],
    terrain: &TerrainProfile,
) -> Result<Vec<ComplexSample>> {
    placement.validate()?;
    let index = grid.column_index(placement.distance)?;
    let ground = terrain.height_at(placement.distance);
    let base = ground + spec.hub_height;
    window
        .iter()
        .map(|&h| {
            let z = base + h;
            let above = (z - grid.datum) - grid.ground[index];
            if above < 0.0 {
                return Ok(Complex64::default());
            }
            if above > grid.usable_height {
                return Err(Error::OutOfRange(format!(
                    "turbine {}: height {h} m relative to the nacelle is {above:.2} m above ground, \
                     inside the absorbing layer starting at {:.2} m",
                    placement.id, grid.usable_height
                )));
            }
            grid.sample(index, z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tip_speeds() {
        let v66 = blade_tip_speed(&TurbineSpec::vestas_v66(), 21.3).unwrap();
        assert!((v66.speed - 73.6).abs() < 0.1, "{}", v66.speed);
        assert!((v66.kmh() - 265.0).abs() < 0.5);
        let ge = blade_tip_speed(&TurbineSpec::ge_3_6mw(), 15.3).unwrap();
        assert!((ge.speed - 88.3).abs() < 0.1, "{}", ge.speed);
        assert_eq!(blade_tip_speed(&TurbineSpec::vestas_v66(), 0.0).unwrap().speed, 0.0);
        assert!(blade_tip_speed(&TurbineSpec::vestas_v66(), -1.0).is_err());
    }

    #[test]
    fn out_of_band_rpm_warns() {
        let s = blade_tip_speed(&TurbineSpec::vestas_v66(), 30.0).unwrap();
        assert!(s.warning.is_some());
        assert!(blade_tip_speed(&TurbineSpec::vestas_v66(), 13.0).unwrap().warning.is_none());
    }

    #[test]
    fn window_without_margins() {
        let w = extraction_window(&TurbineSpec::vestas_v66(), 0.0, 0.0, 0.1).unwrap();
        assert_eq!(w.first(), Some(&-67.0));
        assert_eq!(w.last(), Some(&33.0));
        assert_eq!(w.len(), 1001);
    }

    #[test]
    fn window_of_one_step() {
        let w = extraction_window(&TurbineSpec::vestas_v66(), 0.0, 0.0, 100.0).unwrap();
        assert_eq!(w, vec![-67.0, 33.0]);
    }

    #[test]
    fn window_spanning_minus_67_to_34() {
        let w = extraction_window(&TurbineSpec::vestas_v66(), 0.0, 1.0, 0.1).unwrap();
        assert_eq!(w.len(), 1011);
        assert_eq!((w[0], w[1010]), (-67.0, 34.0));
    }

    fn unit_grid() -> ComplexFieldGrid {
        ComplexFieldGrid {
            datum: 0.0,
            ranges: vec![1000.0],
            ground: vec![5.0],
            dz: 0.5,
            usable_height: 200.0,
            columns: vec![vec![Complex64::new(1.0, 0.0); 600]],
        }
    }

    #[test]
    fn unit_field_column() {
        let terrain = TerrainProfile::new(vec![(0.0, 5.0), (2000.0, 5.0)]).unwrap();
        let p = TurbinePlacement {
            id: "1".into(),
            distance: 1000.0,
            azimuth: -30.769,
        };
        let spec = TurbineSpec::vestas_v66();
        let w = extraction_window(&spec, 1.0, 1.1, 0.1).unwrap();
        let col = field_column_at_turbine(&unit_grid(), &p, &spec, &w, &terrain).unwrap();
        for (h, v) in w.iter().zip(&col) {
            if *h < -67.0 {
                assert_eq!(*v, Complex64::default());
            } else if *h > -66.9 {
                assert_eq!(*v, Complex64::new(1.0, 0.0));
            }
        }
        let far = TurbinePlacement { distance: 1500.0, ..p };
        assert!(field_column_at_turbine(&unit_grid(), &far, &spec, &w, &terrain).is_err());
    }
}
