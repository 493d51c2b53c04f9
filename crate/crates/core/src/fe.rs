//! Flat-earth two-ray model with absolute phase.
//!
//! The field at a point is the coherent sum of the direct ray and the ray
//! reflected by a flat, smooth ground (image method). Unlike the classic
//! cosine-law form, the complex sum keeps the absolute phase of the result.

use num_complex::Complex64;

use crate::domain::{
    free_space_loss_db, AmplitudeInterpolation, ComplexSample, Model, PhaseExt, PpfNormalization,
    PpfResult, RunMetadata, SourceSpec, MAGNITUDE_FLOOR,
};
use crate::environment::{reflection_coefficient, GroundComposition};
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// FE is trusted above this elevation angle (degrees) ...
pub const FE_MIN_ELEVATION_DEG: f64 = 5.0;
/// ... or below this range (m).
pub const FE_MAX_RANGE: f64 = 2500.0;

/// Direct and reflected ray geometry over flat ground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoRayGeometry {
    /// Direct path length, m.
    pub r1: f64,
    /// Reflected path length, m.
    pub r2: f64,
    /// Direct-ray elevation at the source, rad.
    pub alpha_d: f64,
    /// Reflected-ray elevation at the source (negative, toward the ground), rad.
    pub alpha_r: f64,
    /// Grazing angle at the specular point, rad.
    pub grazing: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeFieldSample {
    pub value: ComplexSample,
    pub amplitude_db: f64,
    pub phase_rad: f64,
}

pub fn trace_two_ray(antenna_height: f64, target_height: f64, ground_range: f64) -> Result<TwoRayGeometry> {
    if !(ground_range > 0.0) {
        return Err(Error::Domain(format!(
            "two-ray geometry needs a positive ground range, got {ground_range}"
        )));
    }
    if !(antenna_height >= 0.0) || !(target_height >= 0.0) {
        return Err(Error::Domain("two-ray heights must be non-negative".into()));
    }
    let sum = target_height + antenna_height;
    if sum == 0.0 {
        return Err(Error::Domain(
            "source and target both on the ground: zero grazing angle".into(),
        ));
    }
    let diff = target_height - antenna_height;
    Ok(TwoRayGeometry {
        r1: ground_range.hypot(diff),
        r2: ground_range.hypot(sum),
        alpha_d: diff.atan2(ground_range),
        alpha_r: -sum.atan2(ground_range),
        grazing: sum.atan2(ground_range),
    })
}

/// `Ω = (r2 - r1)·k0 + φ`.
pub fn total_phase_lag(geometry: &TwoRayGeometry, k0: f64, reflection_phase: f64) -> f64 {
    (geometry.r2 - geometry.r1) * k0 + reflection_phase
}

/// Cosine-law magnitude `sqrt(Ed² + Er² + 2·Ed·Er·cos Ω)`.
pub fn two_ray_magnitude(direct: f64, reflected: f64, omega: f64) -> f64 {
    (direct * direct + reflected * reflected + 2.0 * direct * reflected * omega.cos())
        .max(0.0)
        .sqrt()
}

/// Complex two-ray field `Ed·e^{i·r1·k0} + Er·e^{i·(r2·k0 + φ)}`.
pub fn fe_complex_field(
    source: &SourceSpec,
    ground: &GroundComposition,
    target_height: f64,
    ground_range: f64,
) -> Result<FeFieldSample> {
    let g = trace_two_ray(source.antenna_height, target_height, ground_range)?;
    let k0 = source.wavenumber();
    let gamma = reflection_coefficient(
        source.polarization,
        g.grazing,
        ground.permittivity,
        ground.conductivity,
        source.frequency_mhz,
    );
    let e_d = source.pattern.pattern_factor(g.alpha_d.to_degrees())?;
    let e_r = gamma.magnitude() * source.pattern.pattern_factor(g.alpha_r.to_degrees())?;
    // e^{i·r1·k0}·(Ed + Er·e^{iΩ}) is the same sum with the large common
    // phase factored out, so |value| carries no k0·r rounding.
    let omega = total_phase_lag(&g, k0, gamma.phase());
    let value = Complex64::cis(g.r1 * k0) * (e_d + e_r * Complex64::cis(omega));
    Ok(FeFieldSample {
        value,
        amplitude_db: 20.0 * value.magnitude().max(MAGNITUDE_FLOOR).log10(),
        phase_rad: value.phase(),
    })
}

/// Where APM trusts the flat-earth model.
pub fn fe_region_valid(elevation_angle: f64, range: f64) -> bool {
    elevation_angle > FE_MIN_ELEVATION_DEG || range < FE_MAX_RANGE
}

/// Evaluates the two-ray model over the scenario's output window.
///
/// Returns the result and any warnings (non-flat terrain is evaluated as flat
/// ground at height 0).
pub fn run_fe(scenario: &Scenario) -> Result<(PpfResult, Vec<String>)> {
    scenario.validate()?;
    let mut warnings = Vec::new();
    if !scenario.terrain.is_flat() || scenario.terrain.height_at(0.0) != 0.0 {
        warnings.push(
            "flat-earth model ignores terrain: evaluated over flat ground at height 0".to_string(),
        );
    }
    let source = &scenario.source;
    let lambda = source.wavelength();
    let ranges = scenario.output.ranges();
    let heights = scenario.output.heights();
    let mut amplitude_db = Vec::with_capacity(ranges.len());
    let mut phase_rad = Vec::with_capacity(ranges.len());
    let mut loss_db = Vec::with_capacity(ranges.len());
    let mut outside = 0usize;
    for &x in &ranges {
        let ground = scenario
            .terrain
            .composition_at(x)
            .copied()
            .unwrap_or_else(GroundComposition::perfect_conductor);
        let fsl = free_space_loss_db(x, lambda);
        let mut amp = Vec::with_capacity(heights.len());
        let mut ph = Vec::with_capacity(heights.len());
        let mut loss = Vec::with_capacity(heights.len());
        for &z in &heights {
            let elevation = (z - source.antenna_height).atan2(x).to_degrees();
            if !fe_region_valid(elevation, x) {
                outside += 1;
            }
            let (a, p) = if z < 0.0 {
                (20.0 * MAGNITUDE_FLOOR.log10(), 0.0)
            } else {
                match fe_complex_field(source, &ground, z, x) {
                    Ok(s) => (s.amplitude_db, s.phase_rad),
                    Err(Error::Domain(_)) => (20.0 * MAGNITUDE_FLOOR.log10(), 0.0),
                    Err(e) => return Err(e),
                }
            };
            amp.push(a);
            ph.push(p);
            loss.push(fsl - a);
        }
        amplitude_db.push(amp);
        phase_rad.push(ph);
        loss_db.push(loss);
    }
    if outside > 0 {
        warnings.push(format!(
            "{outside} output points lie outside the flat-earth validity region \
             (elevation <= {FE_MIN_ELEVATION_DEG}° and range >= {FE_MAX_RANGE} m)"
        ));
    }
    Ok((
        PpfResult {
            ranges,
            heights,
            amplitude_db,
            phase_rad,
            loss_db,
            scenario_digest: scenario.digest(),
            metadata: RunMetadata {
                model: Model::Fe,
                normalization: PpfNormalization::TwoRay,
                amplitude_interpolation: AmplitudeInterpolation::Coherent,
                magnitude_floor: MAGNITUDE_FLOOR,
                range_log_units: "m",
            },
        },
        warnings,
    ))
}
