//! Split-step sine-transform parabolic equation.
//!
//! The march carries a column of the reduced field `u(r, ζ)` where `ζ` is
//! height above the local ground. Each step tilts the column by the local
//! terrain slope, propagates it through free space in the sine domain,
//! untilts it, applies the refractivity phase screen and damps the top of
//! the column.

mod config;
mod grid;
mod march;
mod phase;
pub mod transform;

pub use config::{PeConfig, DEFAULT_ABSORBER_FRACTION};
pub use grid::{extract_complex_ppf, Bracket, ComplexFieldGrid};
pub use march::{build_free_space_propagator, initial_spectrum, PeEngine, PeState};
pub use phase::{
    phase_continuity_report, unwrap_column, unwrap_phase_grid, PhaseJump, DEFAULT_NULL_THRESHOLD_DB,
};

use crate::domain::{AmplitudeInterpolation, PpfResult};
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Runs the march over the scenario's output window.
pub fn run_pe(scenario: &Scenario) -> Result<(ComplexFieldGrid, PpfResult)> {
    run_pe_with(scenario, &[], AmplitudeInterpolation::default())
}

/// Runs the march and also keeps the columns at the `probes` ranges (m),
/// which must lie in `(0, max_range]`.
pub fn run_pe_with(
    scenario: &Scenario,
    probes: &[f64],
    interpolation: AmplitudeInterpolation,
) -> Result<(ComplexFieldGrid, PpfResult)> {
    scenario.validate()?;
    let max_range = scenario.output.max_range;
    for &p in probes {
        if !(p > 0.0 && p <= max_range) {
            return Err(Error::OutOfRange(format!(
                "probe range {p} m lies outside (0, {max_range}] m"
            )));
        }
    }
    let config = PeConfig::for_scenario(scenario)?;
    let mut targets = scenario.output.ranges();
    targets.extend_from_slice(probes);
    targets.sort_by(f64::total_cmp);
    targets.dedup_by(|a, b| (*a - *b).abs() <= 1e-6);

    let datum = scenario.terrain.height_at(0.0);
    let mut engine = PeEngine::new(
        config,
        scenario.source.wavenumber(),
        scenario.terrain.raised(-datum),
        scenario.refractivity.clone(),
    )?;
    let mut state = engine.init_field(&scenario.source)?;
    let dr = config.delta_r;
    let mut steps = 0usize;
    let mut grid = ComplexFieldGrid {
        ranges: Vec::with_capacity(targets.len()),
        datum,
        ground: Vec::with_capacity(targets.len()),
        dz: config.dz(),
        usable_height: config.usable_height(),
        columns: Vec::with_capacity(targets.len()),
    };
    for &target in &targets {
        let mut whole = (target / dr).floor() as usize;
        let mut rest = target - whole as f64 * dr;
        if rest >= dr * (1.0 - 1e-9) {
            whole += 1;
            rest = 0.0;
        }
        while steps < whole {
            engine.march_step(&mut state);
            steps += 1;
            state.range = steps as f64 * dr;
        }
        let column = if rest <= dr * 1e-9 {
            state.clone()
        } else {
            let mut branch = state.clone();
            engine.advance(&mut branch, rest);
            branch
        };
        grid.ranges.push(target);
        grid.ground.push(column.local_ground);
        grid.columns.push(column.field);
    }
    let result = extract_complex_ppf(
        &grid,
        &scenario.output,
        scenario.source.wavelength(),
        interpolation,
        scenario.digest(),
    )?;
    Ok((grid, result))
}
