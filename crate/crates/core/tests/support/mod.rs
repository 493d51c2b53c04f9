//! Randomized fixtures shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use ppf::domain::{OutputWindow, Polarization, SourceSpec};
use ppf::environment::{
    AntennaKind, AntennaPattern, Atmosphere, GroundComposition, RefractivityField, RefractivityProfile,
    TerrainProfile,
};
use ppf::io::ComplexFieldExport;
use ppf::pseudo3d::ElevationGrid;
use ppf::scenario::{PeOverrides, Scenario};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ascending(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn pattern(rng: &mut ChaCha8Rng) -> AntennaPattern {
    match rng.gen_range(0..5) {
        0 => AntennaPattern::omni(),
        1 => AntennaPattern::gauss(rng.gen_range(0.5..20.0), rng.gen_range(-5.0..10.0)),
        2 => AntennaPattern {
            kind: AntennaKind::SincX,
            beam_width: rng.gen_range(0.5..20.0),
            elevation: rng.gen_range(-5.0..10.0),
        },
        3 => AntennaPattern {
            kind: AntennaKind::Cosec2,
            beam_width: rng.gen_range(1.0..20.0),
            elevation: rng.gen_range(0.0..10.0),
        },
        _ => {
            let n = rng.gen_range(2..7);
            let angles = ascending(rng, n, -90.0, 90.0);
            let mut table: Vec<(f64, f64)> = angles.into_iter().map(|a| (a, rng.gen_range(0.0..1.0))).collect();
            let peak = rng.gen_range(0..table.len());
            table[peak].1 = 1.0;
            AntennaPattern::user_defined(table).unwrap()
        }
    }
}

fn refractivity(rng: &mut ChaCha8Rng, max_range: f64) -> RefractivityField {
    let n_levels = rng.gen_range(1..5);
    let n_profiles = rng.gen_range(1..4);
    let mut starts = vec![0.0];
    starts.extend(ascending(rng, n_profiles - 1, 1.0, max_range));
    let profiles = starts
        .into_iter()
        .map(|start| {
            let heights = loop {
                let mut h = ascending(rng, n_levels - 1, 1.0, 3000.0);
                h.insert(0, 0.0);
                if h.len() == n_levels {
                    break h;
                }
            };
            RefractivityProfile::new(start, heights.into_iter().map(|h| (h, rng.gen_range(300.0..500.0))).collect())
        })
        .collect();
    RefractivityField::new(profiles).unwrap()
}

fn terrain(rng: &mut ChaCha8Rng, max_range: f64) -> TerrainProfile {
    let mut points = Vec::new();
    if rng.gen_bool(0.7) {
        let n = rng.gen_range(2..7);
        let base = rng.gen_range(0.0..200.0);
        for (i, r) in ascending(rng, n - 1, 1000.0, max_range).into_iter().enumerate() {
            if i == 0 {
                points.push((0.0, base));
            }
            points.push((r, base + rng.gen_range(0.0..80.0)));
        }
    }
    let n_ground = rng.gen_range(0..4);
    let mut starts = vec![0.0];
    starts.extend(ascending(rng, n_ground.max(1) - 1, 1.0, max_range));
    let compositions = starts
        .into_iter()
        .take(n_ground)
        .map(|start_range| GroundComposition {
            start_range,
            ground_type: rng.gen_range(0..8),
            permittivity: rng.gen_range(1.0..81.0),
            conductivity: rng.gen_range(0.0..5.0),
        })
        .collect();
    TerrainProfile::new(points).unwrap().with_compositions(compositions)
}

/// A random scenario that passes validation.
pub fn scenario(rng: &mut ChaCha8Rng) -> Scenario {
    loop {
        let max_range = rng.gen_range(5_000.0..100_000.0);
        let terrain = terrain(rng, max_range);
        let source = SourceSpec {
            frequency_mhz: rng.gen_range(100.0..10_000.0),
            antenna_height: rng.gen_range(0.0..40.0),
            polarization: *[Polarization::Horizontal, Polarization::Vertical].choose(rng).unwrap(),
            pattern: pattern(rng),
        };
        let ground0 = terrain.height_at(0.0);
        let min_height = rng.gen_range(0.0..20.0);
        let output = OutputWindow {
            min_height,
            max_height: ground0 + source.antenna_height + rng.gen_range(50.0..400.0),
            max_range,
            n_height_points: rng.gen_range(2..200),
            n_range_points: rng.gen_range(2..200),
        };
        let n_cut = rng.gen_range(0..3);
        let n_wind = rng.gen_range(0..3);
        let mut winds = ascending(rng, n_wind, 0.0, 100.0);
        winds.iter_mut().for_each(|r| *r = (*r * 1e3).round() / 1e3);
        let pe = PeOverrides {
            transform_size: None,
            z_max: None,
            range_step: rng.gen_bool(0.3).then(|| rng.gen_range(5.0..100.0)),
            absorber_fraction: rng.gen_bool(0.3).then(|| rng.gen_range(0.1..0.4)),
        };
        let s = Scenario {
            source,
            cut_back: (0..n_cut).map(|_| (rng.gen_range(0.0..90.0), rng.gen_range(0.0..1.0))).collect(),
            output,
            extrapolation_flag: rng.gen_range(0..2),
            atmosphere: Atmosphere {
                surface_humidity: rng.gen_range(0.0..20.0),
                surface_temperature: rng.gen_range(-10.0..35.0),
                gaseous_absorption: rng.gen_range(0.0..0.1),
                wind_speeds: winds.into_iter().map(|r| (r, rng.gen_range(0.0..30.0))).collect(),
            },
            refractivity: refractivity(rng, max_range),
            terrain,
            pe,
        };
        if s.validate().is_ok() {
            return s;
        }
    }
}

pub fn elevation_grid(rng: &mut ChaCha8Rng) -> ElevationGrid {
    let n_cols = rng.gen_range(1..20);
    let n_rows = rng.gen_range(1..20);
    let nodata = rng.gen_bool(0.3).then_some(-9999.0);
    let heights = (0..n_cols * n_rows)
        .map(|_| match nodata {
            Some(nd) if rng.gen_bool(0.1) => nd,
            _ => rng.gen_range(-50.0..3000.0),
        })
        .collect();
    ElevationGrid::new(
        rng.gen_range(-1e6..1e6),
        rng.gen_range(-1e6..1e6),
        rng.gen_range(1.0..200.0),
        n_cols,
        n_rows,
        heights,
        nodata,
    )
    .unwrap()
}

/// Heights on a 0.1 m lattice, as produced by turbine extraction.
pub fn complex_export(rng: &mut ChaCha8Rng) -> ComplexFieldExport {
    let start: i64 = rng.gen_range(-1000..0);
    let n = rng.gen_range(1..1200);
    let heights: Vec<f64> = (0..n).map(|i| (start + i) as f64 / 10.0).collect();
    let values = heights
        .iter()
        .map(|&h| {
            if h < -60.0 && rng.gen_bool(0.5) {
                Complex64::default()
            } else {
                Complex64::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1))
            }
        })
        .collect();
    ComplexFieldExport {
        profile_index: rng.gen_range(0..100),
        heights,
        values,
    }
}
