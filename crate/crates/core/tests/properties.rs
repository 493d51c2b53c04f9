mod support;

use num_complex::Complex64;
use ppf::domain::{db_from_linear, OutputWindow, PhaseExt, Polarization, SourceSpec};
use ppf::environment::{
    reflection_coefficient, GroundComposition, RefractivityField, RefractivityProfile, TerrainProfile,
};
use ppf::fe::{fe_complex_field, total_phase_lag, trace_two_ray, two_ray_magnitude};
use ppf::io::{
    parse_complex_field_export, parse_input_file, read_elevation_grid, write_complex_field_export,
    write_input_file, ComplexFieldExport,
};
use ppf::pe::run_pe;
use ppf::pseudo3d::{export_volume, run_volume, slice_file_name, AzimuthFan, ElevationGrid};
use ppf::scenario::Scenario;
use ppf::turbine::{blade_tip_speed, extraction_window, TurbineSpec};
use ppf::Error;
use rand::Rng;

fn hill_scenario() -> Scenario {
    let mut s = Scenario::new(
        SourceSpec::omni(1000.0, 12.0, Polarization::Horizontal),
        OutputWindow {
            min_height: 0.0,
            max_height: 120.0,
            max_range: 6000.0,
            n_height_points: 40,
            n_range_points: 30,
        },
    );
    s.terrain = TerrainProfile::new(vec![(0.0, 5.0), (2000.0, 35.0), (3500.0, 10.0), (6000.0, 0.0)]).unwrap();
    s.refractivity = RefractivityField::new(vec![
        RefractivityProfile::new(0.0, vec![(0.0, 330.0), (200.0, 360.0)]),
        RefractivityProfile::new(3000.0, vec![(0.0, 340.0), (200.0, 350.0)]),
    ])
    .unwrap();
    s
}

#[test]
fn complex_samples_survive_polar_form() {
    let mut rng = support::rng(11);
    for _ in 0..10_000 {
        let s = Complex64::new(rng.gen_range(-1e3..1e3), rng.gen_range(-1e3..1e3));
        let back = Complex64::from_polar(s.magnitude(), s.phase());
        assert!((back - s).norm() <= 1e-12 * s.norm(), "{s} -> {back}");
    }
}

#[test]
fn decibels_add_under_products() {
    let mut rng = support::rng(12);
    for _ in 0..10_000 {
        let a = 10f64.powf(rng.gen_range(-10.0..10.0));
        let b = 10f64.powf(rng.gen_range(-10.0..10.0));
        let lhs = db_from_linear(a * b).unwrap();
        let rhs = db_from_linear(a).unwrap() + db_from_linear(b).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
    }
}

#[test]
fn reflection_magnitude_is_bounded() {
    let mut rng = support::rng(13);
    for _ in 0..10_000 {
        let pol = if rng.gen_bool(0.5) { Polarization::Horizontal } else { Polarization::Vertical };
        let g = reflection_coefficient(
            pol,
            rng.gen_range(1e-6..std::f64::consts::FRAC_PI_2),
            rng.gen_range(1.0..100.0),
            10f64.powf(rng.gen_range(-6.0..2.0)),
            rng.gen_range(30.0..30_000.0),
        );
        assert!(g.norm() <= 1.0 + 1e-12, "{g}");
    }
}

#[test]
fn terrain_slope_matches_finite_differences() {
    let mut rng = support::rng(14);
    for _ in 0..200 {
        let s = support::scenario(&mut rng);
        for w in s.terrain.points.windows(2) {
            let (a, b) = (w[0].0, w[1].0);
            let (x0, x1) = (a + 0.25 * (b - a), a + 0.75 * (b - a));
            let fd = (s.terrain.height_at(x1) - s.terrain.height_at(x0)) / (x1 - x0);
            assert!((fd - s.terrain.segment_slope(0.5 * (a + b))).abs() < 1e-9);
        }
    }
}

#[test]
fn interpolated_refractivity_stays_between_levels() {
    let mut rng = support::rng(15);
    for _ in 0..200 {
        let s = support::scenario(&mut rng);
        for p in &s.refractivity.profiles {
            for w in p.levels.windows(2) {
                let h = rng.gen_range(w[0].0..w[1].0);
                let m = p.m_unit_at(h);
                let (lo, hi) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                assert!(m >= lo - 1e-12 && m <= hi + 1e-12);
            }
        }
    }
}

#[test]
fn fe_complex_sum_matches_cosine_law() {
    let mut rng = support::rng(16);
    for _ in 0..5_000 {
        let pol = if rng.gen_bool(0.5) { Polarization::Horizontal } else { Polarization::Vertical };
        let source = SourceSpec::omni(rng.gen_range(100.0..10_000.0), rng.gen_range(1.0..50.0), pol);
        let ground = GroundComposition {
            start_range: 0.0,
            ground_type: 0,
            permittivity: rng.gen_range(1.0..81.0),
            conductivity: rng.gen_range(0.0..5.0),
        };
        let (h, r) = (rng.gen_range(0.0..500.0), rng.gen_range(10.0..20_000.0));
        let sample = fe_complex_field(&source, &ground, h, r).unwrap();
        let g = trace_two_ray(source.antenna_height, h, r).unwrap();
        let gamma = reflection_coefficient(pol, g.grazing, ground.permittivity, ground.conductivity, source.frequency_mhz);
        let omega = total_phase_lag(&g, source.wavenumber(), gamma.phase());
        let closed = two_ray_magnitude(1.0, gamma.norm(), omega);
        let got = sample.value.norm();
        let scale = 1.0 + gamma.norm();
        assert!((got - closed).abs() <= 1e-12 * scale, "{got} vs {closed}");
        assert_eq!(sample.phase_rad, sample.value.phase());
    }
}

#[test]
fn pe_reruns_are_bit_identical() {
    let s = hill_scenario();
    let (g1, r1) = run_pe(&s).unwrap();
    let (g2, r2) = run_pe(&s).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(g1.columns, g2.columns);
    assert!(r1.is_complete());
}

#[test]
fn pe_ignores_ground_composition() {
    let s = hill_scenario();
    let (_, base) = run_pe(&s).unwrap();
    let mut wet = s.clone();
    wet.terrain.compositions = vec![
        GroundComposition {
            start_range: 0.0,
            ground_type: 3,
            permittivity: 81.0,
            conductivity: 5.0,
        },
        GroundComposition {
            start_range: 2500.0,
            ground_type: 1,
            permittivity: 4.0,
            conductivity: 0.001,
        },
    ];
    let (_, other) = run_pe(&wet).unwrap();
    assert_eq!(base.amplitude_db, other.amplitude_db);
    assert_eq!(base.phase_rad, other.phase_rad);
}

#[test]
fn slices_ignore_terrain_off_their_corridor() {
    let (cols, rows, cell) = (40, 40, 200.0);
    let heights: Vec<f64> = (0..cols * rows).map(|i| 10.0 + ((i * 7919) % 13) as f64).collect();
    let grid = ElevationGrid::new(-4000.0, -4000.0, cell, cols, rows, heights.clone(), None).unwrap();
    let mut s = hill_scenario();
    s.terrain = TerrainProfile::flat();
    s.output.max_range = 3500.0;
    let fan = AzimuthFan {
        origin: (100.0, 100.0),
        azimuths: vec![0.0],
        max_range: 3500.0,
        range_step: cell,
    };
    let before = run_volume(&s, &grid, &fan).unwrap();

    let mut disturbed = heights;
    for r in 0..rows {
        for c in 0..cols {
            let x = -4000.0 + (c as f64 + 0.5) * cell;
            if (x - 100.0).abs() > 2.0 * cell {
                disturbed[r * cols + c] += 500.0;
            }
        }
    }
    let grid = ElevationGrid::new(-4000.0, -4000.0, cell, cols, rows, disturbed, None).unwrap();
    let after = run_volume(&s, &grid, &fan).unwrap();
    assert_eq!(before.slice(0.0).unwrap(), after.slice(0.0).unwrap());
}

#[test]
fn volume_export_lists_failed_azimuths() {
    let grid = ElevationGrid::new(-2000.0, -2000.0, 200.0, 20, 20, vec![3.0; 400], None).unwrap();
    let mut s = hill_scenario();
    s.terrain = TerrainProfile::flat();
    s.output.max_range = 1500.0;
    let fan = AzimuthFan {
        origin: (1000.0, 0.0),
        azimuths: vec![0.0, 90.0, 270.0],
        max_range: 1500.0,
        range_step: 200.0,
    };
    let volume = run_volume(&s, &grid, &fan).unwrap();
    assert!(volume.is_partial());
    let dir = tempfile::tempdir().unwrap();
    let written = export_volume(&volume, dir.path()).unwrap();
    let names: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(names, [slice_file_name(0.0), slice_file_name(270.0), "volume.json".to_string()]);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("volume.json")).unwrap()).unwrap();
    assert_eq!(manifest["partial"], true);
    assert!(manifest["slices"][1]["error"].as_str().unwrap().contains("azimuth 90"));
    assert!(manifest["slices"][1]["file"].is_null());
}

#[test]
fn parsers_return_located_errors_on_mangled_text() {
    let mut rng = support::rng(17);
    let junk = ["x", "-", "1e999", "nan", ",", ":", "", "1 2 3", "-7", "0.5.5"];
    for _ in 0..300 {
        let text = write_input_file(&support::scenario(&mut rng));
        let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
        match rng.gen_range(0..3) {
            0 => lines.truncate(rng.gen_range(0..lines.len())),
            1 => {
                let i = rng.gen_range(0..lines.len());
                lines[i] = format!("{} :mangled", junk[rng.gen_range(0..junk.len())]);
            }
            _ => {
                let (i, j) = (rng.gen_range(0..lines.len()), rng.gen_range(0..lines.len()));
                lines.swap(i, j);
            }
        }
        if let Err(Error::Parse { line, .. }) = parse_input_file(&lines.join("\n")) {
            assert!(line >= 1 && line <= lines.len() + 1);
        }
    }
    for _ in 0..300 {
        let alphabet = b"0123456789 .-\nxyzncolsrwcelsize:(),";
        let bytes: Vec<u8> = (0..rng.gen_range(0..200))
            .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
            .collect();
        let text = String::from_utf8(bytes).unwrap();
        let _ = parse_input_file(&text);
        let _ = read_elevation_grid(&text);
        let _ = parse_complex_field_export(&text);
    }
}

#[test]
fn tip_speed_is_linear_in_rpm_and_radius() {
    let mut rng = support::rng(18);
    let base = blade_tip_speed(&TurbineSpec::vestas_v66(), 1.0).unwrap().speed;
    for _ in 0..1000 {
        let rpm = rng.gen_range(0.0..40.0);
        let scale = rng.gen_range(0.1..3.0);
        let mut spec = TurbineSpec::vestas_v66();
        spec.rotor_diameter *= scale;
        let v = blade_tip_speed(&spec, rpm).unwrap().speed;
        assert!((v - base * rpm * scale).abs() <= 1e-9 * v.max(1.0));
    }
}

#[test]
fn extraction_window_ends_on_its_bounds() {
    let mut rng = support::rng(19);
    for _ in 0..1000 {
        let spec = TurbineSpec {
            rotor_diameter: rng.gen_range(10.0..150.0),
            hub_height: rng.gen_range(20.0..150.0),
            ..TurbineSpec::vestas_v66()
        };
        let (below, above) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
        let step = [0.05, 0.1, 0.25, 0.5, 1.0][rng.gen_range(0..5)];
        let w = extraction_window(&spec, below, above, step).unwrap();
        let (lo, hi) = (-(spec.hub_height + below), spec.rotor_radius() + above);
        assert_eq!(w.len(), ((hi - lo) / step).round() as usize + 1);
        assert_eq!(w[0], lo);
        assert_eq!(*w.last().unwrap(), hi);
    }
}

#[test]
fn extracted_columns_round_trip_through_the_export() {
    let s = hill_scenario();
    let (grid, _) = run_pe(&s).unwrap();
    let spec = TurbineSpec {
        rotor_diameter: 40.0,
        hub_height: 50.0,
        ..TurbineSpec::vestas_v66()
    };
    let window = extraction_window(&spec, 1.0, 1.0, 0.5).unwrap();
    let placement = ppf::turbine::TurbinePlacement {
        id: "t".into(),
        distance: grid.ranges[10],
        azimuth: 0.0,
    };
    let values = ppf::turbine::field_column_at_turbine(&grid, &placement, &spec, &window, &s.terrain).unwrap();
    let export = ComplexFieldExport {
        profile_index: 1,
        heights: window,
        values,
    };
    let back = parse_complex_field_export(&write_complex_field_export(&export).unwrap()).unwrap();
    assert_eq!(back.heights, export.heights);
    for (a, b) in back.values.iter().zip(&export.values) {
        assert!((a - b).norm() <= 1e-12);
    }
}
