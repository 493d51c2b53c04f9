use num_complex::Complex64;

use crate::domain::{ComplexSample, Polarization, SourceSpec};
use crate::environment::{phase_screen_column, RefractivityField, TerrainProfile};
use crate::error::{Error, Result};
use crate::pe::config::PeConfig;
use crate::pe::transform::SineTransform;

/// One column of the march.
///
/// `field[j]` is the reduced field at `j·Δz` above the local ground, so the
/// column always sits on the terrain directly below it.
#[derive(Debug, Clone, PartialEq)]
pub struct PeState {
    /// m.
    pub range: f64,
    pub field: Vec<ComplexSample>,
    /// Terrain height under the column, m.
    pub local_ground: f64,
    /// Refractivity phase rate `k0·M·1e-6` applied by the last step, rad/m.
    pub screen: Vec<f64>,
}

impl PeState {
    /// Discrete L2 norm of the column.
    pub fn norm(&self) -> f64 {
        self.field.iter().map(|u| u.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// p-space starting field for a source over the ground, before the sine
/// transform. Entry `j` belongs to the angle whose sine is `j·λ/(2·z_max)`;
/// entries at or beyond grazing incidence are zero.
pub fn initial_spectrum(source: &SourceSpec, config: &PeConfig) -> Result<Vec<ComplexSample>> {
    if !(source.antenna_height < config.z_max) {
        return Err(Error::invalid(
            "antenna height",
            format!(
                "{} m is above the PE domain height {} m",
                source.antenna_height, config.z_max
            ),
        ));
    }
    let n = config.transform_size;
    let wavelength = source.wavelength();
    let antk0 = source.wavenumber() * source.antenna_height;
    let s_gain = wavelength.sqrt() / config.z_max;
    let dtheta = wavelength / (2.0 * config.z_max);
    let sign = match source.polarization {
        Polarization::Horizontal => -1.0,
        Polarization::Vertical => 1.0,
    };
    let mut spectrum = vec![Complex64::default(); n];
    for (j, slot) in spectrum.iter_mut().enumerate().skip(1) {
        let p = j as f64 * dtheta;
        if p >= 1.0 {
            break;
        }
        let alpha = p.asin().to_degrees();
        let c_a = (1.0 - p * p).powf(0.75);
        let up = source.pattern.pattern_factor(alpha)?;
        let down = source.pattern.pattern_factor(-alpha)?;
        let phase = p * antk0;
        *slot = c_a
            * s_gain
            * (up * Complex64::from_polar(1.0, -phase) + sign * down * Complex64::from_polar(1.0, phase));
    }
    Ok(spectrum)
}

/// Free-space propagator for a step of `delta_r` meters, including the
/// transform normalization. Evanescent entries are zero.
pub fn build_free_space_propagator(config: &PeConfig, k0: f64, delta_r: f64) -> Vec<ComplexSample> {
    let dp = config.delta_p();
    let f_norm = config.f_norm();
    (0..config.transform_size)
        .map(|j| {
            let p = j as f64 * dp;
            if p > k0 {
                Complex64::default()
            } else {
                let kz = (k0 * k0 - p * p).sqrt();
                Complex64::from_polar(f_norm, delta_r * (kz - k0))
            }
        })
        .collect()
}

/// Split-step marcher bound to one scenario's environment.
#[derive(Debug, Clone)]
pub struct PeEngine {
    config: PeConfig,
    k0: f64,
    transform: SineTransform,
    propagator: Vec<ComplexSample>,
    heights: Vec<f64>,
    taper: Vec<f64>,
    terrain: TerrainProfile,
    refractivity: RefractivityField,
    static_screen: Option<(Vec<f64>, Vec<ComplexSample>)>,
}

impl PeEngine {
    pub fn new(
        config: PeConfig,
        k0: f64,
        terrain: TerrainProfile,
        refractivity: RefractivityField,
    ) -> Result<Self> {
        config.validate()?;
        if !(k0 > 0.0) {
            return Err(Error::invalid("wavenumber", "must be positive"));
        }
        let n = config.transform_size;
        let dz = config.dz();
        let heights: Vec<f64> = (0..n).map(|j| j as f64 * dz).collect();
        let start = config.usable_height();
        let width = config.z_max - start;
        let taper = heights
            .iter()
            .map(|&z| {
                if config.absorber_fraction == 0.0 || z < start {
                    1.0
                } else {
                    0.5 * (1.0 + (std::f64::consts::PI * (z - start) / width).cos())
                }
            })
            .collect();
        let static_screen = refractivity.is_range_independent().then(|| {
            let rate = phase_screen_column(&refractivity, 0.0, &heights, k0);
            let mult = screen_multipliers(&rate, config.delta_r);
            (rate, mult)
        });
        Ok(PeEngine {
            propagator: build_free_space_propagator(&config, k0, config.delta_r),
            transform: SineTransform::new(n),
            config,
            k0,
            heights,
            taper,
            terrain,
            refractivity,
            static_screen,
        })
    }

    pub fn config(&self) -> &PeConfig {
        &self.config
    }

    /// Heights above local ground of the column bins, m.
    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    /// Starting column at range 0.
    pub fn init_field(&mut self, source: &SourceSpec) -> Result<PeState> {
        let mut field = initial_spectrum(source, &self.config)?;
        self.transform.apply(&mut field);
        Ok(PeState {
            range: 0.0,
            field,
            local_ground: self.terrain.height_at(0.0),
            screen: vec![0.0; self.config.transform_size],
        })
    }

    /// Advances the state by one configured range step.
    pub fn march_step(&mut self, state: &mut PeState) {
        self.advance(state, self.config.delta_r);
    }

    /// Advances the state by `dr` meters: terrain tilt, free-space step,
    /// untilt, refractivity screen at the new range, absorber taper.
    pub fn advance(&mut self, state: &mut PeState, dr: f64) {
        let k0 = self.k0;
        let r1 = state.range + dr;
        let ground1 = self.terrain.height_at(r1);
        let alpha = (ground1 - state.local_ground) / dr;
        let tilted = alpha != 0.0;

        if tilted {
            for (u, &z) in state.field.iter_mut().zip(&self.heights) {
                *u *= Complex64::from_polar(1.0, -k0 * alpha * z);
            }
        }
        self.transform.apply(&mut state.field);
        if dr == self.config.delta_r {
            for (u, f) in state.field.iter_mut().zip(&self.propagator) {
                *u *= f;
            }
        } else {
            let prop = build_free_space_propagator(&self.config, k0, dr);
            for (u, f) in state.field.iter_mut().zip(&prop) {
                *u *= f;
            }
        }
        self.transform.apply(&mut state.field);
        if tilted {
            let drift = 0.5 * k0 * alpha * alpha * dr;
            for (u, &z) in state.field.iter_mut().zip(&self.heights) {
                *u *= Complex64::from_polar(1.0, k0 * alpha * z + drift);
            }
        }

        match &self.static_screen {
            Some((rate, mult)) if dr == self.config.delta_r => {
                for (u, m) in state.field.iter_mut().zip(mult) {
                    *u *= m;
                }
                state.screen.clone_from(rate);
            }
            Some((rate, _)) => {
                for (u, &p) in state.field.iter_mut().zip(rate) {
                    *u *= Complex64::from_polar(1.0, dr * p);
                }
                state.screen.clone_from(rate);
            }
            None => {
                let rate = phase_screen_column(&self.refractivity, r1, &self.heights, k0);
                for (u, &p) in state.field.iter_mut().zip(&rate) {
                    *u *= Complex64::from_polar(1.0, dr * p);
                }
                state.screen = rate;
            }
        }

        for (u, &w) in state.field.iter_mut().zip(&self.taper) {
            *u *= w;
        }
        state.field[0] = Complex64::default();
        state.range = r1;
        state.local_ground = ground1;
    }
}

fn screen_multipliers(rate: &[f64], dr: f64) -> Vec<ComplexSample> {
    rate.iter().map(|&p| Complex64::from_polar(1.0, dr * p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::PhaseExt;

    fn config() -> PeConfig {
        PeConfig::new(1024, 1024.0, 50.0, 0.25).unwrap()
    }

    #[test]
    fn horizontal_at_ground_cancels() {
        let s = SourceSpec::omni(2800.0, 0.0, Polarization::Horizontal);
        let u = initial_spectrum(&s, &config()).unwrap();
        assert!(u.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn vertical_at_ground_doubles() {
        let s = SourceSpec::omni(2800.0, 0.0, Polarization::Vertical);
        let c = config();
        let u = initial_spectrum(&s, &c).unwrap();
        let dtheta = s.wavelength() / (2.0 * c.z_max);
        let s_gain = s.wavelength().sqrt() / c.z_max;
        for (j, v) in u.iter().enumerate().skip(1).take(200) {
            let p = j as f64 * dtheta;
            let expect = 2.0 * (1.0 - p * p).powf(0.75) * s_gain;
            assert!((v.re - expect).abs() < 1e-15 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn antenna_above_domain_rejected() {
        let s = SourceSpec::omni(2800.0, 2000.0, Polarization::Horizontal);
        assert!(initial_spectrum(&s, &config()).is_err());
    }

    #[test]
    fn propagator_properties() {
        let c = config();
        let k0 = 58.68;
        let prop = build_free_space_propagator(&c, k0, 50.0);
        assert_eq!(prop[0], Complex64::new(c.f_norm(), 0.0));
        for (j, f) in prop.iter().enumerate() {
            if j as f64 * c.delta_p() <= k0 {
                assert!((f.magnitude() - c.f_norm()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn half_k0_phase() {
        // j·Δp = k0/2 exactly when z_max = 2π·j/k0.
        let k0 = 58.68;
        let j = 100;
        let z_max = 2.0 * std::f64::consts::PI * j as f64 / k0;
        let c = PeConfig::new(1024, z_max, 50.0, 0.0).unwrap();
        let prop = build_free_space_propagator(&c, k0, 50.0);
        let expected = 50.0 * k0 * (3f64.sqrt() / 2.0 - 1.0);
        assert!((expected - (-393.05)).abs() < 0.05);
        let got = prop[j] / c.f_norm();
        let want = Complex64::from_polar(1.0, expected);
        assert!((got - want).norm() < 1e-9);
    }

    #[test]
    fn evanescent_modes_zeroed() {
        // Δz smaller than λ/2 puts the top of the spectrum past k0.
        let c = PeConfig::new(1024, 20.0, 10.0, 0.0).unwrap();
        let k0 = 58.68;
        let prop = build_free_space_propagator(&c, k0, 10.0);
        let cut = (k0 / c.delta_p()).floor() as usize;
        assert!(prop[cut].norm() > 0.0);
        assert!(prop[cut + 1..].iter().all(|f| f.norm() == 0.0));
    }

    #[test]
    fn flat_vacuum_step_keeps_ground_zero_and_norm() {
        let c = PeConfig::new(512, 200.0, 20.0, 0.0).unwrap();
        let s = SourceSpec::omni(300.0, 30.0, Polarization::Horizontal);
        let mut e = PeEngine::new(c, s.wavenumber(), TerrainProfile::flat(), RefractivityField::vacuum())
            .unwrap();
        let mut st = e.init_field(&s).unwrap();
        let n0 = st.norm();
        for _ in 0..50 {
            e.march_step(&mut st);
            assert_eq!(st.field[0], Complex64::default());
        }
        assert!(((st.norm() - n0) / n0).abs() < 1e-10);
        assert!((st.range - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn partial_steps_compose() {
        let c = PeConfig::new(256, 100.0, 20.0, 0.0).unwrap();
        let s = SourceSpec::omni(300.0, 20.0, Polarization::Horizontal);
        let mut e = PeEngine::new(c, s.wavenumber(), TerrainProfile::flat(), RefractivityField::isotropic(330.0))
            .unwrap();
        let init = e.init_field(&s).unwrap();
        let mut a = init.clone();
        e.march_step(&mut a);
        let mut b = init;
        e.advance(&mut b, 7.0);
        e.advance(&mut b, 13.0);
        for (x, y) in a.field.iter().zip(&b.field) {
            assert!((x - y).norm() < 1e-10 * (1.0 + x.norm()));
        }
    }
}
