use num_complex::Complex64;

use crate::domain::{ComplexSample, Polarization, SPEED_OF_LIGHT};

/// Fresnel specular reflection coefficient `ρ·e^{iφ}` of a smooth ground.
///
/// The complex relative permittivity is `εr + i·60·λ·σ`, matching the
/// `e^{+ikr}` phase convention used by both field models. An infinite
/// conductivity gives the perfect-conductor limit (`-1` horizontal, `+1`
/// vertical).
pub fn reflection_coefficient(
    pol: Polarization,
    grazing_angle: f64,
    permittivity: f64,
    conductivity: f64,
    frequency_mhz: f64,
) -> ComplexSample {
    if conductivity.is_infinite() {
        return match pol {
            Polarization::Horizontal => Complex64::new(-1.0, 0.0),
            Polarization::Vertical => Complex64::new(1.0, 0.0),
        };
    }
    let wavelength = SPEED_OF_LIGHT / (frequency_mhz * 1e6);
    let eps = Complex64::new(permittivity, 60.0 * wavelength * conductivity);
    let s = grazing_angle.sin();
    // ε - cos²θ written as (ε - 1) + sin²θ keeps precision at grazing incidence
    let root = (eps - 1.0 + s * s).sqrt();
    match pol {
        Polarization::Horizontal => (s - root) / (s + root),
        Polarization::Vertical => (eps * s - root) / (eps * s + root),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::PhaseExt;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn perfect_conductor_limit() {
        let g = reflection_coefficient(Polarization::Horizontal, 0.3, 15.0, f64::INFINITY, 2800.0);
        assert_eq!(g.magnitude(), 1.0);
        assert_eq!(g.phase(), PI);
        let g = reflection_coefficient(Polarization::Horizontal, 0.3, 15.0, 1e12, 2800.0);
        assert!((g.magnitude() - 1.0).abs() < 1e-5);
        assert!((g.phase().abs() - PI).abs() < 1e-5);
    }

    #[test]
    fn free_space_does_not_reflect() {
        for pol in [Polarization::Horizontal, Polarization::Vertical] {
            for a in [0.01, 0.3, 1.2, PI / 2.0] {
                assert!(reflection_coefficient(pol, a, 1.0, 0.0, 2800.0).magnitude() < 1e-15);
            }
        }
    }

    #[test]
    fn medium_ground_grazing_one_degree() {
        // Frozen from a standalone evaluation of the scalar Fresnel formula
        // with eps = 15 + i*60*lambda*0.012 at 2800 MHz.
        let g = reflection_coefficient(
            Polarization::Horizontal,
            1f64.to_radians(),
            15.0,
            0.012,
            2800.0,
        );
        assert!((g.re - (-0.990_714_811_993_037_2)).abs() < 1e-9, "{g}");
        assert!((g.im - (-2.544_451_253_746_344_8e-5)).abs() < 1e-9, "{g}");
    }

    proptest! {
        #[test]
        fn magnitude_is_bounded(
            a in 1e-4f64..(PI / 2.0),
            eps in 1.0f64..100.0,
            sigma in 0.0f64..10.0,
            f in 1.0f64..20_000.0,
            vertical: bool,
        ) {
            let pol = if vertical { Polarization::Vertical } else { Polarization::Horizontal };
            let g = reflection_coefficient(pol, a, eps, sigma, f);
            prop_assert!(g.magnitude() <= 1.0 + 1e-12);
        }
    }
}
