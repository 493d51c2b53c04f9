//! Range-dependent modified refractivity (M-units).
//!
//! Heights in a profile are measured above local ground, so a profile follows
//! the terrain the same way the PE column does.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefractivityProfile {
    /// Range at which this profile starts to apply, m.
    pub start_range: f64,
    /// `(height m, M-units)`, heights strictly ascending.
    pub levels: Vec<(f64, f64)>,
}

impl RefractivityProfile {
    pub fn new(start_range: f64, levels: Vec<(f64, f64)>) -> Self {
        RefractivityProfile {
            start_range,
            levels,
        }
    }

    /// Height-invariant profile.
    pub fn isotropic(m_units: f64) -> Self {
        RefractivityProfile::new(0.0, vec![(0.0, m_units)])
    }

    fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::invalid("refractivity profile", "needs at least one level"));
        }
        if self.levels.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::invalid(
                "refractivity profile",
                "heights must be strictly ascending",
            ));
        }
        if self.levels.iter().any(|&(h, m)| !h.is_finite() || !m.is_finite()) {
            return Err(Error::invalid("refractivity profile", "values must be finite"));
        }
        Ok(())
    }

    /// Linear in height; constant beyond the first and last levels.
    pub fn m_unit_at(&self, height: f64) -> f64 {
        let levels = &self.levels;
        let i = levels.partition_point(|&(h, _)| h <= height);
        if i == 0 {
            return levels[0].1;
        }
        if i == levels.len() {
            return levels[i - 1].1;
        }
        let (h0, m0) = levels[i - 1];
        let (h1, m1) = levels[i];
        m0 + (m1 - m0) * (height - h0) / (h1 - h0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefractivityField {
    pub profiles: Vec<RefractivityProfile>,
}

impl RefractivityField {
    pub fn new(profiles: Vec<RefractivityProfile>) -> Result<Self> {
        let field = RefractivityField { profiles };
        field.validate()?;
        Ok(field)
    }

    /// `M = 0` everywhere: no refraction screen.
    pub fn vacuum() -> Self {
        RefractivityField {
            profiles: vec![RefractivityProfile::isotropic(0.0)],
        }
    }

    pub fn isotropic(m_units: f64) -> Self {
        RefractivityField {
            profiles: vec![RefractivityProfile::isotropic(m_units)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let first = self
            .profiles
            .first()
            .ok_or_else(|| Error::invalid("refractivity", "needs at least one profile"))?;
        if first.start_range != 0.0 {
            return Err(Error::invalid("refractivity", "first profile must start at range 0"));
        }
        if self
            .profiles
            .windows(2)
            .any(|w| !(w[1].start_range > w[0].start_range))
        {
            return Err(Error::invalid(
                "refractivity",
                "profile ranges must be strictly ascending",
            ));
        }
        self.profiles.iter().try_for_each(RefractivityProfile::validate)
    }

    /// True when every range sees the same profile.
    pub fn is_range_independent(&self) -> bool {
        self.profiles.len() == 1
    }

    /// Bilinear M-unit value: linear in height within a profile, linear in
    /// range between profiles, constant past the last profile.
    pub fn m_unit_at(&self, range: f64, height: f64) -> f64 {
        let p = &self.profiles;
        let i = p.partition_point(|prof| prof.start_range <= range);
        if i == 0 {
            return p[0].m_unit_at(height);
        }
        if i == p.len() {
            return p[i - 1].m_unit_at(height);
        }
        let (a, b) = (&p[i - 1], &p[i]);
        let t = (range - a.start_range) / (b.start_range - a.start_range);
        let ma = a.m_unit_at(height);
        ma + t * (b.m_unit_at(height) - ma)
    }
}

/// Per-bin phase rate `k0·M·1e-6` (rad/m) applied by the PE refraction screen
/// as `exp(i·Δr·rate)`.
pub fn phase_screen_column(
    field: &RefractivityField,
    range: f64,
    heights: &[f64],
    k0: f64,
) -> Vec<f64> {
    heights
        .iter()
        .map(|&z| k0 * field.m_unit_at(range, z) * 1e-6)
        .collect()
}
