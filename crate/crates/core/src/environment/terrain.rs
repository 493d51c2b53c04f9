use serde::Serialize;

use crate::error::{Error, Result};

/// Ground electrical properties from a given range onward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundComposition {
    /// m.
    pub start_range: f64,
    /// Stored verbatim; the engines do not interpret it.
    pub ground_type: i64,
    /// Relative permittivity.
    pub permittivity: f64,
    /// S/m. `f64::INFINITY` denotes a perfect conductor.
    pub conductivity: f64,
}

impl GroundComposition {
    pub fn perfect_conductor() -> Self {
        GroundComposition {
            start_range: 0.0,
            ground_type: 0,
            permittivity: 1.0,
            conductivity: f64::INFINITY,
        }
    }
}

/// Piecewise-linear terrain with per-range ground composition.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TerrainProfile {
    /// `(range m, height m)` break points, ranges strictly ascending. Empty
    /// means flat ground at height 0.
    pub points: Vec<(f64, f64)>,
    pub compositions: Vec<GroundComposition>,
}

impl TerrainProfile {
    pub fn flat() -> Self {
        TerrainProfile::default()
    }

    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        let t = TerrainProfile {
            points,
            compositions: Vec::new(),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn with_compositions(mut self, compositions: Vec<GroundComposition>) -> Self {
        self.compositions = compositions;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::invalid(
                "terrain",
                "ranges must be strictly ascending",
            ));
        }
        if self
            .points
            .iter()
            .any(|&(r, h)| !r.is_finite() || !h.is_finite())
        {
            return Err(Error::invalid("terrain", "points must be finite"));
        }
        if self
            .compositions
            .windows(2)
            .any(|w| !(w[1].start_range > w[0].start_range))
        {
            return Err(Error::invalid(
                "ground composition",
                "ranges must be strictly ascending",
            ));
        }
        Ok(())
    }

    /// True when every break point sits at the same height.
    pub fn is_flat(&self) -> bool {
        self.points.windows(2).all(|w| w[0].1 == w[1].1)
    }

    /// Piecewise-linear height; constant outside the break points.
    pub fn height_at(&self, range: f64) -> f64 {
        let p = &self.points;
        match p.len() {
            0 => 0.0,
            _ => {
                let i = p.partition_point(|&(r, _)| r <= range);
                if i == 0 {
                    p[0].1
                } else if i == p.len() {
                    p[i - 1].1
                } else {
                    let (r0, h0) = p[i - 1];
                    let (r1, h1) = p[i];
                    h0 + (h1 - h0) * (range - r0) / (r1 - r0)
                }
            }
        }
    }

    /// Slope of the segment containing `range` (the right-hand segment at a
    /// break point); zero outside the profile.
    pub fn segment_slope(&self, range: f64) -> f64 {
        let p = &self.points;
        let i = p.partition_point(|&(r, _)| r <= range);
        if i == 0 || i >= p.len() {
            return 0.0;
        }
        let (r0, h0) = p[i - 1];
        let (r1, h1) = p[i];
        (h1 - h0) / (r1 - r0)
    }

    /// Largest slope modulus over all segments.
    pub fn max_slope(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs())
            .fold(0.0, f64::max)
    }

    /// Ground composition in force at `range`, if any was given.
    pub fn composition_at(&self, range: f64) -> Option<&GroundComposition> {
        let i = self
            .compositions
            .partition_point(|c| c.start_range <= range);
        self.compositions.get(i.saturating_sub(1))
    }

    /// Every height shifted by `dh`.
    pub fn raised(&self, dh: f64) -> Self {
        let mut t = self.clone();
        if t.points.is_empty() {
            t.points = vec![(0.0, dh)];
        } else {
            t.points.iter_mut().for_each(|p| p.1 += dh);
        }
        t
    }
}
