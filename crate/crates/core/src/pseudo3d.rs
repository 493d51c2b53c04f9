//! Pseudo-3D volumes: independent 2D runs along a fan of azimuths through an
//! elevation grid.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{OutputWindow, PpfResult};
use crate::environment::TerrainProfile;
use crate::error::{Error, Result};
use crate::io::write_plot_grid;
use crate::pe::run_pe;
use crate::scenario::Scenario;

/// Regular grid of terrain heights in local planar coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ElevationGrid {
    /// x of the lower-left grid corner, m (east).
    pub origin_x: f64,
    /// y of the lower-left grid corner, m (north).
    pub origin_y: f64,
    /// m.
    pub cell_size: f64,
    pub n_cols: usize,
    pub n_rows: usize,
    /// Row-major heights, northernmost row first, m.
    pub heights: Vec<f64>,
    /// Marker for missing cells.
    pub nodata: Option<f64>,
}

impl ElevationGrid {
    pub fn new(
        origin_x: f64,
        origin_y: f64,
        cell_size: f64,
        n_cols: usize,
        n_rows: usize,
        heights: Vec<f64>,
        nodata: Option<f64>,
    ) -> Result<Self> {
        let g = ElevationGrid {
            origin_x,
            origin_y,
            cell_size,
            n_cols,
            n_rows,
            heights,
            nodata,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_size > 0.0 && self.cell_size.is_finite()) {
            return Err(Error::invalid("elevation grid cell size", "must be positive"));
        }
        if self.n_cols == 0 || self.n_rows == 0 {
            return Err(Error::invalid("elevation grid", "needs at least one row and column"));
        }
        if self.heights.len() != self.n_cols * self.n_rows {
            return Err(Error::invalid(
                "elevation grid",
                format!(
                    "{} heights for {} x {} cells",
                    self.heights.len(),
                    self.n_cols,
                    self.n_rows
                ),
            ));
        }
        if self.heights.iter().any(|h| !h.is_finite()) {
            return Err(Error::invalid("elevation grid", "heights must be finite"));
        }
        Ok(())
    }

    /// Height of cell `(row, col)`, row 0 being the northernmost.
    pub fn cell(&self, row: usize, col: usize) -> f64 {
        self.heights[row * self.n_cols + col]
    }

    /// Local coordinates of the center of cell `(row, col)`.
    pub fn cell_center(&self, row: usize, col: usize) -> (f64, f64) {
        (
            self.origin_x + (col as f64 + 0.5) * self.cell_size,
            self.origin_y + ((self.n_rows - 1 - row) as f64 + 0.5) * self.cell_size,
        )
    }

    fn is_nodata(&self, v: f64) -> bool {
        self.nodata == Some(v)
    }

    /// Bilinear height between the four surrounding cell centers, or `None`
    /// outside the span of cell centers.
    pub fn height_at(&self, x: f64, y: f64) -> Option<Result<f64>> {
        let c = (x - self.origin_x) / self.cell_size - 0.5;
        let rb = (y - self.origin_y) / self.cell_size - 0.5;
        let max_c = (self.n_cols - 1) as f64;
        let max_r = (self.n_rows - 1) as f64;
        let eps = 1e-9;
        if !(c >= -eps && c <= max_c + eps && rb >= -eps && rb <= max_r + eps) {
            return None;
        }
        let c = c.clamp(0.0, max_c);
        let rb = rb.clamp(0.0, max_r);
        let c0 = c.floor() as usize;
        let r0 = rb.floor() as usize;
        let fc = c - c0 as f64;
        let fr = rb - r0 as f64;
        let c1 = if fc > 0.0 { c0 + 1 } else { c0 };
        let r1 = if fr > 0.0 { r0 + 1 } else { r0 };
        let row = |rb: usize| self.n_rows - 1 - rb;
        let corners = [
            (row(r0), c0, (1.0 - fr) * (1.0 - fc)),
            (row(r0), c1, (1.0 - fr) * fc),
            (row(r1), c0, fr * (1.0 - fc)),
            (row(r1), c1, fr * fc),
        ];
        for (r, col, w) in corners {
            if w > 0.0 && self.is_nodata(self.cell(r, col)) {
                return Some(Err(Error::invalid(
                    "elevation grid",
                    format!("nodata cell at row {r}, column {col}"),
                )));
            }
        }
        let lerp = |a: f64, b: f64, t: f64| if t > 0.0 { a + t * (b - a) } else { a };
        let south = lerp(self.cell(row(r0), c0), self.cell(row(r0), c1), fc);
        let north = lerp(self.cell(row(r1), c0), self.cell(row(r1), c1), fc);
        let h = lerp(south, north, fr);
        Some(Ok(h))
    }
}

/// Radar position and the azimuths to run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AzimuthFan {
    /// Local `(x, y)` of the radar, m.
    pub origin: (f64, f64),
    /// Degrees clockwise from north.
    pub azimuths: Vec<f64>,
    /// m.
    pub max_range: f64,
    /// Terrain sampling step, m.
    pub range_step: f64,
}

impl AzimuthFan {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_range > 0.0) || !(self.range_step > 0.0) {
            return Err(Error::invalid("azimuth fan", "range and step must be positive"));
        }
        if self.azimuths.iter().any(|a| !a.is_finite()) {
            return Err(Error::invalid("azimuth fan", "azimuths must be finite"));
        }
        let mut sorted = self.azimuths.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid("azimuth fan", format!("azimuth {} listed twice", w[0])));
        }
        Ok(())
    }
}

/// Terrain heights sampled every `range_step` meters along a straight ray.
/// The last sample sits exactly at `max_range`.
pub fn sample_terrain_along_azimuth(
    grid: &ElevationGrid,
    origin: (f64, f64),
    azimuth: f64,
    max_range: f64,
    range_step: f64,
) -> Result<TerrainProfile> {
    if !(max_range > 0.0 && range_step > 0.0) {
        return Err(Error::invalid("azimuth sampling", "range and step must be positive"));
    }
    let (s, c) = azimuth.to_radians().sin_cos();
    let n = (max_range / range_step).ceil() as usize;
    let mut points = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let r = (i as f64 * range_step).min(max_range);
        if points.last().is_some_and(|&(last, _)| r <= last) {
            continue;
        }
        let (x, y) = (origin.0 + r * s, origin.1 + r * c);
        let h = grid
            .height_at(x, y)
            .ok_or_else(|| {
                Error::OutOfRange(format!(
                    "azimuth {azimuth}°: ray leaves the elevation grid at range {r} m"
                ))
            })?
            .map_err(|e| Error::invalid("elevation grid", format!("azimuth {azimuth}°: {e}")))?;
        points.push((r, h));
    }
    TerrainProfile::new(points)
}

/// One azimuth's outcome.
#[derive(Debug)]
pub struct VolumeSlice {
    pub azimuth: f64,
    pub result: Result<PpfResult>,
}

/// Per-azimuth slices in fan order.
#[derive(Debug)]
pub struct VolumeResult {
    pub window: OutputWindow,
    pub scenario_digest: String,
    pub slices: Vec<VolumeSlice>,
}

impl VolumeResult {
    /// True when at least one azimuth failed.
    pub fn is_partial(&self) -> bool {
        self.slices.iter().any(|s| s.result.is_err())
    }

    pub fn slice(&self, azimuth: f64) -> Option<&PpfResult> {
        self.slices
            .iter()
            .find(|s| s.azimuth == azimuth)
            .and_then(|s| s.result.as_ref().ok())
    }
}

/// The scenario with its terrain replaced by the profile under `azimuth`.
pub fn scenario_for_azimuth(
    scenario: &Scenario,
    grid: &ElevationGrid,
    fan: &AzimuthFan,
    azimuth: f64,
) -> Result<Scenario> {
    let mut terrain =
        sample_terrain_along_azimuth(grid, fan.origin, azimuth, fan.max_range, fan.range_step)?;
    terrain.compositions = scenario.terrain.compositions.clone();
    let mut s = scenario.clone();
    s.terrain = terrain;
    Ok(s)
}

/// Runs every azimuth of the fan independently and in parallel. Failures
/// are kept per azimuth; the remaining azimuths still run.
pub fn run_volume(scenario: &Scenario, grid: &ElevationGrid, fan: &AzimuthFan) -> Result<VolumeResult> {
    grid.validate()?;
    fan.validate()?;
    let slices = fan
        .azimuths
        .par_iter()
        .map(|&azimuth| VolumeSlice {
            azimuth,
            result: scenario_for_azimuth(scenario, grid, fan, azimuth)
                .and_then(|s| run_pe(&s))
                .map(|(_, r)| r),
        })
        .collect();
    Ok(VolumeResult {
        window: scenario.output,
        scenario_digest: scenario.digest(),
        slices,
    })
}

#[derive(Serialize)]
struct VolumeManifest<'a> {
    scenario_digest: &'a str,
    window: &'a OutputWindow,
    partial: bool,
    azimuth_count: usize,
    slices: Vec<SliceEntry>,
}

#[derive(Serialize)]
struct SliceEntry {
    azimuth: f64,
    file: Option<String>,
    scenario_digest: Option<String>,
    error: Option<String>,
}

/// File name used for an azimuth's plot grid.
pub fn slice_file_name(azimuth: f64) -> String {
    format!("azimuth_{azimuth:+09.3}.csv")
}

/// Writes one amplitude plot grid per successful azimuth and a
/// `volume.json` manifest into `dir`. Returns the written paths, manifest
/// last.
pub fn export_volume(volume: &VolumeResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut entries = Vec::new();
    for slice in &volume.slices {
        match &slice.result {
            Ok(r) => {
                let name = slice_file_name(slice.azimuth);
                let path = dir.join(&name);
                fs::write(&path, write_plot_grid(&r.ranges, &r.heights, &r.amplitude_db))
                    .map_err(|e| Error::io(&path, e))?;
                written.push(path);
                entries.push(SliceEntry {
                    azimuth: slice.azimuth,
                    file: Some(name),
                    scenario_digest: Some(r.scenario_digest.clone()),
                    error: None,
                });
            }
            Err(e) => entries.push(SliceEntry {
                azimuth: slice.azimuth,
                file: None,
                scenario_digest: None,
                error: Some(e.to_string()),
            }),
        }
    }
    let manifest = VolumeManifest {
        scenario_digest: &volume.scenario_digest,
        window: &volume.window,
        partial: volume.is_partial(),
        azimuth_count: volume.slices.len(),
        slices: entries,
    };
    let path = dir.join("volume.json");
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}
