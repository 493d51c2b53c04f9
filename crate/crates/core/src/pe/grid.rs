use num_complex::Complex64;

use crate::domain::{
    free_space_loss_db, ppf_pe_factor_db, AmplitudeInterpolation, ComplexSample, Model, OutputWindow,
    PhaseExt, PpfNormalization, PpfResult, RunMetadata, MAGNITUDE_FLOOR,
};
use crate::error::{Error, Result};

/// Complex field columns kept from a march, one per stored range.
///
/// Column bin `j` lies `j·dz` above `ground[i]`. Ground heights are kept
/// relative to `datum`, the terrain height under the source.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFieldGrid {
    /// m, ascending.
    pub ranges: Vec<f64>,
    /// m above the height datum.
    pub datum: f64,
    /// Terrain height under each column relative to `datum`, m.
    pub ground: Vec<f64>,
    /// m.
    pub dz: f64,
    /// Height above ground where the absorbing taper begins, m.
    pub usable_height: f64,
    pub columns: Vec<Vec<ComplexSample>>,
}

/// The two bins bracketing a height and the fraction between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lower: ComplexSample,
    pub upper: ComplexSample,
    pub fraction: f64,
}

impl Bracket {
    /// Linear interpolation of the complex field.
    pub fn complex(&self) -> ComplexSample {
        self.lower + (self.upper - self.lower) * self.fraction
    }

    /// Interpolated amplitude before any dB conversion.
    pub fn amplitude(&self, mode: AmplitudeInterpolation) -> f64 {
        match mode {
            AmplitudeInterpolation::Coherent => self.complex().magnitude(),
            AmplitudeInterpolation::Magnitude => {
                let m0 = self.lower.magnitude();
                m0 + self.fraction * (self.upper.magnitude() - m0)
            }
        }
    }
}

impl ComplexFieldGrid {
    /// Index of the column stored at `range`, matched to 1e-6 m.
    pub fn column_index(&self, range: f64) -> Result<usize> {
        self.ranges
            .iter()
            .position(|&r| (r - range).abs() <= 1e-6)
            .ok_or_else(|| {
                Error::OutOfRange(format!(
                    "no field column stored at range {range} m (stored: {} columns from {} m to {} m)",
                    self.ranges.len(),
                    self.ranges.first().copied().unwrap_or(f64::NAN),
                    self.ranges.last().copied().unwrap_or(f64::NAN),
                ))
            })
    }

    /// Bins around absolute height `height` in column `index`. Heights below
    /// the local ground give an all-zero bracket.
    pub fn bracket(&self, index: usize, height: f64) -> Result<Bracket> {
        let column = &self.columns[index];
        let zeta = (height - self.datum) - self.ground[index];
        let zero = Complex64::default();
        if zeta < 0.0 {
            return Ok(Bracket {
                lower: zero,
                upper: zero,
                fraction: 0.0,
            });
        }
        let top = column.len() as f64 * self.dz;
        if zeta >= top {
            return Err(Error::OutOfRange(format!(
                "height {height} m is {zeta} m above ground, beyond the {top} m PE domain"
            )));
        }
        let b = zeta / self.dz;
        let j = (b.floor() as usize).min(column.len() - 1);
        let fraction = b - j as f64;
        Ok(Bracket {
            lower: column[j],
            upper: column.get(j + 1).copied().unwrap_or(zero),
            fraction,
        })
    }

    /// Complex field at absolute height `height` in column `index`.
    pub fn sample(&self, index: usize, height: f64) -> Result<ComplexSample> {
        Ok(self.bracket(index, height)?.complex())
    }
}

/// Amplitude, phase and loss on the output lattice from stored columns.
///
/// The grid must hold a column at every output range.
pub fn extract_complex_ppf(
    grid: &ComplexFieldGrid,
    output: &OutputWindow,
    wavelength: f64,
    interpolation: AmplitudeInterpolation,
    scenario_digest: String,
) -> Result<PpfResult> {
    let ranges = output.ranges();
    let heights = output.heights();
    let mut amplitude_db = Vec::with_capacity(ranges.len());
    let mut phase_rad = Vec::with_capacity(ranges.len());
    let mut loss_db = Vec::with_capacity(ranges.len());
    for &r in &ranges {
        let idx = grid.column_index(r)?;
        let fsl = free_space_loss_db(r, wavelength);
        let mut amp = Vec::with_capacity(heights.len());
        let mut phase = Vec::with_capacity(heights.len());
        let mut loss = Vec::with_capacity(heights.len());
        for &z in &heights {
            let b = grid.bracket(idx, z)?;
            let f = ppf_pe_factor_db(b.amplitude(interpolation), r)?;
            amp.push(f);
            phase.push(b.complex().phase());
            loss.push(fsl - f);
        }
        amplitude_db.push(amp);
        phase_rad.push(phase);
        loss_db.push(loss);
    }
    Ok(PpfResult {
        ranges,
        heights,
        amplitude_db,
        phase_rad,
        loss_db,
        scenario_digest,
        metadata: RunMetadata {
            model: Model::Pe,
            normalization: PpfNormalization::PeFactor,
            amplitude_interpolation: interpolation,
            magnitude_floor: MAGNITUDE_FLOOR,
            range_log_units: "m",
        },
    })
}
