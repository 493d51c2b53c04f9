use std::f64::consts::PI;

use serde::Serialize;

use crate::domain::PpfResult;

/// Default amplitude below which a phase sample is treated as sitting in a
/// null and ignored by the detector, dB.
pub const DEFAULT_NULL_THRESHOLD_DB: f64 = -40.0;

/// A vertically adjacent pair whose phase differs by more than π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseJump {
    pub range_index: usize,
    /// Index of the lower sample of the pair.
    pub height_index: usize,
    /// m.
    pub range: f64,
    /// m, lower sample.
    pub height: f64,
    /// Upper minus lower phase, rad.
    pub jump: f64,
}

/// Flags "teeth": vertically adjacent phase samples differing by more than
/// π while both amplitudes exceed `null_threshold_db`.
pub fn phase_continuity_report(result: &PpfResult, null_threshold_db: f64) -> Vec<PhaseJump> {
    let mut jumps = Vec::new();
    for (i, (phase, amp)) in result.phase_rad.iter().zip(&result.amplitude_db).enumerate() {
        for j in 0..phase.len().saturating_sub(1) {
            let jump = phase[j + 1] - phase[j];
            if jump.abs() > PI && amp[j] > null_threshold_db && amp[j + 1] > null_threshold_db {
                jumps.push(PhaseJump {
                    range_index: i,
                    height_index: j,
                    range: result.ranges[i],
                    height: result.heights[j],
                    jump,
                });
            }
        }
    }
    jumps
}

/// Removes 2π discontinuities along one column: every successive
/// difference of the output lies in `(-π, π]`.
pub fn unwrap_column(phase: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phase.len());
    let mut correction = 0.0;
    for (j, &p) in phase.iter().enumerate() {
        if j > 0 {
            let d = p - phase[j - 1];
            let wrapped = crate::domain::wrap_phase(d);
            correction += wrapped - d;
        }
        out.push(p + correction);
    }
    out
}

/// Height-wise unwrap of every range column of a phase grid.
pub fn unwrap_phase_grid(phase: &[Vec<f64>]) -> Vec<Vec<f64>> {
    phase.iter().map(|c| unwrap_column(c)).collect()
}
