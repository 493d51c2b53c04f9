use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Unnormalized type-I discrete sine transform on a column of `n` bins.
///
/// Bin 0 is the ground and bin `n` (not stored) the domain top; both are
/// fixed at zero by the odd symmetry. For `j = 1..n`:
///
/// `S[j] = Σ_{m=1}^{n-1} x[m]·sin(π·j·m/n)`
///
/// Applying the transform twice scales by `n/2`. The transform runs as one
/// complex FFT of the odd extension, so complex columns need no splitting
/// into real and imaginary parts.
#[derive(Clone)]
pub struct SineTransform {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl std::fmt::Debug for SineTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SineTransform").field("n", &self.n).finish()
    }
}

impl SineTransform {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "sine transform needs at least two bins");
        let fft = FftPlanner::new().plan_fft_forward(2 * n);
        let scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        SineTransform {
            n,
            fft,
            buffer: vec![Complex64::default(); 2 * n],
            scratch,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Transforms `column` (length `n`) in place. `column[0]` is treated as
    /// zero on input and set to zero on output.
    pub fn apply(&mut self, column: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(column.len(), n);
        let zero = Complex64::default();
        self.buffer[0] = zero;
        self.buffer[n] = zero;
        for (m, &v) in column.iter().enumerate().skip(1) {
            self.buffer[m] = v;
            self.buffer[2 * n - m] = -v;
        }
        self.fft
            .process_with_scratch(&mut self.buffer, &mut self.scratch);
        // FFT of the odd extension is -2i·S, so S = (i/2)·Y.
        let half_i = Complex64::new(0.0, 0.5);
        column[0] = zero;
        for (c, &y) in column.iter_mut().zip(&self.buffer).skip(1) {
            *c = half_i * y;
        }
    }
}
