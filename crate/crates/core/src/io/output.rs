use std::fmt::Write as _;

use crate::domain::PpfResult;

/// Banner line opening every output file.
pub const OUTPUT_BANNER: &str = "********Output Loss and Prop. Factor Values*******";

/// Loss and propagation factor per range block, two decimals throughout.
///
/// ```text
/// ********Output Loss and Prop. Factor Values*******
///
/// range in km = 0.05
/// Height(m) Loss(dB) PFac(dB)
/// 20.00 67.80 -2.20
/// ```
pub fn write_output_file(result: &PpfResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{OUTPUT_BANNER}");
    for (i, &r) in result.ranges.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "range in km = {}", fixed2(r / 1000.0));
        let _ = writeln!(out, "Height(m) Loss(dB) PFac(dB)");
        for (j, &h) in result.heights.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} {} {}",
                fixed2(h),
                fixed2(result.loss_db[i][j]),
                fixed2(result.amplitude_db[i][j])
            );
        }
    }
    out
}

/// `{:.2}` without a negative zero.
fn fixed2(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}
