//! Text formats: the scenario input file, the loss/propagation-factor output
//! file, the complex-field export, the ASCII elevation grid and plot grids.
//!
//! Writers are canonical: feeding a writer's output back through the matching
//! reader and writing again reproduces the same bytes.

mod export;
mod grid;
mod input;
mod output;
mod plot;

pub use export::{parse_complex_field_export, write_complex_field_export, ComplexFieldExport};
pub use grid::{read_elevation_grid, write_elevation_grid};
pub use input::{parse_input_file, write_input_file};
pub use output::write_output_file;
pub use plot::write_plot_grid;

/// Shortest round-trip decimal, with a trailing `.` on integral values
/// (`2800.`, `0.5`, `-3.`).
pub(crate) fn fmt_real(x: f64) -> String {
    let s = format!("{x}");
    if x.is_finite() && !s.contains('.') {
        s + "."
    } else {
        s
    }
}

/// Writes a length in meters as kilometers by moving the decimal point of
/// its shortest representation, so the text parses back to the same bits.
pub(crate) fn fmt_km(meters: f64) -> String {
    if !meters.is_finite() {
        return format!("{meters}");
    }
    let s = format!("{meters}");
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", s.as_str()),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let mut int = int.to_string();
    while int.len() < 4 {
        int.insert(0, '0');
    }
    let split = int.len() - 3;
    let new_int = int[..split].trim_start_matches('0');
    let new_frac = format!("{}{}", &int[split..], frac);
    let new_frac = new_frac.trim_end_matches('0');
    let new_int = if new_int.is_empty() { "0" } else { new_int };
    format!("{sign}{new_int}.{new_frac}")
}

/// Parses a kilometer value written in decimal and returns meters, rounding
/// once from the decimal text rather than multiplying a rounded value.
pub(crate) fn parse_km(text: &str) -> Option<f64> {
    let t = text.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let lower = mantissa.to_ascii_lowercase();
    if lower.contains("inf") || lower.contains("nan") {
        return None;
    }
    let mantissa = if mantissa.ends_with('.') {
        format!("{mantissa}0")
    } else {
        mantissa.to_string()
    };
    mantissa.parse::<f64>().ok()?;
    format!("{mantissa}e{}", exp + 3).parse().ok()
}

/// Parses a real in the relaxed style of the input format (`2800.`, `.5`).
pub(crate) fn parse_real(text: &str) -> Option<f64> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    t.parse::<f64>()
        .ok()
        .or_else(|| format!("{t}0").parse().ok())
        .filter(|v: &f64| !v.is_nan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reals() {
        assert_eq!(fmt_real(2800.0), "2800.");
        assert_eq!(fmt_real(209.2), "209.2");
        assert_eq!(fmt_real(-3.0), "-3.");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(parse_real("2800."), Some(2800.0));
        assert_eq!(parse_real(".5"), Some(0.5));
        assert_eq!(parse_real("inf"), Some(f64::INFINITY));
        assert_eq!(parse_real("x"), None);
        assert_eq!(parse_real("NaN"), None);
    }

    #[test]
    fn kilometers() {
        assert_eq!(fmt_km(1000.0), "1.");
        assert_eq!(fmt_km(50.0), "0.05");
        assert_eq!(fmt_km(0.0), "0.");
        assert_eq!(fmt_km(32262.0), "32.262");
        assert_eq!(fmt_km(-1500.25), "-1.50025");
        assert_eq!(parse_km("0.05"), Some(50.0));
        assert_eq!(parse_km("1."), Some(1000.0));
        assert_eq!(parse_km("12.345"), Some(12345.0));
        assert_eq!(parse_km("1.2e-3"), Some(1.2));
        assert_eq!(parse_km("abc"), None);
    }

    proptest! {
        #[test]
        fn km_text_round_trips(m in -1e7f64..1e7) {
            prop_assert_eq!(parse_km(&fmt_km(m)), Some(m));
        }

        #[test]
        fn real_text_round_trips(x in proptest::num::f64::NORMAL) {
            prop_assert_eq!(parse_real(&fmt_real(x)), Some(x));
        }
    }
}
