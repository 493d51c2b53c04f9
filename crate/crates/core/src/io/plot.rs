use std::fmt::Write as _;

/// Comma-separated plot grid: a header row `height_m,<range>,...` followed
/// by one row per height. `values` is indexed `[range][height]`; ranges and
/// heights are in meters and values use six decimals.
pub fn write_plot_grid(ranges: &[f64], heights: &[f64], values: &[Vec<f64>]) -> String {
    let mut out = String::from("height_m");
    for r in ranges {
        let _ = write!(out, ",{r}");
    }
    out.push('\n');
    for (j, h) in heights.iter().enumerate() {
        let _ = write!(out, "{h}");
        for column in values {
            let v = column[j];
            let s = format!("{v:.6}");
            out.push(',');
            out.push_str(if s == "-0.000000" { "0.000000" } else { &s });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let text = write_plot_grid(&[100.0, 200.0], &[1.0, 2.5], &[vec![0.5, -1.0], vec![2.0, -0.0]]);
        assert_eq!(
            text,
            "height_m,100,200\n1,0.500000,2.000000\n2.5,-1.000000,0.000000\n"
        );
    }
}
