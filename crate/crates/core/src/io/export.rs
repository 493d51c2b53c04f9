//! Height-indexed complex field columns for external RCS tools.
//!
//! ```text
//! 1 1011
//! -67 ( 0.000000000000 , 0.000000000000 )
//! -66.9 ( 0.000000000000 , 0.000000000000 )
//! ```
//!
//! The first line holds an opaque profile index and the sample count. Heights
//! are relative to the nacelle and written in their shortest form; field
//! components carry twelve decimals.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::domain::ComplexSample;
use crate::error::{Error, Result};
use crate::io::parse_real;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexFieldExport {
    /// Carried verbatim in the header.
    pub profile_index: i64,
    /// Nacelle-relative heights, m, ascending at a uniform step.
    pub heights: Vec<f64>,
    pub values: Vec<ComplexSample>,
}

pub fn write_complex_field_export(export: &ComplexFieldExport) -> Result<String> {
    let ComplexFieldExport {
        profile_index,
        heights,
        values,
    } = export;
    if heights.len() != values.len() {
        return Err(Error::Format(format!(
            "{} heights but {} field samples",
            heights.len(),
            values.len()
        )));
    }
    if let [first, second, ..] = heights.as_slice() {
        let step = second - first;
        if !(step > 0.0) {
            return Err(Error::Format("heights must be ascending".into()));
        }
        let tol = 1e-9 * step.abs().max(1.0);
        if let Some(w) = heights.windows(2).find(|w| ((w[1] - w[0]) - step).abs() > tol) {
            return Err(Error::Format(format!(
                "non-uniform height step: {} m between {} and {}, expected {step} m",
                w[1] - w[0],
                w[0],
                w[1]
            )));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{profile_index} {}", heights.len());
    for (h, v) in heights.iter().zip(values) {
        let _ = writeln!(out, "{} ( {} , {} )", fmt_height(*h), fixed12(v.re), fixed12(v.im));
    }
    Ok(out)
}

pub fn parse_complex_field_export(text: &str) -> Result<ComplexFieldExport> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "header", "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (profile_index, count) = match tokens.as_slice() {
        [a, b] => (
            a.parse::<i64>()
                .map_err(|_| Error::parse(n, "profile index", format!("`{a}` is not an integer")))?,
            b.parse::<usize>()
                .map_err(|_| Error::parse(n, "sample count", format!("`{b}` is not a count")))?,
        ),
        _ => return Err(Error::parse(n, "header", "expected `<profile index> <count>`")),
    };
    let mut heights = Vec::new();
    let mut values = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | ','))
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 3 || !line.contains('(') || !line.ends_with(')') {
            return Err(Error::parse(n, "sample", "expected `height ( re , im )`"));
        }
        let num = |t: &str, field: &str| {
            parse_real(t).ok_or_else(|| Error::parse(n, field, format!("`{t}` is not a number")))
        };
        heights.push(num(tokens[0], "height")?);
        values.push(Complex64::new(num(tokens[1], "real part")?, num(tokens[2], "imaginary part")?));
    }
    if values.len() != count {
        return Err(Error::parse(
            n,
            "sample count",
            format!("header announces {count} samples, file holds {}", values.len()),
        ));
    }
    Ok(ComplexFieldExport {
        profile_index,
        heights,
        values,
    })
}

fn fmt_height(h: f64) -> String {
    let s = format!("{h:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn fixed12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".to_string()
    } else {
        s
    }
}
