//! ASCII elevation grid.
//!
//! ```text
//! ncols 3
//! nrows 2
//! xllcorner 0
//! yllcorner 0
//! cellsize 30
//! nodata_value -9999
//! 12 14 15
//! 11 12 13
//! ```
//!
//! `xllcorner`/`yllcorner` locate the lower-left corner of the grid in local
//! meters. Rows run north to south. `nodata_value` is optional.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::parse_real;
use crate::pseudo3d::ElevationGrid;

pub fn read_elevation_grid(text: &str) -> Result<ElevationGrid> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let mut ncols = None;
    let mut nrows = None;
    let mut xll = None;
    let mut yll = None;
    let mut cell = None;
    let mut nodata = None;
    while let Some(&(n, line)) = lines.peek() {
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default().to_ascii_lowercase();
        if key.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && parse_real(&key).is_none() {
            let value = parts
                .next()
                .ok_or_else(|| Error::parse(n, key.clone(), "missing value"))?;
            if parts.next().is_some() {
                return Err(Error::parse(n, key, "expected one value"));
            }
            let real = || {
                parse_real(value)
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(n, key.clone(), format!("`{value}` is not a number")))
            };
            let count = || {
                value
                    .parse::<usize>()
                    .map_err(|_| Error::parse(n, key.clone(), format!("`{value}` is not a count")))
            };
            match key.as_str() {
                "ncols" => ncols = Some(count()?),
                "nrows" => nrows = Some(count()?),
                "xllcorner" => xll = Some(real()?),
                "yllcorner" => yll = Some(real()?),
                "cellsize" => cell = Some(real()?),
                "nodata_value" => nodata = Some(real()?),
                _ => return Err(Error::parse(n, key, "unknown header key")),
            }
            lines.next();
        } else {
            break;
        }
    }
    let missing = |k: &str| Error::parse(1, k, "missing header key");
    let n_cols = ncols.ok_or_else(|| missing("ncols"))?;
    let n_rows = nrows.ok_or_else(|| missing("nrows"))?;
    let origin_x = xll.ok_or_else(|| missing("xllcorner"))?;
    let origin_y = yll.ok_or_else(|| missing("yllcorner"))?;
    let cell_size = cell.ok_or_else(|| missing("cellsize"))?;

    let mut heights = Vec::new();
    let mut row = 0usize;
    for (n, line) in lines {
        if row == n_rows {
            return Err(Error::parse(n, format!("row {row}"), format!("more than {n_rows} rows")));
        }
        let before = heights.len();
        for token in line.split_whitespace() {
            let v = parse_real(token).filter(|v| v.is_finite()).ok_or_else(|| {
                Error::parse(n, format!("row {row}"), format!("`{token}` is not a finite number"))
            })?;
            heights.push(v);
        }
        let got = heights.len() - before;
        if got != n_cols {
            return Err(Error::parse(
                n,
                format!("row {row}"),
                format!("expected {n_cols} values, found {got}"),
            ));
        }
        row += 1;
    }
    if row != n_rows {
        return Err(Error::parse(
            text.lines().count() + 1,
            format!("row {row}"),
            format!("expected {n_rows} rows, found {row}"),
        ));
    }
    ElevationGrid::new(origin_x, origin_y, cell_size, n_cols, n_rows, heights, nodata)
}

pub fn write_elevation_grid(grid: &ElevationGrid) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ncols {}", grid.n_cols);
    let _ = writeln!(out, "nrows {}", grid.n_rows);
    let _ = writeln!(out, "xllcorner {}", grid.origin_x);
    let _ = writeln!(out, "yllcorner {}", grid.origin_y);
    let _ = writeln!(out, "cellsize {}", grid.cell_size);
    if let Some(nd) = grid.nodata {
        let _ = writeln!(out, "nodata_value {nd}");
    }
    for row in grid.heights.chunks(grid.n_cols.max(1)) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
