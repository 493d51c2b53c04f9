//! The line-ordered scenario input file.
//!
//! Every value line reads `value(s) :comment`. Values are separated by
//! blanks or commas; text after the first `:` is ignored. Lines without a
//! `:` that do not start with a number are treated as wrapped comment text.
//!
//! Ranges of the output window, refractivity profiles, ground compositions
//! and wind entries are written in kilometers; terrain points are in meters.

use std::fmt::Write as _;

use crate::domain::{OutputWindow, Polarization, SourceSpec};
use crate::environment::{
    AntennaKind, AntennaPattern, Atmosphere, GroundComposition, RefractivityField,
    RefractivityProfile, TerrainProfile,
};
use crate::error::{Error, Result};
use crate::io::{fmt_km, fmt_real, parse_km, parse_real};
use crate::scenario::{PeOverrides, Scenario};

const ANTENNA_TYPES: &str = "1=OMNI,2=GAUSS,3=SINC(X),4=COSEC2,5=HTFIND,6=USRHTFIND,7=USRDEF";

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            last = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (value, has_colon) = match trimmed.split_once(':') {
                Some((v, _)) => (v, true),
                None => (trimmed, false),
            };
            let tokens: Vec<&str> = value
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            let starts_numeric = tokens
                .first()
                .is_some_and(|t| *t == "-" || parse_real(t).is_some());
            if !has_colon && !starts_numeric {
                continue;
            }
            lines.push(Line { number: i + 1, tokens });
        }
        Reader { lines, pos: 0, last }
    }

    fn next(&mut self, field: &str) -> Result<&Line<'a>> {
        match self.lines.get(self.pos) {
            Some(line) => {
                self.pos += 1;
                Ok(line)
            }
            None => Err(Error::parse(self.last + 1, field, "missing value (unexpected end of file)")),
        }
    }

    fn tokens(&mut self, field: &str, n: usize) -> Result<(usize, Vec<&'a str>)> {
        let line = self.next(field)?;
        if line.tokens.len() != n {
            return Err(Error::parse(
                line.number,
                field,
                format!("expected {n} value(s), found {}", line.tokens.len()),
            ));
        }
        Ok((line.number, line.tokens.clone()))
    }

    fn real(&mut self, field: &str) -> Result<f64> {
        let (n, t) = self.tokens(field, 1)?;
        real_at(n, field, t[0])
    }

    fn km(&mut self, field: &str) -> Result<f64> {
        let (n, t) = self.tokens(field, 1)?;
        km_at(n, field, t[0])
    }

    fn int(&mut self, field: &str) -> Result<(usize, i64)> {
        let (n, t) = self.tokens(field, 1)?;
        Ok((n, int_at(n, field, t[0])?))
    }

    fn count(&mut self, field: &str) -> Result<usize> {
        let (n, v) = self.int(field)?;
        usize::try_from(v).map_err(|_| Error::parse(n, field, "count must be non-negative"))
    }

    fn pair(&mut self, field: &str) -> Result<(usize, &'a str, &'a str)> {
        let (n, t) = self.tokens(field, 2)?;
        Ok((n, t[0], t[1]))
    }

    fn real_pairs(&mut self, count: usize, field: &str) -> Result<Vec<(f64, f64)>> {
        (0..count)
            .map(|_| {
                let (n, a, b) = self.pair(field)?;
                Ok((real_at(n, field, a)?, real_at(n, field, b)?))
            })
            .collect()
    }

    fn remaining(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }
}

fn real_at(line: usize, field: &str, token: &str) -> Result<f64> {
    parse_real(token).ok_or_else(|| Error::parse(line, field, format!("`{token}` is not a number")))
}

fn km_at(line: usize, field: &str, token: &str) -> Result<f64> {
    parse_km(token).ok_or_else(|| Error::parse(line, field, format!("`{token}` is not a number")))
}

fn int_at(line: usize, field: &str, token: &str) -> Result<i64> {
    if let Ok(v) = token.parse::<i64>() {
        return Ok(v);
    }
    match parse_real(token) {
        Some(v) if v.fract() == 0.0 && v.abs() < 9e15 => Ok(v as i64),
        _ => Err(Error::parse(line, field, format!("`{token}` is not an integer"))),
    }
}

fn optional_at(line: usize, field: &str, token: &str) -> Result<Option<f64>> {
    if token == "-" {
        Ok(None)
    } else {
        real_at(line, field, token).map(Some)
    }
}

/// Reads a scenario and validates it.
pub fn parse_input_file(text: &str) -> Result<Scenario> {
    let mut r = Reader::new(text);
    let frequency_mhz = r.real("frequency")?;
    let antenna_height = r.real("antenna height")?;
    let (type_line, type_code) = r.int("antenna type")?;
    let (pol_line, pol_code) = r.int("polarization")?;
    let polarization = Polarization::from_code(pol_code).ok_or_else(|| {
        Error::parse(pol_line, "polarization", format!("unknown code {pol_code} (0=HOR,1=VER)"))
    })?;
    let beam_width = r.real("beam width")?;
    let elevation = r.real("antenna elevation angle")?;
    let kind = match type_code {
        1 => AntennaKind::Omni,
        2 => AntennaKind::Gauss,
        3 => AntennaKind::SincX,
        4 => AntennaKind::Cosec2,
        5 => {
            return Err(Error::Unsupported {
                line: type_line,
                what: "antenna type 5 HTFIND".into(),
            })
        }
        6 => {
            return Err(Error::Unsupported {
                line: type_line,
                what: "antenna type 6 USRHTFIND".into(),
            })
        }
        7 => {
            let n = r.count("number of user-defined pattern points")?;
            AntennaKind::UserDefined(r.real_pairs(n, "user-defined pattern point")?)
        }
        other => {
            return Err(Error::parse(
                type_line,
                "antenna type",
                format!("unknown code {other} ({ANTENNA_TYPES})"),
            ))
        }
    };
    let pattern = AntennaPattern {
        kind,
        beam_width,
        elevation,
    };
    let n_cut = r.count("number of cut-back angles")?;
    let cut_back = r.real_pairs(n_cut, "cut-back angle and factor")?;

    let min_height = r.real("minimum output height")?;
    let max_height = r.real("maximum output height")?;
    let max_range = r.km("maximum output range")?;
    let n_height_points = r.count("number of output height points")?;
    let n_range_points = r.count("number of output range points")?;
    let (_, extrapolation_flag) = r.int("extrapolation flag")?;

    let surface_humidity = r.real("surface absolute humidity")?;
    let surface_temperature = r.real("surface air temperature")?;
    let gaseous_absorption = r.real("gaseous absorption")?;
    let n_wind = r.count("number of wind speeds")?;
    let mut wind_speeds = Vec::new();
    for _ in 0..n_wind {
        let (n, a, b) = r.pair("wind range and speed")?;
        wind_speeds.push((
            real_at(n, "wind range and speed", a)?,
            real_at(n, "wind range and speed", b)?,
        ));
    }

    let n_profiles = r.count("number of refractivity profiles")?;
    let n_levels = r.count("number of levels in refractivity profiles")?;
    let mut profiles = Vec::new();
    for _ in 0..n_profiles {
        let start = r.km("refractivity profile range")?;
        let levels = r.real_pairs(n_levels, "refractivity height and M-unit value")?;
        profiles.push(RefractivityProfile::new(start, levels));
    }

    let n_ground = r.count("number of ground composition types")?;
    let mut compositions = Vec::new();
    for _ in 0..n_ground {
        let field = "ground composition";
        let (n, t) = r.tokens(field, 4)?;
        compositions.push(GroundComposition {
            start_range: km_at(n, field, t[0])?,
            ground_type: int_at(n, field, t[1])?,
            permittivity: real_at(n, field, t[2])?,
            conductivity: real_at(n, field, t[3])?,
        });
    }

    let n_terrain = r.count("number of terrain range/height points")?;
    let points = r.real_pairs(n_terrain, "terrain range and height")?;

    let mut pe = PeOverrides::default();
    if r.remaining().is_some() {
        let field = "PE overrides";
        let (n, t) = r.tokens(field, 4)?;
        pe.transform_size = match optional_at(n, field, t[0])? {
            Some(v) if v >= 1.0 && v.fract() == 0.0 && v < 1e9 => Some(v as usize),
            Some(_) => return Err(Error::parse(n, field, "transform size must be a positive integer")),
            None => None,
        };
        pe.z_max = optional_at(n, field, t[1])?;
        pe.range_step = optional_at(n, field, t[2])?;
        pe.absorber_fraction = optional_at(n, field, t[3])?;
    }
    if let Some(extra) = r.remaining() {
        return Err(Error::parse(extra.number, "end of file", "unexpected trailing values"));
    }

    let scenario = Scenario {
        source: SourceSpec {
            frequency_mhz,
            antenna_height,
            polarization,
            pattern,
        },
        cut_back,
        output: OutputWindow {
            min_height,
            max_height,
            max_range,
            n_height_points,
            n_range_points,
        },
        extrapolation_flag,
        atmosphere: Atmosphere {
            surface_humidity,
            surface_temperature,
            gaseous_absorption,
            wind_speeds,
        },
        refractivity: RefractivityField { profiles },
        terrain: TerrainProfile {
            points,
            compositions,
        },
        pe,
    };
    scenario.validate()?;
    Ok(scenario)
}

/// Canonical text of a scenario.
pub fn write_input_file(s: &Scenario) -> String {
    let mut out = String::new();
    let mut line = |value: String, comment: &str| {
        let _ = writeln!(out, "{value} :{comment}");
    };
    let src = &s.source;
    line(fmt_real(src.frequency_mhz), "Frequency in MHz");
    line(fmt_real(src.antenna_height), "Antenna height in m");
    line(src.pattern.kind.code().to_string(), &format!("Antenna type ({ANTENNA_TYPES})"));
    line(src.polarization.code().to_string(), "Polarization (0=HOR,1=VER)");
    line(
        fmt_real(src.pattern.beam_width),
        "Beam width in deg (this value is ignored for OMNI and USRDEF antenna)",
    );
    line(
        fmt_real(src.pattern.elevation),
        "Antenna elevation angle in deg (this value is ignored for OMNI and USRDEF antenna)",
    );
    if let AntennaKind::UserDefined(table) = &src.pattern.kind {
        line(table.len().to_string(), "Number of user-defined pattern points");
        for (i, &(a, f)) in table.iter().enumerate() {
            line(
                format!("{} {}", fmt_real(a), fmt_real(f)),
                &format!("Angle in deg & normalized pattern factor, point {}", i + 1),
            );
        }
    }
    line(
        s.cut_back.len().to_string(),
        "Number of cut-back angles and factors (used for specific height-finder antenna)",
    );
    for (i, &(a, f)) in s.cut_back.iter().enumerate() {
        line(
            format!("{} {}", fmt_real(a), fmt_real(f)),
            &format!("Cut-back angle in deg & factor, pair {}", i + 1),
        );
    }
    let w = &s.output;
    line(fmt_real(w.min_height), "Minimum output height in m");
    line(fmt_real(w.max_height), "Maximum output height in m");
    line(fmt_km(w.max_range), "Maximum output range in km");
    line(w.n_height_points.to_string(), "Number of output height points");
    line(w.n_range_points.to_string(), "Number of output range points");
    line(s.extrapolation_flag.to_string(), "Extrapolation flag");
    let a = &s.atmosphere;
    line(fmt_real(a.surface_humidity), " Surface absolute humidity in g/m3");
    line(fmt_real(a.surface_temperature), " Surface air temperature in degrees");
    line(fmt_real(a.gaseous_absorption), " Gaseous absorption attenuation rate in dB/km");
    line(a.wind_speeds.len().to_string(), " Number of wind speeds/ranges specified");
    for (i, &(r, v)) in a.wind_speeds.iter().enumerate() {
        line(
            format!("{} {}", fmt_real(r), fmt_real(v)),
            &format!(" Range in km & wind speed in m/s, entry {}", i + 1),
        );
    }
    let profiles = &s.refractivity.profiles;
    line(profiles.len().to_string(), " Number of refractivity profiles");
    let n_levels = profiles.first().map_or(0, |p| p.levels.len());
    line(n_levels.to_string(), " Number of levels in refractivity profiles");
    for (i, p) in profiles.iter().enumerate() {
        let label = if i == 0 {
            " Range of first refractivity profile in km".to_string()
        } else {
            format!(" Range of refractivity profile {} in km", i + 1)
        };
        line(fmt_km(p.start_range), &label);
        for (j, &(h, m)) in p.levels.iter().enumerate() {
            line(
                format!("{} {}", fmt_real(h), fmt_real(m)),
                &format!(" Height & M-unit value of ref. profile {}, level {}", i + 1, j + 1),
            );
        }
    }
    let ground = &s.terrain.compositions;
    line(ground.len().to_string(), " Number of ground composition types");
    for g in ground {
        line(
            format!(
                "{}, {}, {}, {}",
                fmt_km(g.start_range),
                g.ground_type,
                fmt_real(g.permittivity),
                fmt_real(g.conductivity)
            ),
            " Range (km), ground type (integer), permittivity, conductivity",
        );
    }
    let points = &s.terrain.points;
    line(points.len().to_string(), " Number of terrain range/height points");
    for (i, &(r, h)) in points.iter().enumerate() {
        line(
            format!("{} {}", fmt_real(r), fmt_real(h)),
            &format!(" Terrain range in m & height in m, point {}", i + 1),
        );
    }
    if !s.pe.is_empty() {
        let opt = |v: Option<f64>| v.map_or("-".to_string(), fmt_real);
        line(
            format!(
                "{} {} {} {}",
                s.pe.transform_size.map_or("-".to_string(), |n| n.to_string()),
                opt(s.pe.z_max),
                opt(s.pe.range_step),
                opt(s.pe.absorber_fraction)
            ),
            " PE transform size, domain height in m, range step in m, absorber fraction (- = automatic)",
        );
    }
    out
}
