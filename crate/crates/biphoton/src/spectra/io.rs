//! The JSA text interchange format.
//!
//! ```text
//! # comment lines start with '#'
//! axis_s <start> <step> <count>
//! axis_i <start> <step> <count>
//! center_s <value>
//! center_i <value>
//! <re> <im>          count_s * count_i data lines, row-major
//! ```
//!
//! Numbers are decimal text with at least 12 significant digits; the writer
//! emits 17, which round-trips f64 exactly.

use super::JointSpectralAmplitude;
use crate::numerics::{Axis, Grid2};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

/// A JSA loaded from a file, with the normalization factor that was applied
/// to the raw samples.
#[derive(Debug, Clone)]
pub struct LoadedJsa {
    pub jsa: JointSpectralAmplitude,
    pub renormalization: f64,
}

pub fn load_jsa(path: &Path) -> Result<LoadedJsa> {
    read_jsa(BufReader::new(std::fs::File::open(path)?))
}

pub fn save_jsa(jsa: &JointSpectralAmplitude, path: &Path) -> Result<()> {
    write_jsa(jsa, &mut std::fs::File::create(path)?)
}

pub fn write_jsa(jsa: &JointSpectralAmplitude, w: &mut impl Write) -> Result<()> {
    let ax_s = jsa.axis_s();
    let ax_i = jsa.axis_i();
    writeln!(w, "# biphoton joint spectral amplitude")?;
    writeln!(
        w,
        "axis_s {:.16e} {:.16e} {}",
        ax_s.start(),
        ax_s.step(),
        ax_s.count()
    )?;
    writeln!(
        w,
        "axis_i {:.16e} {:.16e} {}",
        ax_i.start(),
        ax_i.step(),
        ax_i.count()
    )?;
    writeln!(w, "center_s {:.16e}", jsa.center_s())?;
    writeln!(w, "center_i {:.16e}", jsa.center_i())?;
    for v in jsa.values() {
        writeln!(w, "{:.16e} {:.16e}", v.re, v.im)?;
    }
    Ok(())
}

pub fn read_jsa(r: impl Read) -> Result<LoadedJsa> {
    let reader = BufReader::new(r);
    let mut axis_s: Option<Axis> = None;
    let mut axis_i: Option<Axis> = None;
    let mut center_s: Option<f64> = None;
    let mut center_i: Option<f64> = None;
    let mut data: Vec<Complex64> = Vec::new();
    let mut header_done = false;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !header_done {
            match fields[0] {
                "axis_s" | "axis_i" => {
                    let ax = parse_axis(&fields, lineno)?;
                    let slot = if fields[0] == "axis_s" {
                        &mut axis_s
                    } else {
                        &mut axis_i
                    };
                    if slot.replace(ax).is_some() {
                        return Err(Error::Format(format!(
                            "line {}: duplicate {} header",
                            lineno + 1,
                            fields[0]
                        )));
                    }
                    continue;
                }
                "center_s" | "center_i" => {
                    let v = parse_center(&fields, lineno)?;
                    let slot = if fields[0] == "center_s" {
                        &mut center_s
                    } else {
                        &mut center_i
                    };
                    if slot.replace(v).is_some() {
                        return Err(Error::Format(format!(
                            "line {}: duplicate {} header",
                            lineno + 1,
                            fields[0]
                        )));
                    }
                    continue;
                }
                _ => {
                    if axis_s.is_none() || axis_i.is_none() || center_s.is_none() || center_i.is_none() {
                        return Err(Error::Format(format!(
                            "line {}: expected header line, got '{line}'",
                            lineno + 1
                        )));
                    }
                    header_done = true;
                }
            }
        }
        if fields.len() != 2 {
            return Err(Error::Format(format!(
                "line {}: expected 're im', got '{line}'",
                lineno + 1
            )));
        }
        let re: f64 = fields[0].parse().map_err(|_| {
            Error::Format(format!("line {}: bad real part '{}'", lineno + 1, fields[0]))
        })?;
        let im: f64 = fields[1].parse().map_err(|_| {
            Error::Format(format!(
                "line {}: bad imaginary part '{}'",
                lineno + 1,
                fields[1]
            ))
        })?;
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Format(format!(
                "line {}: non-finite sample",
                lineno + 1
            )));
        }
        data.push(Complex64::new(re, im));
    }

    let axis_s = axis_s.ok_or_else(|| Error::Format("missing axis_s header".into()))?;
    let axis_i = axis_i.ok_or_else(|| Error::Format("missing axis_i header".into()))?;
    let center_s = center_s.ok_or_else(|| Error::Format("missing center_s header".into()))?;
    let center_i = center_i.ok_or_else(|| Error::Format("missing center_i header".into()))?;

    let expected = axis_s.count() * axis_i.count();
    if data.len() != expected {
        return Err(Error::Format(format!(
            "expected {} data lines ({} x {}), found {}",
            expected,
            axis_s.count(),
            axis_i.count(),
            data.len()
        )));
    }
    let values = Array2::from_shape_vec((axis_s.count(), axis_i.count()), data)
        .expect("length checked above");
    let raw = Grid2::new(axis_s, axis_i, values)?;
    let raw_energy = raw.energy();
    if raw_energy <= 0.0 {
        return Err(Error::DegenerateAmplitude);
    }
    let jsa = JointSpectralAmplitude::new(raw, center_s, center_i)?;
    Ok(LoadedJsa {
        jsa,
        renormalization: 1.0 / raw_energy.sqrt(),
    })
}

fn parse_axis(fields: &[&str], lineno: usize) -> Result<Axis> {
    if fields.len() != 4 {
        return Err(Error::Format(format!(
            "line {}: '{}' expects start step count",
            lineno + 1,
            fields[0]
        )));
    }
    let start: f64 = fields[1]
        .parse()
        .map_err(|_| Error::Format(format!("line {}: bad axis start", lineno + 1)))?;
    let step: f64 = fields[2]
        .parse()
        .map_err(|_| Error::Format(format!("line {}: bad axis step", lineno + 1)))?;
    let count: usize = fields[3]
        .parse()
        .map_err(|_| Error::Format(format!("line {}: bad axis count", lineno + 1)))?;
    Axis::new(start, step, count)
}

fn parse_center(fields: &[&str], lineno: usize) -> Result<f64> {
    if fields.len() != 2 {
        return Err(Error::Format(format!(
            "line {}: '{}' expects a single value",
            lineno + 1,
            fields[0]
        )));
    }
    fields[1]
        .parse()
        .map_err(|_| Error::Format(format!("line {}: bad center value", lineno + 1)))
}
