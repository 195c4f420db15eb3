//! Interference patterns: a 1D scan of coincidence probability against a
//! delay or phase variable, with the derived baseline and visibility.

use crate::numerics::Axis;
use crate::{Error, Result};
use std::fmt;
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Hom,
    Noon,
    FransonCoincidence,
    FransonSingles,
    Fourfold,
    FockScan,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternKind::Hom => "hom",
            PatternKind::Noon => "noon",
            PatternKind::FransonCoincidence => "franson_coincidence",
            PatternKind::FransonSingles => "franson_singles",
            PatternKind::Fourfold => "fourfold",
            PatternKind::FockScan => "fock_scan",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PatternKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hom" => PatternKind::Hom,
            "noon" => PatternKind::Noon,
            "franson_coincidence" => PatternKind::FransonCoincidence,
            "franson_singles" => PatternKind::FransonSingles,
            "fourfold" => PatternKind::Fourfold,
            "fock_scan" => PatternKind::FockScan,
            other => return Err(Error::Format(format!("unknown pattern kind '{other}'"))),
        })
    }
}

/// Probabilities over a scan axis (delay in seconds, phase in radians, or
/// indistinguishability for Fock scans). Values always lie in [0, 1].
///
/// The baseline is the large-delay asymptote estimate: the mean of the two
/// scan edges for dip-like kinds (HOM, four-fold), the scan mean for
/// oscillatory kinds. Visibility is (max - min) / (max + min) over the scan
/// window, computed after the scan, with no fitting.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferencePattern {
    axis: Axis,
    values: Vec<f64>,
    kind: PatternKind,
    baseline: f64,
    visibility: f64,
}

impl InterferencePattern {
    pub(crate) fn from_values(axis: Axis, mut values: Vec<f64>, kind: PatternKind) -> Result<Self> {
        if values.len() != axis.count() {
            return Err(Error::InvalidParameter(format!(
                "pattern has {} samples for an axis of {}",
                values.len(),
                axis.count()
            )));
        }
        for v in &mut values {
            if !v.is_finite() || *v < -1e-9 || *v > 1.0 + 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "pattern value {v} is not a probability"
                )));
            }
            *v = v.clamp(0.0, 1.0);
        }
        let baseline = match kind {
            PatternKind::Hom | PatternKind::Fourfold => {
                0.5 * (values[0] + values[values.len() - 1])
            }
            _ => values.iter().sum::<f64>() / values.len() as f64,
        };
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        let visibility = if max + min > 0.0 {
            (max - min) / (max + min)
        } else {
            0.0
        };
        Ok(Self {
            axis,
            values,
            kind,
            baseline,
            visibility,
        })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }

    /// Value at the sample closest to `x` on the axis.
    pub fn value_at(&self, x: f64) -> f64 {
        let i = ((x - self.axis.start()) / self.axis.step()).round();
        let i = (i.max(0.0) as usize).min(self.values.len() - 1);
        self.values[i]
    }

    /// Minimum value and its axis position.
    pub fn minimum(&self) -> (f64, f64) {
        let (i, v) = self
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("values are finite"))
            .expect("patterns are non-empty");
        (self.axis.value(i), *v)
    }

    /// Full width at half depth/height of the central feature relative to
    /// the baseline. Measures the |value - baseline| envelope by scanning
    /// outward from the extremum until it first drops below half.
    pub fn central_feature_fwhm(&self) -> f64 {
        let dev: Vec<f64> = self
            .values
            .iter()
            .map(|v| (v - self.baseline).abs())
            .collect();
        let (peak_idx, peak) = dev
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
            .expect("non-empty");
        let half = peak / 2.0;
        let mut right = self.axis.last();
        for i in peak_idx..dev.len() {
            if dev[i] < half {
                // Linear interpolation between i-1 and i.
                let f = (dev[i - 1] - half) / (dev[i - 1] - dev[i]);
                right = self.axis.value(i - 1) + f * self.axis.step();
                break;
            }
        }
        let mut left = self.axis.start();
        for i in (0..=peak_idx).rev() {
            if dev[i] < half {
                let f = (dev[i + 1] - half) / (dev[i + 1] - dev[i]);
                left = self.axis.value(i + 1) - f * self.axis.step();
                break;
            }
        }
        right - left
    }

    /// CSV form: `# kind=<kind> baseline=<v> visibility=<v>`, a
    /// `delay,probability` column header, then one row per sample.
    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "# kind={} baseline={:.15e} visibility={:.15e}",
            self.kind, self.baseline, self.visibility
        )?;
        writeln!(w, "delay,probability")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{:.15e},{:.15e}", self.axis.value(i), v)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    /// Parse a pattern CSV produced by [`Self::write_csv`]. The stored
    /// baseline/visibility must match the values recomputed from the rows.
    pub fn read_csv(r: impl BufRead) -> Result<Self> {
        let mut kind: Option<PatternKind> = None;
        let mut baseline: Option<f64> = None;
        let mut visibility: Option<f64> = None;
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for line in r.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line == "delay,probability" {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                for field in rest.split_whitespace() {
                    if let Some((k, v)) = field.split_once('=') {
                        match k {
                            "kind" => kind = Some(v.parse()?),
                            "baseline" => {
                                baseline = Some(v.parse().map_err(|_| {
                                    Error::Format(format!("bad baseline '{v}'"))
                                })?)
                            }
                            "visibility" => {
                                visibility = Some(v.parse().map_err(|_| {
                                    Error::Format(format!("bad visibility '{v}'"))
                                })?)
                            }
                            _ => {}
                        }
                    }
                }
                continue;
            }
            let (x, y) = line
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("bad pattern row '{line}'")))?;
            xs.push(
                x.trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("bad delay '{x}'")))?,
            );
            ys.push(
                y.trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("bad probability '{y}'")))?,
            );
        }
        let kind = kind.ok_or_else(|| Error::Format("missing kind header".into()))?;
        if xs.len() < 2 {
            return Err(Error::Format("pattern needs at least two rows".into()));
        }
        let step = xs[1] - xs[0];
        for w in xs.windows(2) {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * step.abs().max(1e-300) {
                return Err(Error::Format("pattern axis is not uniform".into()));
            }
        }
        let axis = Axis::new(xs[0], step, xs.len())?;
        let pattern = Self::from_values(axis, ys, kind)?;
        if let Some(b) = baseline {
            if (b - pattern.baseline).abs() > 1e-12 {
                return Err(Error::Format(format!(
                    "stored baseline {b} does not match recomputed {}",
                    pattern.baseline
                )));
            }
        }
        if let Some(v) = visibility {
            if (v - pattern.visibility).abs() > 1e-12 {
                return Err(Error::Format(format!(
                    "stored visibility {v} does not match recomputed {}",
                    pattern.visibility
                )));
            }
        }
        Ok(pattern)
    }
}
