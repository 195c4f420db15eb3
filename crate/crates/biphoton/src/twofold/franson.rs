//! Franson interferometer: two unbalanced Mach-Zehnder interferometers fed
//! by an energy-time entangled pair.
//!
//! Coincidences follow
//! `P = 1/4 iint |f(w1,w2)|^2 [1 + cos(w1 T1)] [1 + cos(w2 T2)] dw1 dw2`,
//! normalized so P = 1 at T1 = T2 = 0, and singles follow
//! `P_sc = 1/2 int |f(w)|^2 [1 + cos(w T)] dw`.
//!
//! Fringes ride at the optical carrier, so a wide absolute scan cannot
//! resolve them; the scan axis is therefore an *offset* about a base delay,
//! mirroring experimental phase scans. The coarse envelope can be mapped by
//! sweeping the base delay itself.

use super::{InterferencePattern, PatternKind};
use crate::numerics::{trapezoid_weights, Axis};
use crate::spectra::{JointSpectralAmplitude, PhotonSpectrum};
use crate::Result;
use rayon::prelude::*;

/// How the two arm delays follow the scan offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FransonMode {
    /// Both arms share one delay: `T1 = T2 = base_delay + offset`.
    CommonDelay { base_delay: f64 },
    /// Arm 1 is scanned about its base while arm 2 stays fixed:
    /// `T1 = base_delay_1 + offset`, `T2 = delay_2`.
    Independent { base_delay_1: f64, delay_2: f64 },
}

pub fn franson_pattern(
    jsa: &JointSpectralAmplitude,
    scan: &Axis,
    mode: FransonMode,
) -> Result<InterferencePattern> {
    let ax_s = jsa.axis_s();
    let ax_i = jsa.axis_i();
    let f = jsa.values();
    let (cs, ci) = (jsa.center_s(), jsa.center_i());
    let ws = trapezoid_weights(ax_s.count());
    let wi = trapezoid_weights(ax_i.count());
    let area = jsa.grid().cell_area();

    let values: Vec<f64> = (0..scan.count())
        .into_par_iter()
        .map(|k| {
            let offset = scan.value(k);
            let (t1, t2) = match mode {
                FransonMode::CommonDelay { base_delay } => {
                    (base_delay + offset, base_delay + offset)
                }
                FransonMode::Independent {
                    base_delay_1,
                    delay_2,
                } => (base_delay_1 + offset, delay_2),
            };
            let arm1: Vec<f64> = ax_s.values().map(|nu| 1.0 + ((cs + nu) * t1).cos()).collect();
            let arm2: Vec<f64> = ax_i.values().map(|nu| 1.0 + ((ci + nu) * t2).cos()).collect();
            let mut sum = 0.0;
            for i in 0..ax_s.count() {
                let row_factor = ws[i] * arm1[i];
                for j in 0..ax_i.count() {
                    sum += row_factor * wi[j] * arm2[j] * f[(i, j)].norm_sqr();
                }
            }
            0.25 * sum * area
        })
        .collect();
    InterferencePattern::from_values(*scan, values, PatternKind::FransonCoincidence)
}

/// Single-detector count probability behind one unbalanced interferometer,
/// scanned as `T = base_delay + offset`.
pub fn franson_singles(
    spectrum: &PhotonSpectrum,
    scan: &Axis,
    base_delay: f64,
) -> Result<InterferencePattern> {
    let axis = spectrum.axis;
    let w = trapezoid_weights(axis.count());
    let values: Vec<f64> = scan
        .values()
        .map(|offset| {
            let t = base_delay + offset;
            let sum: f64 = spectrum
                .density
                .iter()
                .enumerate()
                .map(|(i, d)| w[i] * d * (1.0 + (axis.value(i) * t).cos()))
                .sum();
            0.5 * sum * axis.step()
        })
        .collect();
    InterferencePattern::from_values(*scan, values, PatternKind::FransonSingles)
}
