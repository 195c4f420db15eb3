//! The quantum Wiener-Khinchin transform pair: the second-order correlation
//! function is the Fourier transform of the sum- or difference-frequency
//! marginal, `G2(tau) = int F2(w) e^{-i w tau} dw`, and the marginal is
//! recovered by `F2(w) = 1/(2 pi) int G2(tau) e^{i w tau} d tau`.
//!
//! `P2 = [1 + Re G2+] / 2` reproduces N00N patterns and
//! `P2 = [1 - Re G2-] / 2` reproduces HOM patterns for exchange-symmetric
//! amplitudes, which is what lets a measured pattern be inverted into a
//! spectral marginal.

use super::{InterferencePattern, PatternKind};
use crate::numerics::{trapezoid_weights, Axis};
use crate::spectra::{MarginalKind, SpectralMarginal};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationKind {
    /// Transform of the sum-frequency marginal (N00N side).
    G2Plus,
    /// Transform of the difference-frequency marginal (HOM side).
    G2Minus,
}

/// Complex second-order correlation `G2(tau)` on a delay axis.
#[derive(Debug, Clone)]
pub struct CorrelationFunction {
    pub axis: Axis,
    pub values: Vec<Complex64>,
    pub kind: CorrelationKind,
}

/// Forward transform of a normalized marginal at the requested delays.
pub fn qwkt_forward(marg: &SpectralMarginal, tau_axis: &Axis) -> CorrelationFunction {
    let w = trapezoid_weights(marg.axis.count());
    let step = marg.axis.step();
    let values: Vec<Complex64> = tau_axis
        .values()
        .map(|tau| {
            let mut acc = Complex64::default();
            for (i, d) in marg.density.iter().enumerate() {
                acc += w[i] * d * Complex64::from_polar(1.0, -marg.axis.value(i) * tau);
            }
            acc * step
        })
        .collect();
    let kind = match marg.kind {
        MarginalKind::SumFrequency => CorrelationKind::G2Plus,
        MarginalKind::DifferenceFrequency => CorrelationKind::G2Minus,
    };
    CorrelationFunction {
        axis: *tau_axis,
        values,
        kind,
    }
}

/// Inverse transform, recovering the marginal on the axis implied by the
/// delay sampling (span `2 pi / d tau`, centered on zero).
///
/// Fails when |G2| has not decayed below 1e-6 at the scan edges, or when
/// the recovered density piles up against the Nyquist edge (aliasing).
pub fn qwkt_inverse(g2: &CorrelationFunction) -> Result<SpectralMarginal> {
    let n = g2.axis.count();
    let dtau = g2.axis.step();

    // A marginal wider than the Nyquist band makes |G2| collapse within a
    // couple of samples of its peak; the samples then cannot carry the
    // spectral support. (An aliased carrier folded inside the band is
    // indistinguishable from a genuine low-frequency one and cannot be
    // detected here.)
    let norms: Vec<f64> = g2.values.iter().map(|v| v.norm()).collect();
    let (peak_idx, peak) = norms
        .iter()
        .cloned()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .expect("non-empty correlation");
    let rightward = norms[peak_idx..].iter().position(|v| *v < 0.5 * peak);
    let leftward = norms[..=peak_idx].iter().rev().position(|v| *v < 0.5 * peak);
    let half_decay = match (rightward, leftward) {
        (Some(r), Some(l)) => r.min(l),
        (Some(r), None) => r,
        (None, Some(l)) => l,
        (None, None) => usize::MAX,
    };
    if half_decay <= 2 {
        // Gaussian model: |G2| = exp(-s^2 tau^2 / 2) halves at 1.18 / s;
        // quote the 6-sigma support implied by the observed decay.
        let s_est = 1.18 / (half_decay as f64 * dtau);
        return Err(Error::NyquistViolation {
            bandwidth: 6.0 * s_est,
            nyquist: PI / dtau,
        });
    }

    let edge = g2.values[0].norm().max(g2.values[n - 1].norm());
    if edge > 1e-6 {
        return Err(Error::ScanTooShort {
            edge_magnitude: edge,
        });
    }
    let dw = 2.0 * PI / (n as f64 * dtau);
    let axis = Axis::centered(dw, n)?;
    let w = trapezoid_weights(n);

    let mut density: Vec<f64> = axis
        .values()
        .map(|omega| {
            let mut acc = Complex64::default();
            for (k, g) in g2.values.iter().enumerate() {
                acc += w[k] * g * Complex64::from_polar(1.0, omega * g2.axis.value(k));
            }
            (acc * dtau / (2.0 * PI)).re
        })
        .collect();

    // Mass against the Nyquist edge means the true marginal extends past
    // the recoverable band.
    let total: f64 = density.iter().map(|d| d.abs()).sum();
    let guard = n / 32;
    let edge_mass: f64 = density[..guard.max(1)]
        .iter()
        .chain(density[n - guard.max(1)..].iter())
        .map(|d| d.abs())
        .sum();
    if edge_mass > 1e-6 * total.max(1e-300) {
        let nyquist = PI / dtau;
        return Err(Error::NyquistViolation {
            bandwidth: nyquist,
            nyquist,
        });
    }

    for d in &mut density {
        *d = d.max(0.0);
    }
    let area = crate::numerics::trapezoid_1d(&density, dw);
    if area <= 0.0 {
        return Err(Error::DegenerateAmplitude);
    }
    for d in &mut density {
        *d /= area;
    }
    let kind = match g2.kind {
        CorrelationKind::G2Plus => MarginalKind::SumFrequency,
        CorrelationKind::G2Minus => MarginalKind::DifferenceFrequency,
    };
    Ok(SpectralMarginal {
        axis,
        density,
        kind,
    })
}

/// Recover a spectral marginal from a HOM or N00N pattern: removes the 1/2
/// baseline, turning the pattern into Re G2 (with the HOM sign flip), then
/// applies [`qwkt_inverse`]. Using the real part alone recovers the even
/// part of a carrier-free marginal; the axis of a HOM pattern yields the
/// difference marginal, a N00N pattern the sum marginal.
pub fn pattern_to_marginal(pattern: &InterferencePattern) -> Result<SpectralMarginal> {
    let (kind, sign) = match pattern.kind() {
        PatternKind::Hom => (CorrelationKind::G2Minus, -1.0),
        PatternKind::Noon => (CorrelationKind::G2Plus, 1.0),
        other => {
            return Err(Error::InvalidParameter(format!(
                "QWKT inversion applies to hom or noon patterns, not {other}"
            )))
        }
    };
    let values: Vec<Complex64> = pattern
        .values()
        .iter()
        .map(|p| Complex64::new(sign * (2.0 * p - 1.0), 0.0))
        .collect();
    qwkt_inverse(&CorrelationFunction {
        axis: pattern.axis(),
        values,
        kind,
    })
}
