//! Four-fold HOM coincidence between two independent heralded sources:
//!
//! `P4(tau) = 1/4 iiiint |f1(ws1,wi1) f2(ws2,wi2)
//!            - f1(ws2,wi1) f2(ws1,wi2) e^{-i(ws2-ws1) tau}|^2`
//!
//! over the two signal and two idler frequencies (the idlers herald and are
//! integrated out inside the amplitudes). The `Direct` method is the honest
//! 4D trapezoidal quadrature and serves as the oracle; the `Schmidt` method
//! expands each source in its Schmidt basis so the integral collapses to
//! `P4 = [1 - sum_kl l1_k l2_l |O_kl(tau)|^2] / 2` with 1D signal-mode
//! overlaps `O_kl(tau) = int u1_k(w) conj(u2_l(w)) e^{-i w tau} dw`. The two
//! agree to round-off at full rank; visibility equals the spectral purity
//! for identical sources.

use crate::numerics::{trapezoid_weights, Axis};
use crate::spectra::{schmidt_modes, JointSpectralAmplitude, PhotonArm};
use crate::twofold::{InterferencePattern, PatternKind};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// Two independent, normalized sources feeding the same signal beam
/// splitter. The exchanged-signal term requires both signal grids to be
/// identical, carriers included.
#[derive(Debug, Clone)]
pub struct SourcePair {
    jsa1: JointSpectralAmplitude,
    jsa2: JointSpectralAmplitude,
}

impl SourcePair {
    pub fn new(jsa1: JointSpectralAmplitude, jsa2: JointSpectralAmplitude) -> Result<Self> {
        if jsa1.axis_s() != jsa2.axis_s() {
            return Err(Error::IncompatiblePair(
                "signal detuning axes differ".into(),
            ));
        }
        if jsa1.center_s() != jsa2.center_s() {
            return Err(Error::IncompatiblePair(
                "signal carrier frequencies differ".into(),
            ));
        }
        Ok(Self { jsa1, jsa2 })
    }

    pub fn jsa1(&self) -> &JointSpectralAmplitude {
        &self.jsa1
    }

    pub fn jsa2(&self) -> &JointSpectralAmplitude {
        &self.jsa2
    }

    pub fn swapped(&self) -> Self {
        Self {
            jsa1: self.jsa2.clone(),
            jsa2: self.jsa1.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourfoldMethod {
    /// 4D trapezoidal quadrature of the printed integrand. Guarded to at
    /// most 64^4 lattice points.
    Direct,
    /// Schmidt expansion truncated at `rank` modes per source.
    Schmidt { rank: usize },
}

impl Default for FourfoldMethod {
    fn default() -> Self {
        FourfoldMethod::Schmidt { rank: 8 }
    }
}

/// A four-fold pattern plus the Schmidt truncation weight actually dropped
/// (`None` for the direct method).
#[derive(Debug, Clone)]
pub struct FourfoldRun {
    pub pattern: InterferencePattern,
    pub truncation_weight: Option<f64>,
}

pub fn fourfold_pattern(
    pair: &SourcePair,
    tau_axis: &Axis,
    method: FourfoldMethod,
) -> Result<FourfoldRun> {
    let (values, truncation_weight) = match method {
        FourfoldMethod::Direct => (direct_values(pair, tau_axis)?, None),
        FourfoldMethod::Schmidt { rank } => {
            let (v, w) = schmidt_values(pair, tau_axis, rank)?;
            (v, Some(w))
        }
    };
    Ok(FourfoldRun {
        pattern: InterferencePattern::from_values(*tau_axis, values, PatternKind::Fourfold)?,
        truncation_weight,
    })
}

fn direct_values(pair: &SourcePair, tau_axis: &Axis) -> Result<Vec<f64>> {
    let f1 = pair.jsa1.values();
    let f2 = pair.jsa2.values();
    let ax_s = pair.jsa1.axis_s();
    let (n_s, n_i1, n_i2) = (
        ax_s.count(),
        pair.jsa1.axis_i().count(),
        pair.jsa2.axis_i().count(),
    );
    let points = (n_s as u128) * (n_s as u128) * (n_i1 as u128) * (n_i2 as u128);
    if points > 64u128.pow(4) {
        return Err(Error::CostGuard { points });
    }

    let ws = trapezoid_weights(n_s);
    let wi1 = trapezoid_weights(n_i1);
    let wi2 = trapezoid_weights(n_i2);
    let cell = pair.jsa1.grid().cell_area() * pair.jsa2.grid().cell_area();

    let values: Vec<f64> = (0..tau_axis.count())
        .into_par_iter()
        .map(|k| {
            let tau = tau_axis.value(k);
            // Both signals share one carrier, so only detunings phase in.
            let phase: Vec<Complex64> = ax_s
                .values()
                .map(|nu| Complex64::from_polar(1.0, -nu * tau))
                .collect();
            let sum: f64 = (0..n_s)
                .into_par_iter()
                .map(|s1| {
                    let mut acc = 0.0;
                    for s2 in 0..n_s {
                        let swap_phase = phase[s2] * phase[s1].conj();
                        let w_ss = ws[s1] * ws[s2];
                        for i1 in 0..n_i1 {
                            let a1 = f1[(s1, i1)];
                            let b1 = f1[(s2, i1)];
                            let w_si = w_ss * wi1[i1];
                            for i2 in 0..n_i2 {
                                let amp = a1 * f2[(s2, i2)] - b1 * f2[(s1, i2)] * swap_phase;
                                acc += w_si * wi2[i2] * amp.norm_sqr();
                            }
                        }
                    }
                    acc
                })
                .sum();
            0.25 * sum * cell
        })
        .collect();
    Ok(values)
}

fn schmidt_values(pair: &SourcePair, tau_axis: &Axis, rank: usize) -> Result<(Vec<f64>, f64)> {
    let m1 = schmidt_modes(&pair.jsa1, rank)?;
    let m2 = schmidt_modes(&pair.jsa2, rank)?;
    let truncation = m1.truncation_weight.max(m2.truncation_weight);
    let ax_s = pair.jsa1.axis_s();
    let n = ax_s.count();
    let w = trapezoid_weights(n);
    let ds = ax_s.step();

    let values: Vec<f64> = (0..tau_axis.count())
        .into_par_iter()
        .map(|t_idx| {
            let tau = tau_axis.value(t_idx);
            let phase: Vec<Complex64> = ax_s
                .values()
                .map(|nu| Complex64::from_polar(1.0, -nu * tau))
                .collect();
            let mut coherence = 0.0;
            for (k, l1) in m1.coefficients.iter().enumerate() {
                for (l, l2) in m2.coefficients.iter().enumerate() {
                    let mut overlap = Complex64::default();
                    for s in 0..n {
                        overlap += w[s]
                            * m1.signal_modes[(s, k)]
                            * m2.signal_modes[(s, l)].conj()
                            * phase[s];
                    }
                    coherence += l1 * l2 * (overlap * ds).norm_sqr();
                }
            }
            0.5 * (1.0 - coherence)
        })
        .collect();
    Ok((values, truncation))
}

/// Visibility `(P_inf - P_0) / P_inf` of the four-fold dip, with the far
/// point taken ten signal coherence times out, on the Schmidt path at the
/// default rank.
pub fn fourfold_visibility(pair: &SourcePair) -> Result<f64> {
    let spectrum = crate::spectra::single_photon_spectrum(&pair.jsa1, PhotonArm::Signal)?;
    let mut mean = 0.0;
    let mut var = 0.0;
    for (i, d) in spectrum.density.iter().enumerate() {
        mean += d * spectrum.axis.value(i);
    }
    mean *= spectrum.axis.step();
    for (i, d) in spectrum.density.iter().enumerate() {
        let x = spectrum.axis.value(i) - mean;
        var += d * x * x;
    }
    var *= spectrum.axis.step();
    let coherence_time = 1.0 / var.sqrt();

    // The far point must stay below the grid Nyquist delay pi / d nu or the
    // discrete overlap phases wrap around and fake a revival.
    let tau_far = 10.0 * coherence_time;
    let representable = std::f64::consts::PI / pair.jsa1.axis_s().step();
    if tau_far > representable {
        return Err(Error::DelayOutOfRange {
            tau: tau_far,
            max: representable,
        });
    }

    let tau_axis = Axis::new(0.0, tau_far, 2)?;
    let run = fourfold_pattern(pair, &tau_axis, FourfoldMethod::default())?;
    let p0 = run.pattern.values()[0];
    let p_inf = run.pattern.values()[1];
    Ok((p_inf - p0) / p_inf)
}
