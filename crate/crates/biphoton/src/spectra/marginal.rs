//! Sum- and difference-frequency marginals of the joint spectral intensity,
//! F2^{+-}(w_{+-}) = 1/2 integral dw_{-+} |f|^2, plus single-photon spectra.
//!
//! The projection runs along the lattice diagonals of the detuning grid
//! (the grid nodes fall exactly on lines of constant w_+ or w_-), followed
//! by 1D trapezoidal quadrature along each diagonal. Marginal axes are in
//! absolute frequency: the optical carriers shift w_+ by center_s+center_i
//! and w_- by center_s-center_i.

use super::JointSpectralAmplitude;
use crate::numerics::{trapezoid_weights, Axis};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalKind {
    SumFrequency,
    DifferenceFrequency,
}

/// A normalized 1D density over w_+ or w_- (absolute rad/s).
#[derive(Debug, Clone)]
pub struct SpectralMarginal {
    pub axis: Axis,
    pub density: Vec<f64>,
    pub kind: MarginalKind,
}

pub fn marginal(jsa: &JointSpectralAmplitude, kind: MarginalKind) -> Result<SpectralMarginal> {
    let ax_s = jsa.axis_s();
    let ax_i = jsa.axis_i();
    let h = ax_s.step();
    if (ax_i.step() - h).abs() > 1e-12 * h {
        return Err(Error::InvalidParameter(
            "marginal projection requires equal signal and idler steps".into(),
        ));
    }
    let (rows, cols) = (ax_s.count(), ax_i.count());
    let diag_count = rows + cols - 1;
    let f = jsa.values();

    let mut density = vec![0.0; diag_count];
    let mut samples: Vec<f64> = Vec::with_capacity(rows.min(cols));
    for (d, slot) in density.iter_mut().enumerate() {
        samples.clear();
        let i_lo = d.saturating_sub(cols - 1);
        let i_hi = d.min(rows - 1);
        for i in i_lo..=i_hi {
            let j = match kind {
                MarginalKind::SumFrequency => d - i,
                // Anti-diagonal index: d = i + (cols-1-j).
                MarginalKind::DifferenceFrequency => cols - 1 - (d - i),
            };
            samples.push(f[(i, j)].norm_sqr());
        }
        // Along a diagonal the transverse coordinate advances by 2h.
        *slot = 0.5 * crate::numerics::trapezoid_1d(&samples, 2.0 * h);
    }

    let start = match kind {
        MarginalKind::SumFrequency => {
            jsa.center_s() + jsa.center_i() + ax_s.start() + ax_i.start()
        }
        MarginalKind::DifferenceFrequency => {
            jsa.center_s() - jsa.center_i() + ax_s.start() - ax_i.last()
        }
    };
    let axis = Axis::new(start, h, diag_count)?;

    normalize_density(&mut density, h);
    Ok(SpectralMarginal {
        axis,
        density,
        kind,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhotonArm {
    Signal,
    Idler,
}

/// A normalized single-photon spectral density |f(w)|^2 on an absolute axis.
#[derive(Debug, Clone)]
pub struct PhotonSpectrum {
    pub axis: Axis,
    pub density: Vec<f64>,
}

impl PhotonSpectrum {
    pub fn new(axis: Axis, mut density: Vec<f64>) -> Result<Self> {
        if density.len() != axis.count() {
            return Err(Error::InvalidParameter(
                "spectrum length does not match its axis".into(),
            ));
        }
        if density.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::InvalidParameter(
                "spectral density must be finite and non-negative".into(),
            ));
        }
        if density.iter().all(|d| *d == 0.0) {
            return Err(Error::DegenerateAmplitude);
        }
        normalize_density(&mut density, axis.step());
        Ok(Self { axis, density })
    }
}

/// Marginal spectral density of one photon of the pair.
pub fn single_photon_spectrum(
    jsa: &JointSpectralAmplitude,
    arm: PhotonArm,
) -> Result<PhotonSpectrum> {
    let (own_axis, other_axis, center) = match arm {
        PhotonArm::Signal => (jsa.axis_s(), jsa.axis_i(), jsa.center_s()),
        PhotonArm::Idler => (jsa.axis_i(), jsa.axis_s(), jsa.center_i()),
    };
    let w = trapezoid_weights(other_axis.count());
    let f = jsa.values();
    let density: Vec<f64> = (0..own_axis.count())
        .map(|i| {
            (0..other_axis.count())
                .map(|j| {
                    let v = match arm {
                        PhotonArm::Signal => f[(i, j)],
                        PhotonArm::Idler => f[(j, i)],
                    };
                    w[j] * v.norm_sqr()
                })
                .sum::<f64>()
                * other_axis.step()
        })
        .collect();
    let axis = Axis::new(center + own_axis.start(), own_axis.step(), own_axis.count())?;
    PhotonSpectrum::new(axis, density)
}

fn normalize_density(density: &mut [f64], step: f64) {
    let area = crate::numerics::trapezoid_1d(density, step);
    if area > 0.0 {
        for d in density.iter_mut() {
            *d /= area;
        }
    }
}
