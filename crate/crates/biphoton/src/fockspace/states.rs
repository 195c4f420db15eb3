//! Holland-Burnett and N00N state constructions.

use super::ModeOccupation;
use crate::numerics::Axis;
use crate::twofold::{InterferencePattern, PatternKind};
use crate::{Error, Result};
use num_complex::Complex64;

/// The state |N/2, N/2> sent through a 50/50 beam splitter with a phase
/// shift phi: `sum_n c_n |2n, N-2n>` with
/// `c_n = sqrt((2n)! (N-2n)!) / (2^{N/2} n! (N/2-n)!) e^{i 2n phi}`.
///
/// The experimentally accessible approximation to the N00N state.
#[derive(Debug, Clone)]
pub struct HollandBurnettState {
    n_photons: u32,
    phase: f64,
    coefficients: Vec<Complex64>,
}

impl HollandBurnettState {
    pub fn n_photons(&self) -> u32 {
        self.n_photons
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// c_n for n = 0 ..= N/2.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// The basis kets |2n, N-2n> matching [`Self::coefficients`].
    pub fn occupations(&self) -> Vec<ModeOccupation> {
        (0..=self.n_photons / 2)
            .map(|n| ModeOccupation::new(vec![2 * n, self.n_photons - 2 * n]))
            .collect()
    }
}

/// Exact rational evaluation of |c_n|^2 in u128 arithmetic (N <= 20 keeps
/// every factorial product in range), converted once at the end.
pub fn hb_coefficients(n_photons: u32, phase: f64) -> Result<HollandBurnettState> {
    if n_photons == 0 || n_photons % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "Holland-Burnett construction needs an even positive photon number (got {n_photons})"
        )));
    }
    if n_photons > 20 {
        return Err(Error::PhotonGuard {
            photons: n_photons,
            limit: 20,
        });
    }
    let half = n_photons / 2;
    let coefficients = (0..=half)
        .map(|n| {
            // |c_n|^2 = (2n)! (N-2n)! / (2^N (n!)^2 ((N/2-n)!)^2)
            let num = factorial_u128(2 * n) * factorial_u128(n_photons - 2 * n);
            let den = (1u128 << n_photons)
                * factorial_u128(n).pow(2)
                * factorial_u128(half - n).pow(2);
            let g = gcd(num, den);
            let magnitude = ((num / g) as f64 / (den / g) as f64).sqrt();
            Complex64::from_polar(magnitude, 2.0 * n as f64 * phase)
        })
        .collect();
    Ok(HollandBurnettState {
        n_photons,
        phase,
        coefficients,
    })
}

fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// The ideal N00N fringe: projecting the phase-shifted state
/// `(|N0> + e^{i N phi} |0N>) / sqrt(2)` onto the N-fold coincidence
/// observable gives `[1 + cos(N phi)] / 2` - N maxima per 2 pi, the
/// phase super-resolution that beats the single-photon period.
pub fn noon_phase_fringe(n_photons: u32, phi_axis: &Axis) -> Result<InterferencePattern> {
    if n_photons == 0 {
        return Err(Error::InvalidParameter(
            "N00N state needs at least one photon".into(),
        ));
    }
    let values = phi_axis
        .values()
        .map(|phi| 0.5 * (1.0 + (n_photons as f64 * phi).cos()))
        .collect();
    InterferencePattern::from_values(*phi_axis, values, PatternKind::FockScan)
}
