//! Two-fold coincidence engines driven by a joint spectral amplitude:
//! Hong-Ou-Mandel and N00N-state interferometers in the frequency and time
//! domains, the Franson interferometer, the uncorrelated-model closed
//! forms, and the quantum Wiener-Khinchin transform pair.
//!
//! The HOM engine evaluates
//! `P(tau) = 1/4 iint |f(w1,w2) - f(w2,w1) e^{-i(w1-w2) tau}|^2 dw1 dw2`
//! by trapezoidal quadrature on the stored detuning grid; frequencies are
//! absolute (detuning + carrier), so non-degenerate carriers beat at
//! |center_s - center_i|. The N00N engine evaluates the four-phase-factor
//! integrand whose fringes ride at center_s + center_i. Scan samples are
//! independent and evaluated in parallel.

mod franson;
mod pattern;
mod qwkt;
mod uncorrelated;

pub use franson::{franson_pattern, franson_singles, FransonMode};
pub use pattern::{InterferencePattern, PatternKind};
pub use qwkt::{
    pattern_to_marginal, qwkt_forward, qwkt_inverse, CorrelationFunction, CorrelationKind,
};
pub use uncorrelated::{hom_uncorrelated, noon_uncorrelated, IndistinguishabilityCurve};

use crate::numerics::{trapezoid_weights, Axis, Grid2};
use crate::spectra::{JointSpectralAmplitude, JointTemporalAmplitude};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

/// HOM coincidence probability over a delay scan.
pub fn hom_pattern(jsa: &JointSpectralAmplitude, tau_axis: &Axis) -> Result<InterferencePattern> {
    let axis = jsa.square_axis()?;
    let f = jsa.values();
    let delta_c = jsa.center_s() - jsa.center_i();
    let wr = trapezoid_weights(axis.count());
    let area = jsa.grid().cell_area();

    let values: Vec<f64> = (0..tau_axis.count())
        .into_par_iter()
        .map(|k| {
            let tau = tau_axis.value(k);
            let carrier = Complex64::from_polar(1.0, -delta_c * tau);
            let u: Vec<Complex64> = axis
                .values()
                .map(|nu| Complex64::from_polar(1.0, -nu * tau))
                .collect();
            let mut sum = 0.0;
            for i in 0..axis.count() {
                for j in 0..axis.count() {
                    let phase = carrier * u[i] * u[j].conj();
                    sum += wr[i] * wr[j] * hom_density_value(f, i, j, phase);
                }
            }
            sum * area
        })
        .collect();
    InterferencePattern::from_values(*tau_axis, values, PatternKind::Hom)
}

#[inline]
fn hom_density_value(f: &Array2<Complex64>, i: usize, j: usize, phase: Complex64) -> f64 {
    0.25 * (f[(i, j)] - f[(j, i)] * phase).norm_sqr()
}

/// The coincidence spectral density behind [`hom_pattern`] at one delay:
/// `D(w1,w2; tau) = 1/4 |f(w1,w2) - f(w2,w1) e^{-i(w1-w2) tau}|^2`.
/// Integrating it with [`crate::numerics::integrate2`] reproduces the HOM
/// probability at the same delay.
pub fn spectrally_resolved_hom(jsa: &JointSpectralAmplitude, tau: f64) -> Result<Grid2> {
    let axis = jsa.square_axis()?;
    let f = jsa.values();
    let delta_c = jsa.center_s() - jsa.center_i();
    let carrier = Complex64::from_polar(1.0, -delta_c * tau);
    let u: Vec<Complex64> = axis
        .values()
        .map(|nu| Complex64::from_polar(1.0, -nu * tau))
        .collect();
    let vals = Array2::from_shape_fn((axis.count(), axis.count()), |(i, j)| {
        let phase = carrier * u[i] * u[j].conj();
        Complex64::new(hom_density_value(f, i, j, phase), 0.0)
    });
    Grid2::new(axis, axis, vals)
}

/// HOM probability computed entirely in the time domain,
/// `P(tau) = 1/4 iint |F(t1,t2) - e^{-i dc tau} F(t2-tau, t1+tau)|^2 dt1 dt2`,
/// with bilinear interpolation for the shifted-argument lookup. Agrees with
/// [`hom_pattern`] by Parseval. Delays beyond a quarter of the grid span are
/// rejected, since the shifted support would leave the grid.
pub fn hom_pattern_temporal(
    jta: &JointTemporalAmplitude,
    tau_axis: &Axis,
) -> Result<InterferencePattern> {
    let ax1 = jta.axis_1();
    if ax1 != jta.axis_2() {
        return Err(Error::AxisMismatch);
    }
    let max_tau = ax1.span() / 4.0;
    for tau in tau_axis.values() {
        if tau.abs() > max_tau {
            return Err(Error::DelayOutOfRange { tau, max: max_tau });
        }
    }
    let f = jta.values();
    let delta_c = jta.center_s() - jta.center_i();
    let wr = trapezoid_weights(ax1.count());
    let area = jta.grid().cell_area();

    let values: Vec<f64> = (0..tau_axis.count())
        .into_par_iter()
        .map(|k| {
            let tau = tau_axis.value(k);
            let carrier = Complex64::from_polar(1.0, -delta_c * tau);
            let mut sum = 0.0;
            for i in 0..ax1.count() {
                let t1 = ax1.value(i);
                for j in 0..ax1.count() {
                    let t2 = ax1.value(j);
                    let swapped = bilinear(f, ax1, t2 - tau, t1 + tau);
                    sum += wr[i] * wr[j] * 0.25 * (f[(i, j)] - carrier * swapped).norm_sqr();
                }
            }
            sum * area
        })
        .collect();
    InterferencePattern::from_values(*tau_axis, values, PatternKind::Hom)
}

/// Bilinear interpolation on a square grid; zero outside the domain.
fn bilinear(f: &Array2<Complex64>, axis: Axis, x: f64, y: f64) -> Complex64 {
    let n = axis.count();
    let fx = (x - axis.start()) / axis.step();
    let fy = (y - axis.start()) / axis.step();
    if fx < 0.0 || fy < 0.0 || fx > (n - 1) as f64 || fy > (n - 1) as f64 {
        return Complex64::default();
    }
    let i0 = (fx as usize).min(n - 2);
    let j0 = (fy as usize).min(n - 2);
    let tx = fx - i0 as f64;
    let ty = fy - j0 as f64;
    f[(i0, j0)] * ((1.0 - tx) * (1.0 - ty))
        + f[(i0 + 1, j0)] * (tx * (1.0 - ty))
        + f[(i0, j0 + 1)] * ((1.0 - tx) * ty)
        + f[(i0 + 1, j0 + 1)] * (tx * ty)
}

/// N00N-state coincidence probability over a delay scan:
/// `P(tau) = 1/16 iint |f(w3,w4)(e^{-i w3 tau}+1)(e^{-i w4 tau}+1)
///                    + f(w4,w3)(e^{-i w3 tau}-1)(e^{-i w4 tau}-1)|^2`.
pub fn noon_pattern(jsa: &JointSpectralAmplitude, tau_axis: &Axis) -> Result<InterferencePattern> {
    let axis = jsa.square_axis()?;
    let f = jsa.values();
    let (cs, ci) = (jsa.center_s(), jsa.center_i());
    let wr = trapezoid_weights(axis.count());
    let area = jsa.grid().cell_area();
    let one = Complex64::new(1.0, 0.0);

    let values: Vec<f64> = (0..tau_axis.count())
        .into_par_iter()
        .map(|k| {
            let tau = tau_axis.value(k);
            let p: Vec<Complex64> = axis
                .values()
                .map(|nu| Complex64::from_polar(1.0, -(cs + nu) * tau))
                .collect();
            let q: Vec<Complex64> = axis
                .values()
                .map(|nu| Complex64::from_polar(1.0, -(ci + nu) * tau))
                .collect();
            let mut sum = 0.0;
            for i in 0..axis.count() {
                for j in 0..axis.count() {
                    let term = f[(i, j)] * (p[i] + one) * (q[j] + one)
                        + f[(j, i)] * (p[i] - one) * (q[j] - one);
                    sum += wr[i] * wr[j] * term.norm_sqr();
                }
            }
            sum * area / 16.0
        })
        .collect();
    InterferencePattern::from_values(*tau_axis, values, PatternKind::Noon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate2;
    use crate::spectra::{gaussian_jsa, GridSpec, JointSpectralAmplitude};
    use approx::assert_abs_diff_eq;

    fn separable(width: f64, center: f64) -> JointSpectralAmplitude {
        gaussian_jsa(width, width, (center, center), &GridSpec::new(128, 10.0 * width)).unwrap()
    }

    #[test]
    fn symmetric_jsa_dips_to_zero_and_recovers_half() {
        let jsa = separable(1.0, 40.0);
        let tau = Axis::linspace(-8.0, 8.0, 81).unwrap();
        let p = hom_pattern(&jsa, &tau).unwrap();
        assert!(p.value_at(0.0) < 1e-8, "dip {}", p.value_at(0.0));
        assert_abs_diff_eq!(p.values()[0], 0.5, epsilon = 1e-3);
        assert_abs_diff_eq!(p.values()[80], 0.5, epsilon = 1e-3);
    }

    #[test]
    fn antisymmetric_jsa_peaks_at_one() {
        let jsa = separable(1.0, 40.0);
        let ax = jsa.axis_s();
        let skew = crate::numerics::Grid2::from_fn(ax, ax, |x, y| {
            Complex64::new((-((x - 0.7) * (x - 0.7) + y * y) / 2.0).exp(), 0.0)
        })
        .unwrap();
        let skew = JointSpectralAmplitude::new(skew, 40.0, 40.0).unwrap();
        let anti = skew.antisymmetrized().unwrap();
        let tau = Axis::linspace(-4.0, 4.0, 41).unwrap();
        let p = hom_pattern(&anti, &tau).unwrap();
        assert!(p.value_at(0.0) > 1.0 - 1e-6, "peak {}", p.value_at(0.0));
    }

    #[test]
    fn separable_gaussian_matches_closed_form() {
        // sigma_+ = sigma_- = dw gives P(tau) = (1 - exp(-dw^2 tau^2 / 2)) / 2.
        let dw = 1.3;
        let jsa = gaussian_jsa(dw, dw, (40.0, 40.0), &GridSpec::new(256, 12.0 * dw)).unwrap();
        let tau = Axis::linspace(-5.0 / dw, 5.0 / dw, 101).unwrap();
        let p = hom_pattern(&jsa, &tau).unwrap();
        for (t, v) in tau.values().zip(p.values()) {
            let expect = 0.5 * (1.0 - (-0.5 * dw * dw * t * t).exp());
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-4);
        }
    }

    #[test]
    fn hom_is_even_in_tau_for_symmetric_real_jsa() {
        let jsa = gaussian_jsa(0.6, 1.7, (40.0, 40.0), &GridSpec::new(64, 12.0)).unwrap();
        let tau = Axis::linspace(-3.0, 3.0, 31).unwrap();
        let p = hom_pattern(&jsa, &tau).unwrap();
        for i in 0..p.values().len() {
            let mirrored = p.values()[p.values().len() - 1 - i];
            assert_abs_diff_eq!(p.values()[i], mirrored, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_density_integrates_to_the_pattern() {
        let jsa = gaussian_jsa(0.8, 1.5, (40.0, 42.0), &GridSpec::new(64, 10.0)).unwrap();
        let tau_axis = Axis::linspace(-2.0, 2.0, 5).unwrap();
        let p = hom_pattern(&jsa, &tau_axis).unwrap();
        for (k, tau) in tau_axis.values().enumerate() {
            let d = spectrally_resolved_hom(&jsa, tau).unwrap();
            let integral = integrate2(&d).unwrap();
            assert_abs_diff_eq!(integral, p.values()[k], epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_density_is_zero_for_symmetric_jsa_at_zero_delay() {
        let jsa = separable(1.0, 40.0);
        let d = spectrally_resolved_hom(&jsa, 0.0).unwrap();
        for v in d.values() {
            assert!(v.re.abs() < 1e-20);
        }
    }

    #[test]
    fn spectral_density_fringe_spacing_is_two_pi_over_tau() {
        let jsa = gaussian_jsa(0.5, 2.5, (40.0, 40.0), &GridSpec::new(256, 12.0)).unwrap();
        let tau = 4.0;
        let d = spectrally_resolved_hom(&jsa, tau).unwrap();
        // Walk the anti-diagonal (w2 = -w1): the density oscillates in
        // w1 - w2 = 2 w1 with period 2 pi / tau.
        let n = d.axis_row().count();
        let vals: Vec<f64> = (0..n).map(|i| d.values()[(i, n - 1 - i)].re).collect();
        let mut minima = Vec::new();
        let peak = vals.iter().cloned().fold(0.0, f64::max);
        for i in 1..n - 1 {
            if vals[i] < vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] < 0.05 * peak {
                minima.push(d.axis_row().value(i));
            }
        }
        assert!(minima.len() >= 3, "found minima {minima:?}");
        let expected = 2.0 * std::f64::consts::PI / tau / 2.0;
        for w in minima.windows(2) {
            let spacing = w[1] - w[0];
            assert!(
                (spacing - expected).abs() <= d.axis_row().step(),
                "spacing {spacing} vs {expected}"
            );
        }
    }

    #[test]
    fn temporal_engine_agrees_with_frequency_engine() {
        // The time step is pi / half_width, so the wide grid keeps the
        // bilinear interpolation error of the shifted lookup under 1e-3.
        let jsa = gaussian_jsa(0.7, 1.9, (40.0, 40.0), &GridSpec::new(512, 40.0)).unwrap();
        let jta = jsa.to_temporal().unwrap();
        let tau = Axis::linspace(-4.0, 4.0, 41).unwrap();
        let pf = hom_pattern(&jsa, &tau).unwrap();
        let pt = hom_pattern_temporal(&jta, &tau).unwrap();
        for (a, b) in pf.values().iter().zip(pt.values().iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-3);
        }
    }

    #[test]
    fn temporal_engine_rejects_delays_beyond_the_grid() {
        let jsa = separable(1.0, 40.0);
        let jta = jsa.to_temporal().unwrap();
        let too_far = jta.axis_1().span();
        let tau = Axis::linspace(-too_far, too_far, 5).unwrap();
        assert!(matches!(
            hom_pattern_temporal(&jta, &tau),
            Err(Error::DelayOutOfRange { .. })
        ));
    }

    #[test]
    fn noon_is_one_at_zero_delay_and_beats_at_twice_the_carrier() {
        let center = 6.0;
        let jsa = gaussian_jsa(0.25, 0.25, (center, center), &GridSpec::new(128, 3.0)).unwrap();
        let period = std::f64::consts::PI / center;
        let tau = Axis::linspace(0.0, 2.0 * period, 161).unwrap();
        let p = noon_pattern(&jsa, &tau).unwrap();
        assert_abs_diff_eq!(p.values()[0], 1.0, epsilon = 1e-8);
        // One full fringe period at 2 * center per pi/center of delay.
        assert_abs_diff_eq!(p.value_at(period), 1.0, epsilon = 2e-2);
        assert!(p.value_at(0.5 * period) < 0.05);
    }

    #[test]
    fn noon_envelope_decays_to_half() {
        let jsa = gaussian_jsa(0.5, 0.5, (8.0, 8.0), &GridSpec::new(128, 5.0)).unwrap();
        let tau = Axis::linspace(20.0, 21.0, 101).unwrap();
        let p = noon_pattern(&jsa, &tau).unwrap();
        for v in p.values() {
            assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-3);
        }
    }
}
