//! Schmidt decomposition of joint spectral amplitudes.
//!
//! The amplitude matrix weighted by sqrt(dw_s dw_i) is factored by SVD;
//! the squared singular values are the Schmidt coefficients lambda_k, the
//! purity is sum lambda_k^2, and the Schmidt number 1/purity. Purity 1
//! means a factorable (spectrally pure) pair.

use super::JointSpectralAmplitude;
use crate::numerics::svd;
use crate::Result;
use ndarray::Array2;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct SchmidtAnalysis {
    /// Descending, non-negative, summing to 1.
    pub schmidt_coefficients: Vec<f64>,
    /// sum lambda_k^2, in (0, 1].
    pub purity: f64,
    /// 1 / purity, >= 1.
    pub schmidt_number: f64,
}

pub fn schmidt_analysis(jsa: &JointSpectralAmplitude) -> Result<SchmidtAnalysis> {
    let weight = jsa.grid().cell_area().sqrt();
    let m = jsa.values().map(|v| v * weight);
    let decomp = svd(&m)?;
    let mut lambda: Vec<f64> = decomp.singular_values.iter().map(|s| s * s).collect();
    let total: f64 = lambda.iter().sum();
    for l in &mut lambda {
        *l /= total;
    }
    let purity: f64 = lambda.iter().map(|l| l * l).sum();
    Ok(SchmidtAnalysis {
        schmidt_coefficients: lambda,
        purity,
        schmidt_number: 1.0 / purity,
    })
}

/// Truncated Schmidt decomposition f = sum_k sqrt(lambda_k) u_k(w_s) v_k(w_i)
/// with continuum-normalized mode functions sampled on the JSA axes.
#[derive(Debug, Clone)]
pub struct SchmidtModes {
    /// lambda_k for the kept modes, descending (not renormalized).
    pub coefficients: Vec<f64>,
    /// Columns are the signal modes u_k on the signal axis.
    pub signal_modes: Array2<Complex64>,
    /// Columns are the idler modes v_k on the idler axis.
    pub idler_modes: Array2<Complex64>,
    /// 1 - sum of the kept lambda_k.
    pub truncation_weight: f64,
}

pub fn schmidt_modes(jsa: &JointSpectralAmplitude, rank: usize) -> Result<SchmidtModes> {
    let ds = jsa.axis_s().step();
    let di = jsa.axis_i().step();
    let weight = (ds * di).sqrt();
    let m = jsa.values().map(|v| v * weight);
    let decomp = svd(&m)?;

    let keep = rank.min(decomp.singular_values.len());
    let coefficients: Vec<f64> = decomp.singular_values[..keep]
        .iter()
        .map(|s| s * s)
        .collect();
    let truncation_weight = (1.0 - coefficients.iter().sum::<f64>()).max(0.0);

    let rows = jsa.axis_s().count();
    let cols = jsa.axis_i().count();
    let signal_modes =
        Array2::from_shape_fn((rows, keep), |(i, k)| decomp.u[(i, k)] / ds.sqrt());
    let idler_modes =
        Array2::from_shape_fn((cols, keep), |(j, k)| decomp.vh[(k, j)] / di.sqrt());

    Ok(SchmidtModes {
        coefficients,
        signal_modes,
        idler_modes,
        truncation_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{comb_jsa, gaussian_jsa, GridSpec};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    #[test]
    fn separable_gaussian_is_pure() {
        let jsa = gaussian_jsa(1.2, 1.2, (40.0, 40.0), &GridSpec::new(128, 16.0)).unwrap();
        let a = schmidt_analysis(&jsa).unwrap();
        assert_abs_diff_eq!(a.purity, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(a.schmidt_number, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn double_gaussian_matches_closed_form_purity() {
        // purity = 2 s+ s- / (s+^2 + s-^2); ratio 3 gives 0.6.
        let jsa = gaussian_jsa(1.0, 3.0, (40.0, 40.0), &GridSpec::new(128, 16.0)).unwrap();
        let a = schmidt_analysis(&jsa).unwrap();
        assert_abs_diff_eq!(a.purity, 0.6, epsilon = 1e-3);

        let jsa = gaussian_jsa(2.0, 1.0, (40.0, 40.0), &GridSpec::new(128, 16.0)).unwrap();
        let a = schmidt_analysis(&jsa).unwrap();
        assert_abs_diff_eq!(a.purity, 2.0 * 2.0 / 5.0, epsilon = 1e-3);
    }

    #[test]
    fn two_mode_comb_has_equal_half_weights() {
        let base = gaussian_jsa(0.4, 0.4, (40.0, 40.0), &GridSpec::new(128, 16.0)).unwrap();
        let comb = comb_jsa(&base, 2, 5.0).unwrap();
        assert!(comb.modes_orthogonal);
        let a = schmidt_analysis(&comb.jsa).unwrap();
        assert_abs_diff_eq!(a.schmidt_coefficients[0], 0.5, epsilon = 1e-3);
        assert_abs_diff_eq!(a.schmidt_coefficients[1], 0.5, epsilon = 1e-3);
        assert_abs_diff_eq!(a.purity, 0.5, epsilon = 1e-3);
    }

    #[test]
    fn purity_is_invariant_under_global_phase() {
        let jsa = gaussian_jsa(0.8, 1.9, (40.0, 40.0), &GridSpec::new(64, 12.0)).unwrap();
        let phase = Complex64::from_polar(1.0, 1.234);
        let rotated = crate::spectra::JointSpectralAmplitude::new(
            jsa.grid().map(|v| v * phase).unwrap(),
            jsa.center_s(),
            jsa.center_i(),
        )
        .unwrap();
        let a = schmidt_analysis(&jsa).unwrap();
        let b = schmidt_analysis(&rotated).unwrap();
        assert_abs_diff_eq!(a.purity, b.purity, epsilon = 1e-12);
        for (x, y) in a
            .schmidt_coefficients
            .iter()
            .zip(b.schmidt_coefficients.iter())
        {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn modes_reconstruct_the_amplitude() {
        let jsa = gaussian_jsa(1.0, 2.0, (40.0, 40.0), &GridSpec::new(64, 12.0)).unwrap();
        let modes = schmidt_modes(&jsa, 64).unwrap();
        assert!(modes.truncation_weight < 1e-10);
        let ds = jsa.axis_s().step();
        let di = jsa.axis_i().step();
        let mut err = 0.0;
        for ((i, j), v) in jsa.values().indexed_iter() {
            let mut rec = Complex64::default();
            for (k, l) in modes.coefficients.iter().enumerate() {
                rec += l.sqrt() * modes.signal_modes[(i, k)] * modes.idler_modes[(j, k)];
            }
            err += (v - rec).norm_sqr();
        }
        assert!(err * ds * di < 1e-20, "reconstruction error {err:.3e}");
    }
}
