//! 2D discrete Fourier transforms with the `e^{-i omega t}` forward kernel
//! and unitary scaling, so grid-level Parseval holds exactly.
//!
//! Forward maps frequency axes (rad/s) to time axes (s) with
//! `dt = 2 pi / (n * domega)`; output axes are centered about zero.
//! Inverse undoes Forward on centered axes to round-off accuracy.

use super::{Axis, Grid2};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FftDirection {
    Forward,
    Inverse,
}

/// Transform a grid between the frequency and time domains.
pub fn fft2(g: &Grid2, direction: FftDirection) -> Result<Grid2> {
    for ax in [g.axis_row(), g.axis_col()] {
        if !ax.count().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(ax.count()));
        }
    }

    let (out_row, mut values) = transform_rows_of(g.values().clone(), g.axis_row(), direction)?;
    values.swap_axes(0, 1);
    let (out_col, mut values) = transform_rows_of(values.as_standard_layout().to_owned(), g.axis_col(), direction)?;
    values.swap_axes(0, 1);
    Grid2::new(out_row, out_col, values.as_standard_layout().to_owned())
}

/// Apply the 1D transform along axis 1 of `values`, whose axis-1 coordinate
/// is `axis`. Returns the derived output axis and the transformed array.
fn transform_rows_of(
    values: Array2<Complex64>,
    axis: Axis,
    direction: FftDirection,
) -> Result<(Axis, Array2<Complex64>)> {
    let n = axis.count();
    debug_assert_eq!(values.dim().1, n);

    let out_step = 2.0 * PI / (n as f64 * axis.step());
    let out = Axis::centered(out_step, n)?;

    // e^{-i w t} = e^{-i w0 t_k} * e^{-i j dw t0} * e^{-2 pi i jk / n}
    // (and the conjugate pattern for the inverse), so a standard DFT plus
    // boundary phases realizes the continuum kernel on offset axes.
    let sign = match direction {
        FftDirection::Forward => -1.0,
        FftDirection::Inverse => 1.0,
    };
    let pre: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, sign * (j as f64 * axis.step()) * out.start()))
        .collect();
    let scale = axis.step() / (2.0 * PI).sqrt();
    let post: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, sign * axis.start() * out.value(k)) * scale)
        .collect();

    let mut planner = FftPlanner::new();
    let fft = match direction {
        FftDirection::Forward => planner.plan_fft_forward(n),
        FftDirection::Inverse => planner.plan_fft_inverse(n),
    };

    let mut values = values;
    let mut line = vec![Complex64::default(); n];
    for mut row in values.rows_mut() {
        for (j, v) in line.iter_mut().enumerate() {
            *v = row[j] * pre[j];
        }
        fft.process(&mut line);
        for (k, v) in line.iter().enumerate() {
            row[k] = *v * post[k];
        }
    }
    Ok((out, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate2;
    use approx::assert_abs_diff_eq;

    fn gaussian_grid(sigma: f64, half_width: f64, n: usize) -> Grid2 {
        let ax = Axis::centered(2.0 * half_width / n as f64, n).unwrap();
        Grid2::from_fn(ax, ax, |x, y| {
            Complex64::new((-(x * x + y * y) / (2.0 * sigma * sigma)).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn rejects_non_power_of_two() {
        let ax = Axis::centered(0.1, 24).unwrap();
        let g = Grid2::from_fn(ax, ax, |_, _| Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            fft2(&g, FftDirection::Forward),
            Err(Error::NotPowerOfTwo(24))
        ));
    }

    #[test]
    fn impulse_transforms_to_flat_magnitude() {
        let ax = Axis::centered(0.5, 16).unwrap();
        let mut vals = Array2::zeros((16, 16));
        vals[(8, 8)] = Complex64::new(1.0, 0.0);
        let g = Grid2::new(ax, ax, vals).unwrap();
        let out = fft2(&g, FftDirection::Forward).unwrap();
        let mags: Vec<f64> = out.values().iter().map(|v| v.norm()).collect();
        let first = mags[0];
        assert!(first > 0.0);
        for m in mags {
            assert_abs_diff_eq!(m, first, epsilon = 1e-12 * first);
        }
    }

    #[test]
    fn forward_then_inverse_is_identity() {
        let ax = Axis::centered(0.37, 32).unwrap();
        // Deterministic pseudo-random fill.
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let vals = Array2::from_shape_fn((32, 32), |_| Complex64::new(rnd(), rnd()));
        let g = Grid2::new(ax, ax, vals).unwrap();
        let back = fft2(&fft2(&g, FftDirection::Forward).unwrap(), FftDirection::Inverse).unwrap();
        assert_eq!(back.axis_row(), g.axis_row());
        let scale: f64 = g.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (a, b) in g.values().iter().zip(back.values().iter()) {
            assert!((a - b).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn gaussian_maps_to_reciprocal_width_gaussian() {
        let sigma = 1.7;
        let g = gaussian_grid(sigma, 10.0 * sigma, 256);
        let t = fft2(&g, FftDirection::Forward).unwrap();
        // Fit the std of |F| along the row axis through second moments.
        let ax = t.axis_row();
        let mut num = 0.0;
        let mut den = 0.0;
        for ((i, _), v) in t.values().indexed_iter() {
            let x = ax.value(i);
            let w = v.norm_sqr();
            num += x * x * w;
            den += w;
        }
        // |F|^2 has std (1/sigma)/sqrt(2); amplitude std is 1/sigma.
        let measured_amp_std = (num / den).sqrt() * 2.0f64.sqrt();
        assert_abs_diff_eq!(measured_amp_std, 1.0 / sigma, epsilon = 0.01 / sigma);
    }

    #[test]
    fn parseval_holds_at_grid_level() {
        let g = gaussian_grid(0.9, 8.0, 64);
        let t = fft2(&g, FftDirection::Forward).unwrap();
        let ein = g.energy();
        let eout = t.energy();
        assert_abs_diff_eq!(ein, eout, epsilon = 1e-10 * ein);

        // Same statement through the quadrature route.
        let gg = g.map(|v| Complex64::new(v.norm_sqr(), 0.0)).unwrap();
        let tt = t.map(|v| Complex64::new(v.norm_sqr(), 0.0)).unwrap();
        let a = integrate2(&gg).unwrap();
        let b = integrate2(&tt).unwrap();
        // Trapezoid halves the edge cells, so compare against the plain sums.
        assert_abs_diff_eq!(a / ein, b / eout, epsilon = 1e-10);
    }
}
