//! Trapezoidal quadrature on uniform grids.

use super::Grid2;
use crate::{Error, Result};

/// Trapezoidal weights: 1/2 at the two endpoints, 1 inside.
pub fn trapezoid_weights(count: usize) -> Vec<f64> {
    let mut w = vec![1.0; count];
    if count >= 2 {
        w[0] = 0.5;
        w[count - 1] = 0.5;
    }
    w
}

/// Trapezoidal approximation of the double integral of the real part of `g`.
///
/// Exact for bilinear integrands; rejects grids carrying non-finite entries.
pub fn integrate2(g: &Grid2) -> Result<f64> {
    let wr = trapezoid_weights(g.axis_row().count());
    let wc = trapezoid_weights(g.axis_col().count());
    let mut sum = 0.0;
    for ((i, j), v) in g.values().indexed_iter() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite { row: i, col: j });
        }
        sum += wr[i] * wc[j] * v.re;
    }
    Ok(sum * g.cell_area())
}

/// 1D trapezoidal integral of samples on a uniform axis with spacing `step`.
pub fn trapezoid_1d(samples: &[f64], step: f64) -> f64 {
    if samples.len() < 2 {
        return 0.0;
    }
    let inner: f64 = samples[1..samples.len() - 1].iter().sum();
    (inner + 0.5 * (samples[0] + samples[samples.len() - 1])) * step
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Axis;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn unit_area_grid(f: impl FnMut(f64, f64) -> Complex64) -> Grid2 {
        // Unit square [0, 1] x [0, 1].
        let ax = Axis::new(0.0, 1.0 / 15.0, 16).unwrap();
        Grid2::from_fn(ax, ax, f).unwrap()
    }

    #[test]
    fn constant_one_on_unit_area_grid_integrates_to_one() {
        let g = unit_area_grid(|_, _| Complex64::new(1.0, 0.0));
        assert_abs_diff_eq!(integrate2(&g).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn odd_function_about_grid_center_integrates_to_zero() {
        let ax = Axis::new(-2.0, 4.0 / 31.0, 32).unwrap();
        let g = Grid2::from_fn(ax, ax, |x, y| Complex64::new(x * x * x + y, 0.0)).unwrap();
        assert_abs_diff_eq!(integrate2(&g).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn normalized_gaussian_integrates_to_one() {
        // sigma = 1 over +/- 8 sigma with 256^2 points.
        let ax = Axis::new(-8.0, 16.0 / 255.0, 256).unwrap();
        let norm = 1.0 / (2.0 * std::f64::consts::PI);
        let g = Grid2::from_fn(ax, ax, |x, y| {
            Complex64::new(norm * (-0.5 * (x * x + y * y)).exp(), 0.0)
        })
        .unwrap();
        assert_abs_diff_eq!(integrate2(&g).unwrap(), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn integrate2_is_linear() {
        let ax = Axis::new(0.0, 0.1, 11).unwrap();
        let f = Grid2::from_fn(ax, ax, |x, y| Complex64::new(x * y + 1.0, 0.0)).unwrap();
        let g = Grid2::from_fn(ax, ax, |x, y| Complex64::new(x - y * y, 0.0)).unwrap();
        let (a, b) = (2.5, -1.25);
        let combo = Grid2::new(
            ax,
            ax,
            f.values().map(|v| a * v) + &g.values().map(|v| b * v),
        )
        .unwrap();
        let lhs = integrate2(&combo).unwrap();
        let rhs = a * integrate2(&f).unwrap() + b * integrate2(&g).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
    }

    #[test]
    fn bilinear_integrand_is_exact() {
        let ax = Axis::new(0.0, 0.5, 5).unwrap();
        let g = Grid2::from_fn(ax, ax, |x, y| Complex64::new(3.0 * x * y - x + 2.0, 0.0)).unwrap();
        // Integral of 3xy - x + 2 over [0,2]^2 = 3*2*2 - 2*2 + 2*4 = 16.
        assert_abs_diff_eq!(integrate2(&g).unwrap(), 16.0, epsilon = 1e-12);
    }
}
