//! Shared numerical primitives: uniform grids, trapezoidal quadrature,
//! 2D discrete Fourier transforms and complex singular value decomposition.
//!
//! Everything here is a pure function of immutable inputs; values can be
//! shared freely across threads.

mod fourier;
mod quadrature;
mod svd;

pub use fourier::{fft2, FftDirection};
pub use quadrature::{integrate2, trapezoid_1d, trapezoid_weights};
pub use svd::{svd, Svd};

use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// A uniformly sampled axis: `value(i) = start + i * step`.
///
/// The unit (rad/s, s, radians, ...) is carried by context, not by the type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    start: f64,
    step: f64,
    count: usize,
}

impl Axis {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() || count < 2 {
            return Err(Error::BadAxis { step, count });
        }
        Ok(Self { start, step, count })
    }

    /// Axis symmetric about zero in the FFT sense: `start = -(count / 2) * step`.
    pub fn centered(step: f64, count: usize) -> Result<Self> {
        Self::new(-((count / 2) as f64) * step, step, count)
    }

    /// Axis spanning `[start, stop]` inclusive with `count` samples.
    pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::BadAxis { step: 0.0, count });
        }
        Self::new(start, (stop - start) / (count - 1) as f64, count)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn last(&self) -> f64 {
        self.value(self.count - 1)
    }

    pub fn span(&self) -> f64 {
        self.step * (self.count - 1) as f64
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.value(i))
    }
}

/// A complex field sampled on the tensor product of two axes.
///
/// Shape and finiteness are checked at construction and never broken
/// afterwards: all entries are finite and `values.dim()` matches the axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2 {
    axis_row: Axis,
    axis_col: Axis,
    values: Array2<Complex64>,
}

impl Grid2 {
    pub fn new(axis_row: Axis, axis_col: Axis, values: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = values.dim();
        if rows != axis_row.count() || cols != axis_col.count() {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                axis_rows: axis_row.count(),
                axis_cols: axis_col.count(),
            });
        }
        for ((i, j), v) in values.indexed_iter() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
        Ok(Self {
            axis_row,
            axis_col,
            values,
        })
    }

    /// Build a grid by evaluating `f(row_value, col_value)` on every node.
    pub fn from_fn(
        axis_row: Axis,
        axis_col: Axis,
        mut f: impl FnMut(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let values = Array2::from_shape_fn((axis_row.count(), axis_col.count()), |(i, j)| {
            f(axis_row.value(i), axis_col.value(j))
        });
        Self::new(axis_row, axis_col, values)
    }

    pub fn axis_row(&self) -> Axis {
        self.axis_row
    }

    pub fn axis_col(&self) -> Axis {
        self.axis_col
    }

    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<Complex64> {
        self.values
    }

    /// Area of one grid cell, `step_row * step_col`.
    pub fn cell_area(&self) -> f64 {
        self.axis_row.step() * self.axis_col.step()
    }

    /// Plain Riemann sum of |v|^2 over the grid measure.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.cell_area()
    }

    /// Apply `f` to every value, keeping the axes.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::new(self.axis_row, self.axis_col, self.values.map(|v| f(*v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values_follow_start_plus_i_step() {
        let ax = Axis::new(-1.0, 0.25, 9).unwrap();
        assert_eq!(ax.value(0), -1.0);
        assert_eq!(ax.value(8), 1.0);
        assert_eq!(ax.last(), 1.0);
        assert_eq!(ax.values().count(), 9);
    }

    #[test]
    fn axis_rejects_bad_parameters() {
        assert!(Axis::new(0.0, 0.0, 4).is_err());
        assert!(Axis::new(0.0, -1.0, 4).is_err());
        assert!(Axis::new(0.0, 1.0, 1).is_err());
        assert!(Axis::new(f64::NAN, 1.0, 4).is_err());
    }

    #[test]
    fn centered_axis_brackets_zero() {
        let ax = Axis::centered(0.5, 8).unwrap();
        assert_eq!(ax.start(), -2.0);
        assert_eq!(ax.value(4), 0.0);
    }

    #[test]
    fn grid_rejects_shape_mismatch_and_non_finite() {
        let ax = Axis::centered(1.0, 4).unwrap();
        let bad_shape = Array2::zeros((3, 4));
        assert!(matches!(
            Grid2::new(ax, ax, bad_shape),
            Err(Error::ShapeMismatch { .. })
        ));

        let mut vals = Array2::zeros((4, 4));
        vals[(1, 2)] = Complex64::new(f64::INFINITY, 0.0);
        assert!(matches!(
            Grid2::new(ax, ax, vals),
            Err(Error::NonFinite { row: 1, col: 2 })
        ));
    }
}
