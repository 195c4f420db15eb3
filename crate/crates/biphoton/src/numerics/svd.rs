//! Complex singular value decomposition.

use crate::{Error, Result};
use nalgebra::DMatrix;
use ndarray::Array2;
use num_complex::Complex64;

/// Thin SVD `m = U diag(sigma) V^dagger` with `sigma` sorted descending.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Non-negative singular values, descending.
    pub singular_values: Vec<f64>,
    /// Left singular vectors as columns, `rows x k`.
    pub u: Array2<Complex64>,
    /// Conjugate-transposed right singular vectors, `k x cols` (rows are v_k^dagger).
    pub vh: Array2<Complex64>,
}

pub fn svd(m: &Array2<Complex64>) -> Result<Svd> {
    for ((i, j), v) in m.indexed_iter() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite { row: i, col: j });
        }
    }
    let (rows, cols) = m.dim();
    let dm = DMatrix::from_row_iterator(rows, cols, m.iter().copied());
    let decomp = dm.svd(true, true);
    let u = decomp.u.expect("left vectors requested");
    let vt = decomp.v_t.expect("right vectors requested");
    let k = decomp.singular_values.len();

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        decomp.singular_values[b]
            .partial_cmp(&decomp.singular_values[a])
            .expect("singular values are finite")
    });

    let singular_values: Vec<f64> = order.iter().map(|&i| decomp.singular_values[i]).collect();
    let u_arr = Array2::from_shape_fn((rows, k), |(i, j)| u[(i, order[j])]);
    let vh_arr = Array2::from_shape_fn((k, cols), |(i, j)| vt[(order[i], j)]);

    Ok(Svd {
        singular_values,
        u: u_arr,
        vh: vh_arr,
    })
}
