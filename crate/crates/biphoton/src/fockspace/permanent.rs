//! Matrix permanents: the permutation sum without signs, whose submatrix
//! evaluations give bosonic multiport transition amplitudes.

use ndarray::ArrayView2;
use num_complex::Complex64;

/// Ryser's formula with Gray-code subset updates, O(2^n n).
///
/// per(A) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} a_ij.
pub fn permanent_ryser(m: &ArrayView2<Complex64>) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "permanent needs a square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    assert!(n < 64, "Ryser subset mask is a u64");

    let mut row_sums = vec![Complex64::default(); n];
    let mut total = Complex64::default();
    let mut gray: u64 = 0;
    for k in 1u64..(1 << n) {
        let next = k ^ (k >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        if next & (1 << flipped) != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += m[(i, flipped)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= m[(i, flipped)];
            }
        }
        gray = next;

        let product: Complex64 = row_sums.iter().product();
        if next.count_ones() % 2 == 0 {
            total -= product;
        } else {
            total += product;
        }
    }
    if n % 2 == 0 {
        -total
    } else {
        total
    }
}

/// Permanent by direct permutation enumeration, O(n! n): the oracle the
/// Ryser path is checked against.
pub fn permanent_naive(m: &ArrayView2<Complex64>) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "permanent needs a square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut used = vec![false; n];
    fn recurse(
        m: &ArrayView2<Complex64>,
        row: usize,
        used: &mut [bool],
        prefix: Complex64,
    ) -> Complex64 {
        let n = m.nrows();
        if row == n {
            return prefix;
        }
        let mut acc = Complex64::default();
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                acc += recurse(m, row + 1, used, prefix * m[(row, col)]);
                used[col] = false;
            }
        }
        acc
    }
    recurse(m, 0, &mut used, Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_and_singleton() {
        let empty = Array2::<Complex64>::zeros((0, 0));
        assert_eq!(permanent_ryser(&empty.view()), c(1.0, 0.0));
        assert_eq!(permanent_naive(&empty.view()), c(1.0, 0.0));
        let one = Array2::from_elem((1, 1), c(3.0, -2.0));
        assert_eq!(permanent_ryser(&one.view()), c(3.0, -2.0));
    }

    #[test]
    fn two_by_two_is_ad_plus_bc() {
        let m = Array2::from_shape_vec(
            (2, 2),
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)],
        )
        .unwrap();
        let expect = m[(0, 0)] * m[(1, 1)] + m[(0, 1)] * m[(1, 0)];
        assert!((permanent_ryser(&m.view()) - expect).norm() < 1e-14);
        assert!((permanent_naive(&m.view()) - expect).norm() < 1e-14);
    }

    #[test]
    fn ryser_matches_naive_up_to_eight() {
        let mut state = 0xDEADBEEFCAFEu64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in 1..=8 {
            let m = Array2::from_shape_fn((n, n), |_| c(rnd(), rnd()));
            let a = permanent_ryser(&m.view());
            let b = permanent_naive(&m.view());
            let scale = a.norm().max(b.norm()).max(1e-30);
            assert!(
                (a - b).norm() <= 1e-12 * scale,
                "n={n}: ryser {a} vs naive {b}"
            );
        }
    }

    #[test]
    fn permanent_of_all_ones_is_n_factorial() {
        for n in 1..=8usize {
            let m = Array2::from_elem((n, n), c(1.0, 0.0));
            let expect: f64 = (1..=n).product::<usize>() as f64;
            assert!((permanent_ryser(&m.view()).re - expect).abs() < 1e-9 * expect);
        }
    }
}
