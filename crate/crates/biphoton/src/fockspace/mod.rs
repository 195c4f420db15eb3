//! Exact few-photon evolution through multiport unitaries.
//!
//! Transition amplitudes are permanents of row/column-repeated submatrices:
//! `<out|U|in> = per(U[in,out]) / sqrt(prod in_j! prod out_k!)`, with the
//! matrix convention `U[j][k]` = coefficient of the output-mode-k creation
//! operator in the image of input mode j (the 50/50 beam splitter is
//! `[[1,1],[1,-1]]/sqrt(2)`, minus sign on the second reflection).
//!
//! Partial distinguishability enters through a second temporal-mode layer:
//! a delayed photon splits sqrt(I) into the shared layer and sqrt(1-I)
//! into an orthogonal one, and spatial statistics marginalize the layers.
//! Photon number is guarded at 8, which keeps the worst distribution
//! (outcome multisets times Ryser permanents) under a second.

mod permanent;
mod states;

pub use permanent::{permanent_naive, permanent_ryser};
pub use states::{hb_coefficients, noon_phase_fringe, HollandBurnettState};

use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// Guard on total photon number for distribution computations.
pub const PHOTON_GUARD: u32 = 8;

/// Photon counts per mode. For spatial x temporal problems the layout is
/// spatial-major: mode index = spatial * layers + layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeOccupation(Vec<u32>);

impl ModeOccupation {
    pub fn new(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for ModeOccupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("|"))
    }
}

impl From<Vec<u32>> for ModeOccupation {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// A complex m x m matrix verified unitary to 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiportUnitary {
    matrix: Array2<Complex64>,
}

impl MultiportUnitary {
    pub fn new(matrix: Array2<Complex64>) -> Result<Self> {
        let (r, c) = matrix.dim();
        if r != c {
            return Err(Error::DimensionMismatch { dim: r, modes: c });
        }
        let mut deviation = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let dot: Complex64 = (0..r).map(|k| matrix[(k, i)].conj() * matrix[(k, j)]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((dot - target).norm());
            }
        }
        if deviation > 1e-10 {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { matrix })
    }

    /// The 50/50 beam splitter `[[1,1],[1,-1]] / sqrt(2)`.
    pub fn beam_splitter_50() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let matrix = Array2::from_shape_vec(
            (2, 2),
            vec![
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ],
        )
        .expect("2x2 shape");
        Self { matrix }
    }

    /// The m-port symmetric (discrete Fourier) splitter,
    /// `U[j][k] = w^{jk} / sqrt(m)` with `w = e^{2 pi i / m}`; m = 3 is the
    /// tritter, m = 4 the quitter.
    pub fn fourier(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "Fourier multiport needs at least 2 modes (got {m})"
            )));
        }
        let norm = 1.0 / (m as f64).sqrt();
        let matrix = Array2::from_shape_fn((m, m), |(j, k)| {
            Complex64::from_polar(
                norm,
                2.0 * std::f64::consts::PI * (j * k % m) as f64 / m as f64,
            )
        });
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Tensor with the identity on `layers` internal (temporal) modes,
    /// spatial-major layout.
    pub fn tensor_identity(&self, layers: usize) -> Self {
        let m = self.dim() * layers;
        let matrix = Array2::from_shape_fn((m, m), |(a, b)| {
            let (sa, la) = (a / layers, a % layers);
            let (sb, lb) = (b / layers, b % layers);
            if la == lb {
                self.matrix[(sa, sb)]
            } else {
                Complex64::default()
            }
        });
        Self { matrix }
    }
}

/// Standard multiport kinds addressable by name (the CLI surface).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardUnitary {
    Bs50,
    Fourier(usize),
}

pub fn standard_unitary(kind: StandardUnitary) -> Result<MultiportUnitary> {
    match kind {
        StandardUnitary::Bs50 => Ok(MultiportUnitary::beam_splitter_50()),
        StandardUnitary::Fourier(m) => MultiportUnitary::fourier(m),
    }
}

/// Output photon-number statistics; probabilities sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDistribution {
    probs: BTreeMap<ModeOccupation, f64>,
}

impl FockDistribution {
    pub fn probability(&self, occ: &ModeOccupation) -> f64 {
        self.probs.get(occ).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModeOccupation, f64)> {
        self.probs.iter().map(|(k, v)| (k, *v))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// CSV form: `occupation,probability` with occupations as `n0|n1|...`.
    pub fn write_csv(&self, w: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(w, "occupation,probability")?;
        for (occ, p) in self.iter() {
            writeln!(w, "{occ},{p:.15e}")?;
        }
        Ok(())
    }
}

/// All occupations of `total` photons over `modes` modes.
fn occupations(total: u32, modes: usize) -> Vec<ModeOccupation> {
    fn fill(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<ModeOccupation>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(ModeOccupation::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for n in (0..=remaining).rev() {
            prefix.push(n);
            fill(remaining - n, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(total, modes, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).product::<u64>() as f64
}

/// `<out|U|in>` through the permanent of the row/column-repeated submatrix.
fn transition_amplitude(
    input: &ModeOccupation,
    output: &ModeOccupation,
    u: &MultiportUnitary,
) -> Complex64 {
    let n = input.total() as usize;
    let mut sub = Array2::<Complex64>::zeros((n, n));
    let mut r = 0;
    for (j, &nj) in input.counts().iter().enumerate() {
        for _ in 0..nj {
            let mut c = 0;
            for (k, &mk) in output.counts().iter().enumerate() {
                for _ in 0..mk {
                    sub[(r, c)] = u.matrix()[(j, k)];
                    c += 1;
                }
            }
            r += 1;
        }
    }
    let norm: f64 = input
        .counts()
        .iter()
        .chain(output.counts())
        .map(|&x| factorial(x))
        .product();
    permanent_ryser(&sub.view()) / norm.sqrt()
}

fn guard(input: &ModeOccupation, u: &MultiportUnitary) -> Result<()> {
    if input.modes() != u.dim() {
        return Err(Error::DimensionMismatch {
            dim: u.dim(),
            modes: input.modes(),
        });
    }
    if input.total() > PHOTON_GUARD {
        return Err(Error::PhotonGuard {
            photons: input.total(),
            limit: PHOTON_GUARD,
        });
    }
    Ok(())
}

/// Output amplitudes of one Fock input through a multiport.
pub(crate) fn evolve_amplitudes(
    input: &ModeOccupation,
    u: &MultiportUnitary,
) -> Result<Vec<(ModeOccupation, Complex64)>> {
    guard(input, u)?;
    let outs = occupations(input.total(), input.modes());
    Ok(outs
        .into_par_iter()
        .map(|out| {
            let amp = transition_amplitude(input, &out, u);
            (out, amp)
        })
        .collect())
}

/// Exact output distribution of a Fock input through a multiport.
pub fn evolve(input: &ModeOccupation, u: &MultiportUnitary) -> Result<FockDistribution> {
    let probs = evolve_amplitudes(input, u)?
        .into_iter()
        .map(|(out, amp)| (out, amp.norm_sqr()))
        .collect();
    Ok(FockDistribution { probs })
}

/// Two delayed photon groups of `n_per_port` each meeting on a 2-mode
/// unitary with temporal-mode indistinguishability `i_overlap` in [0, 1]:
/// one port's photons split sqrt(I)/sqrt(1-I) over two temporal layers, the
/// unitary acts on the spatial modes alone, and the returned distribution
/// is over the two spatial counts. `I = 1` restores perfect interference,
/// `I = 0` the classical multinomial.
pub fn delayed_pair_distribution(
    n_per_port: u32,
    i_overlap: f64,
    u: &MultiportUnitary,
) -> Result<FockDistribution> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch {
            dim: u.dim(),
            modes: 2,
        });
    }
    if !(0.0..=1.0).contains(&i_overlap) {
        return Err(Error::InvalidParameter(format!(
            "indistinguishability must lie in [0, 1] (got {i_overlap})"
        )));
    }
    let total = 2 * n_per_port;
    if total > PHOTON_GUARD {
        return Err(Error::PhotonGuard {
            photons: total,
            limit: PHOTON_GUARD,
        });
    }
    if n_per_port == 0 {
        return Err(Error::InvalidParameter(
            "need at least one photon per port".into(),
        ));
    }

    let u4 = u.tensor_identity(2);
    let amp_shared = i_overlap.sqrt();
    let amp_ortho = (1.0 - i_overlap).sqrt();
    let m = n_per_port;

    // (sqrt(I) b1 + sqrt(1-I) b2)^m expands into occupancies |k, m-k> with
    // amplitudes sqrt(C(m,k)) I^{k/2} (1-I)^{(m-k)/2}.
    let mut superposed: BTreeMap<ModeOccupation, Complex64> = BTreeMap::new();
    for k in 0..=m {
        let coeff = binomial(m, k).sqrt() * amp_shared.powi(k as i32)
            * amp_ortho.powi((m - k) as i32);
        if coeff == 0.0 {
            continue;
        }
        // Modes: [a layer1, a layer2, b layer1, b layer2].
        let component = ModeOccupation::new(vec![m, 0, k, m - k]);
        for (out, amp) in evolve_amplitudes(&component, &u4)? {
            *superposed.entry(out).or_default() += coeff * amp;
        }
    }

    let mut spatial: BTreeMap<ModeOccupation, f64> = BTreeMap::new();
    for (occ, amp) in superposed {
        let c = occ.counts();
        let key = ModeOccupation::new(vec![c[0] + c[1], c[2] + c[3]]);
        *spatial.entry(key).or_default() += amp.norm_sqr();
    }
    Ok(FockDistribution { probs: spatial })
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bs50_is_unitary_and_self_inverse() {
        let bs = MultiportUnitary::beam_splitter_50();
        let m = bs.matrix();
        let sq = Array2::from_shape_fn((2, 2), |(i, j)| {
            (0..2).map(|k| m[(i, k)] * m[(k, j)]).sum::<Complex64>()
        });
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((sq[(i, j)] - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_columns_normalized_rows_orthogonal() {
        for m in [3usize, 4, 5] {
            let u = MultiportUnitary::fourier(m).unwrap();
            for j in 0..m {
                let norm: f64 = (0..m).map(|i| u.matrix()[(i, j)].norm_sqr()).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            }
            for a in 0..m {
                for b in (a + 1)..m {
                    let dot: Complex64 = (0..m)
                        .map(|k| u.matrix()[(a, k)] * u.matrix()[(b, k)].conj())
                        .sum();
                    assert!(dot.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn non_unitary_matrices_are_rejected() {
        let m = Array2::from_elem((2, 2), Complex64::new(1.0, 0.0));
        assert!(matches!(
            MultiportUnitary::new(m),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn hom_dip_from_the_permanent_engine() {
        let bs = MultiportUnitary::beam_splitter_50();
        let d = evolve(&ModeOccupation::new(vec![1, 1]), &bs).unwrap();
        assert_abs_diff_eq!(d.probability(&vec![2, 0].into()), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(d.probability(&vec![0, 2].into()), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(d.probability(&vec![1, 1].into()), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn tagged_photons_coincide_half_the_time() {
        // Distinguishable photons: different temporal layers of a 2x2 BS.
        let u4 = MultiportUnitary::beam_splitter_50().tensor_identity(2);
        let d = evolve(&ModeOccupation::new(vec![1, 0, 0, 1]), &u4).unwrap();
        // Spatial (1,1) outcomes are the two layer assignments.
        let coincidence = d.probability(&vec![1, 0, 0, 1].into())
            + d.probability(&vec![0, 1, 1, 0].into());
        assert_abs_diff_eq!(coincidence, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn distributions_sum_to_one() {
        let tritter = MultiportUnitary::fourier(3).unwrap();
        let d = evolve(&ModeOccupation::new(vec![1, 1, 1]), &tritter).unwrap();
        assert_abs_diff_eq!(d.total(), 1.0, epsilon = 1e-9);

        let quitter = MultiportUnitary::fourier(4).unwrap();
        let d = evolve(&ModeOccupation::new(vec![2, 1, 1, 0]), &quitter).unwrap();
        assert_abs_diff_eq!(d.total(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn triple_coincidence_through_the_tritter() {
        let tritter = MultiportUnitary::fourier(3).unwrap();
        let input = ModeOccupation::new(vec![1, 1, 1]);
        let d = evolve(&input, &tritter).unwrap();
        // Brute-force permutation sum for the (1,1,1) outcome.
        let mut amp = Complex64::default();
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for p in perms {
            amp += (0..3)
                .map(|i| tritter.matrix()[(i, p[i])])
                .product::<Complex64>();
        }
        assert_abs_diff_eq!(d.probability(&input), amp.norm_sqr(), epsilon = 1e-12);
        // Distinguishable (ballistic) photons would give 3!/27 = 2/9.
        assert!((d.probability(&input) - 2.0 / 9.0).abs() > 0.05);
    }

    #[test]
    fn fourier_suppression_law() {
        // Zero-transmission law for the cyclic input |1...1> into
        // fourier(m): outcomes with sum_k k n_k != 0 (mod m) are forbidden.
        for m in [3usize, 4, 5] {
            let u = MultiportUnitary::fourier(m).unwrap();
            let input = ModeOccupation::new(vec![1; m]);
            let d = evolve(&input, &u).unwrap();
            let mut forbidden = 0;
            for (occ, p) in d.iter() {
                let weighted: usize = occ
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| k * n as usize)
                    .sum();
                if weighted % m != 0 {
                    forbidden += 1;
                    assert!(p < 1e-12, "forbidden {occ} has p = {p:.3e}");
                }
            }
            assert!(forbidden > 0);
        }
        // The quitter's full four-fold coincidence is among the suppressed
        // outcomes (residue 6 mod 4).
        let u = MultiportUnitary::fourier(4).unwrap();
        let d = evolve(&ModeOccupation::new(vec![1; 4]), &u).unwrap();
        assert!(d.probability(&vec![1, 1, 1, 1].into()) < 1e-12);
    }

    #[test]
    fn photon_and_dimension_guards() {
        let bs = MultiportUnitary::beam_splitter_50();
        assert!(matches!(
            evolve(&ModeOccupation::new(vec![5, 4]), &bs),
            Err(Error::PhotonGuard { photons: 9, .. })
        ));
        assert!(matches!(
            evolve(&ModeOccupation::new(vec![1, 1, 1]), &bs),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            delayed_pair_distribution(5, 0.5, &bs),
            Err(Error::PhotonGuard { .. })
        ));
    }

    #[test]
    fn delayed_pair_reproduces_the_uncorrelated_dip() {
        let bs = MultiportUnitary::beam_splitter_50();
        for i_overlap in [0.0, 0.17, 0.5, 0.83, 1.0] {
            let d = delayed_pair_distribution(1, i_overlap, &bs).unwrap();
            assert_abs_diff_eq!(
                d.probability(&vec![1, 1].into()),
                0.5 * (1.0 - i_overlap),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(d.total(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn classical_limit_is_multinomial() {
        // I = 0: four distinguishable photons through a 50/50 splitter.
        let bs = MultiportUnitary::beam_splitter_50();
        let d = delayed_pair_distribution(2, 0.0, &bs).unwrap();
        for (occ, p) in d.iter() {
            let k = occ.counts()[0];
            let expect = binomial(4, k) / 16.0;
            assert_abs_diff_eq!(p, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn four_photon_detection_schemes() {
        // P(4,0) grows monotonically with I; P(2,2) has an interior
        // extremum (the nonmonotonic quantum-to-classical transition).
        let bs = MultiportUnitary::beam_splitter_50();
        let scan: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let p40: Vec<f64> = scan
            .iter()
            .map(|&i| {
                delayed_pair_distribution(2, i, &bs)
                    .unwrap()
                    .probability(&vec![4, 0].into())
            })
            .collect();
        let p22: Vec<f64> = scan
            .iter()
            .map(|&i| {
                delayed_pair_distribution(2, i, &bs)
                    .unwrap()
                    .probability(&vec![2, 2].into())
            })
            .collect();
        assert!(p40.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{p40:?}");
        let d22: Vec<f64> = p22.windows(2).map(|w| w[1] - w[0]).collect();
        let sign_changes = d22
            .windows(2)
            .filter(|w| w[0].signum() != w[1].signum() && w[0].abs() > 1e-9)
            .count();
        assert!(sign_changes >= 1, "P(2,2) scan {p22:?}");
        // Endpoints: multinomial 3/8 at I=0, HOM-like 1/4 at I=1.
        assert_abs_diff_eq!(p22[0], 0.375, epsilon = 1e-12);
        assert_abs_diff_eq!(p22[20], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(p40[0], 1.0 / 16.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p40[20], 0.375, epsilon = 1e-12);
    }

    #[test]
    fn bosonic_exchange_invariance() {
        // Permuting input modes together with the matching unitary rows
        // leaves the distribution unchanged.
        let u = MultiportUnitary::fourier(3).unwrap();
        let input = ModeOccupation::new(vec![2, 1, 0]);
        let d1 = evolve(&input, &u).unwrap();

        let perm = [2usize, 0, 1];
        let permuted_input = ModeOccupation::new(vec![0, 2, 1]);
        let pm = Array2::from_shape_fn((3, 3), |(i, j)| u.matrix()[(perm[i], j)]);
        let pu = MultiportUnitary::new(pm).unwrap();
        let d2 = evolve(&permuted_input, &pu).unwrap();
        for (occ, p) in d1.iter() {
            assert_abs_diff_eq!(p, d2.probability(occ), epsilon = 1e-12);
        }
    }
}
