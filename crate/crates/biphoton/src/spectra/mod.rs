//! Joint spectral amplitudes and their temporal duals.
//!
//! A [`JointSpectralAmplitude`] stores the complex field f(omega_s, omega_i)
//! on a rectangular grid of *detunings* about the optical carriers
//! `center_s` and `center_i`. Working in detunings avoids catastrophic loss
//! of precision at optical frequencies of ~1e15 rad/s; the carriers re-enter
//! the interference engines only through phase factors. Normalization
//! (sum |f|^2 d omega_s d omega_i = 1) is enforced at construction so every
//! downstream probability is absolute.

mod io;
mod marginal;
mod schmidt;

pub use io::{load_jsa, save_jsa, write_jsa, LoadedJsa};
pub use marginal::{
    marginal, single_photon_spectrum, MarginalKind, PhotonArm, PhotonSpectrum, SpectralMarginal,
};
pub use schmidt::{schmidt_analysis, schmidt_modes, SchmidtAnalysis, SchmidtModes};

use crate::numerics::{fft2, Axis, FftDirection, Grid2};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// The two-photon spectral amplitude f(omega_s, omega_i).
///
/// Rows run over the signal detuning axis, columns over the idler detuning
/// axis (both rad/s). Always normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralAmplitude {
    grid: Grid2,
    center_s: f64,
    center_i: f64,
}

/// The joint temporal amplitude F(t1, t2), Fourier dual of a JSA.
///
/// Axes are in seconds; the optical carriers of the parent JSA are kept so
/// the time-domain engines can restore the carrier-dependent phases.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTemporalAmplitude {
    grid: Grid2,
    center_s: f64,
    center_i: f64,
}

/// Requested discretization for a constructed JSA: `count` points per axis
/// spanning `[-half_width, half_width)` in detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub count: usize,
    pub half_width: f64,
}

impl GridSpec {
    pub fn new(count: usize, half_width: f64) -> Self {
        Self { count, half_width }
    }

    /// Spec sized automatically for a double-Gaussian of the given widths.
    pub fn auto(count: usize, sigma_plus: f64, sigma_minus: f64) -> Self {
        Self {
            count,
            half_width: 4.0 * (sigma_plus + sigma_minus),
        }
    }
}

impl JointSpectralAmplitude {
    /// Validate and normalize an amplitude grid.
    pub fn new(grid: Grid2, center_s: f64, center_i: f64) -> Result<Self> {
        if !(center_s > 0.0) || !(center_i > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "optical centers must be strictly positive (got {center_s}, {center_i})"
            )));
        }
        let energy = grid.energy();
        if energy <= 0.0 {
            return Err(Error::DegenerateAmplitude);
        }
        let scale = Complex64::new(1.0 / energy.sqrt(), 0.0);
        let grid = grid.map(|v| v * scale)?;
        Ok(Self {
            grid,
            center_s,
            center_i,
        })
    }

    pub fn grid(&self) -> &Grid2 {
        &self.grid
    }

    pub fn values(&self) -> &Array2<Complex64> {
        self.grid.values()
    }

    pub fn axis_s(&self) -> Axis {
        self.grid.axis_row()
    }

    pub fn axis_i(&self) -> Axis {
        self.grid.axis_col()
    }

    pub fn center_s(&self) -> f64 {
        self.center_s
    }

    pub fn center_i(&self) -> f64 {
        self.center_i
    }

    /// Current grid-level norm, `sum |f|^2 dw dw`; 1 up to round-off.
    pub fn normalization(&self) -> f64 {
        self.grid.energy()
    }

    /// The interference engines exchange the two frequency arguments on the
    /// stored grid, which requires identical signal and idler axes.
    pub(crate) fn square_axis(&self) -> Result<Axis> {
        if self.axis_s() != self.axis_i() {
            return Err(Error::AxisMismatch);
        }
        Ok(self.axis_s())
    }

    /// Exchange-symmetry score `sum |f - f^T|^2 / sum |f|^2`:
    /// 0 for symmetric amplitudes, 4 for antisymmetric ones.
    pub fn exchange_symmetry_score(&self) -> Result<f64> {
        self.square_axis()?;
        let f = self.values();
        let mut num = 0.0;
        let mut den = 0.0;
        for ((i, j), v) in f.indexed_iter() {
            num += (v - f[(j, i)]).norm_sqr();
            den += v.norm_sqr();
        }
        Ok(num / den)
    }

    /// Exchange-symmetrized copy, `(f + f^T)` renormalized.
    pub fn symmetrized(&self) -> Result<Self> {
        self.combined_with_transpose(1.0)
    }

    /// Exchange-antisymmetrized copy, `(f - f^T)` renormalized.
    /// Fails with [`Error::DegenerateAmplitude`] when f is already symmetric.
    pub fn antisymmetrized(&self) -> Result<Self> {
        self.combined_with_transpose(-1.0)
    }

    fn combined_with_transpose(&self, sign: f64) -> Result<Self> {
        let axis = self.square_axis()?;
        let f = self.values();
        let vals = Array2::from_shape_fn(f.dim(), |(i, j)| f[(i, j)] + sign * f[(j, i)]);
        Self::new(Grid2::new(axis, axis, vals)?, self.center_s, self.center_i)
    }

    /// Fourier-transform into the time domain (module-numerics convention);
    /// Parseval guarantees the energies agree.
    pub fn to_temporal(&self) -> Result<JointTemporalAmplitude> {
        let grid = fft2(&self.grid, FftDirection::Forward)?;
        Ok(JointTemporalAmplitude {
            grid,
            center_s: self.center_s,
            center_i: self.center_i,
        })
    }
}

impl JointTemporalAmplitude {
    pub fn grid(&self) -> &Grid2 {
        &self.grid
    }

    pub fn values(&self) -> &Array2<Complex64> {
        self.grid.values()
    }

    pub fn axis_1(&self) -> Axis {
        self.grid.axis_row()
    }

    pub fn axis_2(&self) -> Axis {
        self.grid.axis_col()
    }

    pub fn center_s(&self) -> f64 {
        self.center_s
    }

    pub fn center_i(&self) -> f64 {
        self.center_i
    }

    pub fn energy(&self) -> f64 {
        self.grid.energy()
    }
}

/// Double-Gaussian model JSA
/// `f ~ exp[-nu_+^2 / (4 sigma_+^2)] exp[-nu_-^2 / (4 sigma_-^2)]`
/// in the rotated detunings `nu_+- = nu_s +- nu_i`.
///
/// `sigma_+ < sigma_-` gives spectral anti-correlation, `sigma_+ > sigma_-`
/// positive correlation, `sigma_+ = sigma_-` a separable (pure) pair.
pub fn gaussian_jsa(
    sigma_plus: f64,
    sigma_minus: f64,
    centers: (f64, f64),
    grid: &GridSpec,
) -> Result<JointSpectralAmplitude> {
    if !(sigma_plus > 0.0) || !(sigma_minus > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Gaussian widths must be positive (got {sigma_plus}, {sigma_minus})"
        )));
    }
    // The 6-sigma support ellipse projects onto each axis as 3(s+ + s-).
    let required = 3.0 * (sigma_plus + sigma_minus);
    if grid.half_width < required {
        return Err(Error::GridTooSmall {
            half_width: grid.half_width,
            required,
        });
    }
    let axis = Axis::centered(2.0 * grid.half_width / grid.count as f64, grid.count)?;
    let g = Grid2::from_fn(axis, axis, |ns, ni| {
        let p = ns + ni;
        let m = ns - ni;
        Complex64::new(
            (-p * p / (4.0 * sigma_plus * sigma_plus) - m * m / (4.0 * sigma_minus * sigma_minus))
                .exp(),
            0.0,
        )
    })?;
    JointSpectralAmplitude::new(g, centers.0, centers.1)
}

/// A comb JSA together with its construction diagnostics.
#[derive(Debug, Clone)]
pub struct CombJsa {
    pub jsa: JointSpectralAmplitude,
    /// Spacing actually realized after snapping to the grid, in rad/s along
    /// the displaced marginal axis.
    pub realized_spacing: f64,
    /// |<mode_k | mode_k+1>| between adjacent displaced copies.
    pub adjacent_overlap: f64,
    /// False when the adjacent overlap exceeds 1e-3 (modes not orthogonal).
    pub modes_orthogonal: bool,
    /// Which marginal axis the copies were displaced along.
    pub displaced_axis: MarginalKind,
}

/// Equal-weight coherent sum of `mode_count` copies of `base` displaced
/// along the anti-diagonal (difference-frequency) axis at the requested
/// spacing, renormalized: the spectrally entangled qudit comb whose
/// difference marginal carries one peak per mode.
pub fn comb_jsa(
    base: &JointSpectralAmplitude,
    mode_count: usize,
    mode_spacing: f64,
) -> Result<CombJsa> {
    comb_jsa_along(base, mode_count, mode_spacing, MarginalKind::DifferenceFrequency)
}

/// [`comb_jsa`] with an explicit displacement axis. Combing the difference
/// axis structures HOM patterns, combing the sum axis structures N00N
/// patterns (each interferometer reads its conjugate marginal).
pub fn comb_jsa_along(
    base: &JointSpectralAmplitude,
    mode_count: usize,
    mode_spacing: f64,
    displaced_axis: MarginalKind,
) -> Result<CombJsa> {
    let axis = base.square_axis()?;
    if mode_count < 1 {
        return Err(Error::InvalidParameter("mode_count must be >= 1".into()));
    }
    if mode_count == 1 {
        return Ok(CombJsa {
            jsa: base.clone(),
            realized_spacing: 0.0,
            adjacent_overlap: 0.0,
            modes_orthogonal: true,
            displaced_axis,
        });
    }
    if !(mode_spacing > 0.0) {
        return Err(Error::InvalidParameter(
            "mode_spacing must be positive".into(),
        ));
    }

    let h = axis.step();
    // One comb step displaces the lobe by (r, -r) or (r, r) grid cells,
    // moving the nu_- or nu_+ coordinate by 2 r h.
    let r = (mode_spacing / (2.0 * h)).round() as i64;
    if r == 0 {
        return Err(Error::InvalidParameter(format!(
            "mode_spacing {mode_spacing:.6e} rad/s is below the grid resolution {:.6e} rad/s",
            2.0 * h
        )));
    }

    let col_sign: i64 = match displaced_axis {
        MarginalKind::DifferenceFrequency => -1,
        MarginalKind::SumFrequency => 1,
    };

    let f = base.values();
    let n = axis.count() as i64;
    let offset = (r * (mode_count as i64 - 1)) / 2;
    let mut acc = Array2::<Complex64>::zeros(f.dim());
    for k in 0..mode_count as i64 {
        let shift = k * r - offset;
        let mut copy_energy = 0.0;
        for ((i, j), a) in acc.indexed_iter_mut() {
            let si = i as i64 - shift;
            let sj = j as i64 - col_sign * shift;
            if si >= 0 && si < n && sj >= 0 && sj < n {
                let v = f[(si as usize, sj as usize)];
                copy_energy += v.norm_sqr();
                *a += v;
            }
        }
        let lost = 1.0 - copy_energy * base.grid().cell_area();
        if lost > 1e-6 {
            return Err(Error::GridTooSmall {
                half_width: axis.last(),
                required: axis.last() + shift.unsigned_abs() as f64 * h,
            });
        }
    }

    // Overlap between adjacent copies = <f | f shifted by one comb step>.
    let mut overlap = Complex64::default();
    for ((i, j), v) in f.indexed_iter() {
        let si = i as i64 - r;
        let sj = j as i64 - col_sign * r;
        if si >= 0 && si < n && sj >= 0 && sj < n {
            overlap += v.conj() * f[(si as usize, sj as usize)];
        }
    }
    let adjacent_overlap = (overlap * base.grid().cell_area()).norm();

    let jsa = JointSpectralAmplitude::new(
        Grid2::new(axis, axis, acc)?,
        base.center_s(),
        base.center_i(),
    )?;
    Ok(CombJsa {
        jsa,
        realized_spacing: 2.0 * r as f64 * h,
        adjacent_overlap,
        modes_orthogonal: adjacent_overlap <= 1e-3,
        displaced_axis,
    })
}
