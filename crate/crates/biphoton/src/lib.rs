//! Two-photon interference from joint spectral amplitudes.
//!
//! This crate computes the observables of the three canonical quantum
//! interferometers — Hong-Ou-Mandel, N00N-state and Franson — for photon
//! pairs described by an arbitrary joint spectral amplitude (JSA), along
//! with an exact Fock-space engine for few-photon multiport interference
//! with partial distinguishability.
//!
//! The main entry points:
//!
//! - [`spectra`]: build, load and analyze JSAs (Gaussian models, spectral
//!   qudit combs, the text interchange format, Schmidt purity, sum- and
//!   difference-frequency marginals).
//! - [`twofold`]: coincidence patterns for HOM, N00N and Franson
//!   interferometers, the uncorrelated-model closed forms, and the quantum
//!   Wiener-Khinchin transform pair.
//! - [`fourfold`]: four-fold HOM between two independent heralded sources,
//!   by direct 4D quadrature or a Schmidt-accelerated low-rank path.
//! - [`fockspace`]: permanent-based evolution of photon-number states
//!   through multiport unitaries, detection-scheme projections, and
//!   Holland-Burnett / N00N state constructions.
//! - [`cli`]: the scenario config format behind the `biphoton` binary.
//!
//! Frequency grids store detunings about the optical carriers
//! (`center_s`, `center_i`); absolute frequencies enter the interference
//! engines only through phase factors, which keeps double precision safe
//! at optical frequencies of ~1e15 rad/s.
//!
//! ```ignore
//! use biphoton::numerics::Axis;
//! use biphoton::spectra::{gaussian_jsa, GridSpec};
//! use biphoton::twofold::hom_pattern;
//!
//! // Anti-correlated Gaussian pair, sigma_+ < sigma_-.
//! let jsa = gaussian_jsa(0.5, 1.5, (100.0, 100.0), &GridSpec::new(128, 16.0)).unwrap();
//! let tau = Axis::linspace(-8.0, 8.0, 161).unwrap();
//! let dip = hom_pattern(&jsa, &tau).unwrap();
//! assert!(dip.values()[80] < 1e-8); // the HOM dip at zero delay
//! ```

mod error;
pub mod fockspace;
pub mod fourfold;
pub mod numerics;
pub mod spectra;
pub mod twofold;

pub use error::{Error, Result};
