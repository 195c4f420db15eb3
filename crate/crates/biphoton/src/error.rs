use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("axis requires step > 0 and count >= 2 (got step {step}, count {count})")]
    BadAxis { step: f64, count: usize },
    #[error("value array is {rows}x{cols} but the axes describe {axis_rows}x{axis_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        axis_rows: usize,
        axis_cols: usize,
    },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("axis count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("operand grids live on different axes")]
    AxisMismatch,
    #[error("grid half-width {half_width:.6e} rad/s is below the {required:.6e} rad/s needed for 6-sigma support")]
    GridTooSmall { half_width: f64, required: f64 },
    #[error("amplitude has no support (all samples zero)")]
    DegenerateAmplitude,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("JSA file format error: {0}")]
    Format(String),
    #[error("delay {tau:.6e} s lies outside the supported window of +/-{max:.6e} s")]
    DelayOutOfRange { tau: f64, max: f64 },
    #[error(
        "correlation scan too short: |G2| = {edge_magnitude:.3e} at the scan edge (must be < 1e-6)"
    )]
    ScanTooShort { edge_magnitude: f64 },
    #[error(
        "correlation function under-sampled: spectral content near the Nyquist edge suggests a bandwidth of at least {bandwidth:.6e} rad/s against a limit of {nyquist:.6e} rad/s"
    )]
    NyquistViolation { bandwidth: f64, nyquist: f64 },
    #[error("photon number {photons} exceeds the guard limit of {limit}")]
    PhotonGuard { photons: u32, limit: u32 },
    #[error("unitary acts on {dim} modes but the occupation lists {modes}")]
    DimensionMismatch { dim: usize, modes: usize },
    #[error("matrix is not unitary within 1e-10 (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("direct quadrature over {points} lattice points exceeds the 64^4 cost guard")]
    CostGuard { points: u128 },
    #[error("incompatible source pair: {0}")]
    IncompatiblePair(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 1 for configuration/input problems, 2 for numerical
    /// guard violations hit while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GridTooSmall { .. }
            | Error::NotPowerOfTwo(_)
            | Error::DelayOutOfRange { .. }
            | Error::ScanTooShort { .. }
            | Error::NyquistViolation { .. }
            | Error::PhotonGuard { .. }
            | Error::CostGuard { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
