use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("adaptive quadrature did not reach the requested tolerance (achieved {achieved:.3e}, requested {requested:.3e})")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    #[error("grid resolution is incompatible with the sample lattice: {0}")]
    IncompatibleResolution(String),

    #[error("rotated support exceeds the available window: {0}")]
    WindowExceeded(String),

    #[error("enumeration would produce {0} rectangles (cap 1e8)")]
    EnumerationOverflow(u128),

    #[error("eccentricity band is empty (requires l >= 3, got {0})")]
    EmptyEccentricityBand(u32),

    #[error("kernel has nonzero mean {0:.3e} (tolerance 1e-10)")]
    KernelMeanNonzero(f64),

    #[error("sample resolution too coarse: {fraction:.3} of spectral mass in the top octave (cap {cap})")]
    ResolutionTooCoarse { fraction: f64, cap: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
