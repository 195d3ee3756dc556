use thiserror::Error;

/// Which validity condition of the photonic representation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Total charge must vanish: the integral of q over the line is zero.
    ZeroNetCharge,
    /// Flux must vanish at both ends of the line.
    FluxDecays,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::ZeroNetCharge => write!(f, "zero net charge (integral of q must vanish)"),
            Condition::FluxDecays => write!(f, "flux decay (phi must vanish at both ends)"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid waveform: {0}")]
    InvalidWaveform(String),

    #[error("invalid line parameters: {0}")]
    InvalidLine(String),

    #[error("evaluation at singular point x = {0}")]
    EvaluationAtSingularity(f64),

    #[error("input does not decay: terminal values {left} and {right} must both be zero")]
    NonDecayingInput { left: f64, right: f64 },

    #[error("sampled waveform too short: {len} samples, need at least {min}")]
    TooShort { len: usize, min: usize },

    #[error("pulse is unipolar (net area {area}); no finite photon number exists")]
    UnipolarPulse { area: f64 },

    #[error("photonic representation does not exist: violates {0}")]
    RepresentationDoesNotExist(Condition),

    #[error("quadrature failed to reach tolerance: estimated error {achieved:e}, requested {requested:e}")]
    QuadratureFailure { achieved: f64, requested: f64 },

    #[error("not converged: successive estimates differ by {difference:e} (tolerance {tolerance:e})")]
    NotConverged { difference: f64, tolerance: f64 },

    #[error("sub-pulses overlap: separation {0} must exceed 3")]
    OverlappingSubPulses(f64),

    #[error("window [{start}, {end}] does not contain the field support [{support_start}, {support_end}]")]
    WindowInsideSupport {
        start: f64,
        end: f64,
        support_start: f64,
        support_end: f64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
