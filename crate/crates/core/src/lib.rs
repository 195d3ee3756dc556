//! Photon content of classical voltage pulses on a lossless transmission
//! line.
//!
//! A pulse V(x) (optionally with its current I(x)) is mapped to the charge
//! and flux fields (q, φ). When the pulse is bipolar these define a single
//! mode b† = ∫ξ(k)a†_k dk and a coherent-state amplitude β, and β² is the
//! mean number of photons the pulse carries.
//!
//! ```
//! use tlphoton::{beta2_logkernel, LineParams, PiecewiseConstant};
//!
//! let v = PiecewiseConstant::from_triples(&[
//!     (-2.0, -1.0, -1.0),
//!     (-1.0, 1.0, 1.0),
//!     (1.0, 2.0, -1.0),
//! ])
//! .unwrap();
//! let b2 = beta2_logkernel(&v, &LineParams::natural()).unwrap();
//! assert!((b2 - 12.0 * (27.0f64 / 16.0).ln() / std::f64::consts::PI).abs() < 1e-12);
//! ```

pub mod detection;
pub mod error;
pub mod mode_oracle;
pub mod numerics;
pub mod photon_content;
pub mod transforms;
pub mod waveform;

pub use error::{Condition, Error, Result};
pub use photon_content::{
    beta2_general, beta2_logkernel, beta2_rightmover, ir_divergence_coefficient, mode_amplitude,
    naive_photon_estimate, photon_report, split_pulse_sweep, Beta2, KGrid, MethodOutcome,
    ModeAmplitude, PhotonReport,
};
pub use transforms::{
    coefficient_functions_general, coefficient_functions_rightmover, CoefficientFunctions,
};
pub use waveform::{
    FieldPair, LineParams, PiecewiseConstant, PiecewiseLinear, SampledWaveform, Segment, Waveform,
};
