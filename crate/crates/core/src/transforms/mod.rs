//! Fourier and Hilbert transforms of pulse profiles and construction of
//! the coefficient functions θ_q, θ_φ.

mod coefficients;
pub mod dft;
mod fourier;
mod hilbert;

pub use coefficients::{
    coefficient_functions_general, coefficient_functions_rightmover, CoefficientFunctions,
    Provenance, BIPOLAR_TOL,
};
pub use dft::{hilbert_sampled, Padding};
pub use fourier::{fourier_pcw, fourier_plw, jump_sum};
pub(crate) use fourier::fourier_plw_unchecked;
pub use hilbert::{hilbert_pcw, hilbert_plw, HilbertConvention, HilbertEvaluation, SINGULARITY_TOL};
