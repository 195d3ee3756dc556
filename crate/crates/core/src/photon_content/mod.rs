//! Mean photon number of a classical pulse and the shape of its mode.

mod beta2;
mod mode;
mod report;
mod sweep;

pub use beta2::{
    beta2_general, beta2_logkernel, beta2_rightmover, beta2_rightmover_cutoff,
    ir_divergence_coefficient, ir_divergence_coefficient_fields, log_kernel_antiderivative,
    naive_photon_estimate, Beta2,
};
pub use mode::{alpha_at, cross_term, mode_amplitude, pairwise_sum, KGrid, ModeAmplitude};
pub use report::{photon_report, MethodOutcome, PhotonReport, ValidityFlags};
pub use sweep::{
    fit_log_growth, split_pulse, split_pulse_half, split_pulse_sweep, SweepPoint,
};
