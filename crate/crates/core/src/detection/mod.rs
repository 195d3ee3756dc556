//! Detection-side quantities: where the pulse's coupler lives on the line,
//! and how well an instrument restricted to a finite window can realize it.

mod coupler;
mod density;
mod scan;

pub use coupler::{
    bogoliubov_components, coupler_grid, CouplerReport, Window, WindowedCoupler,
};
pub use density::{
    integrated_norm_density, norm_density, pcw_moment, plw_moment, predicted_tail_exponent,
    quadrature_support_check, SupportReport, Witness,
};
pub use scan::{capture_scan, tail_exponent, CaptureRow, CaptureScan};
