//! Numerical building blocks shared by the transforms, the photon-number
//! functionals and the oracles.

pub mod fit;
pub mod quadrature;
pub mod special;

pub use fit::{fit_line, LineFit};
pub use quadrature::{Adaptive, GaussLegendre, Integral};
