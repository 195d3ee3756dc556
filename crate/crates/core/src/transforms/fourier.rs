//! Closed-form Fourier transforms F_k[f] = ∫ e^{−ikx} f(x) dx.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::special::{sinc, sinc1};
use crate::waveform::{PiecewiseConstant, PiecewiseLinear};

/// Σ a·(e^{−ik·start} − e^{−ik·end})/(ik), evaluated per segment as
/// a·width·sinc(k·width/2)·e^{−ik·mid} so that k → 0 is continuous.
pub fn fourier_pcw(w: &PiecewiseConstant, k: f64) -> Complex64 {
    w.segments()
        .iter()
        .map(|s| {
            let half = 0.5 * s.width();
            let mag = s.amplitude * s.width() * sinc(k * half);
            Complex64::from_polar(mag, -k * s.midpoint())
        })
        .sum()
}

/// Transform of a piecewise-linear profile that vanishes at both ends.
pub fn fourier_plw(w: &PiecewiseLinear, k: f64) -> Result<Complex64> {
    let (left, right) = (w.left_value(), w.right_value());
    if left != 0.0 || right != 0.0 {
        return Err(Error::NonDecayingInput { left, right });
    }
    Ok(fourier_plw_unchecked(w, k))
}

pub(crate) fn fourier_plw_unchecked(w: &PiecewiseLinear, k: f64) -> Complex64 {
    // On (m−h, m+h): f = f(m) + slope·u, and
    // ∫ u e^{−iku} du over (−h, h) = −2i h² sinc1(kh).
    w.pieces()
        .map(|p| {
            let h = 0.5 * (p.end - p.start);
            let m = 0.5 * (p.start + p.end);
            let z = k * h;
            let even = p.value(m) * 2.0 * h * sinc(z);
            let odd = -2.0 * p.slope * h * h * sinc1(z);
            Complex64::new(even, odd) * Complex64::from_polar(1.0, -k * m)
        })
        .sum()
}

/// Σ d_m e^{−ik t_m} over jumps (t_m, d_m). For a piecewise-constant
/// profile F_k = jump_sum/(ik) exactly.
pub fn jump_sum(jumps: &[(f64, f64)], k: f64) -> Complex64 {
    jumps
        .iter()
        .map(|&(t, d)| Complex64::from_polar(d, -k * t))
        .sum()
}
