//! Mean photon number β² of the pulse mode by three independent routes:
//! the general k-space integral over (q, φ), the right-mover k-space
//! integral over V, and the closed-form log-kernel double integral.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::special::cos_integral;
use crate::numerics::Adaptive;
use crate::transforms::{fourier_pcw, fourier_plw_unchecked, BIPOLAR_TOL};
use crate::waveform::{
    bipolarity_check, FieldPair, LineParams, PiecewiseConstant, Polarity, Waveform,
};

/// β² or the finding that it is unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta2 {
    Finite(f64),
    /// The k → 0 integrand behaves as 1/|k|: unbounded photon number.
    Divergent,
}

impl Beta2 {
    pub fn value(&self) -> Option<f64> {
        match self {
            Beta2::Finite(v) => Some(*v),
            Beta2::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Beta2::Divergent)
    }
}

fn require_bipolar(voltage: &PiecewiseConstant) -> Result<()> {
    match bipolarity_check(&Waveform::PiecewiseConstant(voltage.clone()), BIPOLAR_TOL) {
        Polarity::Bipolar => Ok(()),
        Polarity::Unipolar { area } => Err(Error::UnipolarPulse { area }),
    }
}

fn quadrature() -> Adaptive {
    Adaptive {
        abs_tol: 1e-15,
        rel_tol: 1e-12,
        max_panels: 50_000,
    }
}

/// Upper end of the numerically integrated band; the rest is closed form.
fn band_limit(width: f64) -> f64 {
    16.0 * PI / width.max(f64::MIN_POSITIVE)
}

/// ∫_K^∞ cos(Δk)/k³ dk
fn cos_over_cube_tail(delta: f64, k: f64) -> f64 {
    if delta == 0.0 {
        return 0.5 / (k * k);
    }
    let z = delta * k;
    z.cos() / (2.0 * k * k) - delta * z.sin() / (2.0 * k)
        + 0.5 * delta * delta * cos_integral(z.abs())
}

/// ∫_K^∞ |Σ d_m e^{−ik t_m}|² / k³ dk, exact.
fn jump_tail(jumps: &[(f64, f64)], k: f64) -> f64 {
    let mut sum = 0.0;
    for (i, &(ti, di)) in jumps.iter().enumerate() {
        sum += di * di * cos_over_cube_tail(0.0, k);
        for &(tj, dj) in &jumps[..i] {
            sum += 2.0 * di * dj * cos_over_cube_tail(ti - tj, k);
        }
    }
    sum
}

/// β² = (1/4πħ) ∫ dk [cv|k|·|F_k[φ]|² + |F_k[q]|²/(cv|k|)].
///
/// The integrand is even in k. It is integrated adaptively on (0, K];
/// beyond K the transforms are exactly jump sums over k, whose squared
/// magnitude integrates in closed form.
pub fn beta2_general(fields: &FieldPair, line: &LineParams) -> Result<Beta2> {
    if !fields.charge_is_neutral() || !fields.flux_decays() {
        return Ok(Beta2::Divergent);
    }
    if fields.is_zero() {
        return Ok(Beta2::Finite(0.0));
    }
    let cv = line.capacitance() * line.velocity();
    let width = fields
        .support()
        .map(|(a, b)| b - a)
        .unwrap_or(1.0);
    let k_max = band_limit(width);
    let integrand = |k: f64| {
        if k == 0.0 {
            return 0.0;
        }
        let fq = fourier_pcw(&fields.q, k).norm_sqr();
        let fphi = fourier_plw_unchecked(&fields.phi, k).norm_sqr();
        cv * k * fphi + fq / (cv * k)
    };
    let body = quadrature().integrate(0.0, k_max, integrand)?;
    let q_jumps = fields.q.jumps();
    let slope_jumps = fields.phi.derivative().jumps();
    let tail = jump_tail(&q_jumps, k_max) / cv + cv * jump_tail(&slope_jumps, k_max);
    Ok(Beta2::Finite(
        2.0 * (body.value + tail) / (4.0 * PI * line.hbar()),
    ))
}

/// β² = (1/2πħ)(c/v) ∫ dk |F_k[V]|²/|k| for a bipolar right mover.
pub fn beta2_rightmover(voltage: &PiecewiseConstant, line: &LineParams) -> Result<f64> {
    require_bipolar(voltage)?;
    if voltage.is_zero() {
        return Ok(0.0);
    }
    let k_max = band_limit(voltage.support_width());
    let body = quadrature().integrate(0.0, k_max, |k| {
        if k == 0.0 {
            0.0
        } else {
            fourier_pcw(voltage, k).norm_sqr() / k
        }
    })?;
    let tail = jump_tail(&voltage.jumps(), k_max);
    Ok(prefactor(line) * (body.value + tail))
}

/// (1/πħ)(c/v): the even-k integral doubled.
fn prefactor(line: &LineParams) -> f64 {
    line.capacitance() / (line.velocity() * PI * line.hbar())
}

/// g(u) = (u²/2)(ln|u| − 3/2), the second antiderivative of ln|u|.
pub fn log_kernel_antiderivative(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        0.5 * u * u * (u.abs().ln() - 1.5)
    }
}

/// ∫_a^b ∫_c^d ln|x − y| dy dx
fn box_log_integral(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let g = log_kernel_antiderivative;
    g(b - c) + g(a - d) - g(a - c) - g(b - d)
}

/// β² = −(1/πħ)(c/v) ∬ V(x)V(y) ln|x − y| dx dy, in closed form over
/// segment pairs.
pub fn beta2_logkernel(voltage: &PiecewiseConstant, line: &LineParams) -> Result<f64> {
    require_bipolar(voltage)?;
    let segs = voltage.segments();
    let mut sum = 0.0;
    for (i, si) in segs.iter().enumerate() {
        sum += si.amplitude * si.amplitude * box_log_integral(si.start, si.end, si.start, si.end);
        for sj in &segs[..i] {
            sum += 2.0
                * si.amplitude
                * sj.amplitude
                * box_log_integral(si.start, si.end, sj.start, sj.end);
        }
    }
    Ok(-prefactor(line) * sum)
}

/// Coefficient A of β²(k_min) = A·ln(1/k_min) + O(1): (1/πħ)(c/v)(∫V)².
pub fn ir_divergence_coefficient(voltage: &PiecewiseConstant, line: &LineParams) -> f64 {
    let area = voltage.net_area();
    prefactor(line) * area * area
}

/// Infrared coefficient for arbitrary fields:
/// [(∫q)²/(cv) + cv·φ(+∞)²]/(2πħ).
pub fn ir_divergence_coefficient_fields(fields: &FieldPair, line: &LineParams) -> f64 {
    let cv = line.capacitance() * line.velocity();
    let charge = fields.q.net_area();
    let flux_step = fields.phi.right_value() - fields.phi.left_value();
    (charge * charge / cv + cv * flux_step * flux_step) / (2.0 * PI * line.hbar())
}

/// Right-mover β² with the modes |k| < k_min removed. Finite for any
/// pulse; grows as A·ln(1/k_min) for unipolar ones.
pub fn beta2_rightmover_cutoff(
    voltage: &PiecewiseConstant,
    line: &LineParams,
    k_min: f64,
) -> Result<f64> {
    assert!(k_min > 0.0, "cutoff must be positive");
    if voltage.is_zero() {
        return Ok(0.0);
    }
    let k_max = band_limit(voltage.support_width()).max(10.0 * k_min);
    let mut breaks = Vec::new();
    let mut b = 10f64.powf(k_min.log10().ceil());
    while b < k_max {
        breaks.push(b);
        b *= 10.0;
    }
    let body = quadrature().integrate_with_breaks(k_min, k_max, &breaks, |k| {
        fourier_pcw(voltage, k).norm_sqr() / k
    })?;
    let tail = jump_tail(&voltage.jumps(), k_max);
    Ok(prefactor(line) * (body.value + tail))
}

/// E·T/ħ with E = c∫V² (right-mover energy) and T = support width / v.
pub fn naive_photon_estimate(voltage: &PiecewiseConstant, line: &LineParams) -> f64 {
    let energy = line.capacitance() * voltage.square_integral();
    let transit = voltage.support_width() / line.velocity();
    energy * transit / line.hbar()
}
