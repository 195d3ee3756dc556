use crate::error::Result;
use crate::numerics::Adaptive;
use crate::transforms::CoefficientFunctions;
use crate::waveform::{FieldPair, LineParams, PiecewiseConstant, PiecewiseLinear};

/// n(x) = −(1/2ħ)·Im(conj(θ_φ(x))·θ_q(x)); integrates to β².
pub fn norm_density(theta: &CoefficientFunctions, line: &LineParams, x: f64) -> Result<f64> {
    let tq = theta.theta_q(x)?;
    let tp = theta.theta_phi(x)?;
    Ok(-(tp.conj() * tq).im / (2.0 * line.hbar()))
}

/// ∫ n(x) dx over the field support (n vanishes outside it).
pub fn integrated_norm_density(theta: &CoefficientFunctions, line: &LineParams) -> Result<f64> {
    let Some((a, b)) = theta.field_support() else {
        return Ok(0.0);
    };
    let mut breaks: Vec<f64> = theta.fields().breakpoints();
    breaks.extend_from_slice(theta.singularities());
    breaks.retain(|&x| x > a && x < b);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let quad = Adaptive {
        abs_tol: 1e-13,
        rel_tol: 1e-11,
        max_panels: 100_000,
    };
    let hbar = line.hbar();
    let n = |x: f64| {
        let tq = theta.theta_q_unchecked(x);
        let tp = theta.theta_phi_unchecked(x);
        -(tp.conj() * tq).im / (2.0 * hbar)
    };
    Ok(quad.integrate_with_breaks(a, b, &breaks, n)?.value)
}

/// A probe where some part of θ was found nonzero or mismatched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub re_theta_q: f64,
    pub re_theta_phi: f64,
}

/// Which parts of θ live where.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportReport {
    pub field_support: Option<(f64, f64)>,
    /// Im θ_q = q and Im θ_φ = φ at every probe.
    pub imaginary_parts_match_fields: bool,
    /// Im θ vanishes at every probe outside the field support, so the
    /// quadrature coupler i(b − b†) needs no access to the vacuum.
    pub imaginary_parts_vanish_outside: bool,
    /// Re θ is nonzero at some probe outside the support.
    pub real_parts_extend_outside: bool,
    /// φ is nonzero somewhere q vanishes inside the support, so a
    /// quadrature coupler must span the gap.
    pub flux_in_gaps: bool,
    /// Outside probes with their real parts.
    pub witnesses: Vec<Witness>,
}

/// Probes [a − 3W, b + 3W] at half-step offsets from every breakpoint,
/// plus far points at 10, 100 and 1000 widths.
pub fn quadrature_support_check(theta: &CoefficientFunctions, fields: &FieldPair) -> SupportReport {
    let Some((a, b)) = fields.support() else {
        return SupportReport {
            field_support: None,
            imaginary_parts_match_fields: theta.is_zero(),
            imaginary_parts_vanish_outside: true,
            real_parts_extend_outside: false,
            flux_in_gaps: false,
            witnesses: Vec::new(),
        };
    };
    let w = b - a;
    let n = 1200;
    let h = 7.0 * w / n as f64;
    let probes: Vec<f64> = (0..n).map(|i| a - 3.0 * w + (i as f64 + 0.5) * h).collect();
    let singular = theta.singularities();
    let on_jump = |x: f64| singular.iter().any(|&s| (x - s).abs() < 1e-12 * w.max(1.0));

    let mut matches = true;
    let mut vanish = true;
    let mut gaps = false;
    for &x in probes.iter().filter(|&&x| !on_jump(x)) {
        let tq = theta.theta_q_unchecked(x);
        let tp = theta.theta_phi_unchecked(x);
        let (q, phi) = (fields.q.eval(x), fields.phi.eval(x));
        if tq.im != q || tp.im != phi {
            matches = false;
        }
        let outside = x < a || x > b;
        if outside && (tq.im != 0.0 || tp.im != 0.0) {
            vanish = false;
        }
        if !outside && q == 0.0 && phi != 0.0 {
            gaps = true;
        }
    }
    let c = 0.5 * (a + b);
    let mut far = Vec::new();
    for m in [1.5, 10.0, 100.0, 1000.0] {
        far.push(c - m * w);
        far.push(c + m * w);
    }
    let witnesses: Vec<Witness> = far
        .iter()
        .map(|&x| Witness {
            x,
            re_theta_q: theta.theta_q_unchecked(x).re,
            re_theta_phi: theta.theta_phi_unchecked(x).re,
        })
        .collect();
    for wt in &witnesses {
        let tq = theta.theta_q_unchecked(wt.x);
        let tp = theta.theta_phi_unchecked(wt.x);
        if tq.im != 0.0 || tp.im != 0.0 {
            vanish = false;
        }
    }
    let extend = witnesses
        .iter()
        .any(|wt| wt.re_theta_q != 0.0 || wt.re_theta_phi != 0.0);
    SupportReport {
        field_support: Some((a, b)),
        imaginary_parts_match_fields: matches,
        imaginary_parts_vanish_outside: vanish,
        real_parts_extend_outside: extend,
        flux_in_gaps: gaps,
        witnesses,
    }
}

/// ∫ xⁿ w(x) dx
pub fn pcw_moment(w: &PiecewiseConstant, n: u32) -> f64 {
    w.moment(n)
}

/// ∫ xⁿ w(x) dx for a profile vanishing at both ends.
pub fn plw_moment(w: &PiecewiseLinear, n: u32) -> f64 {
    let p = n as i32;
    w.pieces()
        .map(|piece| {
            // ∫ xⁿ(s·x + c) dx = s·x^{n+2}/(n+2) + c·x^{n+1}/(n+1)
            let c = piece.value(0.0);
            let f = |x: f64| {
                piece.slope * x.powi(p + 2) / (p + 2) as f64 + c * x.powi(p + 1) / (p + 1) as f64
            };
            f(piece.end) - f(piece.start)
        })
        .sum()
}

/// Power of the far-field decay |H[f](y)| ~ |y|^{−(m+1)}, m being the order
/// of the first moment of f that is not negligible against `tol`·scale.
pub fn predicted_tail_exponent(moments: impl Fn(u32) -> f64, tol: f64) -> Option<u32> {
    let scale = (0..6).map(|n| moments(n).abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    (0..6).find(|&n| moments(n).abs() > tol * scale).map(|n| n + 1)
}
