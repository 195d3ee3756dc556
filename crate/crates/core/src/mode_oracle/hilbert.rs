use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::Adaptive;
use crate::waveform::{PiecewiseLinear, Waveform};

const LEVELS: usize = 8;
const TOL: f64 = 1e-11;

enum Profile<'a> {
    Constant(&'a crate::waveform::PiecewiseConstant),
    Linear(PiecewiseLinear),
}

impl Profile<'_> {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Constant(w) => w.eval(x),
            Profile::Linear(w) => w.eval(x),
        }
    }
}

/// (1/π) P∫ f(x)/(y − x) dx by symmetric excision of (y − ε, y + ε),
/// adaptive quadrature outside it, and Richardson extrapolation ε → 0 over
/// a halving sequence of ε.
pub fn oracle_hilbert(w: &Waveform, y: f64) -> Result<f64> {
    let profile = match w {
        Waveform::PiecewiseConstant(p) => {
            if p.jumps().iter().any(|&(t, _)| t == y) {
                return Err(Error::EvaluationAtSingularity(y));
            }
            Profile::Constant(p)
        }
        Waveform::PiecewiseLinear(p) => Profile::Linear(p.clone()),
        Waveform::Sampled(s) => Profile::Linear(s.to_piecewise_linear()),
    };
    let (breaks, support) = match &profile {
        Profile::Constant(p) => (p.breakpoints(), p.support()),
        Profile::Linear(p) => {
            let (l, r) = (p.left_value(), p.right_value());
            if l != 0.0 || r != 0.0 {
                return Err(Error::NonDecayingInput { left: l, right: r });
            }
            (p.breakpoints(), p.support())
        }
    };
    let Some((a, b)) = support else {
        return Ok(0.0);
    };
    let quad = Adaptive::new(1e-15, 1e-14);
    let integrand = |x: f64| profile.eval(x) / (y - x);
    let inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    let piece = |lo: f64, hi: f64| -> Result<f64> {
        if hi <= lo {
            return Ok(0.0);
        }
        let br: Vec<f64> = inner.iter().copied().filter(|&x| x > lo && x < hi).collect();
        Ok(quad.integrate_with_breaks(lo, hi, &br, integrand)?.value)
    };

    if y <= a || y >= b {
        // no singularity inside the support
        return Ok(piece(a, b)? / PI);
    }
    let nearest = breaks
        .iter()
        .map(|&t| (t - y).abs())
        .filter(|&d| d > 0.0)
        .fold(b - a, f64::min);
    let eps0 = 0.25 * nearest;
    let excised = |eps: f64| -> Result<f64> { Ok(piece(a, y - eps)? + piece(y + eps, b)?) };

    // tableau for I(ε) = I₀ + c₁ε + c₃ε³ + c₅ε⁵ + …
    let mut prev_row: Vec<f64> = Vec::new();
    let mut last_diag = f64::NAN;
    for j in 0..LEVELS {
        let eps = eps0 / (1u64 << j) as f64;
        let mut row = vec![excised(eps)?];
        for m in 1..=j {
            let f = 2f64.powi(2 * m as i32 - 1);
            row.push((f * row[m - 1] - prev_row[m - 1]) / (f - 1.0));
        }
        let diag = row[j];
        if j >= 2 && (diag - last_diag).abs() <= TOL * diag.abs().max(1.0) {
            return Ok(diag / PI);
        }
        last_diag = diag;
        prev_row = row;
    }
    let spread = (prev_row[LEVELS - 1] - prev_row[LEVELS - 2]).abs();
    Err(Error::NotConverged {
        difference: spread,
        tolerance: TOL,
    })
}
