//! Closed-form Hilbert transforms under the multiplier convention
//! H = F⁻¹[−i·sgn(k)·F], i.e. H[f](y) = (1/π) P∫ f(x)/(y − x) dx.
//!
//! For a piecewise-constant profile with jumps d_m at t_m,
//!   H(y) = (1/π) Σ d_m ln|y − t_m|,
//! and for a decaying piecewise-linear profile with slope jumps s_m at x_m,
//!   H(y) = (1/π) Σ s_m (y − x_m) ln|y − x_m|.
//! Both sums have Σ d_m = 0 (and Σ s_m = Σ s_m x_m = 0), so far from the
//! profile each logarithm is taken relative to the profile center, which
//! keeps the power-law tails accurate.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::waveform::{PiecewiseConstant, PiecewiseLinear};

/// Distance below which an evaluation point counts as sitting on a jump.
pub const SINGULARITY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertConvention {
    /// H = F⁻¹[−i·sgn(k)·F]; H[sin] = −cos.
    FourierMultiplier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kernel {
    /// Σ w ln|y − x|
    Log,
    /// Σ w (y − x) ln|y − x|
    LinearLog,
}

/// A prepared closed-form Hilbert transform of a piecewise profile.
#[derive(Debug, Clone, PartialEq)]
pub struct HilbertEvaluation {
    kernel: Kernel,
    /// (position, weight/π)
    terms: Vec<(f64, f64)>,
    center: f64,
    radius: f64,
    convention: HilbertConvention,
    singularities: Vec<f64>,
}

impl HilbertEvaluation {
    pub fn piecewise_constant(w: &PiecewiseConstant) -> Self {
        let jumps = w.jumps();
        let singularities = jumps.iter().map(|j| j.0).collect();
        Self::build(Kernel::Log, jumps, singularities)
    }

    pub fn piecewise_linear(w: &PiecewiseLinear) -> Result<Self> {
        let (left, right) = (w.left_value(), w.right_value());
        let scale = w.points().iter().fold(0.0f64, |m, p| m.max(p.1.abs()));
        let tol = 1e-9 * scale;
        if left.abs() > tol || right.abs() > tol {
            return Err(Error::NonDecayingInput { left, right });
        }
        Ok(Self::build(Kernel::LinearLog, slope_jumps(w), Vec::new()))
    }

    fn build(kernel: Kernel, raw: Vec<(f64, f64)>, singularities: Vec<f64>) -> Self {
        let terms: Vec<(f64, f64)> = raw.into_iter().map(|(x, w)| (x, w / PI)).collect();
        let (center, radius) = match (terms.first(), terms.last()) {
            (Some(a), Some(b)) => {
                let c = 0.5 * (a.0 + b.0);
                (c, 0.5 * (b.0 - a.0))
            }
            _ => (0.0, 0.0),
        };
        Self {
            kernel,
            terms,
            center,
            radius,
            convention: HilbertConvention::FourierMultiplier,
            singularities,
        }
    }

    pub fn convention(&self) -> HilbertConvention {
        self.convention
    }

    /// Jump discontinuities of the input, where the transform diverges
    /// logarithmically.
    pub fn singularities(&self) -> &[f64] {
        &self.singularities
    }

    /// Kernel terms as (position, weight/π).
    pub(crate) fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        for &s in &self.singularities {
            if (y - s).abs() <= SINGULARITY_TOL * s.abs().max(1.0) {
                return Err(Error::EvaluationAtSingularity(y));
            }
        }
        Ok(self.eval_unchecked(y))
    }

    /// Evaluates without the singularity check; returns ±∞ exactly on a jump.
    pub fn eval_unchecked(&self, y: f64) -> f64 {
        let u = y - self.center;
        let far = u.abs() > 2.0 * self.radius;
        match self.kernel {
            Kernel::Log => self
                .terms
                .iter()
                .map(|&(x, w)| {
                    if far {
                        w * (-(x - self.center) / u).ln_1p()
                    } else {
                        w * (y - x).abs().ln()
                    }
                })
                .sum(),
            Kernel::LinearLog => self
                .terms
                .iter()
                .map(|&(x, w)| {
                    let d = y - x;
                    if far {
                        w * d * (-(x - self.center) / u).ln_1p()
                    } else if d == 0.0 {
                        0.0
                    } else {
                        w * d * d.abs().ln()
                    }
                })
                .sum(),
        }
    }
}

/// Changes of slope (position, right slope − left slope) of a profile that
/// is flat outside its breakpoints.
fn slope_jumps(w: &PiecewiseLinear) -> Vec<(f64, f64)> {
    let pts = w.points();
    let mut out = Vec::with_capacity(pts.len());
    let mut prev = 0.0;
    for (i, &(x, _)) in pts.iter().enumerate() {
        let next = if i + 1 < pts.len() {
            (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - x)
        } else {
            0.0
        };
        let d = next - prev;
        if d != 0.0 {
            out.push((x, d));
        }
        prev = next;
    }
    out
}

/// H[w](y) for a piecewise-constant profile.
pub fn hilbert_pcw(w: &PiecewiseConstant, y: f64) -> Result<f64> {
    HilbertEvaluation::piecewise_constant(w).eval(y)
}

/// H[w](y) for a piecewise-linear profile with zero terminal values.
pub fn hilbert_plw(w: &PiecewiseLinear, y: f64) -> Result<f64> {
    HilbertEvaluation::piecewise_linear(w)?.eval(y)
}
