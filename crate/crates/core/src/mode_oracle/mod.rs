//! Brute-force counterparts of the closed forms: β² from direct Fourier
//! sums on uniform grids, Hilbert transforms by principal-value
//! quadrature, and energy bookkeeping in x and in k.

mod grid;
mod hilbert;

use rayon::prelude::*;

pub use grid::{oracle_beta2_level, DiscretizationSpec, MIN_PADDING, MIN_POINTS};
pub use hilbert::oracle_hilbert;

use crate::error::{Error, Result};
use crate::photon_content::ModeAmplitude;
use crate::waveform::{decompose_lr, evolve, FieldPair, LineParams, SampledWaveform};

/// Relative agreement demanded of the last two refinement levels.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLevel {
    pub spec: DiscretizationSpec,
    pub beta2: f64,
    /// |β²(this level) − β²(previous level)|; None on the first level.
    pub error_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate {
    pub levels: Vec<OracleLevel>,
}

impl OracleEstimate {
    pub fn value(&self) -> f64 {
        self.levels.last().map_or(0.0, |l| l.beta2)
    }

    pub fn error_bound(&self) -> Option<f64> {
        self.levels.last().and_then(|l| l.error_bound)
    }
}

/// β² by direct Riemann sums, evaluated on `spec` and `refinements`
/// successive doublings of it. Fails with NotConverged when the last two
/// levels differ by more than `rel_tol` relative.
pub fn oracle_beta2(
    fields: &FieldPair,
    line: &LineParams,
    spec: &DiscretizationSpec,
    refinements: usize,
    rel_tol: f64,
) -> Result<OracleEstimate> {
    fields.check_representation()?;
    spec.validate()?;
    if let Some(s) = fields.support() {
        spec.check_covers(s)?;
    }
    let mut specs = vec![*spec];
    for _ in 0..refinements {
        let next = specs[specs.len() - 1].refined();
        specs.push(next);
    }
    let values: Vec<f64> = specs
        .par_iter()
        .map(|s| oracle_beta2_level(fields, line, s))
        .collect();
    let levels: Vec<OracleLevel> = specs
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(i, (s, &b))| OracleLevel {
            spec: *s,
            beta2: b,
            error_bound: (i > 0).then(|| (b - values[i - 1]).abs()),
        })
        .collect();
    let est = OracleEstimate { levels };
    if let Some(err) = est.error_bound() {
        let tol = rel_tol * est.value().abs();
        if err > tol {
            return Err(Error::NotConverged {
                difference: err,
                tolerance: tol,
            });
        }
    }
    Ok(est)
}

/// ∫ [q²/(2c) + (∂φ)²/(2ℓ)] dx, exact for piecewise fields.
pub fn energy_classical(fields: &FieldPair, line: &LineParams) -> f64 {
    fields.q.square_integral() / (2.0 * line.capacitance())
        + fields.phi.derivative().square_integral() / (2.0 * line.inductance())
}

/// The same energy for sampled q and ∂φ, by the trapezoid rule.
pub fn energy_classical_sampled(
    q: &SampledWaveform,
    dphi: &SampledWaveform,
    line: &LineParams,
) -> f64 {
    let trap = |w: &SampledWaveform| {
        let s = w.samples();
        let inner: f64 = s.iter().map(|v| v * v).sum();
        (inner - 0.5 * (s[0] * s[0] + s[s.len() - 1] * s[s.len() - 1])) * w.spacing()
    };
    trap(q) / (2.0 * line.capacitance()) + trap(dphi) / (2.0 * line.inductance())
}

/// ∫ ħv|k||α|² dk. Fails when the outer half of the band still holds more
/// than 1e-3 of the total.
pub fn energy_modes(alpha: &ModeAmplitude, line: &LineParams) -> Result<f64> {
    let (value, outer) = alpha.energy(line);
    let tol = 1e-3 * value.abs();
    if outer > tol && value != 0.0 {
        return Err(Error::NotConverged {
            difference: outer,
            tolerance: tol,
        });
    }
    Ok(value)
}

/// Largest |β²(t) − β²(0)|/β²(0) over `times`, with β² from the oracle on
/// grids of the same cell size and band as `spec`, each covering the
/// evolved support.
pub fn oracle_time_invariance(
    fields: &FieldPair,
    line: &LineParams,
    times: &[f64],
    spec: &DiscretizationSpec,
) -> Result<f64> {
    fields.check_representation()?;
    let voltage = fields.q.scaled(1.0 / line.capacitance());
    let current = fields.phi.derivative().scaled(-1.0 / line.inductance());
    let movers = decompose_lr(&voltage, &current, line);
    let at = |t: f64| -> Result<f64> {
        let (v, i) = evolve(&movers, t, line);
        let f = FieldPair::from_voltage_current(&v, &i, line);
        let Some((a, b)) = f.support() else {
            return Ok(0.0);
        };
        let s = DiscretizationSpec::covering(a, b, spec.h(), spec.k_max, spec.n_k)?;
        Ok(oracle_beta2_level(&f, line, &s))
    };
    let base = at(0.0)?;
    let mut worst = 0.0f64;
    for &t in times {
        let b = at(t)?;
        if base != 0.0 {
            worst = worst.max((b - base).abs() / base.abs());
        } else {
            worst = worst.max(b.abs());
        }
    }
    Ok(worst)
}
