use rayon::prelude::*;

use super::beta2::beta2_logkernel;
use crate::error::{Error, Result};
use crate::numerics::{fit_line, LineFit};
use crate::waveform::{LineParams, PiecewiseConstant, Segment};

/// One unipolar cluster: +V0, −V0, +V0 on three consecutive intervals of
/// length x0 starting at `start`.
fn cluster(start: f64, amplitude: f64, unit: f64) -> [Segment; 3] {
    [
        Segment::new(start, start + unit, amplitude),
        Segment::new(start + unit, start + 2.0 * unit, -amplitude),
        Segment::new(start + 2.0 * unit, start + 3.0 * unit, amplitude),
    ]
}

/// Two clusters of net area ±V0·x0 whose leading edges are w·x0 apart.
/// Bipolar as a whole although neither cluster is.
pub fn split_pulse(w: f64, amplitude: f64, unit: f64) -> Result<PiecewiseConstant> {
    if !(w > 3.0) {
        return Err(Error::OverlappingSubPulses(w));
    }
    let mut segs = cluster(0.0, amplitude, unit).to_vec();
    segs.extend(cluster(w * unit, -amplitude, unit));
    PiecewiseConstant::new(segs)
}

/// The first cluster on its own.
pub fn split_pulse_half(amplitude: f64, unit: f64) -> PiecewiseConstant {
    PiecewiseConstant::new(cluster(0.0, amplitude, unit).to_vec())
        .expect("cluster segments are ordered")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub w: f64,
    pub beta2: f64,
}

/// β² of the unit split pulse at each separation, in input order.
pub fn split_pulse_sweep(separations: &[f64], line: &LineParams) -> Result<Vec<SweepPoint>> {
    separations
        .par_iter()
        .map(|&w| {
            let v = split_pulse(w, 1.0, 1.0)?;
            Ok(SweepPoint {
                w,
                beta2: beta2_logkernel(&v, line)?,
            })
        })
        .collect()
}

/// Least-squares fit of β² against ln w.
pub fn fit_log_growth(points: &[SweepPoint]) -> Option<LineFit> {
    let xs: Vec<f64> = points.iter().map(|p| p.w.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.beta2).collect();
    fit_line(&xs, &ys)
}
