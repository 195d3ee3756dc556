use super::piecewise::{PiecewiseConstant, PiecewiseLinear, Segment};
use crate::error::{Error, Result};

/// Uniformly spaced samples, e.g. an AWG sample export.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWaveform {
    origin: f64,
    spacing: f64,
    samples: Vec<f64>,
}

impl SampledWaveform {
    pub fn new(origin: f64, spacing: f64, samples: Vec<f64>) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidWaveform(format!(
                "sample spacing must be positive, got {spacing}"
            )));
        }
        if !origin.is_finite() {
            return Err(Error::InvalidWaveform("origin must be finite".into()));
        }
        if samples.len() < 2 {
            return Err(Error::TooShort {
                len: samples.len(),
                min: 2,
            });
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidWaveform("non-finite sample".into()));
        }
        Ok(Self {
            origin,
            spacing,
            samples,
        })
    }

    /// Samples `f` at `origin + i·spacing` for i in 0..n.
    pub fn from_fn<F: Fn(f64) -> f64>(origin: f64, spacing: f64, n: usize, f: F) -> Result<Self> {
        let samples = (0..n).map(|i| f(origin + i as f64 * spacing)).collect();
        Self::new(origin, spacing, samples)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn position(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    /// Trapezoidal integral over the sample range.
    pub fn net_area(&self) -> f64 {
        let n = self.samples.len();
        let inner: f64 = self.samples[1..n - 1].iter().sum();
        self.spacing * (inner + 0.5 * (self.samples[0] + self.samples[n - 1]))
    }

    /// Trapezoidal integral of |w|.
    pub fn abs_area(&self) -> f64 {
        let n = self.samples.len();
        let inner: f64 = self.samples[1..n - 1].iter().map(|s| s.abs()).sum();
        self.spacing * (inner + 0.5 * (self.samples[0].abs() + self.samples[n - 1].abs()))
    }

    /// Linear interpolation through the samples.
    pub fn to_piecewise_linear(&self) -> PiecewiseLinear {
        let points = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, &y)| (self.position(i), y))
            .collect();
        PiecewiseLinear::new(points).expect("uniform grid is strictly increasing")
    }

    /// Zero-order hold: sample i is held on [x_i, x_i + spacing).
    pub fn to_zero_order_hold(&self) -> PiecewiseConstant {
        let segments = self
            .samples
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0.0)
            .map(|(i, &a)| Segment::new(self.position(i), self.position(i) + self.spacing, a))
            .collect();
        PiecewiseConstant::new(segments).expect("hold segments are ordered")
    }
}
