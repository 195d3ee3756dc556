//! Classical pulse profiles, line constants, and their mapping onto the
//! charge-density and flux fields and onto left/right movers.

mod fields;
mod line;
mod piecewise;
mod sampled;

pub use fields::{
    decompose_lr, evolve, right_mover_fields, FieldPair, MoverDecomposition, REPRESENTATION_TOL,
};
pub use line::LineParams;
pub use piecewise::{LinearPiece, PiecewiseConstant, PiecewiseLinear, Segment};
pub use sampled::SampledWaveform;

/// Any supported profile representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Waveform {
    PiecewiseConstant(PiecewiseConstant),
    PiecewiseLinear(PiecewiseLinear),
    Sampled(SampledWaveform),
}

impl From<PiecewiseConstant> for Waveform {
    fn from(w: PiecewiseConstant) -> Self {
        Waveform::PiecewiseConstant(w)
    }
}

impl From<PiecewiseLinear> for Waveform {
    fn from(w: PiecewiseLinear) -> Self {
        Waveform::PiecewiseLinear(w)
    }
}

impl From<SampledWaveform> for Waveform {
    fn from(w: SampledWaveform) -> Self {
        Waveform::Sampled(w)
    }
}

impl Waveform {
    pub fn net_area(&self) -> f64 {
        net_area(self)
    }

    pub fn abs_area(&self) -> f64 {
        match self {
            Waveform::PiecewiseConstant(w) => w.abs_area(),
            Waveform::PiecewiseLinear(w) => w.abs_area(),
            Waveform::Sampled(w) => w.abs_area(),
        }
    }

    /// Point value; samples are interpolated linearly.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Waveform::PiecewiseConstant(w) => w.eval(x),
            Waveform::PiecewiseLinear(w) => w.eval(x),
            Waveform::Sampled(w) => w.to_piecewise_linear().eval(x),
        }
    }
}

/// ∫ w(x) dx: exact for piecewise profiles, trapezoidal for samples.
pub fn net_area(w: &Waveform) -> f64 {
    match w {
        Waveform::PiecewiseConstant(w) => w.net_area(),
        Waveform::PiecewiseLinear(w) => w.net_area(),
        Waveform::Sampled(w) => w.net_area(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarity {
    Bipolar,
    Unipolar { area: f64 },
}

impl Polarity {
    pub fn is_bipolar(&self) -> bool {
        matches!(self, Polarity::Bipolar)
    }
}

/// Bipolar iff |∫V| ≤ tol·∫|V|.
pub fn bipolarity_check(w: &Waveform, tol: f64) -> Polarity {
    assert!(tol > 0.0, "bipolarity tolerance must be positive");
    let area = w.net_area();
    if area.abs() <= tol * w.abs_area() {
        Polarity::Bipolar
    } else {
        Polarity::Unipolar { area }
    }
}
