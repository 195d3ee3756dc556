use num_complex::Complex64;

use super::hilbert::HilbertEvaluation;
use crate::error::{Error, Result};
use crate::waveform::{
    bipolarity_check, FieldPair, LineParams, PiecewiseConstant, PiecewiseLinear, Polarity,
    Waveform,
};

/// Relative tolerance used to decide bipolarity before building modes.
pub const BIPOLAR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    RightMover,
    General,
}

/// The complex pair (θ_q, θ_φ) defining β·b† = (1/2ħ)∫(θ_q Φ̂ − θ_φ Q̂)dx.
///
/// Imaginary parts are the fields themselves; real parts are Hilbert
/// transforms of the stored source profiles:
///   Re θ_q = H[cv ∂φ],  Re θ_φ = H[(1/cv) ∫q].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFunctions {
    im_q: PiecewiseConstant,
    im_phi: PiecewiseLinear,
    re_q_source: PiecewiseConstant,
    re_phi_source: PiecewiseLinear,
    re_q: HilbertEvaluation,
    re_phi: HilbertEvaluation,
    provenance: Provenance,
}

impl CoefficientFunctions {
    fn build(
        im_q: PiecewiseConstant,
        im_phi: PiecewiseLinear,
        re_q_source: PiecewiseConstant,
        re_phi_source: PiecewiseLinear,
        provenance: Provenance,
    ) -> Result<Self> {
        let re_q = HilbertEvaluation::piecewise_constant(&re_q_source);
        let re_phi = HilbertEvaluation::piecewise_linear(&re_phi_source)?;
        Ok(Self {
            im_q,
            im_phi,
            re_q_source,
            re_phi_source,
            re_q,
            re_phi,
            provenance,
        })
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn theta_q(&self, x: f64) -> Result<Complex64> {
        Ok(Complex64::new(self.re_q.eval(x)?, self.im_q.eval(x)))
    }

    pub fn theta_phi(&self, x: f64) -> Result<Complex64> {
        Ok(Complex64::new(self.re_phi.eval(x)?, self.im_phi.eval(x)))
    }

    pub(crate) fn theta_q_unchecked(&self, x: f64) -> Complex64 {
        Complex64::new(self.re_q.eval_unchecked(x), self.im_q.eval(x))
    }

    pub(crate) fn theta_phi_unchecked(&self, x: f64) -> Complex64 {
        Complex64::new(self.re_phi.eval_unchecked(x), self.im_phi.eval(x))
    }

    /// The fields (q, φ) carried by the imaginary parts.
    pub fn fields(&self) -> FieldPair {
        FieldPair::new(self.im_q.clone(), self.im_phi.clone())
    }

    pub fn im_q(&self) -> &PiecewiseConstant {
        &self.im_q
    }

    pub fn im_phi(&self) -> &PiecewiseLinear {
        &self.im_phi
    }

    /// Profile whose Hilbert transform is Re θ_q.
    pub fn re_q_source(&self) -> &PiecewiseConstant {
        &self.re_q_source
    }

    /// Profile whose Hilbert transform is Re θ_φ.
    pub fn re_phi_source(&self) -> &PiecewiseLinear {
        &self.re_phi_source
    }

    pub(crate) fn re_q_hilbert(&self) -> &HilbertEvaluation {
        &self.re_q
    }

    pub(crate) fn re_phi_hilbert(&self) -> &HilbertEvaluation {
        &self.re_phi
    }

    /// Positions where Re θ_q diverges logarithmically.
    pub fn singularities(&self) -> &[f64] {
        self.re_q.singularities()
    }

    pub fn is_zero(&self) -> bool {
        self.im_q.is_zero() && self.im_phi.is_zero()
    }

    /// Support of the imaginary parts (the field support).
    pub fn field_support(&self) -> Option<(f64, f64)> {
        self.fields().support()
    }
}

/// θ_q = −H[cV] + icV, θ_φ = H[(1/v)∫V] − (i/v)∫V for a right mover.
pub fn coefficient_functions_rightmover(
    voltage: &PiecewiseConstant,
    line: &LineParams,
) -> Result<CoefficientFunctions> {
    if let Polarity::Unipolar { area } =
        bipolarity_check(&Waveform::PiecewiseConstant(voltage.clone()), BIPOLAR_TOL)
    {
        return Err(Error::UnipolarPulse { area });
    }
    let c = line.capacitance();
    let v = line.velocity();
    let cumulative = voltage.cumulative();
    CoefficientFunctions::build(
        voltage.scaled(c),
        cumulative.scaled(-1.0 / v),
        voltage.scaled(-c),
        cumulative.scaled(1.0 / v),
        Provenance::RightMover,
    )
}

/// θ_q = H[cv ∂φ] + iq, θ_φ = H[(1/cv)∫q] + iφ for arbitrary fields.
pub fn coefficient_functions_general(
    fields: &FieldPair,
    line: &LineParams,
) -> Result<CoefficientFunctions> {
    fields.check_representation()?;
    let cv = line.capacitance() * line.velocity();
    CoefficientFunctions::build(
        fields.q.clone(),
        fields.phi.clone(),
        fields.phi.derivative().scaled(cv),
        fields.q.cumulative().scaled(1.0 / cv),
        Provenance::General,
    )
}
