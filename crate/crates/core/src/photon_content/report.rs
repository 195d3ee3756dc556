use super::beta2::{
    beta2_general, beta2_logkernel, beta2_rightmover, ir_divergence_coefficient_fields,
    naive_photon_estimate, Beta2,
};
use super::mode::{mode_amplitude, KGrid};
use crate::error::{Error, Result};
use crate::transforms::BIPOLAR_TOL;
use crate::waveform::{
    bipolarity_check, decompose_lr, right_mover_fields, FieldPair, LineParams, PiecewiseConstant,
    Waveform,
};

/// Result of one β² route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodOutcome {
    Value(f64),
    Divergent,
    /// The route assumes a right mover and the pulse is not one.
    NotApplicable,
}

impl MethodOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            MethodOutcome::Value(v) => Some(*v),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MethodOutcome::Value(_) => "finite",
            MethodOutcome::Divergent => "divergent",
            MethodOutcome::NotApplicable => "not_applicable",
        }
    }
}

impl From<Beta2> for MethodOutcome {
    fn from(b: Beta2) -> Self {
        match b {
            Beta2::Finite(v) => MethodOutcome::Value(v),
            Beta2::Divergent => MethodOutcome::Divergent,
        }
    }
}

/// Which conditions for a finite photon number hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityFlags {
    /// ∫q = 0
    pub zero_net_charge: bool,
    /// φ → 0 at both ends
    pub flux_decays: bool,
    /// ∫V = 0
    pub bipolar_voltage: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonReport {
    pub beta2_general: MethodOutcome,
    pub beta2_rightmover: MethodOutcome,
    pub beta2_logkernel: MethodOutcome,
    pub ir_coefficient: f64,
    pub mean_abs_k: Option<f64>,
    pub median_abs_k: Option<f64>,
    pub naive_estimate: f64,
    pub flags: ValidityFlags,
    pub right_mover: bool,
}

impl PhotonReport {
    /// Largest relative difference between the finite methods.
    pub fn max_disagreement(&self) -> Option<f64> {
        let vals: Vec<f64> = [self.beta2_general, self.beta2_rightmover, self.beta2_logkernel]
            .iter()
            .filter_map(|m| m.value())
            .collect();
        if vals.len() < 2 {
            return None;
        }
        let mut worst = 0.0f64;
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[..i] {
                let scale = a.abs().max(b.abs());
                if scale > 0.0 {
                    worst = worst.max((a - b).abs() / scale);
                }
            }
        }
        Some(worst)
    }
}

fn right_mover_route(
    f: impl Fn(&PiecewiseConstant, &LineParams) -> Result<f64>,
    voltage: &PiecewiseConstant,
    line: &LineParams,
) -> Result<MethodOutcome> {
    match f(voltage, line) {
        Ok(v) => Ok(MethodOutcome::Value(v)),
        Err(Error::UnipolarPulse { .. }) => Ok(MethodOutcome::Divergent),
        Err(e) => Err(e),
    }
}

/// Analyzes a pulse given by its voltage and, optionally, its current.
/// Without a current the pulse is taken to be a right mover.
pub fn photon_report(
    voltage: &PiecewiseConstant,
    current: Option<&PiecewiseConstant>,
    line: &LineParams,
) -> Result<PhotonReport> {
    let (fields, right_mover) = match current {
        None => (right_mover_fields(voltage, line), true),
        Some(i) => {
            let d = decompose_lr(voltage, i, line);
            (FieldPair::from_voltage_current(voltage, i, line), d.f_l.is_zero())
        }
    };
    let general: MethodOutcome = beta2_general(&fields, line)?.into();
    let (rm, lk) = if right_mover {
        (
            right_mover_route(beta2_rightmover, voltage, line)?,
            right_mover_route(beta2_logkernel, voltage, line)?,
        )
    } else {
        (MethodOutcome::NotApplicable, MethodOutcome::NotApplicable)
    };
    let (mean_abs_k, median_abs_k) = if general.value().is_some_and(|v| v > 0.0) {
        let grid = KGrid::default_for(&fields)?;
        let m = mode_amplitude(&fields, line, &grid)?;
        (m.mean_abs_k(), m.median_abs_k())
    } else {
        (None, None)
    };
    let bipolar =
        bipolarity_check(&Waveform::PiecewiseConstant(voltage.clone()), BIPOLAR_TOL).is_bipolar();
    Ok(PhotonReport {
        beta2_general: general,
        beta2_rightmover: rm,
        beta2_logkernel: lk,
        ir_coefficient: ir_divergence_coefficient_fields(&fields, line),
        mean_abs_k,
        median_abs_k,
        naive_estimate: naive_photon_estimate(voltage, line),
        flags: ValidityFlags {
            zero_net_charge: fields.charge_is_neutral(),
            flux_decays: fields.flux_decays(),
            bipolar_voltage: bipolar,
        },
        right_mover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical() -> PiecewiseConstant {
        PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
            .unwrap()
    }

    #[test]
    fn canonical_report() {
        let r = photon_report(&canonical(), None, &LineParams::natural()).unwrap();
        assert!(r.right_mover);
        assert!(r.max_disagreement().unwrap() < 1e-9);
        assert_eq!(r.ir_coefficient, 0.0);
        assert_eq!(r.naive_estimate, 16.0);
        assert!(r.flags.zero_net_charge && r.flags.flux_decays && r.flags.bipolar_voltage);
        assert!(r.mean_abs_k.is_some());
    }

    #[test]
    fn standing_report_skips_right_mover_routes() {
        let i = PiecewiseConstant::zero();
        let r = photon_report(&canonical(), Some(&i), &LineParams::natural()).unwrap();
        assert!(!r.right_mover);
        assert_eq!(r.beta2_rightmover, MethodOutcome::NotApplicable);
        let v = r.beta2_general.value().unwrap();
        assert!((v - 0.999_323).abs() < 5e-5);
    }

    #[test]
    fn explicit_right_mover_current_is_recognized() {
        let line = LineParams::new(2.0, 0.5, 1.0).unwrap();
        let i = canonical().scaled(1.0 / line.impedance());
        let r = photon_report(&canonical(), Some(&i), &line).unwrap();
        assert!(r.right_mover);
        assert!(r.max_disagreement().unwrap() < 1e-9);
    }

    #[test]
    fn unipolar_report() {
        let sq = PiecewiseConstant::from_triples(&[(0.0, 1.0, 1.0)]).unwrap();
        let r = photon_report(&sq, None, &LineParams::natural()).unwrap();
        assert_eq!(r.beta2_general, MethodOutcome::Divergent);
        assert_eq!(r.beta2_rightmover, MethodOutcome::Divergent);
        assert_eq!(r.beta2_logkernel, MethodOutcome::Divergent);
        assert!(!r.flags.bipolar_voltage && !r.flags.flux_decays);
        assert!((r.ir_coefficient - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(r.max_disagreement().is_none());
    }
}
