use crate::error::{Error, Result};

/// Physical constants of an ideal lossless line.
///
/// Stored as capacitance and inductance per unit length plus the reduced
/// Planck constant; the wave velocity and characteristic impedance are
/// derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams {
    capacitance: f64,
    inductance: f64,
    hbar: f64,
}

impl LineParams {
    pub fn new(capacitance: f64, inductance: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("c", capacitance), ("l", inductance), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidLine(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        Ok(Self {
            capacitance,
            inductance,
            hbar,
        })
    }

    /// c = v = ħ = 1, hence ℓ = Z0 = 1.
    pub fn natural() -> Self {
        Self {
            capacitance: 1.0,
            inductance: 1.0,
            hbar: 1.0,
        }
    }

    /// Builds the line from capacitance and velocity (ℓ = 1/(v² c)).
    pub fn from_capacitance_velocity(capacitance: f64, velocity: f64, hbar: f64) -> Result<Self> {
        if !(velocity.is_finite() && velocity > 0.0) {
            return Err(Error::InvalidLine(format!(
                "v must be finite and positive, got {velocity}"
            )));
        }
        if !(capacitance.is_finite() && capacitance > 0.0) {
            return Err(Error::InvalidLine(format!(
                "c must be finite and positive, got {capacitance}"
            )));
        }
        Self::new(capacitance, 1.0 / (velocity * velocity * capacitance), hbar)
    }

    pub fn capacitance(&self) -> f64 {
        self.capacitance
    }

    pub fn inductance(&self) -> f64 {
        self.inductance
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// v = 1/√(ℓc)
    pub fn velocity(&self) -> f64 {
        1.0 / (self.inductance * self.capacitance).sqrt()
    }

    /// Z0 = √(ℓ/c)
    pub fn impedance(&self) -> f64 {
        (self.inductance / self.capacitance).sqrt()
    }
}

impl Default for LineParams {
    fn default() -> Self {
        Self::natural()
    }
}
