use super::line::LineParams;
use super::piecewise::{PiecewiseConstant, PiecewiseLinear};
use crate::error::{Condition, Error, Result};

/// Relative tolerance for the zero-charge and flux-decay conditions.
pub const REPRESENTATION_TOL: f64 = 1e-9;

/// Expectation values of the charge-density and flux fields at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPair {
    /// Charge density q(x) = c·V(x).
    pub q: PiecewiseConstant,
    /// Flux φ(x) = −ℓ ∫_{−∞}^x I, anchored so that φ(−∞) = 0.
    pub phi: PiecewiseLinear,
    flux_decays: bool,
}

impl FieldPair {
    /// A flux whose terminal values vanish to within rounding is stored
    /// with exactly zero terminals.
    pub fn new(q: PiecewiseConstant, mut phi: PiecewiseLinear) -> Self {
        let scale = phi
            .points()
            .iter()
            .fold(0.0f64, |m, p| m.max(p.1.abs()));
        let flux_decays = phi.decays(REPRESENTATION_TOL * scale.max(f64::MIN_POSITIVE));
        if flux_decays {
            phi.zero_terminals();
        }
        Self {
            q,
            phi,
            flux_decays,
        }
    }

    /// Fields of an arbitrary (V, I) snapshot: q = cV, φ = −ℓ ∫ I.
    pub fn from_voltage_current(
        voltage: &PiecewiseConstant,
        current: &PiecewiseConstant,
        line: &LineParams,
    ) -> Self {
        Self::new(
            voltage.scaled(line.capacitance()),
            current.cumulative().scaled(-line.inductance()),
        )
    }

    /// A pulse at rest: I = 0, so φ ≡ 0.
    pub fn standing(voltage: &PiecewiseConstant, line: &LineParams) -> Self {
        Self::new(voltage.scaled(line.capacitance()), PiecewiseLinear::zero())
    }

    pub fn zero() -> Self {
        Self::new(PiecewiseConstant::zero(), PiecewiseLinear::zero())
    }

    /// φ(+∞) = 0 given the left anchoring φ(−∞) = 0.
    pub fn flux_decays(&self) -> bool {
        self.flux_decays
    }

    pub fn net_charge(&self) -> f64 {
        self.q.net_area()
    }

    pub fn charge_is_neutral(&self) -> bool {
        self.q.net_area().abs() <= REPRESENTATION_TOL * self.q.abs_area()
    }

    /// Checks both existence conditions of the single-mode description.
    pub fn check_representation(&self) -> Result<()> {
        if !self.charge_is_neutral() {
            return Err(Error::RepresentationDoesNotExist(Condition::ZeroNetCharge));
        }
        if !self.flux_decays {
            return Err(Error::RepresentationDoesNotExist(Condition::FluxDecays));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.phi.is_zero()
    }

    /// Smallest interval outside which both fields vanish.
    pub fn support(&self) -> Option<(f64, f64)> {
        let a = self.q.support();
        let b = if self.phi.is_zero() {
            None
        } else {
            self.phi.support()
        };
        match (a, b) {
            (Some(a), Some(b)) => Some((a.0.min(b.0), a.1.max(b.1))),
            (x, None) | (None, x) => x,
        }
    }

    /// Every position where q jumps or φ has a kink.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = self.q.breakpoints();
        pts.extend(self.phi.breakpoints());
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

/// Fields of a right mover determined by V alone: q = cV, φ = −(1/v)∫V.
pub fn right_mover_fields(voltage: &PiecewiseConstant, line: &LineParams) -> FieldPair {
    FieldPair::new(
        voltage.scaled(line.capacitance()),
        voltage.cumulative().scaled(-1.0 / line.velocity()),
    )
}

/// Right- and left-moving profiles f_R, f_L of a snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct MoverDecomposition {
    pub f_r: PiecewiseConstant,
    pub f_l: PiecewiseConstant,
}

impl MoverDecomposition {
    /// Reconstructs (V, I) = (f_R + f_L, (f_R − f_L)/Z0).
    pub fn voltage_current(&self, line: &LineParams) -> (PiecewiseConstant, PiecewiseConstant) {
        (
            self.f_r.add(&self.f_l),
            self.f_r.sub(&self.f_l).scaled(1.0 / line.impedance()),
        )
    }
}

/// f_R = (V + Z0·I)/2, f_L = (V − Z0·I)/2.
pub fn decompose_lr(
    voltage: &PiecewiseConstant,
    current: &PiecewiseConstant,
    line: &LineParams,
) -> MoverDecomposition {
    let zi = current.scaled(line.impedance());
    MoverDecomposition {
        f_r: voltage.add(&zi).scaled(0.5),
        f_l: voltage.sub(&zi).scaled(0.5),
    }
}

/// V(x,t) = f_R(x − vt) + f_L(x + vt), I(x,t) = (f_R(x − vt) − f_L(x + vt))/Z0.
pub fn evolve(
    d: &MoverDecomposition,
    t: f64,
    line: &LineParams,
) -> (PiecewiseConstant, PiecewiseConstant) {
    let shift = line.velocity() * t;
    MoverDecomposition {
        f_r: d.f_r.shifted(shift),
        f_l: d.f_l.shifted(-shift),
    }
    .voltage_current(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical() -> PiecewiseConstant {
        PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
            .unwrap()
    }

    #[test]
    fn right_mover_fields_of_canonical_pulse() {
        let f = right_mover_fields(&canonical(), &LineParams::natural());
        assert_eq!(f.q, canonical());
        assert_eq!(f.phi.eval(0.0), 0.0);
        assert_eq!(f.phi.eval(-1.0), 1.0);
        assert_eq!(f.phi.eval(2.0), 0.0);
        assert!(f.flux_decays());
        assert!(f.check_representation().is_ok());
    }

    #[test]
    fn rounding_residue_in_flux_is_cleared() {
        let phi = PiecewiseLinear::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, -2.2e-16)]).unwrap();
        let f = FieldPair::new(PiecewiseConstant::zero(), phi);
        assert!(f.flux_decays());
        assert_eq!(f.phi.right_value(), 0.0);
        assert_eq!(f.phi.support(), Some((0.0, 2.0)));
    }

    #[test]
    fn unipolar_right_mover_violates_flux_decay() {
        let sq = PiecewiseConstant::from_triples(&[(0.0, 1.0, 1.0)]).unwrap();
        let f = right_mover_fields(&sq, &LineParams::natural());
        assert_eq!(f.phi.eval(3.0), -1.0);
        assert!(!f.flux_decays());
        assert_eq!(
            f.check_representation(),
            Err(Error::RepresentationDoesNotExist(Condition::ZeroNetCharge))
        );
    }

    #[test]
    fn zero_voltage_gives_zero_fields() {
        let f = right_mover_fields(&PiecewiseConstant::zero(), &LineParams::natural());
        assert!(f.is_zero());
        assert!(f.check_representation().is_ok());
    }

    #[test]
    fn right_mover_relation_holds_at_segment_interiors() {
        let line = LineParams::new(2.0, 0.5, 1.0).unwrap();
        let v = canonical().scaled(1.7);
        let f = right_mover_fields(&v, &line);
        let current = f.phi.derivative().scaled(-1.0 / line.inductance());
        for x in [-1.5, -0.3, 0.7, 1.9] {
            let lhs = v.eval(x);
            let rhs = line.impedance() * current.eval(x);
            assert!((lhs - rhs).abs() < 1e-12, "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn decomposition_cases() {
        let line = LineParams::natural();
        let v = canonical();
        let right = decompose_lr(&v, &v, &line);
        assert!(right.f_l.is_zero());
        assert_eq!(right.f_r, v);

        let standing = decompose_lr(&v, &PiecewiseConstant::zero(), &line);
        assert_eq!(standing.f_r, v.scaled(0.5));
        assert_eq!(standing.f_l, v.scaled(0.5));

        let i = PiecewiseConstant::from_triples(&[(0.0, 1.0, 3.0)]).unwrap();
        let d = decompose_lr(&PiecewiseConstant::zero(), &i, &line);
        assert_eq!(d.f_r, i.scaled(0.5));
        assert_eq!(d.f_l, i.scaled(-0.5));
    }

    #[test]
    fn evolution_translates_and_splits() {
        let line = LineParams::natural();
        let v = canonical();
        let right = decompose_lr(&v, &v, &line);
        let (v1, i1) = evolve(&right, 1.0, &line);
        assert_eq!(v1.eval(0.5), v.eval(-0.5));
        assert_eq!(v1.eval(2.5), v.eval(1.5));
        assert_eq!(i1, v1);

        let standing = decompose_lr(&v, &PiecewiseConstant::zero(), &line);
        let (v10, _) = evolve(&standing, 10.0, &line);
        assert_eq!(v10.eval(10.0), 0.5);
        assert_eq!(v10.eval(-10.0), 0.5);
        assert_eq!(v10.eval(0.0), 0.0);
    }

    #[test]
    fn round_trip_at_t_zero() {
        let line = LineParams::new(1.3, 0.4, 1.0).unwrap();
        let v = canonical();
        let i = PiecewiseConstant::from_triples(&[(-0.5, 0.25, 2.0), (0.25, 3.0, -0.7)]).unwrap();
        let (v0, i0) = evolve(&decompose_lr(&v, &i, &line), 0.0, &line);
        for k in 0..200 {
            let x = -3.0 + 0.0301 * k as f64;
            assert!((v0.eval(x) - v.eval(x)).abs() < 1e-12);
            assert!((i0.eval(x) - i.eval(x)).abs() < 1e-12);
        }
    }
}
