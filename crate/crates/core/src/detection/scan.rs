use rayon::prelude::*;

use super::coupler::{bogoliubov_components, coupler_grid, CouplerReport, Window};
use crate::error::{Error, Result};
use crate::numerics::{fit_line, LineFit};
use crate::photon_content::KGrid;
use crate::transforms::CoefficientFunctions;
use crate::waveform::LineParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaptureRow {
    /// Half-width of the window around the support center.
    pub half_width: f64,
    pub report: CouplerReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaptureScan {
    pub rows: Vec<CaptureRow>,
    /// ln ε against ln L over the top decade of L.
    pub power_law: Option<LineFit>,
    /// ln ε against L over the same points.
    pub exponential: Option<LineFit>,
}

impl CaptureScan {
    pub fn is_monotone_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].report.epsilon < w[0].report.epsilon)
    }

    /// True when the power law fits ln ε better than an exponential.
    pub fn prefers_power_law(&self) -> bool {
        match (&self.power_law, &self.exponential) {
            (Some(p), Some(e)) => p.residual_ss < e.residual_ss,
            _ => false,
        }
    }
}

/// Evaluates the coupler on windows [c − L, c + L] around the support
/// center c and fits the decay of ε over the top decade of L.
///
/// `k_max` defaults to the band edge of the photon-number grid.
pub fn capture_scan(
    theta: &CoefficientFunctions,
    half_widths: &[f64],
    line: &LineParams,
    k_max: Option<f64>,
) -> Result<CaptureScan> {
    let Some((a, b)) = theta.field_support() else {
        return Err(Error::InvalidWaveform("no photons: the pulse is zero".into()));
    };
    if half_widths.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("window half-widths must increase".into()));
    }
    let k_max = match k_max {
        Some(k) => k,
        None => KGrid::default_for(&theta.fields())?.k_max(),
    };
    let c = 0.5 * (a + b);
    let rows: Vec<CaptureRow> = half_widths
        .par_iter()
        .map(|&l| {
            let window = Window::symmetric(c, l);
            let grid = coupler_grid(theta, window, k_max)?;
            let report = bogoliubov_components(theta, window, line, &grid)?.report();
            Ok(CaptureRow {
                half_width: l,
                report,
            })
        })
        .collect::<Result<_>>()?;

    let top = half_widths.last().copied().unwrap_or(0.0) / 10.0;
    let tail: Vec<&CaptureRow> = rows
        .iter()
        .filter(|r| r.half_width >= top * (1.0 - 1e-12) && r.report.epsilon > 0.0)
        .collect();
    let ln_eps: Vec<f64> = tail.iter().map(|r| r.report.epsilon.ln()).collect();
    let ln_l: Vec<f64> = tail.iter().map(|r| r.half_width.ln()).collect();
    let l: Vec<f64> = tail.iter().map(|r| r.half_width).collect();
    Ok(CaptureScan {
        power_law: fit_line(&ln_l, &ln_eps),
        exponential: fit_line(&l, &ln_eps),
        rows,
    })
}

/// Fitted decay power p of |f(y)| ~ |y|^{−p} from log-spaced samples on
/// [y0, y1] (y0 > 0), together with the fit.
pub fn tail_exponent(f: impl Fn(f64) -> f64, y0: f64, y1: f64, points: usize) -> Option<LineFit> {
    let n = points.max(2);
    let (l0, l1) = (y0.ln(), y1.ln());
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let ly = l0 + (l1 - l0) * i as f64 / (n - 1) as f64;
        let v = f(ly.exp()).abs();
        if v > 0.0 {
            xs.push(ly);
            ys.push(v.ln());
        }
    }
    fit_line(&xs, &ys).map(|fit| LineFit {
        slope: -fit.slope,
        ..fit
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::coefficient_functions_rightmover;
    use crate::waveform::PiecewiseConstant;

    fn canonical() -> PiecewiseConstant {
        PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
            .unwrap()
    }

    #[test]
    fn canonical_theta_tails() {
        let th = coefficient_functions_rightmover(&canonical(), &LineParams::natural()).unwrap();
        let q = tail_exponent(|y| th.theta_q_unchecked(y).re, 10.0, 1e3, 40).unwrap();
        let p = tail_exponent(|y| th.theta_phi_unchecked(y).re, 10.0, 1e3, 40).unwrap();
        assert!((q.slope - 3.0).abs() < 0.1, "{}", q.slope);
        assert!((p.slope - 2.0).abs() < 0.1, "{}", p.slope);
    }

    #[test]
    fn short_scan_decreases() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let s = capture_scan(&th, &[4.0, 8.0, 16.0], &line, Some(60.0)).unwrap();
        assert!(s.is_monotone_decreasing(), "{:?}", s.rows);
        for r in &s.rows {
            assert!((r.report.norm_in_window - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn scan_rejects_bad_input() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        assert!(capture_scan(&th, &[8.0, 4.0], &line, Some(50.0)).is_err());
        assert!(matches!(
            capture_scan(&th, &[1.0, 4.0], &line, Some(50.0)),
            Err(Error::WindowInsideSupport { .. })
        ));
        let z = coefficient_functions_rightmover(&PiecewiseConstant::zero(), &line).unwrap();
        assert!(capture_scan(&z, &[4.0], &line, None).is_err());
    }
}
