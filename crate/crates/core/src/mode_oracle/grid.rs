use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::photon_content::pairwise_sum;
use crate::waveform::{FieldPair, LineParams, PiecewiseConstant, PiecewiseLinear};

pub const MIN_POINTS: usize = 256;
pub const MIN_PADDING: f64 = 8.0;

/// Uniform x- and k-grids for brute-force sums.
///
/// The x-grid has n_x cells on [x_min, x_max]; the k-grid has n_k points
/// (j + ½)·Δk − k_max, Δk = 2k_max/n_k, so it is symmetric and never hits 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizationSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub k_max: f64,
    pub n_k: usize,
}

impl DiscretizationSpec {
    /// Default grid: 256 cells across the support, band edge 128π/W,
    /// Δk = 2π/(32W).
    pub fn for_fields(fields: &FieldPair) -> Result<Self> {
        let (a, b) = fields.support().unwrap_or((-0.5, 0.5));
        let width = b - a;
        Self::covering(a, b, width / 256.0, 128.0 * PI / width, 4096)
    }

    /// A grid of cell size h covering [a, b] with the minimum padding.
    pub fn covering(a: f64, b: f64, h: f64, k_max: f64, n_k: usize) -> Result<Self> {
        let width = b - a;
        let pad = (MIN_PADDING * width / h).ceil() * h;
        let n_x = ((width + 2.0 * pad) / h).round() as usize;
        let spec = Self {
            x_min: a - pad,
            x_max: a - pad + n_x as f64 * h,
            n_x,
            k_max,
            n_k,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > self.x_min) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "empty x-window [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_x < MIN_POINTS || self.n_k < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_POINTS} points, got n_x = {}, n_k = {}",
                self.n_x, self.n_k
            )));
        }
        if !(self.k_max > 0.0 && self.k_max.is_finite()) {
            return Err(Error::InvalidGrid(format!("k_max = {}", self.k_max)));
        }
        if self.n_k % 2 != 0 {
            return Err(Error::InvalidGrid("n_k must be even".into()));
        }
        Ok(())
    }

    /// Checks that the window holds `support` with the required padding.
    pub fn check_covers(&self, support: (f64, f64)) -> Result<()> {
        let w = support.1 - support.0;
        let tol = 1e-9 * w.max(1.0);
        if self.x_min > support.0 - MIN_PADDING * w + tol
            || self.x_max < support.1 + MIN_PADDING * w - tol
        {
            return Err(Error::InvalidGrid(format!(
                "x-window [{}, {}] must cover [{}, {}] padded by {MIN_PADDING} widths",
                self.x_min, self.x_max, support.0, support.1
            )));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_x as f64
    }

    pub fn dk(&self) -> f64 {
        2.0 * self.k_max / self.n_k as f64
    }

    pub fn k(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dk() - self.k_max
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.h()
    }

    /// Both grids doubled: half the cell size, twice the band, same Δk.
    pub fn refined(&self) -> Self {
        Self {
            n_x: 2 * self.n_x,
            k_max: 2.0 * self.k_max,
            n_k: 2 * self.n_k,
            ..*self
        }
    }
}

/// (index of first cell, averages) over the cells where `w` is nonzero.
fn cell_averages_pcw(w: &PiecewiseConstant, spec: &DiscretizationSpec) -> (usize, Vec<f64>) {
    let h = spec.h();
    let Some((a, b)) = w.support() else {
        return (0, Vec::new());
    };
    let first = (((a - spec.x_min) / h).floor().max(0.0)) as usize;
    let last = (((b - spec.x_min) / h).ceil() as usize).min(spec.n_x);
    let mut out = vec![0.0; last.saturating_sub(first)];
    for s in w.segments() {
        let i0 = (((s.start - spec.x_min) / h).floor().max(0.0)) as usize;
        let i1 = (((s.end - spec.x_min) / h).ceil() as usize).min(spec.n_x);
        for i in i0..i1 {
            let lo = spec.x_min + i as f64 * h;
            let overlap = (lo + h).min(s.end) - lo.max(s.start);
            if overlap > 0.0 {
                out[i - first] += s.amplitude * overlap / h;
            }
        }
    }
    (first, out)
}

fn cell_averages_plw(w: &PiecewiseLinear, spec: &DiscretizationSpec) -> (usize, Vec<f64>) {
    let h = spec.h();
    let Some((a, b)) = w.support() else {
        return (0, Vec::new());
    };
    let first = (((a - spec.x_min) / h).floor().max(0.0)) as usize;
    let last = (((b - spec.x_min) / h).ceil() as usize).min(spec.n_x);
    let bp = w.breakpoints();
    let out = (first..last)
        .map(|i| {
            let lo = spec.x_min + i as f64 * h;
            let hi = lo + h;
            let mut cuts = vec![lo];
            cuts.extend(bp.iter().copied().filter(|&x| x > lo && x < hi));
            cuts.push(hi);
            // trapezoid per linear sub-interval is exact
            cuts.windows(2)
                .map(|c| 0.5 * (c[1] - c[0]) * (w.eval(c[0]) + w.eval(c[1])))
                .sum::<f64>()
                / h
        })
        .collect();
    (first, out)
}

/// Σ_i h·f_i·e^{−ik x_i} over the stored cells.
fn dft_at(first: usize, vals: &[f64], spec: &DiscretizationSpec, k: f64) -> Complex64 {
    if vals.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let h = spec.h();
    let step = Complex64::from_polar(1.0, -k * h);
    let mut phase = Complex64::from_polar(1.0, -k * spec.cell_center(first));
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, &v) in vals.iter().enumerate() {
        if v != 0.0 {
            sum += phase * v;
        }
        phase *= step;
        // resynchronize the recurrence periodically
        if n % 1024 == 1023 {
            phase = Complex64::from_polar(1.0, -k * spec.cell_center(first + n + 1));
        }
    }
    sum * h
}

/// (1/4πħ)·Σ_k [cv|k||φ̃|² + |q̃|²/(cv|k|)]·Δk on one grid.
pub fn oracle_beta2_level(fields: &FieldPair, line: &LineParams, spec: &DiscretizationSpec) -> f64 {
    let cv = line.capacitance() * line.velocity();
    let (q0, qv) = cell_averages_pcw(&fields.q, spec);
    let (p0, pv) = cell_averages_plw(&fields.phi, spec);
    let dk = spec.dk();
    let terms: Vec<f64> = (0..spec.n_k)
        .into_par_iter()
        .map(|j| {
            let k = spec.k(j);
            let fq = dft_at(q0, &qv, spec, k).norm_sqr();
            let fp = dft_at(p0, &pv, spec, k).norm_sqr();
            (cv * k.abs() * fp + fq / (cv * k.abs())) * dk
        })
        .collect();
    pairwise_sum(&terms) / (4.0 * PI * line.hbar())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_spec_meets_invariants() {
        let v = PiecewiseConstant::from_triples(&[(-2.0, 0.0, 1.0), (0.0, 2.0, -1.0)]).unwrap();
        let f = crate::waveform::right_mover_fields(&v, &LineParams::natural());
        let s = DiscretizationSpec::for_fields(&f).unwrap();
        s.check_covers((-2.0, 2.0)).unwrap();
        assert!((s.h() - 4.0 / 256.0).abs() < 1e-15);
        assert!((s.k(0) + s.k(s.n_k - 1)).abs() < 1e-12);
        assert!((0..s.n_k).all(|j| s.k(j) != 0.0));
    }

    #[test]
    fn small_grids_are_rejected() {
        let s = DiscretizationSpec {
            x_min: 0.0,
            x_max: 1.0,
            n_x: 100,
            k_max: 1.0,
            n_k: 512,
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn cell_averages_are_exact() {
        let s = DiscretizationSpec {
            x_min: -4.0,
            x_max: 4.0,
            n_x: 256,
            k_max: 10.0,
            n_k: 256,
        };
        let w = PiecewiseConstant::from_triples(&[(-1.01, 0.3, 2.0)]).unwrap();
        let (_, vals) = cell_averages_pcw(&w, &s);
        let total: f64 = vals.iter().sum::<f64>() * s.h();
        assert!((total - w.net_area()).abs() < 1e-13);
        let lin = PiecewiseLinear::new(vec![(-1.0, 0.0), (0.013, 1.0), (1.5, 0.0)]).unwrap();
        let (_, vals) = cell_averages_plw(&lin, &s);
        let total: f64 = vals.iter().sum::<f64>() * s.h();
        assert!((total - lin.net_area()).abs() < 1e-13);
    }

    #[test]
    fn dft_recurrence_matches_direct_sum() {
        let s = DiscretizationSpec {
            x_min: -50.0,
            x_max: 50.0,
            n_x: 4096,
            k_max: 10.0,
            n_k: 256,
        };
        let vals: Vec<f64> = (0..3000).map(|i| ((i as f64) * 0.01).sin()).collect();
        let k = 7.3;
        let direct: Complex64 = vals
            .iter()
            .enumerate()
            .map(|(n, v)| Complex64::from_polar(*v, -k * s.cell_center(100 + n)))
            .sum::<Complex64>()
            * s.h();
        assert!((dft_at(100, &vals, &s, k) - direct).norm() < 1e-11);
    }
}
