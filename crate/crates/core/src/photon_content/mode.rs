use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::GaussLegendre;
use crate::transforms::{fourier_pcw, fourier_plw_unchecked};
use crate::waveform::{FieldPair, LineParams};

/// Composite Gauss–Legendre grid on [−k_max, 0) ∪ (0, k_max].
///
/// Panels of equal width tile each half-line with 0 as a panel edge, so
/// the |k| kink at the origin is never straddled and 0 is never a node.
#[derive(Debug, Clone, PartialEq)]
pub struct KGrid {
    k_max: f64,
    panel_width: f64,
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl KGrid {
    pub fn new(k_max: f64, panel_width: f64, order: usize) -> Result<Self> {
        if !(k_max.is_finite() && k_max > 0.0) {
            return Err(Error::InvalidGrid(format!("k_max must be positive, got {k_max}")));
        }
        if !(panel_width.is_finite() && panel_width > 0.0 && panel_width <= k_max) {
            return Err(Error::InvalidGrid(format!(
                "panel width must lie in (0, k_max], got {panel_width}"
            )));
        }
        if order == 0 {
            return Err(Error::InvalidGrid("quadrature order must be positive".into()));
        }
        let panels = (k_max / panel_width).ceil() as usize;
        let h = k_max / panels as f64;
        let rule = GaussLegendre::new(order);
        let mut positive = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let a = p as f64 * h;
            positive.extend(rule.mapped(a, a + h));
        }
        let mut nodes = Vec::with_capacity(2 * positive.len());
        let mut weights = Vec::with_capacity(2 * positive.len());
        for &(k, w) in positive.iter().rev() {
            nodes.push(-k);
            weights.push(w);
        }
        for &(k, w) in &positive {
            nodes.push(k);
            weights.push(w);
        }
        Ok(Self {
            k_max,
            panel_width: h,
            order,
            nodes,
            weights,
        })
    }

    /// Grid resolving the photon number of `fields`: panels of half an
    /// oscillation of the widest jump pair, band edge well past the
    /// narrowest feature.
    pub fn default_for(fields: &FieldPair) -> Result<Self> {
        let (width, feature) = scales(fields);
        let k_max = (256.0 * PI / width).max(128.0 / feature);
        Self::new(k_max, PI / width, 16)
    }

    /// Grid for the mode-side energy, whose UV tail decays only like 1/k.
    pub fn energy_for(fields: &FieldPair) -> Result<Self> {
        let (width, feature) = scales(fields);
        Self::new(16384.0 / feature, 2.0 * PI / width, 16)
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    pub fn panel_width(&self) -> f64 {
        self.panel_width
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w·f(k) over the grid.
    pub fn integrate<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .par_iter()
            .zip(self.weights.par_iter())
            .map(|(&k, &w)| w * f(k))
            .collect();
        pairwise_sum(&terms)
    }
}

/// Support width and smallest breakpoint spacing (both at least 1e-300).
fn scales(fields: &FieldPair) -> (f64, f64) {
    let width = fields
        .support()
        .map(|(a, b)| b - a)
        .filter(|w| *w > 0.0)
        .unwrap_or(1.0);
    let bp = fields.breakpoints();
    let feature = bp
        .windows(2)
        .map(|p| p[1] - p[0])
        .filter(|d| *d > 0.0)
        .fold(width, f64::min);
    (width, feature)
}

/// Summation with O(log n) error growth and a fixed reduction order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// The pulse-mode amplitude α(k) on a grid.
///
/// The pulse is the coherent state exp(β b† − β* b) with b† = ∫ ξ(k) a†_k dk,
/// α = β ξ and β² = ∫|α|² dk.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitude {
    pub grid: KGrid,
    pub alpha: Vec<Complex64>,
    pub norm_sq: f64,
}

impl ModeAmplitude {
    /// ξ(k) = α(k)/β on the grid nodes; empty when α vanishes.
    pub fn xi(&self) -> Vec<Complex64> {
        if self.norm_sq <= 0.0 {
            return Vec::new();
        }
        let s = 1.0 / self.norm_sq.sqrt();
        self.alpha.iter().map(|a| a * s).collect()
    }

    /// ∫|ξ|² dk on the grid.
    pub fn xi_norm(&self) -> f64 {
        let xi = self.xi();
        let terms: Vec<f64> = xi
            .iter()
            .zip(self.grid.weights())
            .map(|(x, w)| w * x.norm_sqr())
            .collect();
        pairwise_sum(&terms)
    }

    /// ∫|k||ξ|² dk.
    pub fn mean_abs_k(&self) -> Option<f64> {
        if self.norm_sq <= 0.0 {
            return None;
        }
        let terms: Vec<f64> = self
            .grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .zip(&self.alpha)
            .map(|((k, w), a)| w * k.abs() * a.norm_sqr())
            .collect();
        Some(pairwise_sum(&terms) / self.norm_sq)
    }

    /// |k| below which half of the spectral weight |ξ|² lies.
    pub fn median_abs_k(&self) -> Option<f64> {
        if self.norm_sq <= 0.0 {
            return None;
        }
        let mut pairs: Vec<(f64, f64)> = self
            .grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .zip(&self.alpha)
            .map(|((k, w), a)| (k.abs(), w * a.norm_sqr()))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = pairs.iter().map(|p| p.1).sum();
        let mut acc = 0.0;
        for (k, m) in pairs {
            acc += m;
            if acc >= 0.5 * total {
                return Some(k);
            }
        }
        None
    }

    /// ∫ ħ v |k| |α|² dk with an estimate of the truncation error, taken
    /// as the contribution of the outer half of the band.
    pub fn energy(&self, line: &LineParams) -> (f64, f64) {
        let hv = line.hbar() * line.velocity();
        let half = 0.5 * self.grid.k_max();
        let mut inner = Vec::with_capacity(self.alpha.len());
        let mut outer = Vec::with_capacity(self.alpha.len());
        for ((k, w), a) in self.grid.nodes().iter().zip(self.grid.weights()).zip(&self.alpha) {
            let e = hv * w * k.abs() * a.norm_sqr();
            if k.abs() <= half {
                inner.push(e);
            } else {
                outer.push(e);
            }
        }
        let outer = pairwise_sum(&outer);
        (pairwise_sum(&inner) + outer, outer)
    }
}

/// α(k) = (1/2√(πħ))·[√(cv|k|)·F_{−k}[φ] + i·F_{−k}[q]/√(cv|k|)].
pub fn alpha_at(fields: &FieldPair, line: &LineParams, k: f64) -> Complex64 {
    let cv = line.capacitance() * line.velocity();
    let s = (cv * k.abs()).sqrt();
    let fphi = fourier_plw_unchecked(&fields.phi, -k);
    let fq = fourier_pcw(&fields.q, -k);
    (fphi * s + Complex64::i() * fq / s) / (2.0 * (PI * line.hbar()).sqrt())
}

pub fn mode_amplitude(fields: &FieldPair, line: &LineParams, grid: &KGrid) -> Result<ModeAmplitude> {
    fields.check_representation()?;
    let alpha: Vec<Complex64> = grid
        .nodes()
        .par_iter()
        .map(|&k| alpha_at(fields, line, k))
        .collect();
    let terms: Vec<f64> = alpha
        .iter()
        .zip(grid.weights())
        .map(|(a, w)| w * a.norm_sqr())
        .collect();
    Ok(ModeAmplitude {
        grid: grid.clone(),
        norm_sq: pairwise_sum(&terms),
        alpha,
    })
}

/// ∫ (1/4πħ)·2·Re[i·conj(F_{−k}[q])·F_{−k}[φ]] dk on the grid; the
/// integrand is odd in k, so this vanishes up to rounding.
pub fn cross_term(fields: &FieldPair, line: &LineParams, grid: &KGrid) -> f64 {
    grid.integrate(|k| {
        let fq = fourier_pcw(&fields.q, -k);
        let fphi = fourier_plw_unchecked(&fields.phi, -k);
        2.0 * (Complex64::i() * fq.conj() * fphi).re / (4.0 * PI * line.hbar())
    })
}
