use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::special::exp_integral_e1;
use crate::photon_content::{pairwise_sum, KGrid};
use crate::transforms::{fourier_pcw, fourier_plw_unchecked, CoefficientFunctions};
use crate::waveform::LineParams;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Region of the line the instrument couples to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    AllSpace,
    Interval { start: f64, end: f64 },
    Empty,
}

impl Window {
    /// [center − half_width, center + half_width]
    pub fn symmetric(center: f64, half_width: f64) -> Self {
        Window::Interval {
            start: center - half_width,
            end: center + half_width,
        }
    }
}

/// u(k), v(k): coefficients of a†_k and a_k in the coupler
/// (1/2ħ)∫_W (θ_q Φ̂ − θ_φ Q̂) dx. For W = all space u = α and v = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedCoupler {
    pub window: Window,
    pub grid: KGrid,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
    /// α(k) of the full coupler on the same nodes.
    pub alpha: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerReport {
    /// (∫|u − α|² + ∫|v|²)/β²
    pub epsilon: f64,
    /// ∫|v|²/β²
    pub counter_rotating_weight: f64,
    /// (∫|u|² − ∫|v|²)/β²
    pub norm_in_window: f64,
    pub beta2: f64,
}

impl WindowedCoupler {
    fn integral(&self, f: impl Fn(usize) -> f64) -> f64 {
        let terms: Vec<f64> = (0..self.u.len())
            .map(|i| self.grid.weights()[i] * f(i))
            .collect();
        pairwise_sum(&terms)
    }

    pub fn report(&self) -> CouplerReport {
        let beta2 = self.integral(|i| self.alpha[i].norm_sqr());
        let du = self.integral(|i| (self.u[i] - self.alpha[i]).norm_sqr());
        let vv = self.integral(|i| self.v[i].norm_sqr());
        let uu = self.integral(|i| self.u[i].norm_sqr());
        if beta2 == 0.0 {
            return CouplerReport {
                epsilon: 0.0,
                counter_rotating_weight: 0.0,
                norm_in_window: 0.0,
                beta2,
            };
        }
        CouplerReport {
            epsilon: (du + vv) / beta2,
            counter_rotating_weight: vv / beta2,
            norm_in_window: (uu - vv) / beta2,
            beta2,
        }
    }
}

/// Weights/π of a Hilbert kernel, mirrored x → −x.
fn reflect(terms: &[(f64, f64)], sign: f64) -> Vec<(f64, f64)> {
    terms.iter().map(|&(t, w)| (-t, sign * w)).collect()
}

/// Σ w·[ln(b − t)·e^{−ikb} + e^{−ikt}·E1(ik(b − t))] for k > 0, t ≤ b.
fn log_tail_sum(terms: &[(f64, f64)], b: f64, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let eb = Complex64::from_polar(1.0, -k * b);
    let mut s = Complex64::new(0.0, 0.0);
    for &(t, w) in terms {
        let d = b - t;
        let et = Complex64::from_polar(1.0, -k * t);
        if d <= 0.0 {
            s += et * w * (-EULER_GAMMA - ik.ln());
        } else {
            s += eb * (w * d.ln()) + et * exp_integral_e1(ik * d) * w;
        }
    }
    s
}

/// ∫_b^∞ g(x) e^{−ikx} dx with g = Σ w ln|x − t| (Σw = 0), k > 0.
fn log_tail(terms: &[(f64, f64)], g_at_b: f64, b: f64, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let mut s = log_tail_sum(terms, b, k);
    // g(b) enters through the direct sum; swap in the accurate far-field
    // value unless b sits on a singularity
    if terms.iter().all(|&(t, _)| b > t) {
        let direct: f64 = terms.iter().map(|&(t, w)| w * (b - t).ln()).sum();
        s += Complex64::from_polar(g_at_b - direct, -k * b);
    }
    s / ik
}

/// ∫_b^∞ R(x) e^{−ikx} dx with R = Σ w (x − t) ln|x − t|, R' = Σ w ln|x − t|.
fn linear_log_tail(terms: &[(f64, f64)], r_at_b: f64, dr_at_b: f64, b: f64, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    (Complex64::from_polar(r_at_b, -k * b) + log_tail(terms, dr_at_b, b, k)) / ik
}

struct Tails {
    q_terms: Vec<(f64, f64)>,
    q_terms_left: Vec<(f64, f64)>,
    phi_terms: Vec<(f64, f64)>,
    phi_terms_left: Vec<(f64, f64)>,
    /// values at the window edges: (R_q(a), R_q(b), R_φ(a), R_φ(b), R_φ'(a), R_φ'(b))
    edge: [f64; 6],
    a: f64,
    b: f64,
}

impl Tails {
    fn new(theta: &CoefficientFunctions, a: f64, b: f64) -> Self {
        let rq = theta.re_q_hilbert();
        let rp = theta.re_phi_hilbert();
        let dp = crate::transforms::HilbertEvaluation::piecewise_constant(
            &theta.re_phi_source().derivative(),
        );
        Self {
            q_terms: rq.terms().to_vec(),
            q_terms_left: reflect(rq.terms(), 1.0),
            phi_terms: rp.terms().to_vec(),
            phi_terms_left: reflect(rp.terms(), -1.0),
            edge: [
                rq.eval_unchecked(a),
                rq.eval_unchecked(b),
                rp.eval_unchecked(a),
                rp.eval_unchecked(b),
                dp.eval_unchecked(a),
                dp.eval_unchecked(b),
            ],
            a,
            b,
        }
    }

    /// Transforms at k > 0 of Re θ_q and Re θ_φ restricted to the
    /// complement of [a, b]. Values at −k are the conjugates.
    fn at(&self, k: f64) -> (Complex64, Complex64) {
        let [rqa, rqb, rpa, rpb, dpa, dpb] = self.edge;
        let q_right = log_tail(&self.q_terms, rqb, self.b, k);
        // ∫_{−∞}^a g(x)e^{−ikx}dx = conj(∫_{−a}^∞ g(−y)e^{−iky}dy)
        let q_left = log_tail(&self.q_terms_left, rqa, -self.a, k).conj();
        let p_right = linear_log_tail(&self.phi_terms, rpb, dpb, self.b, k);
        // R(−y) = Σ(−w)(y + t)ln|y + t|, and d/dy R(−y) = −R'(−y)
        let p_left = linear_log_tail(&self.phi_terms_left, rpa, -dpa, -self.a, k).conj();
        (q_right + q_left, p_right + p_left)
    }
}

/// F_k[θ_q], F_k[θ_φ] over all space, from Re θ = H[source].
fn theta_transforms(theta: &CoefficientFunctions, k: f64) -> (Complex64, Complex64) {
    let h = Complex64::new(0.0, -k.signum());
    let i = Complex64::i();
    let tq = h * fourier_pcw(theta.re_q_source(), k) + i * fourier_pcw(theta.im_q(), k);
    let tp = h * fourier_plw_unchecked(theta.re_phi_source(), k)
        + i * fourier_plw_unchecked(theta.im_phi(), k);
    (tq, tp)
}

/// u and v from transforms (A_k, B_k) of the windowed θ_q, θ_φ at k and −k.
fn components(
    pref: f64,
    s: f64,
    plus: (Complex64, Complex64),
    minus: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let u = (minus.0 / s - i * s * minus.1) * pref;
    let v = (plus.0 / s + i * s * plus.1) * pref;
    (u, v)
}

/// Bogoliubov components of the coupler restricted to `window` on the
/// nodes of `grid`. Interval windows must contain the field support.
pub fn bogoliubov_components(
    theta: &CoefficientFunctions,
    window: Window,
    line: &LineParams,
    grid: &KGrid,
) -> Result<WindowedCoupler> {
    let cv = line.capacitance() * line.velocity();
    let pref = 1.0 / (4.0 * (PI * line.hbar()).sqrt());
    let tails = match window {
        Window::Interval { start, end } => {
            if let Some((sa, sb)) = theta.field_support() {
                if start > sa || end < sb {
                    return Err(Error::WindowInsideSupport {
                        start,
                        end,
                        support_start: sa,
                        support_end: sb,
                    });
                }
            }
            Some(Tails::new(theta, start, end))
        }
        _ => None,
    };
    let nodes = grid.nodes();
    let rows: Vec<(Complex64, Complex64, Complex64)> = nodes
        .par_iter()
        .map(|&k| {
            let s = (cv * k.abs()).sqrt();
            let full_p = theta_transforms(theta, k);
            let full_m = theta_transforms(theta, -k);
            let (alpha, _) = components(pref, s, full_p, full_m);
            match (&window, &tails) {
                (Window::Empty, _) => (Complex64::default(), Complex64::default(), alpha),
                (Window::AllSpace, _) => {
                    let (u, v) = components(pref, s, full_p, full_m);
                    (u, v, alpha)
                }
                (Window::Interval { .. }, Some(t)) => {
                    let (tq, tp) = t.at(k.abs());
                    let (out_p, out_m) = if k > 0.0 {
                        ((tq, tp), (tq.conj(), tp.conj()))
                    } else {
                        ((tq.conj(), tp.conj()), (tq, tp))
                    };
                    let (u, v) = components(
                        pref,
                        s,
                        (full_p.0 - out_p.0, full_p.1 - out_p.1),
                        (full_m.0 - out_m.0, full_m.1 - out_m.1),
                    );
                    (u, v, alpha)
                }
                (Window::Interval { .. }, None) => unreachable!(),
            }
        })
        .collect();
    Ok(WindowedCoupler {
        window,
        grid: grid.clone(),
        u: rows.iter().map(|r| r.0).collect(),
        v: rows.iter().map(|r| r.1).collect(),
        alpha: rows.iter().map(|r| r.2).collect(),
    })
}

/// Grid for a window: panels short enough to resolve oscillation at the
/// window length, band edge `k_max`.
pub fn coupler_grid(theta: &CoefficientFunctions, window: Window, k_max: f64) -> Result<KGrid> {
    let width = theta
        .field_support()
        .map(|(a, b)| b - a)
        .filter(|w| *w > 0.0)
        .unwrap_or(1.0);
    let mut panel = PI / width;
    if let Window::Interval { start, end } = window {
        panel = panel.min(2.0 * PI / (end - start));
    }
    KGrid::new(k_max, panel.min(k_max), 16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Adaptive;
    use crate::photon_content::{mode_amplitude, KGrid};
    use crate::transforms::coefficient_functions_rightmover;
    use crate::waveform::{right_mover_fields, PiecewiseConstant};

    fn canonical() -> PiecewiseConstant {
        PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
            .unwrap()
    }

    /// ∫_b^B g(x)e^{−ikx}dx by quadrature plus an asymptotic remainder.
    fn brute_tail(g: impl Fn(f64) -> f64, b: f64, k: f64) -> Complex64 {
        let quad = Adaptive::new(1e-11, 1e-10);
        let upper = b + 400.0 * 2.0 * PI / k;
        let mut breaks = Vec::new();
        let mut x = b + 2.0 * PI / k;
        while x < upper {
            breaks.push(x);
            x += 2.0 * PI / k;
        }
        let re = quad
            .integrate_with_breaks(b, upper, &breaks, |x| g(x) * (k * x).cos())
            .unwrap()
            .value;
        let im = quad
            .integrate_with_breaks(b, upper, &breaks, |x| -g(x) * (k * x).sin())
            .unwrap()
            .value;
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_tails_match_quadrature() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let t = Tails::new(&th, -3.0, 2.5);
        for k in [0.7, 2.0, 5.3] {
            let (tq, tp) = t.at(k);
            let rq = |x: f64| th.theta_q_unchecked(x).re;
            let rp = |x: f64| th.theta_phi_unchecked(x).re;
            let bq = brute_tail(rq, 2.5, k) + brute_tail(|y| rq(-y), 3.0, k).conj();
            let bp = brute_tail(rp, 2.5, k) + brute_tail(|y| rp(-y), 3.0, k).conj();
            assert!((tq - bq).norm() < 1e-6, "k={k} {tq} {bq}");
            assert!((tp - bp).norm() < 1e-6, "k={k} {tp} {bp}");
        }
    }

    #[test]
    fn window_at_support_edge_uses_limit() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let a = Tails::new(&th, -2.0, 2.0).at(1.3);
        let b = Tails::new(&th, -2.0 - 1e-9, 2.0 + 1e-9).at(1.3);
        assert!((a.0 - b.0).norm() < 1e-6);
        assert!((a.1 - b.1).norm() < 1e-6);
    }

    #[test]
    fn all_space_reproduces_alpha() {
        let line = LineParams::natural();
        let v = canonical();
        let th = coefficient_functions_rightmover(&v, &line).unwrap();
        let f = right_mover_fields(&v, &line);
        let grid = KGrid::default_for(&f).unwrap();
        let c = bogoliubov_components(&th, Window::AllSpace, &line, &grid).unwrap();
        let m = mode_amplitude(&f, &line, &grid).unwrap();
        for (u, a) in c.u.iter().zip(&m.alpha) {
            assert!((u - a).norm() < 1e-12);
        }
        let r = c.report();
        assert!(r.counter_rotating_weight < 1e-20);
        assert!(r.epsilon < 1e-20);
    }

    #[test]
    fn empty_window() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let grid = KGrid::new(50.0, 0.5, 8).unwrap();
        let c = bogoliubov_components(&th, Window::Empty, &line, &grid).unwrap();
        assert!(c.u.iter().chain(&c.v).all(|z| z.norm() == 0.0));
        assert!((c.report().epsilon - 1.0).abs() < 1e-15);
    }

    #[test]
    fn support_window_has_counter_rotating_weight() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let w = Window::symmetric(0.0, 2.0);
        let grid = coupler_grid(&th, w, 200.0).unwrap();
        let r = bogoliubov_components(&th, w, &line, &grid).unwrap().report();
        assert!(r.counter_rotating_weight > 1e-6);
        assert!(r.epsilon > r.counter_rotating_weight);
        assert!((r.norm_in_window - 1.0).abs() < 1e-3, "{}", r.norm_in_window);
    }

    #[test]
    fn window_must_contain_support() {
        let line = LineParams::natural();
        let th = coefficient_functions_rightmover(&canonical(), &line).unwrap();
        let grid = KGrid::new(10.0, 0.5, 8).unwrap();
        assert!(matches!(
            bogoliubov_components(&th, Window::symmetric(0.0, 1.5), &line, &grid),
            Err(Error::WindowInsideSupport { .. })
        ));
    }
}
