//! Exponential and trigonometric integrals, plus small-argument-safe kernels.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral E1(z) on the closed right half plane, z != 0.
///
/// Power series for |z| <= 2, modified Lentz continued fraction beyond.
pub fn exp_integral_e1(z: Complex64) -> Complex64 {
    assert!(z.re >= 0.0 && z != Complex64::new(0.0, 0.0), "E1 argument out of domain: {z}");
    if z.norm() <= 2.0 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 1..200 {
            let nf = n as f64;
            term *= -z / nf;
            let add = term / nf;
            sum += add;
            if add.norm() < 1e-17 * sum.norm().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - z.ln() - sum
    } else {
        let tiny = 1e-300;
        let one = Complex64::new(1.0, 0.0);
        let mut b = z + one;
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = one / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = one / (d * an + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - one).norm() < 1e-16 {
                break;
            }
        }
        h * (-z).exp()
    }
}

/// Cosine integral Ci(x) = -∫_x^∞ cos(t)/t dt for x > 0.
pub fn cos_integral(x: f64) -> f64 {
    assert!(x > 0.0);
    -exp_integral_e1(Complex64::new(0.0, x)).re
}

/// Sine integral Si(x) = ∫_0^x sin(t)/t dt.
pub fn sin_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let s = exp_integral_e1(Complex64::new(0.0, x.abs())).im + FRAC_PI_2;
    s.copysign(x)
}

/// sin(z)/z with the removable singularity filled in.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// (sin z - z cos z)/z², the odd kernel of ∫ u e^{-iku} du over a symmetric cell.
pub fn sinc1(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        let z2 = z * z;
        z * (1.0 / 3.0 - z2 / 30.0 + z2 * z2 / 840.0)
    } else {
        (z.sin() - z * z.cos()) / (z * z)
    }
}
