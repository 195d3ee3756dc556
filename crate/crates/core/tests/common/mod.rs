#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlphoton::{PiecewiseConstant, Segment};

pub const SUITE_SEED: u64 = 0x5eed_1a7e;
pub const SUITE_SIZE: usize = 60;

pub fn exact_canonical() -> f64 {
    12.0 * (27.0f64 / 16.0).ln() / std::f64::consts::PI
}

pub fn canonical() -> PiecewiseConstant {
    PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
        .unwrap()
}

/// A bipolar pulse of 2..=6 segments with optional gaps; the last
/// amplitude is solved for zero net area.
pub fn random_bipolar(rng: &mut impl Rng) -> PiecewiseConstant {
    let n = rng.random_range(2..=6);
    let mut x = rng.random_range(-3.0..0.0);
    let mut segs = Vec::with_capacity(n);
    for _ in 0..n {
        if rng.random_bool(0.3) {
            x += rng.random_range(0.2..1.0);
        }
        let w = rng.random_range(0.3..1.5);
        let a = rng.random_range(0.3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        segs.push(Segment::new(x, x + w, a));
        x += w;
    }
    let area: f64 = segs[..n - 1].iter().map(|s| s.amplitude * s.width()).sum();
    let last = &mut segs[n - 1];
    last.amplitude = -area / last.width();
    PiecewiseConstant::new(segs).unwrap()
}

/// The seeded suite shared by the property and acceptance tests.
pub fn suite() -> Vec<PiecewiseConstant> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE).map(|_| random_bipolar(&mut rng)).collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}
