//! Fixtures shared by the benchmarks.

use tlphoton::{PiecewiseConstant, Segment};

pub fn canonical() -> PiecewiseConstant {
    PiecewiseConstant::from_triples(&[(-2.0, -1.0, -1.0), (-1.0, 1.0, 1.0), (1.0, 2.0, -1.0)])
        .expect("canonical segments are ordered")
}

/// An alternating pulse of `n` unit segments, last amplitude fixed for
/// zero net area.
pub fn staircase(n: usize) -> PiecewiseConstant {
    let mut segs: Vec<Segment> = (0..n)
        .map(|i| {
            let a = (1.0 + 0.1 * i as f64) * if i % 2 == 0 { 1.0 } else { -1.0 };
            Segment::new(i as f64, i as f64 + 1.0, a)
        })
        .collect();
    let area: f64 = segs[..n - 1].iter().map(|s| s.amplitude).sum();
    segs[n - 1].amplitude = -area;
    PiecewiseConstant::new(segs).expect("staircase segments are ordered")
}
