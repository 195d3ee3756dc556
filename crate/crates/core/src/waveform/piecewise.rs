//! Exact piecewise-constant and piecewise-linear profiles.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub amplitude: f64,
}

impl Segment {
    pub fn new(start: f64, end: f64, amplitude: f64) -> Self {
        Self {
            start,
            end,
            amplitude,
        }
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

/// A sum of boxcars, zero outside its segments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PiecewiseConstant {
    segments: Vec<Segment>,
}

impl PiecewiseConstant {
    /// Validates ordering and finiteness. Shared endpoints are allowed.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        for (i, s) in segments.iter().enumerate() {
            if !(s.start.is_finite() && s.end.is_finite() && s.amplitude.is_finite()) {
                return Err(Error::InvalidWaveform(format!(
                    "segment {i} has a non-finite value"
                )));
            }
            if s.start >= s.end {
                return Err(Error::InvalidWaveform(format!(
                    "segment {i}: start {} must be below end {}",
                    s.start, s.end
                )));
            }
            if i > 0 && segments[i - 1].end > s.start {
                return Err(Error::InvalidWaveform(format!(
                    "segment {i} starts at {} before segment {} ends at {}",
                    s.start,
                    i - 1,
                    segments[i - 1].end
                )));
            }
        }
        Ok(Self { segments })
    }

    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(s, e, a)| Segment::new(s, e, a))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_zero(&self) -> bool {
        self.segments.iter().all(|s| s.amplitude == 0.0)
    }

    /// Smallest interval containing every nonzero segment.
    pub fn support(&self) -> Option<(f64, f64)> {
        let mut nz = self.segments.iter().filter(|s| s.amplitude != 0.0);
        let first = nz.next()?;
        let last = nz.last().unwrap_or(first);
        Some((first.start, last.end))
    }

    pub fn support_width(&self) -> f64 {
        self.support().map_or(0.0, |(a, b)| b - a)
    }

    /// Value at x. Breakpoints belong to the segment that starts there.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.segments.partition_point(|s| s.end <= x);
        match self.segments.get(idx) {
            Some(s) if s.start <= x => s.amplitude,
            _ => 0.0,
        }
    }

    pub fn net_area(&self) -> f64 {
        self.segments.iter().map(|s| s.amplitude * s.width()).sum()
    }

    pub fn abs_area(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.amplitude.abs() * s.width())
            .sum()
    }

    /// ∫ xⁿ w(x) dx
    pub fn moment(&self, n: u32) -> f64 {
        let p = n as i32 + 1;
        self.segments
            .iter()
            .map(|s| s.amplitude * (s.end.powi(p) - s.start.powi(p)) / p as f64)
            .sum()
    }

    /// ∫ w(x)² dx
    pub fn square_integral(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.amplitude * s.amplitude * s.width())
            .sum()
    }

    /// Every distinct segment endpoint, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .segments
            .iter()
            .flat_map(|s| [s.start, s.end])
            .collect();
        pts.dedup();
        pts
    }

    /// Jump discontinuities as (position, right value − left value).
    pub fn jumps(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(2 * self.segments.len());
        for s in &self.segments {
            if s.amplitude == 0.0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == s.start => last.1 += s.amplitude,
                _ => out.push((s.start, s.amplitude)),
            }
            out.push((s.end, -s.amplitude));
        }
        out.retain(|j| j.1 != 0.0);
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment::new(s.start, s.end, s.amplitude * factor))
                .collect(),
        }
    }

    /// w(x − dx)
    pub fn shifted(&self, dx: f64) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment::new(s.start + dx, s.end + dx, s.amplitude))
                .collect(),
        }
    }

    /// w(x/λ): the same shape stretched by λ > 0.
    pub fn stretched(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0);
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment::new(s.start * lambda, s.end * lambda, s.amplitude))
                .collect(),
        }
    }

    /// λ⁻¹·w(x/λ): stretched with the area kept, as under a change of
    /// length unit.
    pub fn rescaled(&self, lambda: f64) -> Self {
        self.stretched(lambda).scaled(1.0 / lambda)
    }

    /// w(−x)
    pub fn mirrored(&self) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .rev()
                .map(|s| Segment::new(-s.end, -s.start, s.amplitude))
                .collect(),
        }
    }

    /// Pointwise sum on the merged breakpoint set.
    pub fn add(&self, other: &Self) -> Self {
        let mut pts: Vec<f64> = self
            .segments
            .iter()
            .chain(&other.segments)
            .flat_map(|s| [s.start, s.end])
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        let mut segments: Vec<Segment> = Vec::new();
        for w in pts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let a = self.eval(mid) + other.eval(mid);
            if a == 0.0 {
                continue;
            }
            match segments.last_mut() {
                Some(last) if last.end == w[0] && last.amplitude == a => last.end = w[1],
                _ => segments.push(Segment::new(w[0], w[1], a)),
            }
        }
        Self { segments }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1.0))
    }

    /// C(x) = ∫_{−∞}^x w(s) ds, exact.
    pub fn cumulative(&self) -> PiecewiseLinear {
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = 0.0;
        for s in &self.segments {
            match points.last() {
                Some(&(x, _)) if x == s.start => {}
                _ => points.push((s.start, acc)),
            }
            acc += s.amplitude * s.width();
            points.push((s.end, acc));
        }
        PiecewiseLinear { points }
    }
}

/// Linear interpolation between breakpoints, constant beyond the ends.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PiecewiseLinear {
    points: Vec<(f64, f64)>,
}

/// One linear piece f(x) = slope·x + intercept on (start, end).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPiece {
    pub start: f64,
    pub end: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl LinearPiece {
    pub fn value(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !(p.0.is_finite() && p.1.is_finite()) {
                return Err(Error::InvalidWaveform(format!(
                    "breakpoint {i} has a non-finite value"
                )));
            }
            if i > 0 && points[i - 1].0 >= p.0 {
                return Err(Error::InvalidWaveform(format!(
                    "breakpoint positions must be strictly increasing (index {i})"
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.iter().all(|p| p.1 == 0.0)
    }

    pub fn left_value(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.1)
    }

    pub fn right_value(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.1)
    }

    /// True when both constant extensions are within `tol` of zero.
    pub fn decays(&self, tol: f64) -> bool {
        self.left_value().abs() <= tol && self.right_value().abs() <= tol
    }

    pub fn eval(&self, x: f64) -> f64 {
        let pts = &self.points;
        let Some(first) = pts.first() else {
            return 0.0;
        };
        if x <= first.0 {
            return first.1;
        }
        let last = pts[pts.len() - 1];
        if x >= last.0 {
            return last.1;
        }
        let i = pts.partition_point(|p| p.0 <= x);
        let (x0, y0) = pts[i - 1];
        let (x1, y1) = pts[i];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn pieces(&self) -> impl Iterator<Item = LinearPiece> + '_ {
        self.points.windows(2).map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let slope = (y1 - y0) / (x1 - x0);
            LinearPiece {
                start: x0,
                end: x1,
                slope,
                intercept: y0 - slope * x0,
            }
        })
    }

    /// Segment-wise derivative; flat pieces are omitted.
    pub fn derivative(&self) -> PiecewiseConstant {
        PiecewiseConstant {
            segments: self
                .pieces()
                .filter(|p| p.slope != 0.0)
                .map(|p| Segment::new(p.start, p.end, p.slope))
                .collect(),
        }
    }

    /// ∫ f over the breakpoint span (the whole integral when f decays).
    pub fn net_area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
            .sum()
    }

    /// ∫ |f| over the breakpoint span, exact for sign changes inside pieces.
    pub fn abs_area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let (x0, y0) = w[0];
                let (x1, y1) = w[1];
                let h = x1 - x0;
                if y0 * y1 >= 0.0 {
                    0.5 * (y0.abs() + y1.abs()) * h
                } else {
                    0.5 * (y0 * y0 + y1 * y1) / (y0.abs() + y1.abs()) * h
                }
            })
            .sum()
    }

    /// ∫ f(x)² dx over the breakpoint span.
    pub fn square_integral(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let (x0, y0) = w[0];
                let (x1, y1) = w[1];
                (y0 * y0 + y0 * y1 + y1 * y1) * (x1 - x0) / 3.0
            })
            .sum()
    }

    /// Smallest interval outside of which f is identically zero.
    pub fn support(&self) -> Option<(f64, f64)> {
        if !self.decays(0.0) {
            return None;
        }
        let first = self.points.windows(2).position(|w| w[0].1 != 0.0 || w[1].1 != 0.0)?;
        let last = self.points.windows(2).rposition(|w| w[0].1 != 0.0 || w[1].1 != 0.0)?;
        Some((self.points[first].0, self.points[last + 1].0))
    }

    /// Sets both terminal values to exactly zero.
    pub(crate) fn zero_terminals(&mut self) {
        if let Some(p) = self.points.first_mut() {
            p.1 = 0.0;
        }
        if let Some(p) = self.points.last_mut() {
            p.1 = 0.0;
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            points: self.points.iter().map(|&(x, y)| (x, y * factor)).collect(),
        }
    }

    pub fn shifted(&self, dx: f64) -> Self {
        Self {
            points: self.points.iter().map(|&(x, y)| (x + dx, y)).collect(),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }
}
