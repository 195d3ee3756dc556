//! Line-oriented pulse files.
//!
//! ```text
//! # canonical pulse
//! format 1
//! line c=1 v=1 hbar=1
//! segment -2 -1 -1
//! segment -1 1 1
//! segment 1 2 -1
//! ```
//!
//! `current segment ...` and `current samples ...` give the current profile
//! for pulses that are not right movers. `samples <path> <origin> <spacing>`
//! reads one value per line from `path` (relative to the pulse file) and
//! holds each sample over one spacing.

use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;
use tlphoton::{LineParams, PiecewiseConstant, SampledWaveform, Segment};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub path: PathBuf,
    pub line: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.path.display(), self.line)
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{pos}: {message}")]
    Syntax { pos: Position, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
}

#[derive(Debug, Clone)]
pub struct PulseFile {
    pub line: Option<LineParams>,
    pub voltage: PiecewiseConstant,
    pub current: Option<PiecewiseConstant>,
    /// sha256 over the pulse file and every samples file it references.
    pub digest: String,
}

#[derive(Default)]
enum Body {
    #[default]
    Empty,
    Segments(Vec<Segment>),
    Samples(PiecewiseConstant),
}

impl Body {
    fn push_segment(&mut self, s: Segment, pos: &Position) -> Result<(), ParseError> {
        match self {
            Body::Empty => *self = Body::Segments(vec![s]),
            Body::Segments(v) => v.push(s),
            Body::Samples(_) => return Err(syntax(pos, "segment records cannot follow samples")),
        }
        Ok(())
    }

    fn set_samples(&mut self, w: PiecewiseConstant, pos: &Position) -> Result<(), ParseError> {
        match self {
            Body::Empty => *self = Body::Samples(w),
            _ => return Err(syntax(pos, "samples must be the only record of its profile")),
        }
        Ok(())
    }
}

fn syntax(pos: &Position, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos: pos.clone(),
        message: message.into(),
    }
}

/// Parses a decimal float. Rejects inf, nan, hex and anything else outside
/// `[+-]digits[.digits][e[+-]digits]`.
pub fn parse_decimal(token: &str) -> Option<f64> {
    let body = token.strip_prefix(['+', '-']).unwrap_or(token);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let mut parts = mantissa.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next();
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int) || !frac.is_none_or(digits) {
        return None;
    }
    if int.is_empty() && frac.is_none_or(str::is_empty) {
        return None;
    }
    if let Some(e) = exponent {
        let e = e.strip_prefix(['+', '-']).unwrap_or(e);
        if e.is_empty() || !digits(e) {
            return None;
        }
    }
    token.parse().ok().filter(|v: &f64| v.is_finite())
}

fn number(token: &str, what: &str, pos: &Position) -> Result<f64, ParseError> {
    parse_decimal(token).ok_or_else(|| syntax(pos, format!("{what}: `{token}` is not a decimal number")))
}

fn segment(args: &[&str], pos: &Position) -> Result<Segment, ParseError> {
    let [s, e, a] = args else {
        return Err(syntax(pos, format!("segment takes start end amplitude, got {} values", args.len())));
    };
    Ok(Segment::new(
        number(s, "start", pos)?,
        number(e, "end", pos)?,
        number(a, "amplitude", pos)?,
    ))
}

fn line_params(args: &[&str], pos: &Position) -> Result<LineParams, ParseError> {
    let (mut c, mut v, mut hbar) = (None, None, None);
    for arg in args {
        let Some((key, value)) = arg.split_once('=') else {
            return Err(syntax(pos, format!("expected key=value, got `{arg}`")));
        };
        let slot = match key {
            "c" => &mut c,
            "v" => &mut v,
            "hbar" => &mut hbar,
            _ => return Err(syntax(pos, format!("unknown line key `{key}`"))),
        };
        if slot.is_some() {
            return Err(syntax(pos, format!("duplicate line key `{key}`")));
        }
        *slot = Some(number(value, key, pos)?);
    }
    let (Some(c), Some(v), Some(hbar)) = (c, v, hbar) else {
        return Err(syntax(pos, "line needs c=, v= and hbar="));
    };
    LineParams::from_capacitance_velocity(c, v, hbar).map_err(|e| syntax(pos, e.to_string()))
}

fn samples(
    args: &[&str],
    pos: &Position,
    dir: &Path,
    hasher: &mut Sha256,
) -> Result<PiecewiseConstant, ParseError> {
    let [path, origin, spacing] = args else {
        return Err(syntax(pos, "samples takes path origin spacing"));
    };
    let origin = number(origin, "origin", pos)?;
    let spacing = number(spacing, "spacing", pos)?;
    let full = dir.join(path);
    let text = std::fs::read_to_string(&full).map_err(|source| ParseError::Io {
        path: full.clone(),
        source,
    })?;
    hasher.update(text.as_bytes());
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let p = Position {
            path: full.clone(),
            line: i + 1,
        };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        values.push(number(content, "sample", &p)?);
    }
    let w = SampledWaveform::new(origin, spacing, values).map_err(|e| syntax(pos, e.to_string()))?;
    Ok(w.to_zero_order_hold())
}

fn finish(body: Body, what: &str, path: &Path) -> Result<Option<PiecewiseConstant>, ParseError> {
    match body {
        Body::Empty => Ok(None),
        Body::Samples(w) => Ok(Some(w)),
        Body::Segments(s) => PiecewiseConstant::new(s)
            .map(Some)
            .map_err(|e| ParseError::Invalid {
                path: path.to_path_buf(),
                message: format!("{what}: {e}"),
            }),
    }
}

pub fn parse_pulse_file(path: &Path) -> Result<PulseFile, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_pulse_str(&text, path, dir)
}

/// Parses pulse-file text; `path` only labels errors, `dir` resolves
/// samples paths.
pub fn parse_pulse_str(text: &str, path: &Path, dir: &Path) -> Result<PulseFile, ParseError> {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let mut line = None;
    let mut voltage = Body::Empty;
    let mut current = Body::Empty;
    let mut seen_record = false;

    for (i, raw) in text.lines().enumerate() {
        let pos = Position {
            path: path.to_path_buf(),
            line: i + 1,
        };
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&key, args)) = tokens.split_first() else {
            continue;
        };
        match key {
            "format" => {
                if seen_record {
                    return Err(syntax(&pos, "format must be the first directive"));
                }
                match args {
                    [v] if v.parse::<u32>().ok() == Some(FORMAT_VERSION) => {}
                    _ => {
                        return Err(syntax(
                            &pos,
                            format!("unsupported format `{}` (expected {FORMAT_VERSION})", args.join(" ")),
                        ))
                    }
                }
            }
            "line" => {
                if line.is_some() {
                    return Err(syntax(&pos, "line given twice"));
                }
                line = Some(line_params(args, &pos)?);
            }
            "segment" => voltage.push_segment(segment(args, &pos)?, &pos)?,
            "samples" => voltage.set_samples(samples(args, &pos, dir, &mut hasher)?, &pos)?,
            "current" => match args.split_first() {
                Some((&"segment", rest)) => current.push_segment(segment(rest, &pos)?, &pos)?,
                Some((&"samples", rest)) => {
                    current.set_samples(samples(rest, &pos, dir, &mut hasher)?, &pos)?
                }
                _ => return Err(syntax(&pos, "current must be followed by segment or samples")),
            },
            other => return Err(syntax(&pos, format!("unknown directive `{other}`"))),
        }
        seen_record = true;
    }

    let voltage = finish(voltage, "voltage", path)?.ok_or_else(|| ParseError::Invalid {
        path: path.to_path_buf(),
        message: "empty segment list: no segment or samples records".into(),
    })?;
    let current = finish(current, "current", path)?;
    Ok(PulseFile {
        line,
        voltage,
        current,
        digest: hex::encode(hasher.finalize()),
    })
}
