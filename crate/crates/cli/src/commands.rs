use std::path::{Path, PathBuf};

use serde_json::json;
use tlphoton::detection::{capture_scan, CaptureScan};
use tlphoton::mode_oracle::{
    energy_classical, energy_modes, oracle_beta2_level, oracle_time_invariance, DiscretizationSpec,
};
use tlphoton::photon_content::{fit_log_growth, split_pulse_sweep, MethodOutcome, PhotonReport};
use tlphoton::waveform::right_mover_fields;
use tlphoton::{
    coefficient_functions_general, coefficient_functions_rightmover, mode_amplitude, photon_report,
    CoefficientFunctions, Error, FieldPair, KGrid, LineParams,
};

use crate::error::CliError;
use crate::output::{emit, fmt_f64, RunManifest, Table};
use crate::pulse::{parse_pulse_file, PulseFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    General,
    Rightmover,
    Logkernel,
    All,
}

/// Options shared by every command.
#[derive(Debug, Clone)]
pub struct Common {
    pub out: PathBuf,
    pub tol: Option<f64>,
    pub natural_units: bool,
}

const FIELD_PROBES: usize = 400;
const ORACLE_TIMES: [f64; 2] = [1.0, 3.0];

fn load(path: &Path, common: &Common) -> Result<(PulseFile, LineParams), CliError> {
    let pulse = parse_pulse_file(path)?;
    let line = match (pulse.line, common.natural_units) {
        (Some(l), _) => l,
        (None, true) => LineParams::natural(),
        (None, false) => {
            return Err(CliError::Usage(format!(
                "{}: no `line` directive and natural units are off",
                path.display()
            )))
        }
    };
    Ok((pulse, line))
}

fn tolerance(common: &Common, default: f64) -> Result<f64, CliError> {
    match common.tol {
        None => Ok(default),
        Some(t) if t.is_finite() && t > 0.0 => Ok(t),
        Some(t) => Err(CliError::Usage(format!("--tol must be positive, got {t}"))),
    }
}

fn line_json(line: &LineParams) -> serde_json::Value {
    json!({
        "c": line.capacitance(),
        "v": line.velocity(),
        "hbar": line.hbar(),
    })
}

fn span(pulse: &PulseFile) -> Option<(f64, f64)> {
    let mut segs: Vec<_> = pulse.voltage.segments().to_vec();
    if let Some(i) = &pulse.current {
        segs.extend_from_slice(i.segments());
    }
    let a = segs.iter().map(|s| s.start).reduce(f64::min)?;
    let b = segs.iter().map(|s| s.end).reduce(f64::max)?;
    Some((a, b))
}

/// Cell midpoints on [a − W, b + W], each gap between breakpoints split
/// into cells of roughly equal size, so no probe sits on a jump.
pub fn probe_grid(a: f64, b: f64, breakpoints: &[f64], n: usize) -> Vec<f64> {
    let w = b - a;
    let (lo, hi) = (a - w, b + w);
    let mut edges: Vec<f64> = breakpoints.iter().copied().filter(|&t| t > lo && t < hi).collect();
    edges.push(lo);
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    let h = (hi - lo) / n as f64;
    let mut xs = Vec::with_capacity(n + edges.len());
    for pair in edges.windows(2) {
        let len = pair[1] - pair[0];
        let m = (len / h).ceil().max(1.0) as usize;
        let step = len / m as f64;
        xs.extend((0..m).map(|i| pair[0] + (i as f64 + 0.5) * step));
    }
    xs
}

fn outcome_cell(m: MethodOutcome) -> String {
    match m {
        MethodOutcome::Value(v) => fmt_f64(v),
        MethodOutcome::Divergent => "Divergent".into(),
        MethodOutcome::NotApplicable => "NotApplicable".into(),
    }
}

fn flags_cell(r: &PhotonReport) -> String {
    let flags: Vec<&str> = [
        (r.flags.zero_net_charge, "zero_net_charge"),
        (r.flags.flux_decays, "flux_decays"),
        (r.flags.bipolar_voltage, "bipolar_voltage"),
        (r.right_mover, "right_mover"),
    ]
    .iter()
    .filter(|f| f.0)
    .map(|f| f.1)
    .collect();
    if flags.is_empty() {
        "none".into()
    } else {
        flags.join(";")
    }
}

fn fields_of(pulse: &PulseFile, line: &LineParams) -> FieldPair {
    match &pulse.current {
        None => right_mover_fields(&pulse.voltage, line),
        Some(i) => FieldPair::from_voltage_current(&pulse.voltage, i, line),
    }
}

/// θ when the pulse has a photonic representation; None otherwise.
fn theta_of(
    pulse: &PulseFile,
    fields: &FieldPair,
    line: &LineParams,
) -> Result<Option<CoefficientFunctions>, CliError> {
    let th = match pulse.current {
        None => coefficient_functions_rightmover(&pulse.voltage, line),
        Some(_) => coefficient_functions_general(fields, line),
    };
    match th {
        Ok(t) => Ok(Some(t)),
        Err(Error::UnipolarPulse { .. } | Error::RepresentationDoesNotExist(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn analyze(pulse_path: &Path, method: Method, common: &Common) -> Result<(), CliError> {
    let (pulse, line) = load(pulse_path, common)?;
    let tol = tolerance(common, 1e-6)?;
    let report = photon_report(&pulse.voltage, pulse.current.as_ref(), &line)?;

    let mut rep = Table::new(
        "report.csv",
        &["method", "beta2", "flags", "ir_coefficient", "naive_estimate"],
    )?;
    let rows = [
        (Method::General, "general", report.beta2_general),
        (Method::Rightmover, "rightmover", report.beta2_rightmover),
        (Method::Logkernel, "logkernel", report.beta2_logkernel),
    ];
    let flags = flags_cell(&report);
    for (m, name, outcome) in rows {
        if method == Method::All || method == m {
            rep.row([
                name.to_string(),
                outcome_cell(outcome),
                flags.clone(),
                fmt_f64(report.ir_coefficient),
                fmt_f64(report.naive_estimate),
            ])?;
        }
    }

    let fields = fields_of(&pulse, &line);
    let theta = theta_of(&pulse, &fields, &line)?;
    let mut fld = Table::new(
        "fields.csv",
        &[
            "x",
            "V",
            "q",
            "phi",
            "re_theta_q",
            "im_theta_q",
            "re_theta_phi",
            "im_theta_phi",
        ],
    )?;
    if let Some((a, b)) = span(&pulse) {
        let mut breaks = fields.breakpoints();
        breaks.extend(pulse.voltage.breakpoints());
        for x in probe_grid(a, b, &breaks, FIELD_PROBES) {
            let (q, phi) = (fields.q.eval(x), fields.phi.eval(x));
            let (rq, rp) = match &theta {
                Some(t) => (fmt_f64(t.theta_q(x)?.re), fmt_f64(t.theta_phi(x)?.re)),
                None => (String::new(), String::new()),
            };
            fld.row([
                fmt_f64(x),
                fmt_f64(pulse.voltage.eval(x)),
                fmt_f64(q),
                fmt_f64(phi),
                rq,
                fmt_f64(q),
                rp,
                fmt_f64(phi),
            ])?;
        }
    }

    let mut manifest = RunManifest::new(
        "analyze",
        Some(pulse.digest.clone()),
        json!({
            "pulse": pulse_path.display().to_string(),
            "method": format!("{method:?}").to_lowercase(),
            "tol": tol,
            "line": line_json(&line),
        }),
    );
    let disagreement = report.max_disagreement();
    manifest.results = json!({
        "max_disagreement": disagreement,
        "mean_abs_k": report.mean_abs_k,
        "median_abs_k": report.median_abs_k,
        "right_mover": report.right_mover,
    });
    if theta.is_none() {
        manifest
            .warnings
            .push("no photonic representation: Re theta columns left empty".into());
    }
    emit(&common.out, vec![rep, fld], manifest)?;
    match disagreement {
        Some(d) if d > tol => Err(CliError::NotConverged(format!(
            "beta2 methods disagree by {d:e} (tolerance {tol:e})"
        ))),
        _ => Ok(()),
    }
}

/// Log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

pub const MIN_SWEEP_POINTS: usize = 3;
const WARN_SWEEP_POINTS: usize = 5;

pub fn sweep(min_w: f64, max_w: f64, points: usize, common: &Common) -> Result<(), CliError> {
    if !(min_w > 3.0) {
        return Err(Error::OverlappingSubPulses(min_w).into());
    }
    if !(max_w > min_w && max_w.is_finite()) {
        return Err(CliError::Usage(format!(
            "--max-w ({max_w}) must exceed --min-w ({min_w})"
        )));
    }
    if points < MIN_SWEEP_POINTS {
        return Err(CliError::Usage(format!(
            "--points must be at least {MIN_SWEEP_POINTS}, got {points}"
        )));
    }
    let line = LineParams::natural();
    let ws = log_space(min_w, max_w, points);
    let pts = split_pulse_sweep(&ws, &line)?;
    let mut t = Table::new("sweep.csv", &["w", "beta2"])?;
    for p in &pts {
        t.row([fmt_f64(p.w), fmt_f64(p.beta2)])?;
    }
    let fit = fit_log_growth(&pts);
    let mut manifest = RunManifest::new(
        "sweep",
        None,
        json!({ "min_w": min_w, "max_w": max_w, "points": points }),
    );
    manifest.results = json!({
        "fit": fit.map(|f| json!({
            "slope": f.slope,
            "intercept": f.intercept,
            "r_squared": f.r_squared,
            "points": f.points,
        })),
        "reference_slope": 2.0 / std::f64::consts::PI,
    });
    if points < WARN_SWEEP_POINTS {
        manifest
            .warnings
            .push(format!("fit uses only {points} points"));
    }
    emit(&common.out, vec![t], manifest)
}

/// Window half-widths: log-spaced from the support width up to `max_l`.
pub fn window_levels(support_width: f64, max_l: f64, levels: usize) -> Vec<f64> {
    if levels <= 1 || max_l <= support_width {
        vec![max_l]
    } else {
        log_space(support_width, max_l, levels)
    }
}

fn scan_results(scan: &CaptureScan) -> serde_json::Value {
    json!({
        "monotone_decreasing": scan.is_monotone_decreasing(),
        "prefers_power_law": scan.prefers_power_law(),
        "power_law": scan.power_law.map(|f| json!({
            "exponent": f.slope,
            "intercept": f.intercept,
            "r_squared": f.r_squared,
            "residual_ss": f.residual_ss,
            "points": f.points,
        })),
        "exponential": scan.exponential.map(|f| json!({
            "rate": -f.slope,
            "r_squared": f.r_squared,
            "residual_ss": f.residual_ss,
        })),
    })
}

pub fn window_scan(
    pulse_path: &Path,
    max_l: Option<f64>,
    levels: usize,
    k_max: Option<f64>,
    common: &Common,
) -> Result<(), CliError> {
    let (pulse, line) = load(pulse_path, common)?;
    let fields = fields_of(&pulse, &line);
    let theta = match pulse.current {
        None => coefficient_functions_rightmover(&pulse.voltage, &line)?,
        Some(_) => coefficient_functions_general(&fields, &line)?,
    };
    let Some((a, b)) = fields.support() else {
        return Err(Error::InvalidWaveform("no photons: the pulse is zero".into()).into());
    };
    let w = b - a;
    let max_l = max_l.unwrap_or(32.0 * w);
    if !(max_l.is_finite() && max_l > 0.0) || levels == 0 {
        return Err(CliError::Usage(
            "--max-L must be positive and --levels at least 1".into(),
        ));
    }
    if let Some(k) = k_max {
        if !(k.is_finite() && k > 0.0) {
            return Err(CliError::Usage(format!("--k-max must be positive, got {k}")));
        }
    }
    let widths = window_levels(w, max_l, levels);
    let scan = capture_scan(&theta, &widths, &line, k_max)?;
    let mut t = Table::new("capture.csv", &["L", "epsilon", "counter_rotating_weight"])?;
    for r in &scan.rows {
        t.row([
            fmt_f64(r.half_width),
            fmt_f64(r.report.epsilon),
            fmt_f64(r.report.counter_rotating_weight),
        ])?;
    }
    let mut manifest = RunManifest::new(
        "window-scan",
        Some(pulse.digest.clone()),
        json!({
            "pulse": pulse_path.display().to_string(),
            "max_L": max_l,
            "levels": levels,
            "k_max": k_max,
            "window_center": 0.5 * (a + b),
            "line": line_json(&line),
        }),
    );
    manifest.results = scan_results(&scan);
    emit(&common.out, vec![t], manifest)
}

pub fn oracle(
    pulse_path: &Path,
    refine: usize,
    standing: bool,
    common: &Common,
) -> Result<(), CliError> {
    let (pulse, line) = load(pulse_path, common)?;
    let tol = tolerance(common, tlphoton::mode_oracle::DEFAULT_ORACLE_TOL)?;
    let fields = if standing {
        FieldPair::standing(&pulse.voltage, &line)
    } else {
        fields_of(&pulse, &line)
    };
    fields.check_representation()?;

    let e_classical = energy_classical(&fields, &line);
    let e_modes = if fields.is_zero() {
        Some(0.0)
    } else {
        let grid = KGrid::energy_for(&fields)?;
        match energy_modes(&mode_amplitude(&fields, &line, &grid)?, &line) {
            Ok(e) => Some(e),
            Err(Error::NotConverged { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    };

    let mut specs = vec![DiscretizationSpec::for_fields(&fields)?];
    for _ in 0..refine {
        let next = specs[specs.len() - 1].refined();
        specs.push(next);
    }
    let times: Vec<f64> = match fields.support() {
        Some((a, b)) => ORACLE_TIMES
            .iter()
            .map(|t| t * (b - a) / line.velocity())
            .collect(),
        None => Vec::new(),
    };

    let mut t = Table::new(
        "oracle.csv",
        &[
            "level",
            "beta2",
            "energy_classical",
            "energy_modes",
            "time_invariance_deviation",
        ],
    )?;
    let mut values = Vec::with_capacity(specs.len());
    for (i, s) in specs.iter().enumerate() {
        let b2 = oracle_beta2_level(&fields, &line, s);
        let drift = oracle_time_invariance(&fields, &line, &times, s)?;
        values.push(b2);
        t.row([
            i.to_string(),
            fmt_f64(b2),
            fmt_f64(e_classical),
            e_modes.map_or_else(|| "NotConverged".into(), fmt_f64),
            fmt_f64(drift),
        ])?;
    }

    let last = values[values.len() - 1];
    let bound = (values.len() > 1).then(|| (last - values[values.len() - 2]).abs());
    let converged = bound.map(|d| d <= tol * last.abs());
    let mut manifest = RunManifest::new(
        "oracle",
        Some(pulse.digest.clone()),
        json!({
            "pulse": pulse_path.display().to_string(),
            "refine": refine,
            "standing": standing,
            "tol": tol,
            "times": times,
            "line": line_json(&line),
        }),
    );
    manifest.results = json!({
        "beta2": last,
        "error_bound": bound,
        "converged": converged,
        "energy_modes_converged": e_modes.is_some(),
    });
    if refine == 0 {
        manifest
            .warnings
            .push("no refinement: convergence not checked".into());
    }
    emit(&common.out, vec![t], manifest)?;
    if converged == Some(false) {
        return Err(CliError::NotConverged(format!(
            "oracle levels differ by {:e} (tolerance {:e})",
            bound.unwrap_or(f64::NAN),
            tol * last.abs()
        )));
    }
    if e_modes.is_none() {
        return Err(CliError::NotConverged("mode-side energy did not converge".into()));
    }
    Ok(())
}

/// The canonical three-segment pulse, as written by `tlphoton example`.
pub fn canonical_pulse_text() -> &'static str {
    "# three-segment bipolar pulse, natural units\n\
     format 1\n\
     line c=1 v=1 hbar=1\n\
     segment -2 -1 -1\n\
     segment -1 1 1\n\
     segment 1 2 -1\n"
}
