//! Response curves, pole-zero listings and measured band metrics.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::planner::{Band, FilterSpec};
use crate::realization::{impulse_response, SosCascade, ZDomain};
use crate::zpk;

/// Magnitudes below this are reported as [`DB_FLOOR`].
pub const MAGNITUDE_FLOOR: f64 = 1e-10;
pub const DB_FLOOR: f64 = -200.0;

/// Tolerance, in dB, when deciding whether a frequency meets a band limit.
const COMPLIANCE_TOL_DB: f64 = 1e-6;
const BAND_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseKind {
    Impulse,
    MagnitudeDb,
    PhaseRad,
    GroupDelaySamples,
    SpectrumDb,
}

impl ResponseKind {
    /// Column headers for CSV output: abscissa then ordinate.
    pub fn columns(self) -> (&'static str, &'static str) {
        match self {
            ResponseKind::Impulse => ("sample", "amplitude"),
            ResponseKind::MagnitudeDb => ("frequency_hz", "magnitude_db"),
            ResponseKind::PhaseRad => ("frequency_hz", "phase_rad"),
            ResponseKind::GroupDelaySamples => ("frequency_hz", "group_delay_samples"),
            ResponseKind::SpectrumDb => ("frequency_hz", "spectrum_db"),
        }
    }
}

impl FromStr for ResponseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "impulse" => Ok(ResponseKind::Impulse),
            "magnitude" | "magnitude_db" => Ok(ResponseKind::MagnitudeDb),
            "phase" | "phase_rad" => Ok(ResponseKind::PhaseRad),
            "groupdelay" | "group_delay" | "group_delay_samples" => Ok(ResponseKind::GroupDelaySamples),
            "spectrum" | "spectrum_db" => Ok(ResponseKind::SpectrumDb),
            other => Err(Error::InvalidKind(other.to_string())),
        }
    }
}

impl fmt::Display for ResponseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResponseKind::Impulse => "impulse",
            ResponseKind::MagnitudeDb => "magnitude_db",
            ResponseKind::PhaseRad => "phase_rad",
            ResponseKind::GroupDelaySamples => "group_delay_samples",
            ResponseKind::SpectrumDb => "spectrum_db",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResponseSeries {
    pub kind: ResponseKind,
    pub abscissa: Vec<f64>,
    pub ordinate: Vec<f64>,
}

impl ResponseSeries {
    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }
}

pub fn to_db(magnitude: f64) -> f64 {
    if magnitude < MAGNITUDE_FLOOR {
        DB_FLOOR
    } else {
        20.0 * magnitude.log10()
    }
}

/// `H(e^{j2πf/fs})` at each frequency, from the factored form.
pub fn frequency_response<F: ZDomain + ?Sized>(filter: &F, frequencies: &[f64]) -> Result<Vec<Complex64>> {
    let nyquist = filter.sample_rate() / 2.0;
    frequencies
        .iter()
        .map(|&f| {
            if !(0.0..=nyquist).contains(&f) {
                return Err(Error::OutOfBand { frequency: f, nyquist });
            }
            Ok(filter.response_at(f))
        })
        .collect()
}

/// `points` frequencies spread uniformly over `[0, fs/2]`.
pub fn frequency_grid(sample_rate: f64, points: usize) -> Vec<f64> {
    linspace(0.0, sample_rate / 2.0, points)
}

fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (points - 1) as f64;
            let mut v: Vec<f64> = (0..points).map(|i| start + step * i as f64).collect();
            v[points - 1] = end;
            v
        }
    }
}

/// Adds multiples of 2π wherever consecutive samples jump by more than π.
pub fn unwrap_phase(phase: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phase.len());
    let mut offset = 0.0;
    for (i, &p) in phase.iter().enumerate() {
        if i > 0 {
            let diff = p - phase[i - 1];
            if diff > PI {
                offset -= 2.0 * PI * ((diff - PI) / (2.0 * PI)).ceil();
            } else if diff < -PI {
                offset += 2.0 * PI * ((-diff - PI) / (2.0 * PI)).ceil();
            }
        }
        out.push(p + offset);
    }
    out
}

/// `−dφ/dω` in samples by central differences (one-sided at the ends).
fn group_delay(frequencies: &[f64], unwrapped: &[f64], sample_rate: f64) -> Vec<f64> {
    let n = frequencies.len();
    let omega: Vec<f64> = frequencies.iter().map(|f| 2.0 * PI * f / sample_rate).collect();
    (0..n)
        .map(|i| {
            let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
            -(unwrapped[hi] - unwrapped[lo]) / (omega[hi] - omega[lo])
        })
        .collect()
}

pub fn response_series(cascade: &SosCascade, kind: ResponseKind, points: usize) -> Result<ResponseSeries> {
    if points < 2 {
        return Err(Error::InvalidKind(format!("need at least 2 points, got {points}")));
    }
    let fs = cascade.sample_rate;
    if kind == ResponseKind::Impulse {
        let h = impulse_response(cascade, points);
        return Ok(ResponseSeries { kind, abscissa: (0..points).map(|i| i as f64).collect(), ordinate: h });
    }
    let freqs = frequency_grid(fs, points);
    let h = frequency_response(cascade, &freqs)?;
    let ordinate = match kind {
        ResponseKind::MagnitudeDb => h.iter().map(|v| to_db(v.norm())).collect(),
        ResponseKind::PhaseRad => unwrap_phase(&h.iter().map(|v| v.arg()).collect::<Vec<_>>()),
        ResponseKind::GroupDelaySamples => {
            let phase = unwrap_phase(&h.iter().map(|v| v.arg()).collect::<Vec<_>>());
            group_delay(&freqs, &phase, fs)
        }
        ResponseKind::SpectrumDb => {
            return Err(Error::InvalidKind("spectrum_db applies to signals, not filters".to_string()))
        }
        ResponseKind::Impulse => unreachable!(),
    };
    Ok(ResponseSeries { kind, abscissa: freqs, ordinate })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleZero {
    pub poles: Vec<Root>,
    pub zeros: Vec<Root>,
}

/// Poles and zeros sorted by descending modulus, conjugates adjacent.
pub fn pole_zero<F: ZDomain + ?Sized>(filter: &F) -> PoleZero {
    let list = |roots: Vec<Complex64>| {
        zpk::sort_by_modulus(&roots)
            .into_iter()
            .map(|r| Root { re: r.re, im: r.im, modulus: r.norm() })
            .collect()
    };
    PoleZero { poles: list(filter.poles()), zeros: list(filter.zeros()) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandMetrics {
    pub passband_deviation_db: f64,
    pub stopband_attenuation_db: f64,
    pub transition_width_hz: f64,
    pub phase_linearity_error_rad: f64,
}

struct Bands {
    pass: Vec<(f64, f64)>,
    stop: Vec<(f64, f64)>,
    /// (passband edge, stopband edge) per transition.
    transitions: Vec<(f64, f64)>,
}

fn bands(spec: &FilterSpec) -> Bands {
    let nyq = spec.sample_rate / 2.0;
    let p = &spec.passband_edges;
    let s = &spec.stopband_edges;
    match spec.band {
        Band::Lowpass => Bands {
            pass: vec![(0.0, p[0])],
            stop: vec![(s[0], nyq)],
            transitions: vec![(p[0], s[0])],
        },
        Band::Highpass => Bands {
            pass: vec![(p[0], nyq)],
            stop: vec![(0.0, s[0])],
            transitions: vec![(p[0], s[0])],
        },
        Band::Bandpass => Bands {
            pass: vec![(p[0], p[1])],
            stop: vec![(0.0, s[0]), (s[1], nyq)],
            transitions: vec![(p[0], s[0]), (p[1], s[1])],
        },
        Band::Bandstop => Bands {
            pass: vec![(0.0, p[0]), (p[1], nyq)],
            stop: vec![(s[0], s[1])],
            transitions: vec![(p[0], s[0]), (p[1], s[1])],
        },
    }
}

fn attenuation_db<F: ZDomain + ?Sized>(filter: &F, f: f64) -> f64 {
    -to_db(filter.response_at(f).norm())
}

/// Max absolute residual of `y` from its least-squares line over `x`.
fn linear_fit_residual(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    x.iter()
        .zip(y)
        .map(|(a, b)| (b - (my + slope * (a - mx))).abs())
        .fold(0.0, f64::max)
}

/// Boundary between a point where `ok` holds and one where it does not.
/// Returns the compliant side, resolved to 0.01 Hz.
fn bisect(mut good: f64, mut bad: f64, ok: &dyn Fn(f64) -> bool) -> f64 {
    while (good - bad).abs() > 0.01 {
        let mid = 0.5 * (good + bad);
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Walks from `start` in steps of `step` (signed) while `ok` keeps its value
/// at `start`; returns the compliant endpoint of the first flip.
fn locate_edge(start: f64, step: f64, lo: f64, hi: f64, ok: &dyn Fn(f64) -> bool) -> f64 {
    let start_ok = ok(start);
    let mut prev = start;
    loop {
        let next = (prev + step).clamp(lo, hi);
        if next == prev {
            return prev;
        }
        if ok(next) != start_ok {
            return if start_ok { bisect(prev, next, ok) } else { bisect(next, prev, ok) };
        }
        prev = next;
    }
}

pub fn measure_band_metrics<F: ZDomain + ?Sized>(filter: &F, spec: &FilterSpec) -> Result<BandMetrics> {
    spec.validate()?;
    let nyq = spec.sample_rate / 2.0;
    let layout = bands(spec);
    let rp = spec.passband_ripple_db;
    let rs = spec.stopband_atten_db;

    let mut deviation = 0.0f64;
    let mut linearity = 0.0f64;
    for &(a, b) in &layout.pass {
        let grid = linspace(a, b, BAND_GRID);
        let h = frequency_response(filter, &grid)?;
        deviation = h.iter().map(|v| to_db(v.norm()).abs()).fold(deviation, f64::max);
        let phase = unwrap_phase(&h.iter().map(|v| v.arg()).collect::<Vec<_>>());
        linearity = linearity.max(linear_fit_residual(&grid, &phase));
    }

    let mut stop_att = f64::INFINITY;
    for &(a, b) in &layout.stop {
        let grid = linspace(a, b, BAND_GRID);
        for f in grid {
            stop_att = stop_att.min(attenuation_db(filter, f));
        }
    }

    let pass_ok = |f: f64| attenuation_db(filter, f) <= rp + COMPLIANCE_TOL_DB;
    let stop_ok = |f: f64| attenuation_db(filter, f) >= rs - COMPLIANCE_TOL_DB;
    let mut width = 0.0f64;
    for &(pass_edge, stop_edge) in &layout.transitions {
        let dir = (stop_edge - pass_edge).signum();
        let step = 0.5_f64.min((stop_edge - pass_edge).abs() / 64.0);
        // compliant passband side walks toward the stopband, stopband side back
        let f_pass = if pass_ok(pass_edge) {
            locate_edge(pass_edge, dir * step, 0.0, nyq, &pass_ok)
        } else {
            locate_edge(pass_edge, -dir * step, 0.0, nyq, &pass_ok)
        };
        let f_stop = if stop_ok(stop_edge) {
            locate_edge(stop_edge, -dir * step, 0.0, nyq, &stop_ok)
        } else {
            locate_edge(stop_edge, dir * step, 0.0, nyq, &stop_ok)
        };
        width = width.max((f_stop - f_pass).abs());
    }

    Ok(BandMetrics {
        passband_deviation_db: deviation,
        stopband_attenuation_db: stop_att,
        transition_width_hz: width,
        phase_linearity_error_rad: linearity,
    })
}
