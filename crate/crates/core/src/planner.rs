//! Turns a user-facing filter specification into a concrete design plan.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prototype::{period_ratio_for, ripple_to_epsilon};

pub const DEFAULT_PASSBAND_RIPPLE_DB: f64 = 2.0;
pub const DEFAULT_STOPBAND_ATTEN_DB: f64 = 35.0;
pub const DEFAULT_SAMPLE_RATE: f64 = 8000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Butterworth,
    Chebyshev1,
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    Lowpass,
    Highpass,
    Bandpass,
    Bandstop,
}

impl Band {
    pub fn edge_count(self) -> usize {
        match self {
            Band::Lowpass | Band::Highpass => 1,
            Band::Bandpass | Band::Bandstop => 2,
        }
    }
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Butterworth, Family::Chebyshev1, Family::Elliptic];
}

impl Band {
    pub const ALL: [Band; 4] = [Band::Lowpass, Band::Highpass, Band::Bandpass, Band::Bandstop];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Butterworth => "butterworth",
            Family::Chebyshev1 => "chebyshev1",
            Family::Elliptic => "elliptic",
        })
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Band::Lowpass => "lowpass",
            Band::Highpass => "highpass",
            Band::Bandpass => "bandpass",
            Band::Bandstop => "bandstop",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "butter" | "butterworth" => Ok(Family::Butterworth),
            "cheby1" | "chebyshev1" => Ok(Family::Chebyshev1),
            "ellip" | "elliptic" => Ok(Family::Elliptic),
            other => Err(Error::InvalidKind(format!("unknown family '{other}'"))),
        }
    }
}

impl FromStr for Band {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp" | "lowpass" => Ok(Band::Lowpass),
            "hp" | "highpass" => Ok(Band::Highpass),
            "bp" | "bandpass" => Ok(Band::Bandpass),
            "bs" | "bandstop" => Ok(Band::Bandstop),
            other => Err(Error::InvalidKind(format!("unknown band '{other}'"))),
        }
    }
}

/// A design request in the digital domain.
///
/// For band filters `passband_edges` is `[f1, f2]` and `stopband_edges` is
/// `[f3, f4]`: bandpass needs `f3 < f1 < f2 < f4`, bandstop `f1 < f3 < f4 < f2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterSpec {
    pub family: Family,
    pub band: Band,
    pub sample_rate: f64,
    pub passband_edges: Vec<f64>,
    pub stopband_edges: Vec<f64>,
    pub passband_ripple_db: f64,
    pub stopband_atten_db: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_override: Option<usize>,
}

impl FilterSpec {
    /// A specification with the default ripple limits (2 dB / 35 dB).
    pub fn new(
        family: Family,
        band: Band,
        sample_rate: f64,
        passband_edges: &[f64],
        stopband_edges: &[f64],
    ) -> Self {
        FilterSpec {
            family,
            band,
            sample_rate,
            passband_edges: passband_edges.to_vec(),
            stopband_edges: stopband_edges.to_vec(),
            passband_ripple_db: DEFAULT_PASSBAND_RIPPLE_DB,
            stopband_atten_db: DEFAULT_STOPBAND_ATTEN_DB,
            order_override: None,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order_override = Some(order);
        self
    }

    pub fn with_ripple(mut self, passband_ripple_db: f64, stopband_atten_db: f64) -> Self {
        self.passband_ripple_db = passband_ripple_db;
        self.stopband_atten_db = stopband_atten_db;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sample_rate > 0.0) || !self.sample_rate.is_finite() {
            return Err(Error::InvalidFrequency(self.sample_rate));
        }
        let count = self.band.edge_count();
        if self.passband_edges.len() != count || self.stopband_edges.len() != count {
            return Err(Error::InvalidEdges(format!(
                "{} needs {count} passband and {count} stopband edge(s), got {} and {}",
                self.band,
                self.passband_edges.len(),
                self.stopband_edges.len()
            )));
        }
        let nyquist = self.sample_rate / 2.0;
        for &f in self.passband_edges.iter().chain(&self.stopband_edges) {
            if !(f > 0.0 && f < nyquist) {
                return Err(Error::OutOfBand { frequency: f, nyquist });
            }
        }
        let (p, s) = (&self.passband_edges, &self.stopband_edges);
        let ordered = match self.band {
            Band::Lowpass => p[0] < s[0],
            Band::Highpass => s[0] < p[0],
            Band::Bandpass => s[0] < p[0] && p[0] < p[1] && p[1] < s[1],
            Band::Bandstop => p[0] < s[0] && s[0] < s[1] && s[1] < p[1],
        };
        if !ordered {
            return Err(Error::Infeasible(format!(
                "band edges passband {:?} / stopband {:?} are not ordered for a {}",
                p, s, self.band
            )));
        }
        ripple_to_epsilon(self.passband_ripple_db)?;
        ripple_to_epsilon(self.stopband_atten_db)?;
        if self.stopband_atten_db <= self.passband_ripple_db {
            return Err(Error::Infeasible(format!(
                "stopband attenuation {} dB must exceed passband ripple {} dB",
                self.stopband_atten_db, self.passband_ripple_db
            )));
        }
        if self.order_override == Some(0) {
            return Err(Error::InvalidOrder(0));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignPlan {
    pub family: Family,
    pub band: Band,
    pub sample_rate: f64,
    pub order: usize,
    pub passband_ripple_db: f64,
    pub stopband_atten_db: f64,
    /// Prewarped passband edge(s), rad/s.
    pub analog_passband_edges: Vec<f64>,
    /// Prewarped stopband edge(s), rad/s.
    pub analog_stopband_edges: Vec<f64>,
    /// Stopband edge of the equivalent unit-passband low-pass problem.
    pub lowpass_stopband_ratio: f64,
}

impl DesignPlan {
    /// Factor applied to the unit half-power Butterworth prototype so that its
    /// passband edge lands on 1 rad/s with exactly `rp` dB attenuation.
    pub fn butterworth_scale(&self) -> f64 {
        let eps = ripple_to_epsilon(self.passband_ripple_db).expect("validated ripple");
        eps.powf(-1.0 / self.order as f64)
    }

    /// Half-power frequency of a Butterworth low-pass or high-pass plan, rad/s.
    pub fn butterworth_cutoff(&self) -> Option<f64> {
        if self.family != Family::Butterworth {
            return None;
        }
        let wp = self.analog_passband_edges[0];
        match self.band {
            Band::Lowpass => Some(wp * self.butterworth_scale()),
            Band::Highpass => Some(wp / self.butterworth_scale()),
            _ => None,
        }
    }
}

/// Analog frequency (rad/s) whose bilinear image is the digital frequency `f`.
pub fn prewarp(frequency: f64, sample_rate: f64) -> Result<f64> {
    let nyquist = sample_rate / 2.0;
    if !(frequency > 0.0 && frequency < nyquist) {
        return Err(Error::OutOfBand { frequency, nyquist });
    }
    Ok(2.0 * sample_rate * (PI * frequency / sample_rate).tan())
}

/// Inverse of [`prewarp`].
pub fn unwarp(omega: f64, sample_rate: f64) -> f64 {
    sample_rate / PI * (omega / (2.0 * sample_rate)).atan()
}

fn ceil_order(x: f64) -> usize {
    ((x - 1e-9).ceil().max(1.0)) as usize
}

/// Smallest order meeting `rp` dB at `omega_p` and `rs` dB at `omega_s`.
pub fn minimum_order(family: Family, omega_p: f64, omega_s: f64, rp: f64, rs: f64) -> Result<usize> {
    if !(omega_p > 0.0) || !omega_p.is_finite() {
        return Err(Error::InvalidFrequency(omega_p));
    }
    if !(omega_s > omega_p) || !omega_s.is_finite() {
        return Err(Error::Infeasible(format!(
            "stopband edge {omega_s} rad/s must lie above passband edge {omega_p} rad/s"
        )));
    }
    let eps_p = ripple_to_epsilon(rp)?;
    let eps_s = ripple_to_epsilon(rs)?;
    if rs <= rp {
        return Err(Error::Infeasible(format!(
            "stopband attenuation {rs} dB must exceed passband ripple {rp} dB"
        )));
    }
    let discrimination = eps_s / eps_p;
    let selectivity = omega_s / omega_p;
    let raw = match family {
        Family::Butterworth => discrimination.ln() / selectivity.ln(),
        Family::Chebyshev1 => discrimination.acosh() / selectivity.acosh(),
        Family::Elliptic => {
            period_ratio_for(1.0 / selectivity) / period_ratio_for(1.0 / discrimination)
        }
    };
    Ok(ceil_order(raw))
}

/// Stopband edge of the equivalent unit-passband low-pass problem.
fn lowpass_ratio(band: Band, pass: &[f64], stop: &[f64]) -> f64 {
    match band {
        Band::Lowpass => stop[0] / pass[0],
        Band::Highpass => pass[0] / stop[0],
        Band::Bandpass => {
            let center_sq = pass[0] * pass[1];
            let width = pass[1] - pass[0];
            stop.iter()
                .map(|w| (w * w - center_sq).abs() / (width * w))
                .fold(f64::INFINITY, f64::min)
        }
        Band::Bandstop => {
            let center_sq = pass[0] * pass[1];
            let width = pass[1] - pass[0];
            stop.iter()
                .map(|w| width * w / (center_sq - w * w).abs())
                .fold(f64::INFINITY, f64::min)
        }
    }
}

pub fn plan(spec: &FilterSpec) -> Result<DesignPlan> {
    spec.validate()?;
    let fs = spec.sample_rate;
    let warp = |edges: &[f64]| edges.iter().map(|&f| prewarp(f, fs)).collect::<Result<Vec<_>>>();
    let pass = warp(&spec.passband_edges)?;
    let stop = warp(&spec.stopband_edges)?;
    let ratio = lowpass_ratio(spec.band, &pass, &stop);
    let order = match spec.order_override {
        Some(n) => n,
        None => minimum_order(
            spec.family,
            1.0,
            ratio,
            spec.passband_ripple_db,
            spec.stopband_atten_db,
        )?,
    };
    Ok(DesignPlan {
        family: spec.family,
        band: spec.band,
        sample_rate: fs,
        order,
        passband_ripple_db: spec.passband_ripple_db,
        stopband_atten_db: spec.stopband_atten_db,
        analog_passband_edges: pass,
        analog_stopband_edges: stop,
        lowpass_stopband_ratio: ratio,
    })
}
