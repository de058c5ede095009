//! Low-pass to band frequency transformations and the bilinear map.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::planner::Band;
use crate::prototype::AnalogPrototype;
use crate::zpk;

/// An analog filter at real (unnormalized) frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogFilter {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub gain: f64,
}

impl AnalogFilter {
    pub fn response(&self, s: Complex64) -> Complex64 {
        zpk::evaluate(&self.zeros, &self.poles, self.gain, s)
    }

    /// `|H(jω)|` at `omega` rad/s.
    pub fn magnitude(&self, omega: f64) -> f64 {
        self.response(Complex64::new(0.0, omega)).norm()
    }
}

/// A filter in the z-plane. Zeros and poles are equal in number.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitalFilter {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub gain: f64,
    pub sample_rate: f64,
}

impl DigitalFilter {
    pub fn response(&self, z: Complex64) -> Complex64 {
        zpk::evaluate(&self.zeros, &self.poles, self.gain, z)
    }

    /// `H(e^{j2πf/fs})` at `frequency` Hz.
    pub fn response_at(&self, frequency: f64) -> Complex64 {
        self.response(Complex64::from_polar(1.0, 2.0 * PI * frequency / self.sample_rate))
    }

    pub fn order(&self) -> usize {
        self.poles.len()
    }
}

/// Gain factor `∏(−z) / ∏(−p)` taken over the roots being moved.
fn root_ratio(zeros: &[Complex64], poles: &[Complex64]) -> f64 {
    let num: Complex64 = zeros.iter().map(|z| -z).product();
    let den: Complex64 = poles.iter().map(|p| -p).product();
    (num / den).re
}

/// Roots of `s² − b·s + c` for complex `b` and real `c`.
fn quadratic_pair(b: Complex64, c: f64) -> [Complex64; 2] {
    let half = b / 2.0;
    let disc = (half * half - c).sqrt();
    [half + disc, half - disc]
}

/// Maps a unit-passband low-pass prototype onto `band`.
///
/// `edges` holds the prewarped passband edge (low-pass, high-pass) or the two
/// passband edges (bandpass, bandstop), in rad/s.
pub fn transform_band(proto: &AnalogPrototype, band: Band, edges: &[f64]) -> Result<AnalogFilter> {
    if edges.len() != band.edge_count() {
        return Err(Error::InvalidEdges(format!(
            "{band} needs {} edge(s), got {}",
            band.edge_count(),
            edges.len()
        )));
    }
    if let Some(&bad) = edges.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
        return Err(Error::InvalidFrequency(bad));
    }
    let degree = proto.poles.len() - proto.zeros.len();
    let filter = match band {
        Band::Lowpass => {
            let wc = edges[0];
            AnalogFilter {
                zeros: proto.zeros.iter().map(|z| z * wc).collect(),
                poles: proto.poles.iter().map(|p| p * wc).collect(),
                gain: proto.gain * wc.powi(degree as i32),
            }
        }
        Band::Highpass => {
            let wc = edges[0];
            let mut zeros: Vec<Complex64> = proto.zeros.iter().map(|z| wc / z).collect();
            zeros.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(degree));
            AnalogFilter {
                zeros,
                poles: proto.poles.iter().map(|p| wc / p).collect(),
                gain: proto.gain * root_ratio(&proto.zeros, &proto.poles),
            }
        }
        Band::Bandpass => {
            if edges[1] <= edges[0] {
                return Err(Error::InvalidEdges(format!("bandpass edges {edges:?} not increasing")));
            }
            let center_sq = edges[0] * edges[1];
            let width = edges[1] - edges[0];
            let map = |roots: &[Complex64]| -> Vec<Complex64> {
                roots.iter().flat_map(|r| quadratic_pair(r * width, center_sq)).collect()
            };
            let mut zeros = map(&proto.zeros);
            zeros.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(degree));
            AnalogFilter {
                zeros,
                poles: map(&proto.poles),
                gain: proto.gain * width.powi(degree as i32),
            }
        }
        Band::Bandstop => {
            if edges[1] <= edges[0] {
                return Err(Error::InvalidEdges(format!("bandstop edges {edges:?} not increasing")));
            }
            let center_sq = edges[0] * edges[1];
            let center = center_sq.sqrt();
            let width = edges[1] - edges[0];
            let map = |roots: &[Complex64]| -> Vec<Complex64> {
                roots.iter().flat_map(|r| quadratic_pair(width / r, center_sq)).collect()
            };
            let mut zeros = map(&proto.zeros);
            for _ in 0..degree {
                zeros.push(Complex64::new(0.0, center));
                zeros.push(Complex64::new(0.0, -center));
            }
            AnalogFilter {
                zeros,
                poles: map(&proto.poles),
                gain: proto.gain * root_ratio(&proto.zeros, &proto.poles),
            }
        }
    };
    Ok(filter)
}

/// Bilinear transform `z = (2fs + s) / (2fs − s)`.
///
/// Zeros at analog infinity land on `z = −1`. The gain factor makes the
/// digital response equal the analog one at corresponding frequencies.
pub fn bilinear(analog: &AnalogFilter, sample_rate: f64) -> Result<DigitalFilter> {
    if !(sample_rate > 0.0) || !sample_rate.is_finite() {
        return Err(Error::InvalidFrequency(sample_rate));
    }
    let k = 2.0 * sample_rate;
    let map = |s: &Complex64| -> Result<Complex64> {
        let den = k - s;
        if den.norm() == 0.0 {
            return Err(Error::MappingSingularity(s.re));
        }
        Ok((k + s) / den)
    };
    let mut zeros = analog.zeros.iter().map(map).collect::<Result<Vec<_>>>()?;
    let poles = analog.poles.iter().map(map).collect::<Result<Vec<_>>>()?;
    let num: Complex64 = analog.zeros.iter().map(|z| k - z).product();
    let den: Complex64 = analog.poles.iter().map(|p| k - p).product();
    let gain = analog.gain * (num / den).re;
    while zeros.len() < poles.len() {
        zeros.push(Complex64::new(-1.0, 0.0));
    }
    Ok(DigitalFilter { zeros, poles, gain, sample_rate })
}
