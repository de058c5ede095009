//! Normalized analog low-pass prototypes.
//!
//! Chebyshev-I and elliptic prototypes have their passband edge at 1 rad/s.
//! The Butterworth prototype has its half-power point at 1 rad/s; the planner
//! rescales it so the passband edge meets the ripple limit exactly.

mod butterworth;
mod chebyshev;
mod elliptic;
pub mod special;

pub use butterworth::{butterworth_metrics, butterworth_prototype, ButterworthMetrics};
pub use chebyshev::{chebyshev1_magnitude_sq, chebyshev1_prototype, chebyshev_poly};
pub use elliptic::{elliptic_magnitude, elliptic_prototype};
pub(crate) use special::period_ratio_for;
pub use special::{
    complete_elliptic_integral, elliptic_rational, jacobi_elliptic, EllipticParams,
    EllipticRational,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::zpk;

/// Tolerance used to decide whether a root is real.
pub(crate) const REAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalogPrototype {
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub gain: f64,
}

impl AnalogPrototype {
    /// `H(s)` at an arbitrary complex frequency.
    pub fn response(&self, s: Complex64) -> Complex64 {
        zpk::evaluate(&self.zeros, &self.poles, self.gain, s)
    }

    /// `|H(jω)|`.
    pub fn magnitude(&self, omega: f64) -> f64 {
        self.response(Complex64::new(0.0, omega)).norm()
    }

    /// Checks LHP poles, conjugate pairing, zero count and gain sign.
    pub fn is_well_formed(&self) -> bool {
        self.poles.iter().all(|p| p.re < 0.0)
            && self.zeros.len() <= self.poles.len()
            && self.gain > 0.0
            && zpk::is_conjugate_closed(&self.zeros)
            && zpk::is_conjugate_closed(&self.poles)
    }

    /// Frequency scaling `s → s/ω`, which moves the unit edge to `ω`.
    pub fn scaled(&self, omega: f64) -> AnalogPrototype {
        let degree = self.poles.len() as i32 - self.zeros.len() as i32;
        AnalogPrototype {
            zeros: self.zeros.iter().map(|z| z * omega).collect(),
            poles: self.poles.iter().map(|p| p * omega).collect(),
            gain: self.gain * omega.powi(degree),
        }
    }
}

/// Ripple factor for a ripple given in dB: `ε = √(10^(r/10) − 1)`.
pub fn ripple_to_epsilon(ripple_db: f64) -> Result<f64> {
    if !(ripple_db > 0.0) || !ripple_db.is_finite() {
        return Err(Error::InvalidRipple(ripple_db));
    }
    Ok((10f64.powf(ripple_db / 10.0) - 1.0).sqrt())
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Ok(())
}

/// Gain that puts `|H(j0)|` at `dc` for the given roots.
fn dc_gain(zeros: &[Complex64], poles: &[Complex64], dc: f64) -> f64 {
    let num: Complex64 = poles.iter().map(|p| -p).product();
    let den: Complex64 = zeros.iter().map(|z| -z).product();
    dc * (num / den).re
}
