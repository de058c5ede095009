use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{check_order, dc_gain, AnalogPrototype};
use crate::error::{Error, Result};

/// Unit-cutoff Butterworth prototype: N poles on the left half of the unit
/// circle, no finite zeros, unity DC gain.
pub fn butterworth_prototype(order: usize) -> Result<AnalogPrototype> {
    check_order(order)?;
    let n = order as f64;
    let poles: Vec<Complex64> = (1..=order)
        .map(|k| {
            let angle = PI * (2.0 * k as f64 + n - 1.0) / (2.0 * n);
            let p = Complex64::from_polar(1.0, angle);
            // the middle pole of an odd order is exactly -1
            if 2 * k == order + 1 {
                Complex64::new(-1.0, 0.0)
            } else {
                p
            }
        })
        .collect();
    let gain = dc_gain(&[], &poles, 1.0);
    Ok(AnalogPrototype { zeros: Vec::new(), poles, gain })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButterworthMetrics {
    pub magnitude_sq: f64,
    pub attenuation_db: f64,
    /// Slope magnitude of `|H|` at the cutoff, `N / (2√2·ωc)`.
    pub selectivity: f64,
}

pub fn butterworth_metrics(omega: f64, omega_c: f64, order: usize) -> Result<ButterworthMetrics> {
    check_order(order)?;
    if !(omega_c > 0.0) || !omega_c.is_finite() {
        return Err(Error::InvalidFrequency(omega_c));
    }
    if !(omega >= 0.0) {
        return Err(Error::InvalidFrequency(omega));
    }
    let ratio_pow = (omega / omega_c).powi(2 * order as i32);
    Ok(ButterworthMetrics {
        magnitude_sq: 1.0 / (1.0 + ratio_pow),
        attenuation_db: 10.0 * ratio_pow.ln_1p() / std::f64::consts::LN_10,
        selectivity: order as f64 / (2.0 * SQRT_2 * omega_c),
    })
}
