use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_order, dc_gain, ripple_to_epsilon, AnalogPrototype};
use crate::error::{Error, Result};

/// Chebyshev polynomial of the first kind, `C_N(x)`, via its trigonometric
/// and hyperbolic forms.
pub fn chebyshev_poly(order: usize, x: f64) -> f64 {
    let n = order as f64;
    if x.abs() <= 1.0 {
        (n * x.acos()).cos()
    } else {
        let value = (n * x.abs().acosh()).cosh();
        if x < 0.0 && order % 2 == 1 {
            -value
        } else {
            value
        }
    }
}

/// `|H(jω)|² = 1 / (1 + ε²·C_N²(ω/ωp))`.
pub fn chebyshev1_magnitude_sq(omega: f64, omega_p: f64, epsilon: f64, order: usize) -> Result<f64> {
    if !(omega_p > 0.0) || !omega_p.is_finite() {
        return Err(Error::InvalidFrequency(omega_p));
    }
    let c = chebyshev_poly(order, omega / omega_p);
    Ok(1.0 / (1.0 + epsilon * epsilon * c * c))
}

/// Chebyshev type I prototype with passband edge at 1 rad/s. Poles lie on an
/// ellipse with semi-axes `sinh μ` and `cosh μ`, `μ = asinh(1/ε)/N`.
pub fn chebyshev1_prototype(order: usize, ripple_db: f64) -> Result<AnalogPrototype> {
    check_order(order)?;
    let eps = ripple_to_epsilon(ripple_db)?;
    let n = order as f64;
    let mu = (1.0 / eps).asinh() / n;
    let (sinh_mu, cosh_mu) = (mu.sinh(), mu.cosh());
    let poles: Vec<Complex64> = (1..=order)
        .map(|k| {
            let theta = (2 * k - 1) as f64 * PI / (2.0 * n);
            if 2 * k == order + 1 {
                Complex64::new(-sinh_mu, 0.0)
            } else {
                Complex64::new(-sinh_mu * theta.sin(), cosh_mu * theta.cos())
            }
        })
        .collect();
    let dc = if order % 2 == 1 { 1.0 } else { 1.0 / (1.0 + eps * eps).sqrt() };
    let gain = dc_gain(&[], &poles, dc);
    Ok(AnalogPrototype { zeros: Vec::new(), poles, gain })
}
