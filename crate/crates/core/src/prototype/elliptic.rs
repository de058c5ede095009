use num_complex::Complex64;

use super::special::{
    complement, complete_pair, incomplete_first_kind, jacobi, jacobi_complex, EllipticParams,
    EllipticRational,
};
use super::{check_order, dc_gain, ripple_to_epsilon, AnalogPrototype};
use crate::error::{Error, Result};

/// `|H(jω)| = 1 / √(1 + ε²·R_N²(ξ, ω/ωp))`.
pub fn elliptic_magnitude(omega: f64, omega_p: f64, epsilon: f64, xi: f64, order: usize) -> Result<f64> {
    if !(omega_p > 0.0) || !omega_p.is_finite() {
        return Err(Error::InvalidFrequency(omega_p));
    }
    if !(omega >= 0.0) {
        return Err(Error::InvalidFrequency(omega));
    }
    let r = EllipticRational::new(order, xi)?.eval(omega / omega_p);
    Ok(1.0 / (1.0 + epsilon * epsilon * r * r).sqrt())
}

/// Elliptic (Cauer) prototype with passband edge at 1 rad/s.
///
/// The selectivity comes from the degree equation, so the returned filter has
/// exactly `passband_ripple_db` of ripple and reaches `stopband_atten_db` at
/// `ξ` rad/s. Returns the prototype together with the parameters it realizes.
pub fn elliptic_prototype(
    order: usize,
    passband_ripple_db: f64,
    stopband_atten_db: f64,
) -> Result<(AnalogPrototype, EllipticParams)> {
    check_order(order)?;
    ripple_to_epsilon(passband_ripple_db)?;
    ripple_to_epsilon(stopband_atten_db)?;
    if stopband_atten_db <= passband_ripple_db {
        return Err(Error::Infeasible(format!(
            "stopband attenuation {stopband_atten_db} dB must exceed passband ripple {passband_ripple_db} dB"
        )));
    }
    let params = EllipticParams::solve(order, passband_ripple_db, stopband_atten_db)?;
    let rational = EllipticRational::new(order, params.xi)?;
    let eps = params.epsilon;

    let k = params.modulus;
    let kc = complement(k);
    let big_k = params.quarter_period;

    // the realized discrimination fixes the companion modulus exactly
    let k1 = 1.0 / params.discrimination;
    let k1c = complement(k1);
    let (big_k1, _) = complete_pair(k1, k1c);
    let v0 = incomplete_first_kind((1.0 / eps).atan(), k1) / (order as f64 * big_k1);

    let mut zeros = Vec::with_capacity(order);
    for &p in rational.poles() {
        zeros.push(Complex64::new(0.0, p));
        zeros.push(Complex64::new(0.0, -p));
    }

    let mut poles = Vec::with_capacity(order);
    for i in 1..=order / 2 {
        let u = (2 * i - 1) as f64 / order as f64;
        let (_, cn, dn) = jacobi_complex(u * big_k, -v0 * big_k, k, kc);
        let p = Complex64::i() * (cn / dn);
        let p = Complex64::new(-p.re.abs(), p.im.abs());
        poles.push(p);
        poles.push(p.conj());
    }
    if order % 2 == 1 {
        let (s, c, _) = jacobi(v0 * big_k, kc, k);
        poles.push(Complex64::new(-s / c, 0.0));
    }

    let dc = if order % 2 == 1 { 1.0 } else { 1.0 / (1.0 + eps * eps).sqrt() };
    let gain = dc_gain(&zeros, &poles, dc);
    Ok((AnalogPrototype { zeros, poles, gain }, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prototype::chebyshev1_magnitude_sq;

    #[test]
    fn magnitude_at_landmarks() {
        let eps = ripple_to_epsilon(2.0).unwrap();
        let xi = 1.4;
        assert_eq!(elliptic_magnitude(0.0, 1.0, eps, xi, 3).unwrap(), 1.0);
        let edge = elliptic_magnitude(1.0, 1.0, eps, xi, 3).unwrap();
        assert!((edge - 1.0 / (1.0 + eps * eps).sqrt()).abs() < 1e-12);
        let l = EllipticRational::new(3, xi).unwrap().discrimination();
        let stop = elliptic_magnitude(xi, 1.0, eps, xi, 3).unwrap();
        let expected = 1.0 / (1.0 + eps * eps * l * l).sqrt();
        assert!((stop - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn first_order_is_chebyshev() {
        let (p, params) = elliptic_prototype(1, 2.0, 35.0).unwrap();
        assert!(p.zeros.is_empty());
        assert_eq!(p.poles.len(), 1);
        assert_eq!(p.poles[0].im, 0.0);
        for i in 0..=50 {
            let w = i as f64 * 0.1;
            let cheb = chebyshev1_magnitude_sq(w, 1.0, params.epsilon, 1).unwrap();
            assert!((p.magnitude(w).powi(2) - cheb).abs() < 1e-9 * cheb);
        }
    }

    #[test]
    fn third_order_structure() {
        let (p, _) = elliptic_prototype(3, 2.0, 35.0).unwrap();
        assert_eq!(p.zeros.len(), 2);
        assert!(p.zeros.iter().all(|z| z.re == 0.0));
        assert!((p.zeros[0] - p.zeros[1].conj()).norm() < 1e-15);
        let real: Vec<_> = p.poles.iter().filter(|q| q.im == 0.0).collect();
        assert_eq!(real.len(), 1);
        assert!(p.is_well_formed());
    }

    #[test]
    fn prototype_matches_magnitude_formula() {
        for n in 1..=8 {
            for (rp, rs) in [(2.0, 35.0), (0.5, 60.0), (1.0, 20.0)] {
                let (p, params) = elliptic_prototype(n, rp, rs).unwrap();
                assert!(p.is_well_formed(), "n={n}");
                for i in 0..=400 {
                    let w = i as f64 * 0.01 * params.xi;
                    let expected = elliptic_magnitude(w, 1.0, params.epsilon, params.xi, n).unwrap();
                    let got = p.magnitude(w);
                    assert!(
                        (got - expected).abs() <= 1e-6 * expected + 1e-13,
                        "n={n} rp={rp} rs={rs} w={w} got={got} expected={expected}"
                    );
                }
            }
        }
    }

    #[test]
    fn even_order_passband_is_equiripple() {
        let (p, params) = elliptic_prototype(4, 2.0, 35.0).unwrap();
        let floor = 1.0 / (1.0 + params.epsilon.powi(2)).sqrt();
        let mut worst = 0.0f64;
        for i in 0..=10000 {
            let m = p.magnitude(i as f64 / 10000.0);
            worst = worst.max(floor - m).max(m - 1.0);
        }
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn stopband_reaches_spec() {
        let (p, params) = elliptic_prototype(5, 2.0, 35.0).unwrap();
        let at_edge = -20.0 * p.magnitude(params.xi).log10();
        assert!((at_edge - 35.0).abs() < 1e-6, "{at_edge}");
    }

    #[test]
    fn infeasible_ripples() {
        assert!(matches!(elliptic_prototype(3, 35.0, 2.0), Err(Error::Infeasible(_))));
        assert!(matches!(elliptic_prototype(3, 2.0, 2.0), Err(Error::Infeasible(_))));
        assert!(matches!(elliptic_prototype(0, 2.0, 35.0), Err(Error::InvalidOrder(0))));
    }
}
