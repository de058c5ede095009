//! Elliptic-function kernels for the Cauer approximation.
//!
//! Every routine takes the modulus `k`, not the parameter `m = k²`. Internal
//! variants also accept the complementary modulus `k' = √(1 − k²)` so callers
//! close to `k = 1` can pass it without cancellation.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Termination threshold for the AGM and Landen iterations.
const TOLERANCE: f64 = 1e-14;
const MAX_ITER: usize = 64;

fn check_modulus(k: f64) -> Result<()> {
    if k.is_nan() || k < 0.0 {
        return Err(Error::InvalidModulus(k));
    }
    if k >= 1.0 {
        return Err(Error::DivergentIntegral(k));
    }
    Ok(())
}

pub(crate) fn complement(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..MAX_ITER {
        if (a - b).abs() <= TOLERANCE * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind, `K(k)`, by the
/// arithmetic-geometric mean: `K(k) = π / (2·AGM(1, k'))`.
pub fn complete_elliptic_integral(k: f64) -> Result<f64> {
    check_modulus(k)?;
    Ok(FRAC_PI_2 / agm(1.0, complement(k)))
}

/// `(K(k), K'(k))` where `K'(k) = K(k')`. Both come from an AGM seeded with the
/// exact modulus on the relevant side, so neither loses digits near the ends
/// of the interval.
pub(crate) fn complete_pair(k: f64, kc: f64) -> (f64, f64) {
    let big_k = FRAC_PI_2 / agm(1.0, kc);
    let big_kp = if k == 0.0 {
        f64::INFINITY
    } else {
        FRAC_PI_2 / agm(1.0, k)
    };
    (big_k, big_kp)
}

/// `K(k) / K'(k)`, strictly increasing in `k`.
pub(crate) fn period_ratio(k: f64, kc: f64) -> f64 {
    let (big_k, big_kp) = complete_pair(k, kc);
    big_k / big_kp
}

/// `K(k) / K'(k)` for a modulus in `(0, 1)`.
pub(crate) fn period_ratio_for(k: f64) -> f64 {
    period_ratio(k, complement(k))
}

/// Jacobi elliptic functions `(sn, cn, dn)` of real argument `u` and modulus `k`.
pub fn jacobi_elliptic(u: f64, k: f64) -> Result<(f64, f64, f64)> {
    check_modulus(k)?;
    Ok(jacobi(u, k, complement(k)))
}

/// Descending Landen transformation (Gauss AGM form).
pub(crate) fn jacobi(u: f64, k: f64, kc: f64) -> (f64, f64, f64) {
    if k == 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    let mut a = [0.0; MAX_ITER + 1];
    let mut c = [0.0; MAX_ITER + 1];
    a[0] = 1.0;
    c[0] = k;
    let mut b = kc;
    let mut n = 0;
    while c[n].abs() > TOLERANCE && n < MAX_ITER {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (kc * kc + (k * cn) * (k * cn)).sqrt();
    (sn, cn, dn)
}

/// `cd(u, k) = cn / dn`.
pub(crate) fn cd(u: f64, k: f64, kc: f64) -> f64 {
    let (_, cn, dn) = jacobi(u, k, kc);
    cn / dn
}

/// `sn, cn, dn` at complex argument `x + j·y` via the addition theorem and
/// Jacobi's imaginary transformation.
pub(crate) fn jacobi_complex(x: f64, y: f64, k: f64, kc: f64) -> (Complex64, Complex64, Complex64) {
    let (s, c, d) = jacobi(x, k, kc);
    let (s1, c1, d1) = jacobi(y, kc, k);
    let delta = c1 * c1 + (k * s * s1) * (k * s * s1);
    let sn = Complex64::new(s * d1, c * d * s1 * c1) / delta;
    let cn = Complex64::new(c * c1, -s * d * s1 * d1) / delta;
    let dn = Complex64::new(d * c1 * d1, -k * k * s * c * s1) / delta;
    (sn, cn, dn)
}

/// Carlson's symmetric integral `R_F(x, y, z)`.
fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..MAX_ITER {
        let mean = (x + y + z) / 3.0;
        let spread = (mean - x).abs().max((mean - y).abs()).max((mean - z).abs());
        if spread <= 1e-4 * mean {
            let dx = 1.0 - x / mean;
            let dy = 1.0 - y / mean;
            let dz = -(dx + dy);
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mean.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
    }
    1.0 / ((x + y + z) / 3.0).sqrt()
}

/// Incomplete integral of the first kind `F(φ, k)` for `0 ≤ φ ≤ π/2`, given
/// the complementary modulus `k'` of `k`.
pub(crate) fn incomplete_first_kind(phi: f64, kc: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    // 1 − k² sin²φ written as cos²φ + k'² sin²φ
    carlson_rf(c * c, c * c + (kc * s) * (kc * s), 1.0) * s
}

/// The Nth-order elliptic rational function `R_N(ξ, x)` in factored form.
///
/// Zeros sit at `cd((2i−1)K/N, 1/ξ)`, poles at `ξ / zero`, with an extra zero
/// at the origin for odd `N`. The scale makes `R_N(ξ, 1) = 1`.
#[derive(Debug, Clone)]
pub struct EllipticRational {
    order: usize,
    xi: f64,
    zeros: Vec<f64>,
    poles: Vec<f64>,
    scale: f64,
}

impl EllipticRational {
    pub fn new(order: usize, xi: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if xi.is_nan() || xi <= 1.0 || xi.is_infinite() {
            return Err(Error::InvalidSelectivity(xi));
        }
        let k = 1.0 / xi;
        let kc = complement(k);
        let (big_k, _) = complete_pair(k, kc);
        let pairs = order / 2;
        let zeros: Vec<f64> = (1..=pairs)
            .map(|i| cd((2 * i - 1) as f64 * big_k / order as f64, k, kc))
            .collect();
        let poles = zeros.iter().map(|z| xi / z).collect();
        let mut rational = EllipticRational { order, xi, zeros, poles, scale: 1.0 };
        rational.scale = 1.0 / rational.unscaled(1.0);
        Ok(rational)
    }

    fn unscaled(&self, x: f64) -> f64 {
        let x2 = x * x;
        let base = if self.order % 2 == 1 { x } else { 1.0 };
        self.zeros
            .iter()
            .zip(&self.poles)
            .fold(base, |acc, (z, p)| acc * (x2 - z * z) / (x2 - p * p))
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.order == 1 {
            return x;
        }
        self.scale * self.unscaled(x)
    }

    /// Discrimination factor `L_N = R_N(ξ, ξ)`.
    pub fn discrimination(&self) -> f64 {
        self.eval(self.xi)
    }

    /// Positive zeros of `R_N` (the origin is excluded for odd orders).
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Positive poles of `R_N`.
    pub fn poles(&self) -> &[f64] {
        &self.poles
    }
}

/// Evaluates `R_N(ξ, x)`.
pub fn elliptic_rational(order: usize, xi: f64, x: f64) -> Result<f64> {
    Ok(EllipticRational::new(order, xi)?.eval(x))
}

/// Ripple factor ε, selectivity ξ and discrimination `L_N` tied together by
/// the degree equation for one elliptic design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub epsilon: f64,
    pub xi: f64,
    pub discrimination: f64,
    pub modulus: f64,
    pub quarter_period: f64,
}

impl EllipticParams {
    /// Finds the selectivity an order-`order` design reaches when the passband
    /// ripple is `rp` dB and the stopband floor is `rs` dB.
    pub fn solve(order: usize, rp: f64, rs: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let epsilon = super::ripple_to_epsilon(rp)?;
        let eps_stop = super::ripple_to_epsilon(rs)?;
        if rs <= rp {
            return Err(Error::Infeasible(format!(
                "stopband attenuation {rs} dB must exceed passband ripple {rp} dB"
            )));
        }
        let k1 = epsilon / eps_stop;
        let target = order as f64 * period_ratio(k1, complement(k1));
        let xi = solve_selectivity(target);
        let rational = EllipticRational::new(order, xi)?;
        let modulus = 1.0 / xi;
        Ok(EllipticParams {
            epsilon,
            xi,
            discrimination: rational.discrimination(),
            modulus,
            quarter_period: complete_pair(modulus, complement(modulus)).0,
        })
    }
}

/// Bisection on ξ for `K(1/ξ) / K'(1/ξ) = target`.
fn solve_selectivity(target: f64) -> f64 {
    let ratio = |xi: f64| {
        let k = 1.0 / xi;
        period_ratio(k, complement(k))
    };
    let mut lo = 1.0;
    let mut hi = 2.0;
    while ratio(hi) > target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn k_of_zero_is_half_pi() {
        assert_eq!(complete_elliptic_integral(0.0).unwrap(), PI / 2.0);
    }

    #[test]
    fn modulus_errors() {
        assert!(matches!(complete_elliptic_integral(1.0), Err(Error::DivergentIntegral(_))));
        assert!(matches!(complete_elliptic_integral(-0.1), Err(Error::InvalidModulus(_))));
        assert!(matches!(jacobi_elliptic(0.3, 1.2), Err(Error::DivergentIntegral(_))));
    }

    #[test]
    fn k_is_monotone() {
        let mut prev = 0.0;
        for i in 0..=99 {
            let k = complete_elliptic_integral(i as f64 * 0.01).unwrap();
            assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn degenerate_modulus_is_circular() {
        for u in [0.3, 1.0, 2.5] {
            let (sn, cn, dn) = jacobi_elliptic(u, 0.0).unwrap();
            assert!((sn - u.sin()).abs() < 1e-15);
            assert!((cn - u.cos()).abs() < 1e-15);
            assert_eq!(dn, 1.0);
        }
    }

    #[test]
    fn quarter_period_identity() {
        for k in [0.3, 0.7] {
            let big_k = complete_elliptic_integral(k).unwrap();
            let (sn, cn, _) = jacobi_elliptic(big_k, k).unwrap();
            assert!((sn - 1.0).abs() < 1e-10);
            assert!(cn.abs() < 1e-10);
        }
    }

    #[test]
    fn complex_argument_reduces_to_real() {
        let (k, kc) = (0.6, 0.8);
        let (sn, cn, dn) = jacobi_complex(0.7, 0.0, k, kc);
        let (s, c, d) = jacobi(0.7, k, kc);
        assert!((sn - s).norm() < 1e-15 && (cn - c).norm() < 1e-15 && (dn - d).norm() < 1e-15);
        // sn(jy, k) = j·sc(y, k')
        let (sn, _, _) = jacobi_complex(0.0, 0.4, k, kc);
        let (s1, c1, _) = jacobi(0.4, kc, k);
        assert!((sn - Complex64::new(0.0, s1 / c1)).norm() < 1e-14);
    }

    #[test]
    fn incomplete_integral_matches_complete_at_right_angle() {
        let k = 0.8;
        let f = incomplete_first_kind(PI / 2.0, complement(k));
        assert!((f - complete_elliptic_integral(k).unwrap()).abs() < 1e-13);
        // F(am(u)) = u
        let (sn, cn, _) = jacobi(0.9, k, complement(k));
        let phi = sn.atan2(cn);
        assert!((incomplete_first_kind(phi, complement(k)) - 0.9).abs() < 1e-13);
    }

    #[test]
    fn first_order_rational_is_identity() {
        for x in [-2.0, 0.0, 0.4, 1.0, 3.5] {
            assert_eq!(elliptic_rational(1, 1.7, x).unwrap(), x);
        }
    }

    #[test]
    fn second_order_matches_closed_form() {
        let (xi, x) = (1.5_f64, 0.8_f64);
        let t = (1.0 - 1.0 / (xi * xi)).sqrt();
        let oracle = ((t + 1.0) * x * x - 1.0) / ((t - 1.0) * x * x + 1.0);
        let got = elliptic_rational(2, xi, x).unwrap();
        assert!((got - oracle).abs() < 1e-12 * oracle.abs().max(1.0), "{got} vs {oracle}");
    }

    #[test]
    fn normalized_at_unity() {
        for n in 1..=5 {
            for xi in [1.2, 2.0, 5.0] {
                assert!((elliptic_rational(n, xi, 1.0).unwrap() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bounded_by_one_inside_unit_interval() {
        for n in 1..=7 {
            let r = EllipticRational::new(n, 1.3).unwrap();
            for i in 0..=1000 {
                assert!(r.eval(i as f64 / 1000.0).abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn invalid_selectivity() {
        assert!(matches!(elliptic_rational(3, 1.0, 0.5), Err(Error::InvalidSelectivity(_))));
    }

    #[test]
    fn degree_equation_is_consistent() {
        let params = EllipticParams::solve(4, 2.0, 35.0).unwrap();
        let eps_s = (10f64.powf(3.5) - 1.0).sqrt();
        let expected = eps_s / params.epsilon;
        assert!((params.discrimination - expected).abs() < 1e-8 * expected);
        let direct = elliptic_rational(4, params.xi, params.xi).unwrap();
        assert!((params.discrimination - direct).abs() < 1e-9 * direct);
    }
}
