mod common;

use common::{extrema, k_by_quadrature};
use iirkit::prototype::{
    butterworth_prototype, chebyshev1_prototype, complete_elliptic_integral, elliptic_prototype,
    elliptic_rational, jacobi_elliptic, ripple_to_epsilon,
};
use proptest::prelude::*;

#[test]
fn k_of_one_half_against_quadrature() {
    let oracle = k_by_quadrature(0.5);
    assert!((oracle - 1.685750354812596).abs() < 1e-12, "oracle {oracle}");
    let k = complete_elliptic_integral(0.5).unwrap();
    assert!((k - oracle).abs() <= 1e-10 * oracle);
}

#[test]
fn k_against_quadrature_across_moduli() {
    for i in 0..=95 {
        let m = i as f64 * 0.01;
        let oracle = k_by_quadrature(m);
        let k = complete_elliptic_integral(m).unwrap();
        assert!((k - oracle).abs() <= 1e-10 * oracle, "k={m}: {k} vs {oracle}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn jacobi_pythagorean_identities(u in -20.0f64..20.0, k in 0.0f64..0.999) {
        let (sn, cn, dn) = jacobi_elliptic(u, k).unwrap();
        prop_assert!((sn * sn + cn * cn - 1.0).abs() < 1e-10);
        prop_assert!((dn * dn + k * k * sn * sn - 1.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_quarter_period(k in 0.0f64..0.99) {
        let big_k = complete_elliptic_integral(k).unwrap();
        let (sn, cn, dn) = jacobi_elliptic(big_k, k).unwrap();
        prop_assert!((sn - 1.0).abs() < 1e-10);
        prop_assert!(cn.abs() < 1e-10);
        prop_assert!((dn - (1.0 - k * k).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn elliptic_rational_normalized(n in 1usize..=8, xi in 1.01f64..10.0) {
        prop_assert!((elliptic_rational(n, xi, 1.0).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn prototypes_are_well_formed(n in 1usize..=10, rp in 0.1f64..3.0, extra in 10.0f64..70.0) {
        prop_assert!(butterworth_prototype(n).unwrap().is_well_formed());
        prop_assert!(chebyshev1_prototype(n, rp).unwrap().is_well_formed());
        let (p, params) = elliptic_prototype(n, rp, rp + extra).unwrap();
        prop_assert!(p.is_well_formed());
        let direct = elliptic_rational(n, params.xi, params.xi).unwrap();
        prop_assert!((params.discrimination - direct).abs() <= 1e-9 * direct);
    }
}

#[test]
fn chebyshev_passband_alternates() {
    for n in 1..=8 {
        let rp = 2.0;
        let p = chebyshev1_prototype(n, rp).unwrap();
        let eps = ripple_to_epsilon(rp).unwrap();
        let floor = 1.0 / (1.0 + eps * eps).sqrt();
        let ext = extrema(&|w| p.magnitude(w), 0.0, 1.0, 4000);
        assert_eq!(ext.len(), n + 1, "N={n}: {ext:?}");
        for pair in ext.windows(2) {
            assert_ne!(pair[0].is_max, pair[1].is_max);
        }
        for e in &ext {
            let target = if e.is_max { 1.0 } else { floor };
            assert!((e.value - target).abs() < 1e-6, "N={n} {e:?}");
        }
    }
}

#[test]
fn elliptic_equiripple_in_both_bands() {
    for n in 2..=7 {
        for (rp, rs) in [(2.0, 35.0), (0.5, 50.0)] {
            let (p, params) = elliptic_prototype(n, rp, rs).unwrap();
            let pass_floor = 1.0 / (1.0 + params.epsilon.powi(2)).sqrt();
            let stop_ceiling = 1.0 / (1.0 + (params.epsilon * params.discrimination).powi(2)).sqrt();

            let pass = extrema(&|w| p.magnitude(w), 0.0, 1.0, 4000);
            assert_eq!(pass.len(), n + 1, "N={n}");
            for e in &pass {
                let target = if e.is_max { 1.0 } else { pass_floor };
                assert!((e.value - target).abs() < 1e-6, "N={n} passband {e:?}");
            }

            // stopband in t = ξ/ω so the band [ξ, ∞) becomes (0, 1]
            let xi = params.xi;
            let stop = extrema(&|t: f64| p.magnitude(xi / t), 1e-6, 1.0, 4000);
            let maxima: Vec<_> = stop[1..].iter().filter(|e| e.is_max).collect();
            assert!(maxima.len() >= n / 2, "N={n}");
            for e in maxima {
                assert!((e.value - stop_ceiling).abs() < 1e-6 * stop_ceiling.max(1e-3), "N={n} stopband {e:?}");
            }
        }
    }
}
