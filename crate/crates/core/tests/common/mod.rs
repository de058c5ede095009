//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use iirkit::planner::{Band, Family, FilterSpec};
use iirkit::prototype::{chebyshev_poly, elliptic_rational};
use num_complex::Complex64;

pub const FS: f64 = 8000.0;

/// The four 8 kHz speech-band specs, one per band type.
pub fn reference_specs(family: Family) -> Vec<FilterSpec> {
    vec![
        FilterSpec::new(family, Band::Lowpass, FS, &[2000.0], &[3000.0]),
        FilterSpec::new(family, Band::Highpass, FS, &[3000.0], &[2000.0]),
        FilterSpec::new(family, Band::Bandpass, FS, &[1500.0, 2000.0], &[1000.0, 2500.0]),
        FilterSpec::new(family, Band::Bandstop, FS, &[1000.0, 3000.0], &[1500.0, 2500.0]),
    ]
}

pub fn all_reference_specs() -> Vec<FilterSpec> {
    Family::ALL.iter().flat_map(|f| reference_specs(*f)).collect()
}

/// Adaptive Simpson quadrature.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// K(k) straight from its defining integral.
pub fn k_by_quadrature(k: f64) -> f64 {
    integrate(&|t: f64| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, PI / 2.0, 1e-15)
}

fn eps(db: f64) -> f64 {
    (10f64.powf(db / 10.0) - 1.0).sqrt()
}

/// Attenuation (dB) of the family's magnitude formula at `omega` for a design
/// whose passband edge sits at 1 rad/s, with `xi` the elliptic selectivity.
pub fn formula_attenuation(family: Family, order: usize, rp: f64, omega: f64, xi: f64) -> f64 {
    let e = eps(rp);
    match family {
        Family::Butterworth => {
            // half-power point placed so the passband edge meets rp exactly
            let wc = e.powf(-1.0 / order as f64);
            10.0 * (1.0 + (omega / wc).powi(2 * order as i32)).log10()
        }
        Family::Chebyshev1 => 10.0 * (1.0 + (e * chebyshev_poly(order, omega)).powi(2)).log10(),
        Family::Elliptic => {
            let r = elliptic_rational(order, xi, omega).unwrap();
            10.0 * (1.0 + (e * r).powi(2)).log10()
        }
    }
}

/// Smallest N in 1..=30 whose magnitude formula meets both edge constraints.
pub fn brute_force_order(family: Family, ratio: f64, rp: f64, rs: f64) -> Option<usize> {
    (1..=30).find(|&n| meets_edges(family, n, ratio, rp, rs))
}

pub fn meets_edges(family: Family, n: usize, ratio: f64, rp: f64, rs: f64) -> bool {
    let slack = 1e-9;
    formula_attenuation(family, n, rp, 1.0, ratio) <= rp + slack
        && formula_attenuation(family, n, rp, ratio, ratio) >= rs - slack
}

#[derive(Debug, Clone, Copy)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
    pub is_max: bool,
}

fn golden(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, maximize: bool) -> f64 {
    let g = |x: f64| if maximize { -f(x) } else { f(x) };
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..200 {
        if (b - a).abs() < 1e-14 * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if g(c) < g(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

/// Local extrema of `f` on `[a, b]` including both endpoints, refined by
/// golden-section search.
pub fn extrema(f: &dyn Fn(f64) -> f64, a: f64, b: f64, grid: usize) -> Vec<Extremum> {
    let xs: Vec<f64> = (0..=grid).map(|i| a + (b - a) * i as f64 / grid as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = vec![Extremum { x: a, value: ys[0], is_max: ys[0] > ys[1] }];
    for i in 1..grid {
        let (l, m, r) = (ys[i - 1], ys[i], ys[i + 1]);
        let is_max = m > l && m >= r;
        let is_min = m < l && m <= r;
        if is_max || is_min {
            let x = golden(f, xs[i - 1], xs[i + 1], is_max);
            out.push(Extremum { x, value: f(x), is_max });
        }
    }
    out.push(Extremum { x: b, value: ys[grid], is_max: ys[grid] > ys[grid - 1] });
    out
}

/// Direct O(N²) DFT.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(t, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((k * t) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}
