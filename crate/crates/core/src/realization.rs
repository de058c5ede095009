//! Second-order-section realization and the recursive difference equation.
//!
//! Denominators are stored in the usual transfer-function convention,
//! `1 + a1·z⁻¹ + a2·z⁻²`, so the recursion subtracts the feedback terms:
//!
//! ```text
//! y[m] = b0·x[m] + b1·x[m−1] + b2·x[m−2] − a1·y[m−1] − a2·y[m−2]
//! ```
//!
//! A feedback coefficient written with a plus sign in front of `y[m−k]` is
//! the negation of the stored `a_k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::DigitalFilter;
use crate::zpk;

/// A filter that can be evaluated anywhere in the z-plane.
pub trait ZDomain {
    fn sample_rate(&self) -> f64;
    fn zeros(&self) -> Vec<Complex64>;
    fn poles(&self) -> Vec<Complex64>;
    fn response(&self, z: Complex64) -> Complex64;

    /// `H(e^{j2πf/fs})`.
    fn response_at(&self, frequency: f64) -> Complex64 {
        self.response(Complex64::from_polar(1.0, 2.0 * PI * frequency / self.sample_rate()))
    }
}

impl ZDomain for DigitalFilter {
    fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    fn zeros(&self) -> Vec<Complex64> {
        self.zeros.clone()
    }

    fn poles(&self) -> Vec<Complex64> {
        self.poles.clone()
    }

    fn response(&self, z: Complex64) -> Complex64 {
        DigitalFilter::response(self, z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Section {
    pub const IDENTITY: Section = Section { b0: 1.0, b1: 0.0, b2: 0.0, a1: 0.0, a2: 0.0 };

    pub fn new(b: [f64; 3], a: [f64; 2]) -> Self {
        Section { b0: b[0], b1: b[1], b2: b[2], a1: a[0], a2: a[1] }
    }

    fn is_first_order(&self) -> bool {
        self.a2 == 0.0 && self.b2 == 0.0
    }

    pub fn response(&self, z: Complex64) -> Complex64 {
        let zi = z.inv();
        let num = self.b0 + zi * (self.b1 + zi * self.b2);
        let den = 1.0 + zi * (self.a1 + zi * self.a2);
        num / den
    }

    /// Roots of numerator and denominator in `z`, with exact common roots
    /// cancelled.
    pub fn roots(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let (mut zeros, mut poles) = if self.is_first_order() {
            (poly_roots(&[self.b0, self.b1]), poly_roots(&[1.0, self.a1]))
        } else {
            (poly_roots(&[self.b0, self.b1, self.b2]), poly_roots(&[1.0, self.a1, self.a2]))
        };
        zeros.retain(|z| match poles.iter().position(|p| p == z) {
            Some(i) => {
                poles.remove(i);
                false
            }
            None => true,
        });
        (zeros, poles)
    }
}

/// Roots of a polynomial of degree at most two, highest power first.
fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let start = coeffs.iter().position(|c| *c != 0.0).unwrap_or(coeffs.len());
    let c = &coeffs[start..];
    match c.len() {
        2 => vec![Complex64::new(-c[1] / c[0], 0.0)],
        3 => {
            let half = -c[1] / (2.0 * c[0]);
            let disc = half * half - c[2] / c[0];
            if disc >= 0.0 {
                let r = disc.sqrt();
                vec![Complex64::new(half + r, 0.0), Complex64::new(half - r, 0.0)]
            } else {
                let r = (-disc).sqrt();
                vec![Complex64::new(half, r), Complex64::new(half, -r)]
            }
        }
        _ => Vec::new(),
    }
}

/// A cascade of second-order sections with a scalar gain on its input.
#[derive(Debug, Clone, PartialEq)]
pub struct SosCascade {
    pub sections: Vec<Section>,
    pub gain: f64,
    pub sample_rate: f64,
}

impl SosCascade {
    pub fn new(sections: Vec<Section>, gain: f64, sample_rate: f64) -> Self {
        SosCascade { sections, gain, sample_rate }
    }

    pub fn identity(sample_rate: f64) -> Self {
        SosCascade { sections: vec![Section::IDENTITY], gain: 1.0, sample_rate }
    }

    /// Fresh all-zero state for this cascade.
    pub fn state(&self) -> FilterState {
        FilterState { registers: vec![[0.0; 2]; self.sections.len()], sample_rate: self.sample_rate }
    }
}

impl ZDomain for SosCascade {
    fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    fn zeros(&self) -> Vec<Complex64> {
        self.sections.iter().flat_map(|s| s.roots().0).collect()
    }

    fn poles(&self) -> Vec<Complex64> {
        self.sections.iter().flat_map(|s| s.roots().1).collect()
    }

    fn response(&self, z: Complex64) -> Complex64 {
        self.sections.iter().fold(Complex64::new(self.gain, 0.0), |acc, s| acc * s.response(z))
    }
}

/// Delay registers for streaming through a cascade (direct form II transposed).
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    registers: Vec<[f64; 2]>,
    sample_rate: f64,
}

impl FilterState {
    pub fn new(sections: usize, sample_rate: f64) -> Self {
        FilterState { registers: vec![[0.0; 2]; sections], sample_rate }
    }

    pub fn reset(&mut self) {
        self.registers.iter_mut().for_each(|r| *r = [0.0; 2]);
    }

    pub fn register_count(&self) -> usize {
        2 * self.registers.len()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }
}

/// Runs `input` through the cascade, continuing from `state`.
pub fn filter_stream(state: &mut FilterState, cascade: &SosCascade, input: &[f64]) -> Result<Vec<f64>> {
    if state.registers.len() != cascade.sections.len() {
        return Err(Error::StateShape {
            expected: 2 * cascade.sections.len(),
            actual: state.register_count(),
        });
    }
    let mut output = Vec::with_capacity(input.len());
    for &x in input {
        let mut v = x * cascade.gain;
        for (s, r) in cascade.sections.iter().zip(state.registers.iter_mut()) {
            let y = s.b0 * v + r[0];
            r[0] = s.b1 * v - s.a1 * y + r[1];
            r[1] = s.b2 * v - s.a2 * y;
            v = y;
        }
        output.push(v);
    }
    Ok(output)
}

pub fn impulse_response(cascade: &SosCascade, length: usize) -> Vec<f64> {
    let mut input = vec![0.0; length];
    if let Some(first) = input.first_mut() {
        *first = 1.0;
    }
    filter_stream(&mut cascade.state(), cascade, &input).expect("fresh state matches cascade")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub stable: bool,
    /// `1 − max |pole|`, clamped at zero.
    pub margin: f64,
}

pub fn is_stable<F: ZDomain + ?Sized>(filter: &F) -> Stability {
    let max = filter.poles().iter().map(|p| p.norm()).fold(0.0, f64::max);
    Stability { stable: max < 1.0, margin: (1.0 - max).max(0.0) }
}

/// Splits roots into real values and upper-half-plane representatives of
/// conjugate pairs.
fn split_conjugates(roots: &[Complex64]) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for &r in roots {
        if zpk::is_real(r) {
            real.push(r.re);
        } else if r.im > 0.0 {
            upper.push(r);
        } else {
            lower.push(r);
        }
    }
    for u in &upper {
        let found = lower
            .iter()
            .enumerate()
            .map(|(i, l)| (i, (l - u.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match found {
            Some((i, d)) if d <= 1e-8 * u.norm().max(1.0) => {
                lower.swap_remove(i);
            }
            _ => return Err(Error::ConjugateSymmetry(format!("no conjugate for {u}"))),
        }
    }
    if let Some(l) = lower.first() {
        return Err(Error::ConjugateSymmetry(format!("no conjugate for {l}")));
    }
    Ok((real, upper))
}

enum PoleGroup {
    Pair(Complex64),
    Reals(f64, Option<f64>),
}

impl PoleGroup {
    fn modulus(&self) -> f64 {
        match *self {
            PoleGroup::Pair(p) => p.norm(),
            PoleGroup::Reals(a, b) => a.abs().max(b.map_or(0.0, f64::abs)),
        }
    }

    fn lead(&self) -> Complex64 {
        match *self {
            PoleGroup::Pair(p) => p,
            PoleGroup::Reals(a, _) => Complex64::new(a, 0.0),
        }
    }

    fn denominator(&self) -> [f64; 2] {
        match *self {
            PoleGroup::Pair(p) => [-2.0 * p.re, p.norm_sqr()],
            PoleGroup::Reals(a, Some(b)) => [-(a + b), a * b],
            PoleGroup::Reals(a, None) => [-a, 0.0],
        }
    }
}

fn take_nearest(pool: &mut Vec<f64>, target: Complex64) -> Option<f64> {
    let (i, _) = pool
        .iter()
        .enumerate()
        .min_by(|a, b| (target - a.1).norm().total_cmp(&(target - b.1).norm()))?;
    Some(pool.swap_remove(i))
}

/// Groups conjugate roots into real second-order sections.
///
/// Poles are visited by descending modulus and each takes its nearest
/// remaining zero(s); sections are then ordered by ascending pole modulus.
/// An odd real pole becomes a first-order section.
pub fn zpk_to_sos(filter: &DigitalFilter) -> Result<SosCascade> {
    let (mut real_poles, complex_poles) = split_conjugates(&filter.poles)?;
    let (mut real_zeros, mut complex_zeros) = split_conjugates(&filter.zeros)?;

    // pad the shorter side with roots at the origin so every section is proper
    let pole_count = filter.poles.len();
    let zero_count = filter.zeros.len();
    real_zeros.extend(std::iter::repeat(0.0).take(pole_count.saturating_sub(zero_count)));
    real_poles.extend(std::iter::repeat(0.0).take(zero_count.saturating_sub(pole_count)));

    real_poles.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let single = if real_poles.len() % 2 == 1 { real_poles.pop() } else { None };

    let mut groups: Vec<PoleGroup> = complex_poles.into_iter().map(PoleGroup::Pair).collect();
    groups.extend(real_poles.chunks(2).map(|c| PoleGroup::Reals(c[0], Some(c[1]))));
    groups.sort_by(|a, b| b.modulus().total_cmp(&a.modulus()));

    let mut sections: Vec<(f64, Section)> = Vec::with_capacity(groups.len() + 1);

    if let Some(p) = single {
        let z = take_nearest(&mut real_zeros, Complex64::new(p, 0.0)).ok_or_else(|| {
            Error::ConjugateSymmetry("odd real pole without a real zero".to_string())
        })?;
        sections.push((p.abs(), Section::new([1.0, -z, 0.0], [-p, 0.0])));
    }

    for group in groups {
        let lead = group.lead();
        let nearest_complex = complex_zeros
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - lead).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let nearest_real = real_zeros
            .iter()
            .map(|z| (lead - z).norm())
            .fold(f64::INFINITY, f64::min);
        let numerator = match nearest_complex {
            Some((i, d)) if d <= nearest_real || real_zeros.len() < 2 => {
                let z = complex_zeros.swap_remove(i);
                [1.0, -2.0 * z.re, z.norm_sqr()]
            }
            _ => {
                let z1 = take_nearest(&mut real_zeros, lead).ok_or_else(|| {
                    Error::ConjugateSymmetry("ran out of zeros while pairing".to_string())
                })?;
                let z2 = take_nearest(&mut real_zeros, lead.conj()).ok_or_else(|| {
                    Error::ConjugateSymmetry("unpaired real zero".to_string())
                })?;
                [1.0, -(z1 + z2), z1 * z2]
            }
        };
        sections.push((group.modulus(), Section::new(numerator, group.denominator())));
    }

    if !real_zeros.is_empty() || !complex_zeros.is_empty() {
        return Err(Error::ConjugateSymmetry("zeros left over after pairing".to_string()));
    }
    sections.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut sections: Vec<Section> = sections.into_iter().map(|(_, s)| s).collect();
    if sections.is_empty() {
        sections.push(Section::IDENTITY);
    }
    Ok(SosCascade { sections, gain: filter.gain, sample_rate: filter.sample_rate })
}
