//! Helpers shared by every zero/pole/gain representation.

use num_complex::Complex64;

use crate::prototype::REAL_TOLERANCE;

pub(crate) fn evaluate(zeros: &[Complex64], poles: &[Complex64], gain: f64, x: Complex64) -> Complex64 {
    let num: Complex64 = zeros.iter().map(|z| x - z).product();
    let den: Complex64 = poles.iter().map(|p| x - p).product();
    num / den * gain
}

fn tolerance(root: Complex64) -> f64 {
    REAL_TOLERANCE * root.norm().max(1.0)
}

pub(crate) fn is_real(root: Complex64) -> bool {
    root.im.abs() <= tolerance(root)
}

/// True when every non-real root has a matching conjugate.
pub(crate) fn is_conjugate_closed(roots: &[Complex64]) -> bool {
    let mut used = vec![false; roots.len()];
    for (i, r) in roots.iter().enumerate() {
        if used[i] || is_real(*r) {
            continue;
        }
        used[i] = true;
        let partner = roots
            .iter()
            .enumerate()
            .filter(|(j, q)| !used[*j] && !is_real(**q))
            .map(|(j, q)| (j, (q - r.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match partner {
            Some((j, dist)) if dist <= 1e-8 * r.norm().max(1.0) => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Orders roots by descending modulus with conjugate pairs adjacent, the
/// positive-imaginary member first.
pub(crate) fn sort_by_modulus(roots: &[Complex64]) -> Vec<Complex64> {
    let mut units: Vec<Vec<Complex64>> = Vec::new();
    let mut used = vec![false; roots.len()];
    for (i, r) in roots.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if is_real(*r) {
            units.push(vec![*r]);
            continue;
        }
        let partner = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .min_by(|a, b| (a.1 - r.conj()).norm().total_cmp(&(b.1 - r.conj()).norm()));
        match partner {
            Some((j, q)) => {
                used[j] = true;
                let (hi, lo) = if r.im >= q.im { (*r, *q) } else { (*q, *r) };
                units.push(vec![hi, lo]);
            }
            None => units.push(vec![*r]),
        }
    }
    units.sort_by(|a, b| {
        b[0].norm()
            .total_cmp(&a[0].norm())
            .then(b[0].im.abs().total_cmp(&a[0].im.abs()))
            .then(a[0].re.total_cmp(&b[0].re))
    });
    units.into_iter().flatten().collect()
}
