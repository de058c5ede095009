//! Radix-2 FFT and the magnitude spectrum of a signal.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::wav::Signal;
use crate::analysis::{to_db, ResponseKind, ResponseSeries};
use crate::error::{Error, Result};

/// Largest transform used when no size is given.
pub const MAX_AUTO_FFT: usize = 65536;

/// In-place iterative decimation-in-time FFT.
pub fn fft(buf: &mut [Complex64]) -> Result<()> {
    let n = buf.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidSize(n));
    }
    let bits = n.trailing_zeros();
    if bits == 0 {
        return Ok(());
    }
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / len as f64))
            .collect();
        for chunk in buf.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
    Ok(())
}

/// Peak-normalized magnitude spectrum in dB, bins `0..=n/2`.
///
/// Rectangular window. Without `fft_size` the transform length is the next
/// power of two at or above `min(len, 65536)`; the signal is zero-padded or
/// cut to its first window.
pub fn spectrum(signal: &Signal, fft_size: Option<usize>) -> Result<ResponseSeries> {
    if signal.is_empty() {
        return Err(Error::CorruptFile("signal has no samples".to_string()));
    }
    let n = match fft_size {
        Some(n) if n == 0 || !n.is_power_of_two() => return Err(Error::InvalidSize(n)),
        Some(n) => n,
        None => signal.len().min(MAX_AUTO_FFT).next_power_of_two(),
    };
    let mut buf: Vec<Complex64> = signal
        .samples
        .iter()
        .take(n)
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    buf.resize(n, Complex64::new(0.0, 0.0));
    fft(&mut buf)?;
    let mags: Vec<f64> = buf[..=n / 2].iter().map(|v| v.norm()).collect();
    let peak = mags.iter().cloned().fold(0.0, f64::max);
    let fs = signal.sample_rate as f64;
    let ordinate = mags
        .iter()
        .map(|m| if peak > 0.0 { to_db(m / peak) } else { to_db(0.0) })
        .collect();
    let abscissa = (0..=n / 2).map(|k| k as f64 * fs / n as f64).collect();
    Ok(ResponseSeries { kind: ResponseKind::SpectrumDb, abscissa, ordinate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(t, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (k * t % n) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_direct_dft() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in [1, 2, 8, 64, 256] {
            let x: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
            let mut y = x.clone();
            fft(&mut y).unwrap();
            let scale = x.iter().map(|v| v.norm()).sum::<f64>();
            for (a, b) in y.iter().zip(dft(&x)) {
                assert!((a - b).norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut buf = vec![Complex64::new(0.0, 0.0); 12];
        assert!(matches!(fft(&mut buf), Err(Error::InvalidSize(12))));
        let sig = Signal::new(vec![0.1; 100], 8000);
        assert!(matches!(spectrum(&sig, Some(100)), Err(Error::InvalidSize(100))));
    }

    #[test]
    fn constant_signal_is_dc_only() {
        let s = spectrum(&Signal::new(vec![0.3; 256], 8000), None).unwrap();
        assert_eq!(s.ordinate[0], 0.0);
        assert!(s.ordinate[1..].iter().all(|v| *v <= -200.0));
        assert_eq!(s.abscissa.len(), 129);
        assert_eq!(*s.abscissa.last().unwrap(), 4000.0);
    }

    #[test]
    fn integer_bin_sine() {
        let x: Vec<f64> = (0..1024).map(|i| (2.0 * PI * 1000.0 * i as f64 / 8000.0).sin()).collect();
        let s = spectrum(&Signal::new(x, 8000), None).unwrap();
        let peak = s
            .ordinate
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(s.abscissa[peak], 1000.0);
        for (i, v) in s.ordinate.iter().enumerate() {
            if i.abs_diff(peak) >= 2 {
                assert!(*v <= -60.0, "bin {i}: {v}");
            }
        }
    }

    #[test]
    fn long_signals_use_first_window() {
        let sig = Signal::new(vec![0.0; 100_000], 8000);
        assert_eq!(spectrum(&sig, None).unwrap().len(), MAX_AUTO_FFT / 2 + 1);
        let sig = Signal::new(vec![0.0; 1000], 8000);
        assert_eq!(spectrum(&sig, None).unwrap().len(), 513);
    }
}
