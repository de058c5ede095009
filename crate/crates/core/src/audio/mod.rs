//! WAV speech files and signal spectra.

mod spectrum;
mod wav;

pub use spectrum::{fft, spectrum, MAX_AUTO_FFT};
pub use wav::{decode, encode, quantize, read_wav, write_wav, Signal};
