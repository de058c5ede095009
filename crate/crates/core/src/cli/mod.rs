//! Command-line front end: `design`, `filter`, `analyze`, `spectrum`.

mod filter_file;

pub use filter_file::{FilterFile, SpecEcho, SCHEMA_VERSION};

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{measure_band_metrics, pole_zero, response_series, ResponseKind, ResponseSeries};
use crate::audio::{read_wav, spectrum, write_wav, Signal};
use crate::design::design;
use crate::error::{Error, Result};
use crate::planner::{
    Band, Family, FilterSpec, DEFAULT_PASSBAND_RIPPLE_DB, DEFAULT_SAMPLE_RATE,
    DEFAULT_STOPBAND_ATTEN_DB,
};
use crate::realization::filter_stream;

#[derive(Debug, Parser)]
#[command(name = "iirkit", version, about = "IIR filter design and speech filtering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Butter,
    Cheby1,
    Ellip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BandArg {
    Lp,
    Hp,
    Bp,
    Bs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design a filter and write its coefficient file.
    Design {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        band: BandArg,
        /// Sample rate, Hz.
        #[arg(long, default_value_t = DEFAULT_SAMPLE_RATE)]
        fs: f64,
        /// Passband edge(s), Hz; `f1,f2` for bp/bs.
        #[arg(long, value_delimiter = ',', required = true)]
        fp: Vec<f64>,
        /// Stopband edge(s), Hz; `f3,f4` for bp/bs.
        #[arg(long, value_delimiter = ',', required = true)]
        fstop: Vec<f64>,
        /// Passband ripple, dB.
        #[arg(long, default_value_t = DEFAULT_PASSBAND_RIPPLE_DB)]
        rp: f64,
        /// Stopband attenuation, dB.
        #[arg(long, default_value_t = DEFAULT_STOPBAND_ATTEN_DB)]
        rs: f64,
        /// Fixed order instead of the minimum meeting the spec.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a WAV file through a designed filter.
    Filter {
        #[arg(long)]
        coeff: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit response curves, pole-zero listings or band metrics.
    Analyze {
        #[arg(long)]
        coeff: PathBuf,
        /// impulse | magnitude | phase | groupdelay | polezero | metrics
        #[arg(long)]
        what: String,
        #[arg(long, default_value_t = 512)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peak-normalized magnitude spectrum of a WAV file (rectangular window).
    Spectrum {
        #[arg(long = "in")]
        input: PathBuf,
        /// Transform size, a power of two. Defaults to the next power of two
        /// at or above the signal length, capped at 65536.
        #[arg(long)]
        nfft: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Butter => Family::Butterworth,
            FamilyArg::Cheby1 => Family::Chebyshev1,
            FamilyArg::Ellip => Family::Elliptic,
        }
    }
}

impl From<BandArg> for Band {
    fn from(b: BandArg) -> Self {
        match b {
            BandArg::Lp => Band::Lowpass,
            BandArg::Hp => Band::Highpass,
            BandArg::Bp => Band::Bandpass,
            BandArg::Bs => Band::Bandstop,
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn series_csv(series: &ResponseSeries) -> String {
    let (x, y) = series.kind.columns();
    let mut text = format!("{x},{y}\n");
    for (a, b) in series.abscissa.iter().zip(&series.ordinate) {
        let _ = writeln!(text, "{a},{b}");
    }
    text
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn render_series(series: &ResponseSeries, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(series_csv(series)),
        Format::Json => to_json(series),
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Design { family, band, fs, fp, fstop, rp, rs, order, out } => {
            let mut spec = FilterSpec::new(family.into(), band.into(), fs, &fp, &fstop).with_ripple(rp, rs);
            spec.order_override = order;
            let d = design(&spec)?;
            emit(out.as_ref(), &FilterFile::from_design(&d).to_json()?)
        }
        Command::Filter { coeff, input, out } => {
            let cascade = FilterFile::load(&coeff)?.cascade()?;
            let signal = read_wav(&input)?;
            if signal.sample_rate as f64 != cascade.sample_rate {
                return Err(Error::SampleRateMismatch {
                    coefficients: cascade.sample_rate,
                    input: signal.sample_rate as f64,
                });
            }
            let samples = filter_stream(&mut cascade.state(), &cascade, &signal.samples)?;
            write_wav(&Signal::new(samples, signal.sample_rate), &out)
        }
        Command::Analyze { coeff, what, points, format, out } => {
            let file = FilterFile::load(&coeff)?;
            let cascade = file.cascade()?;
            let text = match what.as_str() {
                "polezero" => {
                    let pz = pole_zero(&cascade);
                    match format {
                        Format::Json => to_json(&pz)?,
                        Format::Csv => {
                            let mut text = String::from("kind,real,imag,modulus\n");
                            for (kind, roots) in [("pole", &pz.poles), ("zero", &pz.zeros)] {
                                for r in roots {
                                    let _ = writeln!(text, "{kind},{},{},{}", r.re, r.im, r.modulus);
                                }
                            }
                            text
                        }
                    }
                }
                "metrics" => {
                    let spec = file.filter_spec().ok_or_else(|| {
                        Error::InvalidFilterFile("no design spec recorded; metrics unavailable".to_string())
                    })?;
                    let m = measure_band_metrics(&cascade, &spec)?;
                    match format {
                        Format::Json => to_json(&m)?,
                        Format::Csv => format!(
                            "metric,value\npassband_deviation_db,{}\nstopband_attenuation_db,{}\ntransition_width_hz,{}\nphase_linearity_error_rad,{}\n",
                            m.passband_deviation_db,
                            m.stopband_attenuation_db,
                            m.transition_width_hz,
                            m.phase_linearity_error_rad
                        ),
                    }
                }
                other => {
                    let kind: ResponseKind = other.parse()?;
                    if kind == ResponseKind::SpectrumDb {
                        return Err(Error::InvalidKind(other.to_string()));
                    }
                    render_series(&response_series(&cascade, kind, points)?, format)?
                }
            };
            emit(out.as_ref(), &text)
        }
        Command::Spectrum { input, nfft, format, out } => {
            let signal = read_wav(&input)?;
            let series = spectrum(&signal, nfft)?;
            emit(out.as_ref(), &render_series(&series, format)?)
        }
    }
}
