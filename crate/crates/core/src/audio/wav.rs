//! 16-bit PCM RIFF/WAVE reading and writing.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const PCM_FORMAT: u16 = 1;
const FULL_SCALE: f64 = 32768.0;

/// Sampled audio, normalized to `[-1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
    pub source_bit_depth: u16,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Self {
        Signal { samples, sample_rate, source_bit_depth: 16 }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Saturates to the 16-bit range and rounds half away from zero.
pub fn quantize(x: f64) -> i16 {
    let clipped = x.clamp(-1.0, 1.0 - 1.0 / FULL_SCALE);
    (clipped * FULL_SCALE).round() as i16
}

fn u16_at(bytes: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([bytes[at], bytes[at + 1]])
}

fn u32_at(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([bytes[at], bytes[at + 1], bytes[at + 2], bytes[at + 3]])
}

struct Format {
    channels: u16,
    sample_rate: u32,
    block_align: u16,
}

fn parse_fmt(body: &[u8]) -> Result<Format> {
    if body.len() < 16 {
        return Err(Error::CorruptFile(format!("fmt chunk is {} bytes, need 16", body.len())));
    }
    let code = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let sample_rate = u32_at(body, 4);
    let block_align = u16_at(body, 12);
    let bits = u16_at(body, 14);
    if code != PCM_FORMAT {
        return Err(Error::UnsupportedFormat(format!("format code {code}, only PCM (1) is supported")));
    }
    if bits != 16 {
        return Err(Error::UnsupportedFormat(format!("{bits}-bit samples, only 16-bit is supported")));
    }
    if channels == 0 || sample_rate == 0 {
        return Err(Error::CorruptFile(format!("{channels} channels at {sample_rate} Hz")));
    }
    if block_align != 2 * channels {
        return Err(Error::CorruptFile(format!(
            "block align {block_align} does not match {channels} 16-bit channels"
        )));
    }
    Ok(Format { channels, sample_rate, block_align })
}

/// Parses a complete WAV image. Channels are averaged into one.
pub fn decode(bytes: &[u8]) -> Result<Signal> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::UnsupportedFormat("not a RIFF/WAVE file".to_string()));
    }
    let mut format: Option<Format> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let start = pos + 8;
        let end = start
            .checked_add(size)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| {
                Error::CorruptFile(format!(
                    "chunk '{}' claims {size} bytes, {} remain",
                    String::from_utf8_lossy(id),
                    bytes.len() - start
                ))
            })?;
        let body = &bytes[start..end];
        match id {
            b"fmt " => format = Some(parse_fmt(body)?),
            b"data" => {
                let fmt = format
                    .as_ref()
                    .ok_or_else(|| Error::CorruptFile("data chunk before fmt chunk".to_string()))?;
                if body.len() % fmt.block_align as usize != 0 {
                    return Err(Error::CorruptFile("data chunk ends mid-frame".to_string()));
                }
                let samples: Vec<f64> = body
                    .chunks_exact(fmt.block_align as usize)
                    .map(|frame| {
                        let sum: f64 = frame
                            .chunks_exact(2)
                            .map(|s| i16::from_le_bytes([s[0], s[1]]) as f64 / FULL_SCALE)
                            .sum();
                        sum / fmt.channels as f64
                    })
                    .collect();
                if samples.is_empty() {
                    return Err(Error::CorruptFile("data chunk holds no samples".to_string()));
                }
                return Ok(Signal { samples, sample_rate: fmt.sample_rate, source_bit_depth: 16 });
            }
            _ => {}
        }
        // chunks are word aligned
        pos = end + (size & 1);
    }
    Err(Error::CorruptFile(if format.is_none() {
        "missing fmt chunk".to_string()
    } else {
        "missing data chunk".to_string()
    }))
}

/// Encodes a mono 16-bit PCM WAV image.
pub fn encode(signal: &Signal) -> Vec<u8> {
    let data_len = 2 * signal.samples.len() as u32;
    let mut out = Vec::with_capacity(44 + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&PCM_FORMAT.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&signal.sample_rate.to_le_bytes());
    out.extend_from_slice(&(signal.sample_rate * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &x in &signal.samples {
        out.extend_from_slice(&quantize(x).to_le_bytes());
    }
    out
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<Signal> {
    decode(&fs::read(path)?)
}

pub fn write_wav(signal: &Signal, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode(signal))?;
    Ok(())
}
