//! Binary PGM (`P5`) reading and writing.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::image2d::{ImageBuffer, Peak};

#[derive(Debug, Error, PartialEq)]
pub enum PgmError {
    #[error("not a binary PGM file (magic must be P5)")]
    BadMagic,
    #[error("malformed PGM header: {0}")]
    BadHeader(String),
    #[error("maxval {0} is outside 1..=65535")]
    BadMaxval(u64),
    #[error("raster truncated: expected {expected} bytes, found {available}")]
    Truncated { expected: usize, available: usize },
}

/// Outcome of writing an image as PGM.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WriteReport {
    /// Samples that fell outside `[0, peak]` after rounding.
    pub clamped: usize,
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, PgmError> {
        self.skip_space();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| PgmError::BadHeader(format!("{what} is too large")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PgmError::BadHeader(format!("missing {what}")));
        }
        Ok(value)
    }
}

pub fn decode_pgm(data: &[u8]) -> Result<ImageBuffer, PgmError> {
    if data.len() < 2 || &data[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(PgmError::BadMaxval(maxval));
    }
    if width == 0 || height == 0 {
        return Err(PgmError::BadHeader(format!(
            "empty raster {width}x{height}"
        )));
    }
    match data.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => h.pos += 1,
        _ => return Err(PgmError::BadHeader("no whitespace after maxval".into())),
    }
    let bytes_per_sample = if maxval > 255 { 2 } else { 1 };
    let available = data.len() - h.pos;
    let expected = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(bytes_per_sample))
        .ok_or_else(|| PgmError::BadHeader(format!("{width}x{height} overflows")))?;
    if available < expected {
        return Err(PgmError::Truncated {
            expected,
            available,
        });
    }
    let raster = &data[h.pos..h.pos + expected];
    let samples: Vec<f64> = if bytes_per_sample == 1 {
        raster.iter().map(|&b| b as f64).collect()
    } else {
        raster
            .chunks_exact(2)
            .map(|b| u16::from_be_bytes([b[0], b[1]]) as f64)
            .collect()
    };
    let peak = if maxval > 255 {
        Peak::Sixteen
    } else {
        Peak::Eight
    };
    Ok(
        ImageBuffer::new(width as usize, height as usize, samples, peak)
            .expect("raster size checked above"),
    )
}

/// Encodes with `maxval = peak`, rounding and clamping each sample.
pub fn encode_pgm(img: &ImageBuffer) -> (Vec<u8>, WriteReport) {
    let (q, clamped) = img.quantized();
    let maxval = img.peak().maxval();
    let mut out = format!("P5\n{} {}\n{}\n", img.width(), img.height(), maxval).into_bytes();
    if maxval > 255 {
        for &v in q.samples() {
            out.extend_from_slice(&(v as u16).to_be_bytes());
        }
    } else {
        out.extend(q.samples().iter().map(|&v| v as u8));
    }
    (out, WriteReport { clamped })
}

pub fn read_pgm(path: impl AsRef<Path>) -> crate::Result<ImageBuffer> {
    Ok(decode_pgm(&fs::read(path)?)?)
}

pub fn write_pgm(img: &ImageBuffer, path: impl AsRef<Path>) -> crate::Result<WriteReport> {
    let (bytes, report) = encode_pgm(img);
    fs::write(path, bytes)?;
    Ok(report)
}
