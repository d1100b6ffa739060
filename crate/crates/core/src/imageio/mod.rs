//! Image file formats: FITS (read-only subset) and binary PGM.

pub mod fits;
pub mod pgm;

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image2d::ImageBuffer;

/// Reads a FITS or PGM file, chosen by its leading bytes.
pub fn read_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    decode_image(&fs::read(path)?)
}

pub fn decode_image(data: &[u8]) -> Result<ImageBuffer> {
    if data.starts_with(b"SIMPLE") {
        Ok(fits::parse_fits(data)?)
    } else if data.starts_with(b"P5") {
        Ok(pgm::decode_pgm(data)?)
    } else {
        Err(Error::InvalidImage(
            "unrecognised image format (expected FITS or binary PGM)".into(),
        ))
    }
}
