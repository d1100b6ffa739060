//! Reconstruction fidelity: MSE, PSNR and energy.

use crate::error::{Error, Result};
use crate::image2d::ImageBuffer;

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    /// `+inf` exactly when `mse == 0`.
    pub psnr_db: f64,
    pub peak: f64,
    pub width: usize,
    pub height: usize,
}

impl MetricsReport {
    pub const CSV_HEADER: &'static str = "level,filter,mse,psnr_db";

    pub fn compare(x: &ImageBuffer, y: &ImageBuffer, peak: f64) -> Result<Self> {
        let mse = mse(x, y)?;
        Ok(MetricsReport {
            mse,
            psnr_db: psnr_from_mse(mse, peak),
            peak,
            width: x.width(),
            height: x.height(),
        })
    }

    /// `level,filter,mse,psnr_db`; infinite PSNR renders as `inf`.
    pub fn csv_row(&self, level: usize, filter: &str) -> String {
        format!("{level},{filter},{},{}", self.mse, self.psnr_db)
    }
}

fn check_dims(x: &ImageBuffer, y: &ImageBuffer) -> Result<()> {
    if (x.width(), x.height()) != (y.width(), y.height()) {
        return Err(Error::DimensionMismatch(
            x.width(),
            x.height(),
            y.width(),
            y.height(),
        ));
    }
    Ok(())
}

pub fn mse(x: &ImageBuffer, y: &ImageBuffer) -> Result<f64> {
    check_dims(x, y)?;
    let n = x.samples().len();
    if n == 0 {
        return Ok(0.0);
    }
    let sum: f64 = x
        .samples()
        .iter()
        .zip(y.samples())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum / n as f64)
}

/// `10·log10(peak² / mse)` in dB.
pub fn psnr_from_mse(mse: f64, peak: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    }
}

pub fn psnr(x: &ImageBuffer, y: &ImageBuffer, peak: f64) -> Result<f64> {
    Ok(psnr_from_mse(mse(x, y)?, peak))
}

/// Sum of squared samples.
pub fn energy(samples: &[f64]) -> f64 {
    samples.iter().map(|v| v * v).sum()
}
