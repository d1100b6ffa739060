//! Scalar and matrix (r=2) orthogonal filter banks.
//!
//! A [`ScalarFilter`] holds the lowpass taps `c_k` of an orthonormal scalar
//! wavelet together with the alternating-flip highpass `d_k = (-1)^k c_{L-1-k}`.
//! A [`MultiFilterBank`] holds 2×2 matrix taps `H_k` (lowpass) and `G_k`
//! (highpass). Orthogonality of a bank means, for every integer shift `l`,
//!
//! ```text
//! Σ_k H_k H_{k+2l}ᵀ = δ_{0l} I
//! Σ_k G_k G_{k+2l}ᵀ = δ_{0l} I
//! Σ_k H_k G_{k+2l}ᵀ = 0
//! ```
//!
//! which [`verify_orthogonality`] checks entrywise.

use std::io::{self, Write};

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = nalgebra::Matrix2<f64>;
pub type Vec2 = nalgebra::Vector2<f64>;

/// Tolerance used when a scalar filter is accepted as a construction input.
pub const SCALAR_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFilter {
    name: String,
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
}

impl ScalarFilter {
    /// Builds a filter from its lowpass taps, deriving the highpass by
    /// alternating flip. No invariant is checked here; see [`ScalarFilter::validate`].
    pub fn from_lowpass(name: impl Into<String>, lowpass: Vec<f64>) -> Self {
        let len = lowpass.len();
        let highpass = (0..len)
            .map(|k| {
                let c = lowpass[len - 1 - k];
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        ScalarFilter {
            name: name.into(),
            lowpass,
            highpass,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[f64] {
        &self.highpass
    }

    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }

    /// `max_l |Σ_k c_k c_{k+2l} − δ_{0l}|`.
    pub fn orthonormality_residual(&self) -> f64 {
        shifted_residual(&self.lowpass, &self.lowpass, true)
    }

    /// `max_l |Σ_k d_k d_{k+2l} − δ_{0l}|`.
    pub fn highpass_orthonormality_residual(&self) -> f64 {
        shifted_residual(&self.highpass, &self.highpass, true)
    }

    /// `max_l |Σ_k c_k d_{k+2l}|`.
    pub fn cross_residual(&self) -> f64 {
        shifted_residual(&self.lowpass, &self.highpass, false)
    }

    /// `|Σ_k c_k − √2|`.
    pub fn dc_gain_residual(&self) -> f64 {
        (self.lowpass.iter().sum::<f64>() - 2f64.sqrt()).abs()
    }

    /// Largest of the four residuals above.
    pub fn max_residual(&self) -> f64 {
        self.orthonormality_residual()
            .max(self.highpass_orthonormality_residual())
            .max(self.cross_residual())
            .max(self.dc_gain_residual())
    }

    pub fn validate(&self, tolerance: f64) -> Result<()> {
        let len = self.len();
        if len < 2 || !len.is_multiple_of(2) {
            return Err(Error::FilterLength {
                name: self.name.clone(),
                len,
            });
        }
        let residual = self.max_residual();
        // NaN residuals must fail too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(residual <= tolerance) {
            return Err(Error::NotOrthonormal {
                name: self.name.clone(),
                residual,
            });
        }
        Ok(())
    }
}

fn shifted_residual(a: &[f64], b: &[f64], identity: bool) -> f64 {
    let len = a.len() as isize;
    let mut worst = 0f64;
    let max_shift = (len - 1) / 2;
    for l in -max_shift..=max_shift {
        let mut acc = 0.0;
        for k in 0..len {
            let j = k + 2 * l;
            if (0..len).contains(&j) {
                acc += a[k as usize] * b[j as usize];
            }
        }
        if identity && l == 0 {
            acc -= 1.0;
        }
        worst = worst.max(acc.abs());
    }
    worst
}

/// Two-tap Haar filter, `c_0 = c_1 = 1/√2`.
pub fn haar_scalar() -> ScalarFilter {
    let c = 0.5f64.sqrt();
    ScalarFilter::from_lowpass("haar", vec![c, c])
}

/// Four-tap Daubechies filter with two vanishing moments.
pub fn db4_scalar() -> ScalarFilter {
    let s3 = 3f64.sqrt();
    let denom = 4.0 * 2f64.sqrt();
    ScalarFilter::from_lowpass(
        "db4",
        vec![
            (1.0 + s3) / denom,
            (3.0 + s3) / denom,
            (3.0 - s3) / denom,
            (1.0 - s3) / denom,
        ],
    )
}

/// Matrix filter bank of multiplicity two.
///
/// `prefilter` is an orthogonal 2×2 map applied to each sample pair when a
/// scalar signal enters the vector domain (and its transpose on the way out).
/// It is the identity for the double-shift banks.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiFilterBank {
    name: String,
    lowpass: Vec<Mat2>,
    highpass: Vec<Mat2>,
    prefilter: Mat2,
}

impl MultiFilterBank {
    pub fn new(name: impl Into<String>, lowpass: Vec<Mat2>, highpass: Vec<Mat2>) -> Result<Self> {
        let name = name.into();
        if lowpass.is_empty() || lowpass.len() != highpass.len() {
            return Err(Error::Layout(format!(
                "bank '{name}' needs equal non-zero tap counts, got {} lowpass and {} highpass",
                lowpass.len(),
                highpass.len()
            )));
        }
        Ok(MultiFilterBank {
            name,
            lowpass,
            highpass,
            prefilter: Mat2::identity(),
        })
    }

    pub fn with_prefilter(mut self, prefilter: Mat2) -> Self {
        self.prefilter = prefilter;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn multiplicity(&self) -> usize {
        2
    }

    /// Number of matrix taps `M`.
    pub fn taps(&self) -> usize {
        self.lowpass.len()
    }

    pub fn lowpass(&self) -> &[Mat2] {
        &self.lowpass
    }

    pub fn highpass(&self) -> &[Mat2] {
        &self.highpass
    }

    pub fn prefilter(&self) -> &Mat2 {
        &self.prefilter
    }

    /// Copy of this bank with tap `index` of the lowpass scaled by `factor`.
    pub fn with_scaled_lowpass_tap(&self, index: usize, factor: f64) -> Self {
        let mut bank = self.clone();
        bank.lowpass[index] *= factor;
        bank
    }
}

/// Builds an r=2 bank by placing the scalar taps on two rows offset by one
/// tap pair: tap `m` has row 1 `(c_{2m}, c_{2m+1})` and row 2
/// `(c_{2m-2}, c_{2m-1})`, giving `M = L/2 + 1` matrix taps.
pub fn double_shift_multifilter(base: &ScalarFilter) -> Result<MultiFilterBank> {
    base.validate(SCALAR_TOLERANCE)?;
    let taps = base.len() / 2 + 1;
    let build = |c: &[f64]| -> Vec<Mat2> {
        let at = |i: isize| -> f64 {
            if i >= 0 && (i as usize) < c.len() {
                c[i as usize]
            } else {
                0.0
            }
        };
        (0..taps as isize)
            .map(|m| Mat2::new(at(2 * m), at(2 * m + 1), at(2 * m - 2), at(2 * m - 1)))
            .collect()
    };
    MultiFilterBank::new(
        format!("{}-multi", base.name()),
        build(base.lowpass()),
        build(base.highpass()),
    )
}

/// The four-tap Geronimo–Hardin–Massopust multifilter, normalised so that
/// `Σ_k H_k H_kᵀ = I`.
///
/// The constant signal lives along the eigenvector `(√2, 1)` of `Σ_k H_k`
/// (eigenvalue √2), which `Σ_k G_k` annihilates. The bank's prefilter rotates
/// the pairing direction `(1, 1)` onto that eigenvector so that flat image
/// regions produce no detail coefficients.
pub fn ghm_multifilter() -> MultiFilterBank {
    let r2 = 2f64.sqrt();
    let lowpass = vec![
        Mat2::new(3.0 / (5.0 * r2), 4.0 / 5.0, -1.0 / 20.0, -3.0 / (10.0 * r2)),
        Mat2::new(3.0 / (5.0 * r2), 0.0, 9.0 / 20.0, 1.0 / r2),
        Mat2::new(0.0, 0.0, 9.0 / 20.0, -3.0 / (10.0 * r2)),
        Mat2::new(0.0, 0.0, -1.0 / 20.0, 0.0),
    ];
    let highpass = vec![
        Mat2::new(
            -1.0 / 20.0,
            -3.0 / (10.0 * r2),
            1.0 / (10.0 * r2),
            3.0 / 10.0,
        ),
        Mat2::new(9.0 / 20.0, -1.0 / r2, -9.0 / (10.0 * r2), 0.0),
        Mat2::new(
            9.0 / 20.0,
            -3.0 / (10.0 * r2),
            9.0 / (10.0 * r2),
            -3.0 / 10.0,
        ),
        Mat2::new(-1.0 / 20.0, 0.0, -1.0 / (10.0 * r2), 0.0),
    ];
    let from = Vec2::new(1.0, 1.0).normalize();
    let to = Vec2::new(r2, 1.0).normalize();
    let cos = from.dot(&to);
    let sin = from.x * to.y - from.y * to.x;
    let rotation = Mat2::new(cos, -sin, sin, cos);
    MultiFilterBank::new("ghm", lowpass, highpass)
        .expect("ghm taps are well formed")
        .with_prefilter(rotation)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftResidual {
    pub shift: isize,
    pub hh: f64,
    pub gg: f64,
    pub hg: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    pub max_residual_hh: f64,
    pub max_residual_gg: f64,
    pub max_residual_hg: f64,
    pub passed: bool,
    pub tolerance: f64,
    /// Residuals for every shift `l` with `|l| < M`.
    pub shifts: Vec<ShiftResidual>,
}

impl OrthogonalityReport {
    pub fn max_residual(&self) -> f64 {
        self.max_residual_hh
            .max(self.max_residual_gg)
            .max(self.max_residual_hg)
    }
}

fn correlate(a: &[Mat2], b: &[Mat2], shift: isize) -> Mat2 {
    let len = a.len() as isize;
    let mut acc = Mat2::zeros();
    for k in 0..len {
        let j = k + 2 * shift;
        if (0..len).contains(&j) {
            acc += a[k as usize] * b[j as usize].transpose();
        }
    }
    acc
}

fn max_abs(m: &Mat2) -> f64 {
    m.iter().fold(0f64, |acc, v| acc.max(v.abs()))
}

pub fn verify_orthogonality(bank: &MultiFilterBank, tolerance: f64) -> OrthogonalityReport {
    let m = bank.taps() as isize;
    let (h, g) = (bank.lowpass(), bank.highpass());
    let shifts: Vec<ShiftResidual> = (-(m - 1)..m)
        .map(|l| {
            let delta = if l == 0 {
                Mat2::identity()
            } else {
                Mat2::zeros()
            };
            ShiftResidual {
                shift: l,
                hh: max_abs(&(correlate(h, h, l) - delta)),
                gg: max_abs(&(correlate(g, g, l) - delta)),
                hg: max_abs(&correlate(h, g, l)),
            }
        })
        .collect();
    let fold = |f: fn(&ShiftResidual) -> f64| shifts.iter().map(f).fold(0f64, f64::max);
    let max_residual_hh = fold(|s| s.hh);
    let max_residual_gg = fold(|s| s.gg);
    let max_residual_hg = fold(|s| s.hg);
    OrthogonalityReport {
        passed: max_residual_hh <= tolerance
            && max_residual_gg <= tolerance
            && max_residual_hg <= tolerance,
        max_residual_hh,
        max_residual_gg,
        max_residual_hg,
        tolerance,
        shifts,
    }
}

/// `Σ_k T_k e^{-ikω}` for a matrix tap sequence.
pub fn dtft(taps: &[Mat2], omega: f64) -> Matrix2<Complex64> {
    let mut acc = Matrix2::<Complex64>::zeros();
    for (k, tap) in taps.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -(k as f64) * omega);
        acc += tap.map(|v| Complex64::new(v, 0.0) * phase);
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySample {
    pub omega: f64,
    /// Entrywise magnitudes `|Ĥ(ω)|`.
    pub lowpass: Mat2,
    /// Entrywise magnitudes `|Ĝ(ω)|`.
    pub highpass: Mat2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyResponse {
    pub bank: String,
    pub samples: Vec<FrequencySample>,
}

impl FrequencyResponse {
    pub const CSV_HEADER: &'static str = "omega,component,row,col,magnitude";

    /// Writes one row per (ω, component, entry). Rows and columns are 1-based.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for s in &self.samples {
            for (component, m) in [("H", &s.lowpass), ("G", &s.highpass)] {
                for row in 0..2 {
                    for col in 0..2 {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            s.omega,
                            component,
                            row + 1,
                            col + 1,
                            m[(row, col)]
                        )?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Samples `Ĥ(ω)` and `Ĝ(ω)` at `n_points` uniformly spaced ω in `[0, π]`.
pub fn frequency_response(bank: &MultiFilterBank, n_points: usize) -> Result<FrequencyResponse> {
    if n_points < 2 {
        return Err(Error::TooFewPoints(n_points));
    }
    let step = std::f64::consts::PI / (n_points - 1) as f64;
    let samples = (0..n_points)
        .map(|i| {
            let omega = if i == n_points - 1 {
                std::f64::consts::PI
            } else {
                i as f64 * step
            };
            FrequencySample {
                omega,
                lowpass: dtft(bank.lowpass(), omega).map(|c| c.norm()),
                highpass: dtft(bank.highpass(), omega).map(|c| c.norm()),
            }
        })
        .collect();
    Ok(FrequencyResponse {
        bank: bank.name().to_string(),
        samples,
    })
}
