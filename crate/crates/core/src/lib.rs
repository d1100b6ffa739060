//! Orthogonal scalar wavelets and multiplicity-2 multiwavelets for image work.
//!
//! The crate ships five transforms, addressed by name through [`Wavelet`]:
//!
//! | name         | kind        | taps                         |
//! |--------------|-------------|------------------------------|
//! | `haar`       | scalar      | 2                            |
//! | `db4`        | scalar      | 4                            |
//! | `haar-multi` | r=2 matrix  | 2 (double-shifted Haar)      |
//! | `db4-multi`  | r=2 matrix  | 3 (double-shifted db4)       |
//! | `ghm`        | r=2 matrix  | 4 (Geronimo–Hardin–Massopust) |
//!
//! All transforms are critically sampled and orthogonal with periodic
//! boundaries, so synthesis is the transpose of analysis and energy is
//! preserved. [`image2d`] lays the coefficients out as an in-place subband
//! pyramid, [`metrics`] measures reconstruction fidelity, and [`imageio`]
//! reads 16-bit FITS plates and binary PGM files.

pub mod error;
pub mod filterbank;
pub mod image2d;
pub mod imageio;
pub mod metrics;
pub mod synthetic;
pub mod transform1d;
mod wavelet;

pub use error::{Error, Result};
pub use filterbank::{
    db4_scalar, double_shift_multifilter, frequency_response, ghm_multifilter, haar_scalar,
    verify_orthogonality, FrequencyResponse, Mat2, MultiFilterBank, OrthogonalityReport,
    ScalarFilter, Vec2,
};
pub use image2d::{approx_only, decompose2d, reconstruct2d, ImageBuffer, Peak, SubbandPyramid};
pub use metrics::{energy, mse, psnr, MetricsReport};
pub use transform1d::{Coeffs1D, Pyramid1D, VectorSignal};
pub use wavelet::{Wavelet, FILTER_NAMES};
