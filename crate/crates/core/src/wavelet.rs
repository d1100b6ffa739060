use crate::error::{Error, Result};
use crate::filterbank::{
    db4_scalar, double_shift_multifilter, ghm_multifilter, haar_scalar, MultiFilterBank,
    ScalarFilter,
};
use crate::transform1d::{
    analyze_scalar, analyze_vec, apply_prefilter, devectorize, max_levels_for, remove_prefilter,
    synthesize_scalar, synthesize_vec, vectorize, Coeffs1D, VectorSignal,
};

/// Canonical names of the shipped transforms, in registry order.
pub const FILTER_NAMES: [&str; 5] = ["haar", "db4", "haar-multi", "db4-multi", "ghm"];

/// Either a scalar filter or an r=2 matrix bank.
#[derive(Clone, Debug, PartialEq)]
pub enum Wavelet {
    Scalar(ScalarFilter),
    Multi(MultiFilterBank),
}

impl Wavelet {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "haar" => Wavelet::Scalar(haar_scalar()),
            "db4" => Wavelet::Scalar(db4_scalar()),
            "haar-multi" => Wavelet::Multi(double_shift_multifilter(&haar_scalar())?),
            "db4-multi" => Wavelet::Multi(double_shift_multifilter(&db4_scalar())?),
            "ghm" => Wavelet::Multi(ghm_multifilter()),
            other => return Err(Error::UnknownFilter(other.to_string())),
        })
    }

    /// Every shipped transform, in [`FILTER_NAMES`] order.
    pub fn all() -> Vec<Wavelet> {
        FILTER_NAMES
            .iter()
            .map(|n| Wavelet::from_name(n).expect("registry names are valid"))
            .collect()
    }

    pub fn name(&self) -> &str {
        match self {
            Wavelet::Scalar(f) => f.name(),
            Wavelet::Multi(b) => b.name(),
        }
    }

    pub fn multiplicity(&self) -> usize {
        match self {
            Wavelet::Scalar(_) => 1,
            Wavelet::Multi(b) => b.multiplicity(),
        }
    }

    /// Feasible level count along one axis of `len` samples.
    pub fn max_levels(&self, len: usize) -> usize {
        match self {
            Wavelet::Scalar(f) => max_levels_for(len, f.len()),
            Wavelet::Multi(_) if !len.is_multiple_of(2) => 0,
            Wavelet::Multi(b) => max_levels_for(len / 2, b.taps()),
        }
    }

    /// One analysis step on a line of samples.
    ///
    /// Scalar output is `[a | d]`. Matrix output is `[A1 | A2 | D1 | D2]`,
    /// one quarter each. At the first level the line is paired and
    /// prefiltered; at deeper levels it already holds `[A1 | A2]` from the
    /// previous step and is read back as a vector signal.
    pub(crate) fn forward_line(
        &self,
        line: &[f64],
        first_level: bool,
        out: &mut [f64],
    ) -> Result<()> {
        let half = line.len() / 2;
        match self {
            Wavelet::Scalar(f) => {
                let c = analyze_scalar(line, f)?;
                out[..half].copy_from_slice(&c.approx);
                out[half..].copy_from_slice(&c.detail);
            }
            Wavelet::Multi(bank) => {
                let v = if first_level {
                    apply_prefilter(&vectorize(line)?, bank)
                } else {
                    if !line.len().is_multiple_of(2) {
                        return Err(Error::OddLength(line.len()));
                    }
                    VectorSignal::from_components(&line[..half], &line[half..])
                };
                let c = analyze_vec(&v, bank)?;
                c.approx.write_components(&mut out[..half]);
                c.detail.write_components(&mut out[half..]);
            }
        }
        Ok(())
    }

    /// Inverse of [`Wavelet::forward_line`].
    pub(crate) fn inverse_line(
        &self,
        line: &[f64],
        first_level: bool,
        out: &mut [f64],
    ) -> Result<()> {
        let half = line.len() / 2;
        match self {
            Wavelet::Scalar(f) => {
                let c = Coeffs1D {
                    approx: line[..half].to_vec(),
                    detail: line[half..].to_vec(),
                };
                out.copy_from_slice(&synthesize_scalar(&c, f)?);
            }
            Wavelet::Multi(bank) => {
                let quarter = half / 2;
                let c = Coeffs1D {
                    approx: VectorSignal::from_components(&line[..quarter], &line[quarter..half]),
                    detail: VectorSignal::from_components(
                        &line[half..half + quarter],
                        &line[half + quarter..],
                    ),
                };
                let v = synthesize_vec(&c, bank)?;
                if first_level {
                    out.copy_from_slice(&devectorize(&remove_prefilter(&v, bank)));
                } else {
                    v.write_components(out);
                }
            }
        }
        Ok(())
    }
}
