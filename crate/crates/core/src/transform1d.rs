//! Critically sampled 1D analysis and synthesis with periodic boundaries.
//!
//! One analysis step maps a signal of length `N` to approximation and detail
//! channels of length `N/2`, drawing output index `n` from the causal window
//! `2n .. 2n+taps` (wrapped modulo `N`). Synthesis applies the transposed
//! taps, which inverts analysis exactly for orthogonal banks.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};
use crate::filterbank::{MultiFilterBank, ScalarFilter, Vec2};

/// A sequence of 2-vectors acted on by matrix filters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VectorSignal(Vec<Vec2>);

impl VectorSignal {
    pub fn new(data: Vec<Vec2>) -> Self {
        VectorSignal(data)
    }

    pub fn zeros(len: usize) -> Self {
        VectorSignal(vec![Vec2::zeros(); len])
    }

    pub fn from_pairs(pairs: &[[f64; 2]]) -> Self {
        VectorSignal(pairs.iter().map(|p| Vec2::new(p[0], p[1])).collect())
    }

    /// Builds a signal from two planar component slices of equal length.
    pub fn from_components(first: &[f64], second: &[f64]) -> Self {
        debug_assert_eq!(first.len(), second.len());
        VectorSignal(
            first
                .iter()
                .zip(second)
                .map(|(&a, &b)| Vec2::new(a, b))
                .collect(),
        )
    }

    /// Writes component 1 then component 2 into `out` (length `2 * len`).
    pub fn write_components(&self, out: &mut [f64]) {
        let n = self.0.len();
        let (first, second) = out.split_at_mut(n);
        for (i, v) in self.0.iter().enumerate() {
            first[i] = v.x;
            second[i] = v.y;
        }
    }

    pub fn into_inner(self) -> Vec<Vec2> {
        self.0
    }

    pub fn energy(&self) -> f64 {
        self.0.iter().map(|v| v.norm_squared()).sum()
    }
}

impl Deref for VectorSignal {
    type Target = [Vec2];

    fn deref(&self) -> &[Vec2] {
        &self.0
    }
}

impl DerefMut for VectorSignal {
    fn deref_mut(&mut self) -> &mut [Vec2] {
        &mut self.0
    }
}

/// Output of one analysis step.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeffs1D<S = VectorSignal> {
    pub approx: S,
    pub detail: S,
}

/// Multilevel decomposition: `details[0]` is the finest level.
#[derive(Clone, Debug, PartialEq)]
pub struct Pyramid1D<S> {
    pub details: Vec<S>,
    pub approx: S,
}

impl<S> Pyramid1D<S> {
    pub fn levels(&self) -> usize {
        self.details.len()
    }
}

/// Pairs consecutive samples: `v[n] = (x[2n], x[2n+1])`.
pub fn vectorize(x: &[f64]) -> Result<VectorSignal> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::OddLength(x.len()));
    }
    if x.is_empty() {
        return Err(Error::TooShort { len: 0, taps: 2 });
    }
    Ok(VectorSignal(
        x.chunks_exact(2).map(|p| Vec2::new(p[0], p[1])).collect(),
    ))
}

pub fn devectorize(v: &VectorSignal) -> Vec<f64> {
    v.iter().flat_map(|p| [p.x, p.y]).collect()
}

/// Applies the bank's pointwise prefilter to every vector sample.
pub fn apply_prefilter(v: &VectorSignal, bank: &MultiFilterBank) -> VectorSignal {
    let p = bank.prefilter();
    VectorSignal(v.iter().map(|s| p * s).collect())
}

/// Inverse of [`apply_prefilter`].
pub fn remove_prefilter(v: &VectorSignal, bank: &MultiFilterBank) -> VectorSignal {
    let p = bank.prefilter().transpose();
    VectorSignal(v.iter().map(|s| p * s).collect())
}

fn check_analysis_len(len: usize, taps: usize) -> Result<()> {
    if !len.is_multiple_of(2) {
        return Err(Error::OddLength(len));
    }
    if len < taps {
        return Err(Error::TooShort { len, taps });
    }
    Ok(())
}

pub fn analyze_vec(v: &VectorSignal, bank: &MultiFilterBank) -> Result<Coeffs1D> {
    let len = v.len();
    check_analysis_len(len, bank.taps())?;
    let half = len / 2;
    let mut approx = Vec::with_capacity(half);
    let mut detail = Vec::with_capacity(half);
    for n in 0..half {
        let mut a = Vec2::zeros();
        let mut d = Vec2::zeros();
        for (k, (h, g)) in bank.lowpass().iter().zip(bank.highpass()).enumerate() {
            let s = &v[(2 * n + k) % len];
            a += h * s;
            d += g * s;
        }
        approx.push(a);
        detail.push(d);
    }
    Ok(Coeffs1D {
        approx: VectorSignal(approx),
        detail: VectorSignal(detail),
    })
}

pub fn synthesize_vec(c: &Coeffs1D, bank: &MultiFilterBank) -> Result<VectorSignal> {
    let half = c.approx.len();
    if half != c.detail.len() {
        return Err(Error::ChannelMismatch {
            approx: half,
            detail: c.detail.len(),
        });
    }
    let len = 2 * half;
    let mut out = VectorSignal::zeros(len);
    if len == 0 {
        return Ok(out);
    }
    for n in 0..half {
        let (a, d) = (&c.approx[n], &c.detail[n]);
        for (k, (h, g)) in bank.lowpass().iter().zip(bank.highpass()).enumerate() {
            out[(2 * n + k) % len] += h.tr_mul(a) + g.tr_mul(d);
        }
    }
    Ok(out)
}

pub fn analyze_scalar(x: &[f64], f: &ScalarFilter) -> Result<Coeffs1D<Vec<f64>>> {
    let len = x.len();
    check_analysis_len(len, f.len())?;
    let half = len / 2;
    let mut approx = Vec::with_capacity(half);
    let mut detail = Vec::with_capacity(half);
    for n in 0..half {
        let mut a = 0.0;
        let mut d = 0.0;
        for (k, (c, h)) in f.lowpass().iter().zip(f.highpass()).enumerate() {
            let s = x[(2 * n + k) % len];
            a += c * s;
            d += h * s;
        }
        approx.push(a);
        detail.push(d);
    }
    Ok(Coeffs1D { approx, detail })
}

pub fn synthesize_scalar(c: &Coeffs1D<Vec<f64>>, f: &ScalarFilter) -> Result<Vec<f64>> {
    let half = c.approx.len();
    if half != c.detail.len() {
        return Err(Error::ChannelMismatch {
            approx: half,
            detail: c.detail.len(),
        });
    }
    let len = 2 * half;
    let mut out = vec![0.0; len];
    for n in 0..half {
        let (a, d) = (c.approx[n], c.detail[n]);
        for (k, (lo, hi)) in f.lowpass().iter().zip(f.highpass()).enumerate() {
            out[(2 * n + k) % len] += lo * a + hi * d;
        }
    }
    Ok(out)
}

/// Largest level count whose every analysis step sees an even input of at
/// least `taps` samples, starting from `len`.
pub(crate) fn max_levels_for(mut len: usize, taps: usize) -> usize {
    let mut levels = 0;
    while len.is_multiple_of(2) && len >= taps && len > 0 {
        levels += 1;
        len /= 2;
    }
    levels
}

pub fn max_levels_scalar(len: usize, f: &ScalarFilter) -> usize {
    max_levels_for(len, f.len())
}

/// Feasible levels for a vector signal of `len` vectors.
pub fn max_levels_vec(len: usize, bank: &MultiFilterBank) -> usize {
    max_levels_for(len, bank.taps())
}

fn check_levels(levels: usize, max: usize, len: usize, filter: &str) -> Result<()> {
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    if levels > max {
        return Err(Error::TooManyLevels {
            requested: levels,
            max,
            size: len.to_string(),
            filter: filter.to_string(),
        });
    }
    Ok(())
}

pub fn multilevel_scalar(
    x: &[f64],
    f: &ScalarFilter,
    levels: usize,
) -> Result<Pyramid1D<Vec<f64>>> {
    check_levels(levels, max_levels_scalar(x.len(), f), x.len(), f.name())?;
    let mut approx = x.to_vec();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let c = analyze_scalar(&approx, f)?;
        details.push(c.detail);
        approx = c.approx;
    }
    Ok(Pyramid1D { details, approx })
}

pub fn inverse_multilevel_scalar(p: &Pyramid1D<Vec<f64>>, f: &ScalarFilter) -> Result<Vec<f64>> {
    let mut approx = p.approx.clone();
    for detail in p.details.iter().rev() {
        approx = synthesize_scalar(
            &Coeffs1D {
                approx,
                detail: detail.clone(),
            },
            f,
        )?;
    }
    Ok(approx)
}

pub fn multilevel_vec(
    v: &VectorSignal,
    bank: &MultiFilterBank,
    levels: usize,
) -> Result<Pyramid1D<VectorSignal>> {
    check_levels(levels, max_levels_vec(v.len(), bank), v.len(), bank.name())?;
    let mut approx = v.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let c = analyze_vec(&approx, bank)?;
        details.push(c.detail);
        approx = c.approx;
    }
    Ok(Pyramid1D { details, approx })
}

pub fn inverse_multilevel_vec(
    p: &Pyramid1D<VectorSignal>,
    bank: &MultiFilterBank,
) -> Result<VectorSignal> {
    let mut approx = p.approx.clone();
    for detail in p.details.iter().rev() {
        approx = synthesize_vec(
            &Coeffs1D {
                approx,
                detail: detail.clone(),
            },
            bank,
        )?;
    }
    Ok(approx)
}

/// Multilevel decomposition of a scalar signal through a matrix bank:
/// the signal is paired, prefiltered, then decomposed in the vector domain.
pub fn multilevel_paired(
    x: &[f64],
    bank: &MultiFilterBank,
    levels: usize,
) -> Result<Pyramid1D<VectorSignal>> {
    let v = apply_prefilter(&vectorize(x)?, bank);
    multilevel_vec(&v, bank, levels)
}

pub fn inverse_multilevel_paired(
    p: &Pyramid1D<VectorSignal>,
    bank: &MultiFilterBank,
) -> Result<Vec<f64>> {
    let v = inverse_multilevel_vec(p, bank)?;
    Ok(devectorize(&remove_prefilter(&v, bank)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filterbank::{db4_scalar, double_shift_multifilter, ghm_multifilter, haar_scalar};
    use proptest::prelude::*;

    fn haar_multi() -> MultiFilterBank {
        double_shift_multifilter(&haar_scalar()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pairing() {
        let v = vectorize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(v, VectorSignal::from_pairs(&[[1.0, 2.0], [3.0, 4.0]]));
        let v = vectorize(&[5.0, 5.0]).unwrap();
        assert_eq!(v, VectorSignal::from_pairs(&[[5.0, 5.0]]));
        assert!(matches!(
            vectorize(&[1.0, 2.0, 3.0]),
            Err(Error::OddLength(3))
        ));
    }

    #[test]
    fn unpairing() {
        let v = VectorSignal::from_pairs(&[[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(devectorize(&v), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(
            devectorize(&VectorSignal::from_pairs(&[[0.0, 0.0]])),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn haar_multi_constant() {
        let v = vectorize(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        let c = analyze_vec(&v, &haar_multi()).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(c.approx[0].x, r2, 1e-15) && close(c.approx[0].y, r2, 1e-15));
        assert_eq!(c.detail[0], Vec2::zeros());

        let back = synthesize_vec(&c, &haar_multi()).unwrap();
        for s in back.iter() {
            assert!(close(s.x, 1.0, 1e-15) && close(s.y, 1.0, 1e-15));
        }
    }

    #[test]
    fn haar_multi_impulse() {
        let v = vectorize(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let c = analyze_vec(&v, &haar_multi()).unwrap();
        let h = 0.5f64.sqrt();
        assert_eq!(c.approx[0], Vec2::new(h, 0.0));
        assert_eq!(c.detail[0], Vec2::new(h, 0.0));
    }

    #[test]
    fn zero_coefficients_synthesize_to_zero() {
        let c = Coeffs1D {
            approx: VectorSignal::zeros(4),
            detail: VectorSignal::zeros(4),
        };
        let out = synthesize_vec(&c, &ghm_multifilter()).unwrap();
        assert!(out.iter().all(|s| *s == Vec2::zeros()));
    }

    #[test]
    fn channel_mismatch() {
        let c = Coeffs1D {
            approx: VectorSignal::zeros(4),
            detail: VectorSignal::zeros(3),
        };
        assert!(matches!(
            synthesize_vec(&c, &ghm_multifilter()),
            Err(Error::ChannelMismatch {
                approx: 4,
                detail: 3
            })
        ));
    }

    #[test]
    fn analysis_length_checks() {
        let ghm = ghm_multifilter();
        assert!(matches!(
            analyze_vec(&VectorSignal::zeros(3), &ghm),
            Err(Error::OddLength(3))
        ));
        assert!(matches!(
            analyze_vec(&VectorSignal::zeros(2), &ghm),
            Err(Error::TooShort { len: 2, taps: 4 })
        ));
        assert!(matches!(
            analyze_scalar(&[0.0, 0.0], &db4_scalar()),
            Err(Error::TooShort { len: 2, taps: 4 })
        ));
    }

    #[test]
    fn scalar_haar_constant() {
        let c = analyze_scalar(&[1.0, 1.0], &haar_scalar()).unwrap();
        assert!(close(c.approx[0], 2f64.sqrt(), 1e-15));
        assert_eq!(c.detail[0], 0.0);
    }

    #[test]
    fn db4_annihilates_ramp() {
        let x: Vec<f64> = (0..32).map(|i| i as f64).collect();
        let c = analyze_scalar(&x, &db4_scalar()).unwrap();
        // Windows 2n..2n+3 for n = 1..13 do not wrap.
        for n in 1..=13 {
            assert!(c.detail[n].abs() < 1e-10, "d[{n}] = {}", c.detail[n]);
        }
        // The last window wraps around the ramp's jump.
        assert!(c.detail[15].abs() > 1.0);
    }

    #[test]
    fn multilevel_constant_haar() {
        let x = vec![3.0; 8];
        let p = multilevel_scalar(&x, &haar_scalar(), 3).unwrap();
        assert_eq!(p.approx.len(), 1);
        assert!(close(p.approx[0], 3.0 * 2f64.powf(1.5), 1e-13));
        assert!(p.details.iter().flatten().all(|d| d.abs() < 1e-15));
        let back = inverse_multilevel_scalar(&p, &haar_scalar()).unwrap();
        assert!(back.iter().all(|v| close(*v, 3.0, 1e-14)));
    }

    #[test]
    fn multilevel_reports_feasible_maximum() {
        let err = multilevel_scalar(&[0.0; 8], &haar_scalar(), 4).unwrap_err();
        match err {
            Error::TooManyLevels { requested, max, .. } => {
                assert_eq!((requested, max), (4, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err_text(multilevel_vec(
            &VectorSignal::zeros(64),
            &ghm_multifilter(),
            6
        ))
        .contains("maximum feasible is 5"));
        assert!(matches!(
            multilevel_scalar(&[0.0; 8], &haar_scalar(), 0),
            Err(Error::ZeroLevels)
        ));
    }

    fn err_text<T: std::fmt::Debug>(r: Result<T>) -> String {
        r.unwrap_err().to_string()
    }

    #[test]
    fn feasible_levels() {
        assert_eq!(max_levels_scalar(1024, &haar_scalar()), 10);
        assert_eq!(max_levels_scalar(1024, &db4_scalar()), 9);
        assert_eq!(max_levels_vec(512, &haar_multi()), 9);
        assert_eq!(max_levels_vec(512, &ghm_multifilter()), 8);
        assert_eq!(max_levels_vec(6, &ghm_multifilter()), 1);
        assert_eq!(max_levels_vec(5, &ghm_multifilter()), 0);
    }

    #[test]
    fn prefilter_roundtrip() {
        let ghm = ghm_multifilter();
        let x: Vec<f64> = (0..16).map(|i| (i as f64).sin()).collect();
        let p = multilevel_paired(&x, &ghm, 2).unwrap();
        let back = inverse_multilevel_paired(&p, &ghm).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!(close(*a, *b, 1e-13));
        }
    }

    #[test]
    fn ghm_flat_signal_has_no_detail() {
        let ghm = ghm_multifilter();
        let p = multilevel_paired(&[7.0; 64], &ghm, 3).unwrap();
        for d in &p.details {
            assert!(d.iter().all(|s| s.amax() < 1e-12));
        }
    }

    fn signal(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1000.0f64..1000.0, len)
    }

    proptest! {
        #[test]
        fn vectorize_inverse(x in (1usize..64).prop_flat_map(|n| signal(2 * n))) {
            prop_assert_eq!(devectorize(&vectorize(&x).unwrap()), x);
        }

        #[test]
        fn linearity(
            (x, y) in (4usize..32).prop_flat_map(|n| (signal(4 * n), signal(4 * n))),
            alpha in -10.0f64..10.0,
            beta in -10.0f64..10.0,
        ) {
            let bank = ghm_multifilter();
            let mixed: Vec<f64> = x.iter().zip(&y).map(|(a, b)| alpha * a + beta * b).collect();
            let cx = analyze_vec(&vectorize(&x).unwrap(), &bank).unwrap();
            let cy = analyze_vec(&vectorize(&y).unwrap(), &bank).unwrap();
            let cm = analyze_vec(&vectorize(&mixed).unwrap(), &bank).unwrap();
            let scale = mixed.iter().fold(1f64, |m, v| m.max(v.abs()));
            for n in 0..cm.approx.len() {
                let a = alpha * cx.approx[n] + beta * cy.approx[n];
                let d = alpha * cx.detail[n] + beta * cy.detail[n];
                prop_assert!((cm.approx[n] - a).amax() <= 1e-12 * scale);
                prop_assert!((cm.detail[n] - d).amax() <= 1e-12 * scale);
            }
        }

        #[test]
        fn scalar_roundtrip(x in (4usize..64).prop_flat_map(|n| signal(2 * n))) {
            for f in [haar_scalar(), db4_scalar()] {
                let c = analyze_scalar(&x, &f).unwrap();
                let back = synthesize_scalar(&c, &f).unwrap();
                for (a, b) in x.iter().zip(&back) {
                    prop_assert!((a - b).abs() <= 1e-10);
                }
            }
        }
    }
}
