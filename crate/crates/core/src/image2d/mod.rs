//! Separable multilevel 2D decomposition with an in-place subband layout.
//!
//! Each level transforms every row, then every column, of the current
//! low-low region. Scalar filters split an axis into `[L | H]`; matrix banks
//! split it into `[L1 | L2 | H1 | H2]`, so one level yields 4 or 16
//! sub-blocks. The next level works on the full low-low region (all `L×L`
//! blocks), which halves in each dimension.

pub mod container;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::wavelet::Wavelet;

/// Declared maximum sample value of an image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Peak {
    /// 8-bit data, peak 255.
    Eight,
    /// 16-bit data, peak 65535.
    Sixteen,
}

impl Peak {
    pub fn value(self) -> f64 {
        self.maxval() as f64
    }

    pub fn maxval(self) -> u32 {
        match self {
            Peak::Eight => 255,
            Peak::Sixteen => 65535,
        }
    }

    pub fn from_maxval(v: u32) -> Option<Peak> {
        match v {
            255 => Some(Peak::Eight),
            65535 => Some(Peak::Sixteen),
            _ => None,
        }
    }
}

/// Row-major grayscale raster.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    samples: Vec<f64>,
    peak: Peak,
}

impl ImageBuffer {
    pub fn new(width: usize, height: usize, samples: Vec<f64>, peak: Peak) -> Result<Self> {
        if width.checked_mul(height) != Some(samples.len()) {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} needs {} samples, got {}",
                width.saturating_mul(height),
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidImage(format!("sample {i} is not finite")));
        }
        Ok(ImageBuffer {
            width,
            height,
            samples,
            peak,
        })
    }

    pub fn zeros(width: usize, height: usize, peak: Peak) -> Self {
        ImageBuffer {
            width,
            height,
            samples: vec![0.0; width * height],
            peak,
        }
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        peak: Peak,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::new(width, height, samples, peak)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn peak(&self) -> Peak {
        self.peak
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.samples[y * self.width + x]
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Rounds half away from zero and clamps to `[0, peak]`, returning the
    /// quantized image and the number of samples that had to be clamped.
    pub fn quantized(&self) -> (ImageBuffer, usize) {
        let peak = self.peak.value();
        let mut clamped = 0;
        let samples = self
            .samples
            .iter()
            .map(|v| {
                let r = v.round();
                if r < 0.0 {
                    clamped += 1;
                    0.0
                } else if r > peak {
                    clamped += 1;
                    peak
                } else {
                    r
                }
            })
            .collect();
        (
            ImageBuffer {
                width: self.width,
                height: self.height,
                samples,
                peak: self.peak,
            },
            clamped,
        )
    }

    /// Drops a trailing row and/or column so both dimensions are even.
    pub fn crop_even(&self) -> ImageBuffer {
        let (w, h) = (self.width & !1, self.height & !1);
        if (w, h) == (self.width, self.height) {
            return self.clone();
        }
        let mut samples = Vec::with_capacity(w * h);
        for row in self.samples.chunks(self.width.max(1)).take(h) {
            samples.extend_from_slice(&row[..w]);
        }
        ImageBuffer {
            width: w,
            height: h,
            samples,
            peak: self.peak,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Band {
    Low,
    High,
}

/// Filter channel along one axis. `component` is 0 for scalar filters and
/// 1 or 2 for the vector components of a matrix bank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Channel {
    pub band: Band,
    pub component: u8,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.band {
            Band::Low => 'L',
            Band::High => 'H',
        };
        if self.component == 0 {
            write!(f, "{b}")
        } else {
            write!(f, "{b}{}", self.component)
        }
    }
}

/// One rectangular sub-block of the coefficient plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubbandBlock {
    pub level: usize,
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
    /// Channel along rows (x axis).
    pub horizontal: Channel,
    /// Channel along columns (y axis).
    pub vertical: Channel,
}

impl SubbandBlock {
    /// Label such as `HL` (scalar) or `H1L2` (matrix), horizontal first.
    pub fn label(&self) -> String {
        format!("{}{}", self.horizontal, self.vertical)
    }

    pub fn is_detail(&self) -> bool {
        !(self.horizontal.band == Band::Low && self.vertical.band == Band::Low)
    }

    fn contains(&self, x: usize, y: usize) -> bool {
        (self.x..self.x + self.width).contains(&x) && (self.y..self.y + self.height).contains(&y)
    }
}

/// Per-level description of every sub-block in a pyramid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelMap {
    blocks: Vec<SubbandBlock>,
}

fn axis_segments(size: usize, r: usize) -> Vec<(Channel, usize, usize)> {
    if r == 1 {
        let half = size / 2;
        vec![
            (
                Channel {
                    band: Band::Low,
                    component: 0,
                },
                0,
                half,
            ),
            (
                Channel {
                    band: Band::High,
                    component: 0,
                },
                half,
                half,
            ),
        ]
    } else {
        let q = size / 4;
        vec![
            (
                Channel {
                    band: Band::Low,
                    component: 1,
                },
                0,
                q,
            ),
            (
                Channel {
                    band: Band::Low,
                    component: 2,
                },
                q,
                q,
            ),
            (
                Channel {
                    band: Band::High,
                    component: 1,
                },
                2 * q,
                q,
            ),
            (
                Channel {
                    band: Band::High,
                    component: 2,
                },
                3 * q,
                q,
            ),
        ]
    }
}

impl ChannelMap {
    pub fn build(width: usize, height: usize, levels: usize, r: usize) -> ChannelMap {
        let mut blocks = Vec::new();
        for level in 1..=levels {
            let (w, h) = (width >> (level - 1), height >> (level - 1));
            for (vertical, y, bh) in axis_segments(h, r) {
                for (horizontal, x, bw) in axis_segments(w, r) {
                    let block = SubbandBlock {
                        level,
                        x,
                        y,
                        width: bw,
                        height: bh,
                        horizontal,
                        vertical,
                    };
                    if block.is_detail() || level == levels {
                        blocks.push(block);
                    }
                }
            }
        }
        ChannelMap { blocks }
    }

    pub fn blocks(&self) -> &[SubbandBlock] {
        &self.blocks
    }

    pub fn block_at(&self, x: usize, y: usize) -> Option<&SubbandBlock> {
        self.blocks.iter().find(|b| b.contains(x, y))
    }

    /// One line per block: `level label x y width height`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("channel-map v1\n");
        for b in &self.blocks {
            out.push_str(&format!(
                "{} {} {} {} {} {}\n",
                b.level,
                b.label(),
                b.x,
                b.y,
                b.width,
                b.height
            ));
        }
        out
    }
}

/// Multilevel coefficient plane plus its layout description.
#[derive(Clone, Debug, PartialEq)]
pub struct SubbandPyramid {
    filter: String,
    r: usize,
    width: usize,
    height: usize,
    levels: usize,
    peak: Peak,
    plane: Vec<f64>,
    channel_map: ChannelMap,
}

impl SubbandPyramid {
    pub fn from_parts(
        filter: impl Into<String>,
        r: usize,
        width: usize,
        height: usize,
        levels: usize,
        peak: Peak,
        plane: Vec<f64>,
    ) -> Result<Self> {
        if r != 1 && r != 2 {
            return Err(Error::Layout(format!("multiplicity {r} is not 1 or 2")));
        }
        if levels == 0 {
            return Err(Error::ZeroLevels);
        }
        if levels > 48 {
            return Err(Error::Layout(format!(
                "{levels} levels is not a plausible pyramid"
            )));
        }
        if width.checked_mul(height) != Some(plane.len()) {
            return Err(Error::Layout(format!(
                "{width}x{height} plane needs {} coefficients, got {}",
                width.saturating_mul(height),
                plane.len()
            )));
        }
        let unit = if r == 1 { 2usize } else { 4 };
        let divisor = unit << (levels - 1);
        if !width.is_multiple_of(divisor) || !height.is_multiple_of(divisor) {
            return Err(Error::Layout(format!(
                "{width}x{height} cannot hold {levels} levels at multiplicity {r}"
            )));
        }
        Ok(SubbandPyramid {
            filter: filter.into(),
            r,
            width,
            height,
            levels,
            peak,
            plane,
            channel_map: ChannelMap::build(width, height, levels, r),
        })
    }

    pub fn filter(&self) -> &str {
        &self.filter
    }

    pub fn multiplicity(&self) -> usize {
        self.r
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn peak(&self) -> Peak {
        self.peak
    }

    pub fn plane(&self) -> &[f64] {
        &self.plane
    }

    pub fn plane_mut(&mut self) -> &mut [f64] {
        &mut self.plane
    }

    pub fn channel_map(&self) -> &ChannelMap {
        &self.channel_map
    }

    pub fn block(&self, b: &SubbandBlock) -> Vec<f64> {
        let mut out = Vec::with_capacity(b.width * b.height);
        for y in b.y..b.y + b.height {
            out.extend_from_slice(
                &self.plane[y * self.width + b.x..y * self.width + b.x + b.width],
            );
        }
        out
    }

    /// Reorders a matrix-bank plane into the layout the parent scalar filter
    /// would produce: within each band, component 1 holds the even and
    /// component 2 the odd scalar coefficients. Scalar planes are returned
    /// unchanged.
    pub fn to_scalar_layout(&self) -> Vec<f64> {
        if self.r == 1 {
            return self.plane.clone();
        }
        let mut out = vec![0.0; self.plane.len()];
        let position = |c: Channel, offset: usize, region: usize| -> usize {
            let start = match c.band {
                Band::Low => 0,
                Band::High => region / 2,
            };
            start + 2 * offset + (c.component as usize - 1)
        };
        for b in self.channel_map.blocks() {
            let (rw, rh) = (self.width >> (b.level - 1), self.height >> (b.level - 1));
            for y in b.y..b.y + b.height {
                let sy = position(b.vertical, y - b.y, rh);
                for x in b.x..b.x + b.width {
                    let sx = position(b.horizontal, x - b.x, rw);
                    out[sy * self.width + sx] = self.plane[y * self.width + x];
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AxisOrder {
    RowsFirst,
    #[cfg_attr(not(test), allow(dead_code))]
    ColumnsFirst,
}

fn transform_rows(
    plane: &mut [f64],
    stride: usize,
    w: usize,
    h: usize,
    f: impl Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
) -> Result<()> {
    plane.par_chunks_mut(stride).take(h).try_for_each(|row| {
        let mut out = vec![0.0; w];
        f(&row[..w], &mut out)?;
        row[..w].copy_from_slice(&out);
        Ok(())
    })
}

fn transform_columns(
    plane: &mut [f64],
    stride: usize,
    w: usize,
    h: usize,
    f: impl Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
) -> Result<()> {
    let source: &[f64] = plane;
    let columns = (0..w)
        .into_par_iter()
        .map(|x| {
            let column: Vec<f64> = (0..h).map(|y| source[y * stride + x]).collect();
            let mut out = vec![0.0; h];
            f(&column, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    for (x, column) in columns.iter().enumerate() {
        for (y, v) in column.iter().enumerate() {
            plane[y * stride + x] = *v;
        }
    }
    Ok(())
}

fn forward_level(
    plane: &mut [f64],
    stride: usize,
    level: usize,
    region: (usize, usize),
    wavelet: &Wavelet,
    order: AxisOrder,
) -> Result<()> {
    let (w, h) = region;
    let first = level == 1;
    let line = |i: &[f64], o: &mut [f64]| wavelet.forward_line(i, first, o);
    match order {
        AxisOrder::RowsFirst => {
            transform_rows(plane, stride, w, h, line)?;
            transform_columns(plane, stride, w, h, line)
        }
        AxisOrder::ColumnsFirst => {
            transform_columns(plane, stride, w, h, line)?;
            transform_rows(plane, stride, w, h, line)
        }
    }
}

fn feasible_levels(wavelet: &Wavelet, width: usize, height: usize) -> usize {
    wavelet.max_levels(width).min(wavelet.max_levels(height))
}

fn decompose_with(
    img: &ImageBuffer,
    wavelet: &Wavelet,
    levels: usize,
    order: AxisOrder,
) -> Result<SubbandPyramid> {
    if levels == 0 {
        return Err(Error::ZeroLevels);
    }
    let (width, height) = (img.width(), img.height());
    let max = feasible_levels(wavelet, width, height);
    if levels > max {
        return Err(Error::TooManyLevels {
            requested: levels,
            max,
            size: format!("{width}x{height}"),
            filter: wavelet.name().to_string(),
        });
    }
    let mut plane = img.samples().to_vec();
    for level in 1..=levels {
        let region = (width >> (level - 1), height >> (level - 1));
        forward_level(&mut plane, width, level, region, wavelet, order)?;
    }
    SubbandPyramid::from_parts(
        wavelet.name(),
        wavelet.multiplicity(),
        width,
        height,
        levels,
        img.peak(),
        plane,
    )
}

/// Decomposes `img` into `levels` levels of subbands.
pub fn decompose2d(img: &ImageBuffer, wavelet: &Wavelet, levels: usize) -> Result<SubbandPyramid> {
    decompose_with(img, wavelet, levels, AxisOrder::RowsFirst)
}

/// Inverts [`decompose2d`]. The pyramid must have been built with `wavelet`.
pub fn reconstruct2d(pyr: &SubbandPyramid, wavelet: &Wavelet) -> Result<ImageBuffer> {
    if pyr.filter() != wavelet.name() {
        return Err(Error::FilterMismatch {
            expected: wavelet.name().to_string(),
            found: pyr.filter().to_string(),
        });
    }
    if pyr.multiplicity() != wavelet.multiplicity() {
        return Err(Error::Layout(format!(
            "pyramid multiplicity {} does not match '{}'",
            pyr.multiplicity(),
            wavelet.name()
        )));
    }
    let (width, height) = (pyr.width(), pyr.height());
    let max = feasible_levels(wavelet, width, height);
    if pyr.levels() > max {
        return Err(Error::Layout(format!(
            "{} levels recorded but '{}' supports at most {max} on {width}x{height}",
            pyr.levels(),
            wavelet.name()
        )));
    }
    let mut plane = pyr.plane().to_vec();
    for level in (1..=pyr.levels()).rev() {
        let (w, h) = (width >> (level - 1), height >> (level - 1));
        let first = level == 1;
        let line = |i: &[f64], o: &mut [f64]| wavelet.inverse_line(i, first, o);
        transform_columns(&mut plane, width, w, h, line)?;
        transform_rows(&mut plane, width, w, h, line)?;
    }
    ImageBuffer::new(width, height, plane, pyr.peak())
}

/// Copy of `pyr` with every detail block of levels `1..=keep_levels` zeroed.
pub fn approx_only(pyr: &SubbandPyramid, keep_levels: usize) -> Result<SubbandPyramid> {
    if keep_levels == 0 || keep_levels > pyr.levels() {
        return Err(Error::KeepLevels {
            keep: keep_levels,
            levels: pyr.levels(),
        });
    }
    let mut out = pyr.clone();
    let width = out.width;
    for b in pyr.channel_map.blocks() {
        if b.is_detail() && b.level <= keep_levels {
            for y in b.y..b.y + b.height {
                out.plane[y * width + b.x..y * width + b.x + b.width].fill(0.0);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::energy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(w: usize, h: usize, seed: u64) -> ImageBuffer {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ImageBuffer::from_fn(w, h, Peak::Sixteen, |_, _| rng.random_range(0.0..65535.0)).unwrap()
    }

    fn wavelet(name: &str) -> Wavelet {
        Wavelet::from_name(name).unwrap()
    }

    #[test]
    fn constant_haar_one_level() {
        let img = ImageBuffer::from_fn(8, 8, Peak::Eight, |_, _| 5.0).unwrap();
        let pyr = decompose2d(&img, &wavelet("haar"), 1).unwrap();
        for y in 0..8 {
            for x in 0..8 {
                let v = pyr.plane()[y * 8 + x];
                if x < 4 && y < 4 {
                    assert!((v - 10.0).abs() < 1e-13);
                } else {
                    assert_eq!(v, 0.0);
                }
            }
        }
    }

    #[test]
    fn parseval_ghm_16() {
        let img = random_image(16, 16, 1);
        let pyr = decompose2d(&img, &wavelet("ghm"), 2).unwrap();
        let (e0, e1) = (energy(img.samples()), energy(pyr.plane()));
        assert!((e0 - e1).abs() <= 1e-9 * e0);
    }

    #[test]
    fn block_counts_and_tiling() {
        for (name, count) in [("haar", 7), ("ghm", 28)] {
            let pyr = decompose2d(&random_image(32, 16, 2), &wavelet(name), 2).unwrap();
            let blocks = pyr.channel_map().blocks();
            assert_eq!(blocks.len(), count);
            let mut cover = vec![0u8; 32 * 16];
            for b in blocks {
                for y in b.y..b.y + b.height {
                    for x in b.x..b.x + b.width {
                        cover[y * 32 + x] += 1;
                    }
                }
            }
            assert!(cover.iter().all(|&c| c == 1), "{name}");
        }
    }

    #[test]
    fn sixteen_blocks_per_multi_level() {
        let map = ChannelMap::build(16, 16, 1, 2);
        assert_eq!(map.blocks().len(), 16);
        let labels: Vec<String> = map.blocks().iter().take(4).map(|b| b.label()).collect();
        assert_eq!(labels, ["L1L1", "L2L1", "H1L1", "H2L1"]);
        let map = ChannelMap::build(16, 16, 2, 1);
        let labels: Vec<String> = map.blocks().iter().map(|b| b.label()).collect();
        assert_eq!(labels, ["HL", "LH", "HH", "LL", "HL", "LH", "HH"]);
    }

    #[test]
    fn roundtrip_all_banks() {
        let img = random_image(64, 64, 3);
        for w in Wavelet::all() {
            let pyr = decompose2d(&img, &w, 3).unwrap();
            let back = reconstruct2d(&pyr, &w).unwrap();
            for (a, b) in img.samples().iter().zip(back.samples()) {
                assert!((a - b).abs() <= 1e-9 * 65535.0, "{}", w.name());
            }
        }
    }

    #[test]
    fn zero_pyramid() {
        let w = wavelet("db4-multi");
        let pyr = decompose2d(&ImageBuffer::zeros(16, 16, Peak::Eight), &w, 1).unwrap();
        let back = reconstruct2d(&pyr, &w).unwrap();
        assert!(back.samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_image_survives_truncation() {
        let img = ImageBuffer::from_fn(32, 32, Peak::Sixteen, |_, _| 1234.0).unwrap();
        for w in Wavelet::all() {
            let pyr = decompose2d(&img, &w, 2).unwrap();
            assert_eq!(
                approx_only(&pyr, 2).unwrap().plane().len(),
                pyr.plane().len()
            );
            let back = reconstruct2d(&approx_only(&pyr, 2).unwrap(), &w).unwrap();
            for v in back.samples() {
                assert!((v - 1234.0).abs() < 1e-9, "{}: {v}", w.name());
            }
        }
    }

    #[test]
    fn approx_only_bounds() {
        let pyr = decompose2d(&random_image(16, 16, 4), &wavelet("haar"), 2).unwrap();
        assert!(matches!(
            approx_only(&pyr, 0),
            Err(Error::KeepLevels { keep: 0, levels: 2 })
        ));
        assert!(matches!(
            approx_only(&pyr, 3),
            Err(Error::KeepLevels { .. })
        ));
        let trimmed = approx_only(&pyr, 1).unwrap();
        let ll = &pyr.channel_map().blocks().last().unwrap();
        assert_eq!(trimmed.block(ll), pyr.block(ll));
    }

    #[test]
    fn level_errors_name_maximum() {
        let img = random_image(24, 16, 5);
        let err = decompose2d(&img, &wavelet("haar"), 4)
            .unwrap_err()
            .to_string();
        assert!(err.contains("maximum feasible is 3"), "{err}");
        let odd = random_image(15, 16, 5);
        assert!(decompose2d(&odd, &wavelet("haar"), 1).is_err());
    }

    #[test]
    fn reconstruct_rejects_other_filter() {
        let pyr = decompose2d(&random_image(16, 16, 6), &wavelet("haar"), 1).unwrap();
        assert!(matches!(
            reconstruct2d(&pyr, &wavelet("db4")),
            Err(Error::FilterMismatch { .. })
        ));
    }

    #[test]
    fn axis_order_commutes() {
        let img = random_image(32, 32, 7);
        for w in Wavelet::all() {
            let a = decompose_with(&img, &w, 2, AxisOrder::RowsFirst).unwrap();
            let b = decompose_with(&img, &w, 2, AxisOrder::ColumnsFirst).unwrap();
            let worst = a
                .plane()
                .iter()
                .zip(b.plane())
                .map(|(x, y)| (x - y).abs())
                .fold(0f64, f64::max);
            assert!(worst <= 1e-12 * 65535.0, "{}: {worst}", w.name());
        }
    }

    #[test]
    fn multi_layout_is_permuted_scalar_layout() {
        let img = random_image(32, 32, 8);
        for (multi, scalar) in [("haar-multi", "haar"), ("db4-multi", "db4")] {
            for levels in 1..=3 {
                let m = decompose2d(&img, &wavelet(multi), levels).unwrap();
                let s = decompose2d(&img, &wavelet(scalar), levels).unwrap();
                for (a, b) in m.to_scalar_layout().iter().zip(s.plane()) {
                    assert!((a - b).abs() <= 1e-12 * 65535.0);
                }
            }
        }
    }

    #[test]
    fn crop_and_quantize() {
        let img = ImageBuffer::from_fn(3, 3, Peak::Eight, |x, y| (x + 3 * y) as f64).unwrap();
        let c = img.crop_even();
        assert_eq!((c.width(), c.height()), (2, 2));
        assert_eq!(c.samples(), &[0.0, 1.0, 3.0, 4.0]);

        let noisy = ImageBuffer::new(2, 2, vec![-0.4, 2.5, 255.4, 300.0], Peak::Eight).unwrap();
        let (q, clamped) = noisy.quantized();
        assert_eq!(q.samples(), &[0.0, 3.0, 255.0, 255.0]);
        assert_eq!(clamped, 1);
    }

    #[test]
    fn image_validation() {
        assert!(ImageBuffer::new(2, 2, vec![0.0; 3], Peak::Eight).is_err());
        assert!(ImageBuffer::new(1, 1, vec![f64::NAN], Peak::Eight).is_err());
    }
}
