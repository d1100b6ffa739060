//! Deterministic synthetic plate images for benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::image2d::{ImageBuffer, Peak};

/// Parameters of a synthetic 16-bit star field.
#[derive(Clone, Debug)]
pub struct StarField {
    pub width: usize,
    pub height: usize,
    pub stars: usize,
    /// Standard deviation of additive plate grain, in counts.
    pub grain: f64,
    pub seed: u64,
}

impl StarField {
    pub fn new(width: usize, height: usize, seed: u64) -> Self {
        StarField {
            width,
            height,
            stars: (width * height / 1024).max(4),
            grain: 12.0,
            seed,
        }
    }

    /// Renders Gaussian stars on a smooth sky background, rounded to
    /// integer counts in `[0, 65535]`.
    pub fn render(&self) -> ImageBuffer {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (w, h) = (self.width as f64, self.height as f64);
        let stars: Vec<(f64, f64, f64, f64)> = (0..self.stars)
            .map(|_| {
                let amplitude = 10f64.powf(rng.random_range(2.5..4.6));
                let sigma = rng.random_range(0.7..2.5) * (amplitude / 4000.0).powf(0.15);
                (
                    rng.random_range(0.0..w),
                    rng.random_range(0.0..h),
                    amplitude,
                    sigma,
                )
            })
            .collect();
        let grain = Normal::new(0.0, self.grain.max(f64::MIN_POSITIVE)).expect("finite grain");

        let mut samples = vec![0.0; self.width * self.height];
        for (i, s) in samples.iter_mut().enumerate() {
            let (x, y) = ((i % self.width) as f64, (i / self.width) as f64);
            let (u, v) = (x / w - 0.5, y / h - 0.5);
            *s = 3000.0 + 900.0 * u - 400.0 * v - 1500.0 * (u * u + v * v);
        }
        for &(cx, cy, amplitude, sigma) in &stars {
            let reach = (4.0 * sigma).ceil() as isize;
            let (ix, iy) = (cx as isize, cy as isize);
            for y in (iy - reach).max(0)..(iy + reach + 1).min(self.height as isize) {
                for x in (ix - reach).max(0)..(ix + reach + 1).min(self.width as isize) {
                    let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
                    let r2 = (dx * dx + dy * dy) / (2.0 * sigma * sigma);
                    samples[y as usize * self.width + x as usize] += amplitude * (-r2).exp();
                }
            }
        }
        if self.grain > 0.0 {
            for s in samples.iter_mut() {
                *s += grain.sample(&mut rng);
            }
        }
        for s in samples.iter_mut() {
            *s = s.round().clamp(0.0, 65535.0);
        }
        ImageBuffer::new(self.width, self.height, samples, Peak::Sixteen).expect("finite samples")
    }
}

/// 16-bit star field with default density and grain.
pub fn star_field(width: usize, height: usize, seed: u64) -> ImageBuffer {
    StarField::new(width, height, seed).render()
}
