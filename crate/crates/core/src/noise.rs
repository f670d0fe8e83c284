//! Seeded additive Gaussian noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::{Error, Image, Result};

/// Zero-mean by default; `variance` is in normalized intensity² units, so
/// a noise rate of 0.02 is `sigma = sqrt(0.02)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub variance: f64,
    pub mean: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(variance: f64, seed: u64) -> Result<Self> {
        if !(variance >= 0.0 && variance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "noise variance {variance} must be >= 0"
            )));
        }
        Ok(Self {
            variance,
            mean: 0.0,
            seed,
        })
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Raw (unclamped) perturbations for a `width × height` grid.
///
/// Each row draws from its own ChaCha stream keyed by `(seed, row)`, so the
/// field does not depend on how rows are scheduled across threads.
pub fn noise_field(width: usize, height: usize, spec: &NoiseSpec) -> Vec<f64> {
    let mut out = vec![spec.mean; width * height];
    if spec.variance == 0.0 || width == 0 {
        return out;
    }
    let normal = Normal::new(spec.mean, spec.std_dev()).expect("finite, non-negative std dev");
    out.par_chunks_mut(width).enumerate().for_each(|(y, row)| {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(y as u64);
        for v in row {
            *v = normal.sample(&mut rng);
        }
    });
    out
}

/// Adds seeded Gaussian noise and clamps the result into `[0, 1]`.
pub fn add_gaussian_noise(img: &Image, spec: &NoiseSpec) -> Image {
    if spec.variance == 0.0 && spec.mean == 0.0 {
        return img.clone();
    }
    let field = noise_field(img.width(), img.height(), spec);
    let data = img
        .data()
        .iter()
        .zip(field)
        .map(|(&p, n)| (p + n).clamp(0.0, 1.0))
        .collect();
    Image::from_raw(img.width(), img.height(), data)
}
