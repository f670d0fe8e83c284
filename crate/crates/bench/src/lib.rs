//! Criterion benchmarks for `neurofilter-core`; see `benches/`.
//!
//! Shared fixtures live here so both bench targets draw the same inputs.

use neurofilter_core::{add_gaussian_noise, Image, NoiseSpec};

/// Smooth gradient with a few hard edges plus Gaussian noise (variance 0.02).
pub fn noisy_scene(width: usize, height: usize) -> Image {
    let clean = Image::from_fn(width, height, |x, y| {
        let base = 0.2 + 0.5 * (x + y) as f64 / (width + height) as f64;
        if (x / 32 + y / 24) % 3 == 0 {
            base + 0.3
        } else {
            base
        }
    })
    .expect("dimensions are positive");
    add_gaussian_noise(&clean, &NoiseSpec::new(0.02, 7).expect("valid variance"))
}
