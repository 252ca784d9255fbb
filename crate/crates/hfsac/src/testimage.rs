//! Deterministic synthetic grayscale image with natural-image-like
//! neighbour correlation, for analysis runs without an external file.

use hfsac_core::analysis::GrayImage;
use hfsac_core::crypto::SplitMix64;

/// Smooth low-frequency field plus mild uniform noise in `[-4, 4]`.
pub fn synthetic(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut noise = SplitMix64::new(seed);
    GrayImage::from_fn(width, height, |x, y| {
        let (xf, yf) = (x as f64, y as f64);
        let smooth = 120.0
            + 55.0 * (xf / 23.0).sin() * (yf / 31.0).cos()
            + 35.0 * ((xf + 2.0 * yf) / 57.0).sin();
        let jitter = noise.uniform(9) as f64 - 4.0;
        (smooth + jitter).round().clamp(0.0, 255.0) as u8
    })
}
