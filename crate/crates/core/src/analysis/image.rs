use alloc::vec::Vec;

use super::randomness::igamc;
use super::stats::pearson_corr;
use crate::bits::pack_msb;
use crate::crypto::SplitMix64;
use crate::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch);
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (1, 0),
            Direction::Vertical => (0, 1),
            Direction::Diagonal => (1, 1),
        }
    }
}

/// Number of pixel/neighbor pairs the image holds in `direction`.
pub fn adjacent_pair_count(img: &GrayImage, direction: Direction) -> usize {
    let (dx, dy) = direction.offset();
    img.width.saturating_sub(dx) * img.height.saturating_sub(dy)
}

/// Correlation of `pairs` distinct, randomly placed pixel/neighbor pairs.
pub fn adjacent_pixel_corr(
    img: &GrayImage,
    direction: Direction,
    pairs: usize,
    gen: &mut SplitMix64,
) -> Result<f64> {
    let (dx, dy) = direction.offset();
    let cols = img.width.saturating_sub(dx);
    let available = adjacent_pair_count(img, direction);
    if pairs > available {
        return Err(Error::TooShort {
            needed: pairs,
            got: available,
        });
    }
    // Partial Fisher-Yates over the admissible anchor positions.
    let mut anchors: Vec<u32> = (0..available as u32).collect();
    let mut xs = Vec::with_capacity(pairs);
    let mut ys = Vec::with_capacity(pairs);
    for i in 0..pairs {
        let j = i + gen.uniform((available - i) as u64) as usize;
        anchors.swap(i, j);
        let a = anchors[i] as usize;
        let (x, y) = (a % cols, a / cols);
        xs.push(img.get(x, y) as f64);
        ys.push(img.get(x + dx, y + dy) as f64);
    }
    pearson_corr(&xs, &ys)
}

/// Percentage of positions at which the two images differ.
pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    same_dims(c1, c2)?;
    let differ = c1
        .pixels
        .iter()
        .zip(&c2.pixels)
        .filter(|(a, b)| a != b)
        .count();
    Ok(100.0 * differ as f64 / c1.pixels.len() as f64)
}

/// Mean absolute pixel difference as a percentage of 255.
pub fn uaci(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    same_dims(c1, c2)?;
    let total: u64 = c1
        .pixels
        .iter()
        .zip(&c2.pixels)
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum();
    Ok(100.0 * total as f64 / (255.0 * c1.pixels.len() as f64))
}

fn same_dims(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if a.width != b.width || a.height != b.height || a.pixels.is_empty() {
        return Err(Error::DimensionMismatch);
    }
    Ok(())
}

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in &img.pixels {
        counts[p as usize] += 1;
    }
    counts
}

/// Chi-square statistic of a histogram against the uniform distribution,
/// with its p-value (255 degrees of freedom for 256 bins).
pub fn histogram_chi_square(counts: &[u64]) -> (f64, f64) {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = (counts.len() - 1) as f64;
    (stat, igamc(df / 2.0, stat / 2.0))
}

/// Lays cipher bits out as a `width x height` image: bits are packed
/// most-significant first, then the bytes are tiled cyclically or truncated
/// to fill exactly `width * height` pixels. An empty stream gives a black
/// image.
pub fn cipher_image(bits: &[bool], width: usize, height: usize) -> GrayImage {
    let bytes = pack_msb(bits);
    let n = width * height;
    let pixels = if bytes.is_empty() {
        alloc::vec![0u8; n]
    } else {
        bytes.iter().copied().cycle().take(n).collect()
    };
    GrayImage {
        width,
        height,
        pixels,
    }
}
