//! Frequency, block-frequency and runs tests in the NIST SP 800-22 form.

use crate::{Error, Result};

const MIN_BITS: usize = 100;

pub fn monobit(bits: &[bool]) -> Result<f64> {
    need(bits, MIN_BITS)?;
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let s = libm::fabs(2.0 * ones - n);
    Ok(libm::erfc(s / libm::sqrt(2.0 * n)))
}

/// Chi-square over the one-fraction of `n / m` non-overlapping blocks.
pub fn block_frequency(bits: &[bool], m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::Degenerate("block length must be positive"));
    }
    need(bits, m.max(MIN_BITS))?;
    let blocks = bits.len() / m;
    let chi: f64 = bits
        .chunks_exact(m)
        .map(|block| {
            let pi = block.iter().filter(|&&b| b).count() as f64 / m as f64;
            (pi - 0.5) * (pi - 0.5)
        })
        .sum::<f64>()
        * 4.0
        * m as f64;
    Ok(igamc(blocks as f64 / 2.0, chi / 2.0))
}

/// Runs test. Returns 0 when the frequency prerequisite
/// `|pi - 1/2| < 2 / sqrt(n)` fails.
pub fn runs(bits: &[bool]) -> Result<f64> {
    need(bits, MIN_BITS)?;
    let n = bits.len() as f64;
    let pi = bits.iter().filter(|&&b| b).count() as f64 / n;
    if libm::fabs(pi - 0.5) >= 2.0 / libm::sqrt(n) {
        return Ok(0.0);
    }
    let v = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let spread = 2.0 * n * pi * (1.0 - pi);
    let num = libm::fabs(v as f64 - spread);
    Ok(libm::erfc(
        num / (2.0 * libm::sqrt(2.0 * n) * pi * (1.0 - pi)),
    ))
}

fn need(bits: &[bool], needed: usize) -> Result<()> {
    if bits.len() < needed {
        return Err(Error::TooShort {
            needed,
            got: bits.len(),
        });
    }
    Ok(())
}

/// p-values of the three implemented tests, block length 128.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomnessSummary {
    pub monobit: f64,
    pub block_frequency: f64,
    pub runs: f64,
}

impl RandomnessSummary {
    pub const BLOCK_LEN: usize = 128;

    pub fn of(bits: &[bool]) -> Result<Self> {
        Ok(RandomnessSummary {
            monobit: monobit(bits)?,
            block_frequency: block_frequency(bits, Self::BLOCK_LEN)?,
            runs: runs(bits)?,
        })
    }

    pub fn passes(&self, alpha: f64) -> bool {
        self.monobit >= alpha && self.block_frequency >= alpha && self.runs >= alpha
    }
}

/// Regularized upper incomplete gamma function `Q(a, x)`.
pub fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 || a <= 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        return 1.0 - igam_series(a, x);
    }
    // Lentz continued fraction.
    const TINY: f64 = 1e-300;
    let log_prefix = a * libm::log(x) - x - libm::lgamma(a);
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if libm::fabs(delta - 1.0) < 1e-15 {
            break;
        }
    }
    libm::exp(log_prefix) * h
}

/// Regularized lower incomplete gamma `P(a, x)` by its power series.
fn igam_series(a: f64, x: f64) -> f64 {
    let log_prefix = a * libm::log(x) - x - libm::lgamma(a);
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..10_000 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if libm::fabs(term) < libm::fabs(sum) * 1e-16 {
            break;
        }
    }
    sum * libm::exp(log_prefix)
}
