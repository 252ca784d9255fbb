use alloc::vec::Vec;

use crate::crypto::Step;
use crate::{Error, Result};

/// Empirical entropy of a binary source, in bits per symbol.
pub fn shannon_entropy_binary(bits: &[bool]) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::Degenerate("entropy of an empty sequence"));
    }
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    Ok([ones / n, (n - ones) / n]
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log2(p))
        .sum())
}

/// Pearson correlation with population moments (divide by `N`).
pub fn pearson_corr(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Degenerate("sequences differ in length"));
    }
    if xs.len() < 2 {
        return Err(Error::Degenerate("need at least two samples"));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let (mut cov, mut var_x, mut var_y) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::Degenerate("zero variance"));
    }
    Ok((cov / libm::sqrt(var_x * var_y)).clamp(-1.0, 1.0))
}

/// Percent saved: `(1 - out/in) * 100`. Negative when the output is longer.
pub fn compression_rate(in_bits: usize, out_bits: usize) -> f64 {
    assert!(in_bits > 0, "compression rate of an empty input");
    (1.0 - out_bits as f64 / in_bits as f64) * 100.0
}

pub fn state_visit_histogram(trace: &[Step], state_count: usize) -> Vec<u64> {
    let mut counts = alloc::vec![0u64; state_count];
    for step in trace {
        counts[step.state] += 1;
    }
    counts
}
