use alloc::vec::Vec;

use super::image::{
    adjacent_pair_count, adjacent_pixel_corr, cipher_image, histogram, histogram_chi_square, npcr,
    uaci, Direction, GrayImage,
};
use super::randomness::RandomnessSummary;
use super::stats::{compression_rate, pearson_corr, shannon_entropy_binary, state_visit_histogram};
use crate::bits::unpack_msb;
use crate::crypto::{encrypt, KeySchedule, SplitMix64, Substream};
use crate::fsm::{ac_encode_stream, build_full_fsm, CoderParams};
use crate::huffman::{attach_tables, hfac_encode, HfsacCodec};
use crate::reduce::{fsac_encode, reduce};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub seed: u64,
    /// Seed of the substream that places the correlation samples.
    pub sampling_seed: u64,
    pub pairs: usize,
    /// Plaintext bit flipped for the NPCR/UACI experiment.
    pub flip_bit: usize,
    /// Generator-state bit flipped for the key-sensitivity experiments.
    pub key_flip_bit: u32,
}

impl AnalysisConfig {
    pub const DEFAULT_SAMPLING_SEED: u64 = 0x5EED_A11A_1515;
    pub const DEFAULT_PAIRS: usize = 8192;

    pub fn new(seed: u64) -> Self {
        AnalysisConfig {
            seed,
            sampling_seed: Self::DEFAULT_SAMPLING_SEED,
            pairs: Self::DEFAULT_PAIRS,
            flip_bit: 0,
            key_flip_bit: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple {
    pub horizontal: f64,
    pub vertical: f64,
    pub diagonal: f64,
}

impl CorrelationTriple {
    pub fn max_abs(&self) -> f64 {
        libm::fmax(
            libm::fabs(self.horizontal),
            libm::fmax(libm::fabs(self.vertical), libm::fabs(self.diagonal)),
        )
    }

    /// Samples `pairs` per direction, or every pair if the image is smaller.
    fn measure(img: &GrayImage, pairs: usize, gen: &mut SplitMix64) -> Result<Self> {
        let mut corr = |d| adjacent_pixel_corr(img, d, pairs.min(adjacent_pair_count(img, d)), gen);
        Ok(CorrelationTriple {
            horizontal: corr(Direction::Horizontal)?,
            vertical: corr(Direction::Vertical)?,
            diagonal: corr(Direction::Diagonal)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub plain_bits: usize,
    pub cipher_bits: usize,
    pub entropy: f64,
    pub randomness: RandomnessSummary,
    pub plain_corr: CorrelationTriple,
    pub cipher_corr: CorrelationTriple,
    pub npcr: f64,
    pub uaci: f64,
    pub plain_histogram: [u64; 256],
    pub cipher_histogram: [u64; 256],
    /// Chi-square statistic and p-value of the cipher histogram.
    pub cipher_chi_square: (f64, f64),
    /// Cipher-to-cipher bit correlations after flipping one generator bit of
    /// the jump stream, the target stream, and both.
    pub key_corr: [(&'static str, f64); 3],
    pub state_visits: Vec<u64>,
    /// `(codec variant, percent)` over the plaintext bits.
    pub compression: Vec<(&'static str, f64)>,
}

/// Runs the full metric suite on one image.
pub fn analyze(
    plain: &GrayImage,
    codec: &HfsacCodec,
    config: &AnalysisConfig,
) -> Result<MetricsReport> {
    let params = *codec.machine().params();
    let q = params.jump_q_num();
    let (w, h) = (plain.width(), plain.height());
    let plain_bits = unpack_msb(plain.pixels());
    if plain_bits.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }

    let schedule = KeySchedule::new(config.seed, q);
    let (cipher, trace) = encrypt(&plain_bits, codec, schedule.clone());
    let cipher_img = cipher_image(&cipher, w, h);

    let mut sampler = SplitMix64::substream(config.sampling_seed, Substream::Swap as u64);
    let plain_corr = CorrelationTriple::measure(plain, config.pairs, &mut sampler)?;
    let cipher_corr = CorrelationTriple::measure(&cipher_img, config.pairs, &mut sampler)?;

    let mut flipped = plain_bits.clone();
    let flip = config.flip_bit % flipped.len();
    flipped[flip] = !flipped[flip];
    let (cipher2, _) = encrypt(&flipped, codec, schedule.clone());
    let cipher2_img = cipher_image(&cipher2, w, h);

    let bit = config.key_flip_bit;
    let scenarios = [
        (
            "K1",
            schedule.clone().with_flipped_bit(Substream::Jump, bit),
        ),
        (
            "K2",
            schedule.clone().with_flipped_bit(Substream::Target, bit),
        ),
        (
            "K1+K2",
            schedule
                .clone()
                .with_flipped_bit(Substream::Jump, bit)
                .with_flipped_bit(Substream::Target, bit),
        ),
    ];
    let mut key_corr = [("", 0.0); 3];
    for (slot, (label, ks)) in key_corr.iter_mut().zip(scenarios) {
        let (other, _) = encrypt(&plain_bits, codec, ks);
        *slot = (label, bit_correlation(&cipher, &other)?);
    }

    let cipher_histogram = histogram(&cipher_img);
    let rm = codec.machine();
    let ac_params = CoderParams::new(params.n_bits(), params.p0_num(), CoderParams::MAX_FOLLOW, q)?;
    let n = plain_bits.len();
    let compression = alloc::vec![
        (
            "AC",
            compression_rate(n, ac_encode_stream(&plain_bits, ac_params).len())
        ),
        (
            "FSAC",
            compression_rate(n, fsac_encode(&plain_bits, rm).len())
        ),
        (
            "HFAC",
            compression_rate(n, hfac_encode(&plain_bits, codec).len())
        ),
        ("HFSAC", compression_rate(n, cipher.len())),
    ];

    Ok(MetricsReport {
        plain_bits: n,
        cipher_bits: cipher.len(),
        entropy: shannon_entropy_binary(&cipher)?,
        randomness: RandomnessSummary::of(&cipher)?,
        plain_corr,
        cipher_corr,
        npcr: npcr(&cipher_img, &cipher2_img)?,
        uaci: uaci(&cipher_img, &cipher2_img)?,
        plain_histogram: histogram(plain),
        cipher_histogram,
        cipher_chi_square: histogram_chi_square(&cipher_histogram),
        key_corr,
        state_visits: state_visit_histogram(&trace, codec.state_count()),
        compression,
    })
}

/// Pearson correlation of two bit streams over their common prefix.
pub(crate) fn bit_correlation(a: &[bool], b: &[bool]) -> Result<f64> {
    let n = a.len().min(b.len());
    let to_f = |s: &[bool]| s[..n].iter().map(|&x| x as u8 as f64).collect::<Vec<_>>();
    pearson_corr(&to_f(a), &to_f(b))
}

/// `count` i.i.d. bits with `P(0) = p0`, drawn from a seeded splitmix64.
pub fn iid_bits(count: usize, p0: f64, seed: u64) -> Vec<bool> {
    let mut g = SplitMix64::new(seed);
    (0..count).map(|_| g.unit_f64() >= p0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub p0: f64,
    pub states: usize,
    pub ac: f64,
    pub fsac: f64,
    pub hfac: f64,
}

/// Compression rates of the three coders on `bits` i.i.d. symbols. The AC
/// column uses the widest follow counter, standing in for an unconstrained
/// integer coder.
pub fn bench_row(n_bits: u8, f_max: u8, p0: f64, bits: usize, seed: u64) -> Result<BenchRow> {
    let params = CoderParams::with_probability(n_bits, p0, f_max, 0)?;
    let ac_params = CoderParams::new(n_bits, params.p0_num(), CoderParams::MAX_FOLLOW, 0)?;
    let codec = attach_tables(reduce(&build_full_fsm(params)?)?);
    let input = iid_bits(bits, p0, seed);
    let n = input.len().max(1);
    Ok(BenchRow {
        p0,
        states: codec.state_count(),
        ac: compression_rate(n, ac_encode_stream(&input, ac_params).len()),
        fsac: compression_rate(n, fsac_encode(&input, codec.machine()).len()),
        hfac: compression_rate(n, hfac_encode(&input, &codec).len()),
    })
}
