//! Statistical-security and compression metrics.

mod image;
mod randomness;
mod report;
mod stats;

pub use image::{
    adjacent_pair_count, adjacent_pixel_corr, cipher_image, histogram, histogram_chi_square, npcr,
    uaci, Direction, GrayImage,
};
pub use randomness::{block_frequency, igamc, monobit, runs, RandomnessSummary};
pub use report::{
    analyze, bench_row, iid_bits, AnalysisConfig, BenchRow, CorrelationTriple, MetricsReport,
};
pub use stats::{compression_rate, pearson_corr, shannon_entropy_binary, state_visit_histogram};
