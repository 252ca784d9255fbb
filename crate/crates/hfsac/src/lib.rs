//! File formats and command-line surface for the HFSAC codec.
//!
//! - [`container`]: the self-describing cipher container.
//! - [`pgm`]: binary 8-bit P5 images.
//! - [`key`]: 64-bit hex keys.
//! - [`report`]: text/CSV rendering of tables, benchmarks and metrics.
//! - [`cli`]: the `hfsac` subcommands.

pub mod cli;
pub mod container;
pub mod key;
pub mod pgm;
pub mod report;
pub mod selftest;
pub mod testimage;

use hfsac_core::fsm::{build_full_fsm, CoderParams};
use hfsac_core::huffman::attach_tables;
use hfsac_core::reduce::reduce;
use hfsac_core::HfsacCodec;

/// Builds the full codec (machine, reduction, code tables) for `params`.
pub fn build_codec(params: CoderParams) -> hfsac_core::Result<HfsacCodec> {
    Ok(attach_tables(reduce(&build_full_fsm(params)?)?))
}
