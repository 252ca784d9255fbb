//! Finite-state arithmetic coding with per-state Huffman outputs and keyed
//! state jumps.
//!
//! The pipeline is built bottom-up:
//!
//! - [`fsm`] enumerates every reachable state of a binary integer arithmetic
//!   encoder and provides a streaming reference encoder/decoder.
//! - [`reduce`] folds mute (non-emitting) transitions into their successors
//!   so that every transition consumes a block of input and emits bits.
//! - [`huffman`] replaces each state's arithmetic outputs with a prefix-free
//!   code, which keeps the output parseable after arbitrary state changes.
//! - [`crypto`] drives state jumps and codeword swaps from a keyed stream.
//! - [`analysis`] holds the statistical and compression metrics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bits;
pub mod crypto;
mod error;
pub mod fsm;
pub mod huffman;
pub mod reduce;
mod trie;

pub use error::{Error, Result};
pub use fsm::{CoderParams, FullMachine, FullState};
pub use huffman::HfsacCodec;
pub use reduce::ReducedMachine;
