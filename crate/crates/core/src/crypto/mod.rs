//! Keyed layer: state jumps (K1, K2) and codeword swaps (K3).
//!
//! The keystream is a splitmix64 recurrence. It is chosen for bit-exact
//! reproducibility across implementations and is **not** a cryptographically
//! secure generator.

mod cipher;
mod keyspace;
mod keystream;

pub use cipher::{decrypt, encrypt, KeyStream, Step, StepTrace};
pub use keyspace::{keyspace_bits, KeyspaceMode};
pub use keystream::{KeySchedule, SplitMix64, Substream, GOLDEN_GAMMA};
