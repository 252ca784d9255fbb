use alloc::vec::Vec;

use super::keystream::KeySchedule;
use crate::huffman::{swap_codeword, HfsacCodec};
use crate::{Error, Result};

/// Source of the per-step key material.
///
/// Each step draws exactly: one jump decision, a target state only when the
/// step jumps, then one swap position. Encoder and decoder call these in the
/// same order, so they stay synchronized.
pub trait KeyStream {
    /// K1: whether this step jumps. Drawn on every step, including the first
    /// (which jumps regardless of the draw).
    fn jump(&mut self) -> bool;
    /// K2 reduced to `[0, state_count)`.
    fn target(&mut self, state_count: usize) -> usize;
    /// K3 in `[0, max_len]`; `max_len` leaves every codeword unchanged.
    fn swap_pos(&mut self, max_len: usize) -> usize;
}

impl KeyStream for KeySchedule {
    fn jump(&mut self) -> bool {
        let q = self.jump_q_num();
        self.streams().0.bernoulli(q)
    }

    fn target(&mut self, state_count: usize) -> usize {
        self.streams().1.uniform(state_count as u64) as usize
    }

    fn swap_pos(&mut self, max_len: usize) -> usize {
        self.streams().2.uniform(max_len as u64 + 1) as usize
    }
}

impl<K: KeyStream + ?Sized> KeyStream for &mut K {
    fn jump(&mut self) -> bool {
        (**self).jump()
    }

    fn target(&mut self, state_count: usize) -> usize {
        (**self).target(state_count)
    }

    fn swap_pos(&mut self, max_len: usize) -> usize {
        (**self).swap_pos(max_len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub jumped: bool,
    pub state: usize,
    pub transition: usize,
    pub swap_pos: usize,
}

pub type StepTrace = Vec<Step>;

/// Resolves the state and swap position of step `index`.
#[inline]
fn next_keys<K: KeyStream>(
    ks: &mut K,
    codec: &HfsacCodec,
    index: usize,
    carried: usize,
) -> (bool, usize, usize) {
    let jumped = ks.jump() || index == 0;
    let state = if jumped {
        ks.target(codec.state_count())
    } else {
        carried
    };
    let swap = ks.swap_pos(codec.max_len(state));
    (jumped, state, swap)
}

pub fn encrypt<K: KeyStream>(
    plain: &[bool],
    codec: &HfsacCodec,
    mut ks: K,
) -> (Vec<bool>, StepTrace) {
    let rm = codec.machine();
    let mut cipher = Vec::with_capacity(plain.len());
    let mut trace = Vec::new();
    let mut carried = 0usize;
    let mut pos = 0usize;
    while pos < plain.len() {
        let (jumped, state, swap_pos) = next_keys(&mut ks, codec, trace.len(), carried);
        let (transition, next) = rm
            .match_block(state, plain, pos)
            .expect("reduced machine has complete prefix-free input blocks");
        cipher.extend(swap_codeword(codec.codeword(transition), swap_pos));
        trace.push(Step {
            jumped,
            state,
            transition,
            swap_pos,
        });
        carried = rm.transitions()[transition].to;
        pos = next;
    }
    (cipher, trace)
}

pub fn decrypt<K: KeyStream>(
    cipher: &[bool],
    codec: &HfsacCodec,
    mut ks: K,
    n_bits: usize,
) -> Result<Vec<bool>> {
    let rm = codec.machine();
    let mut plain = Vec::with_capacity(n_bits + 64);
    let mut carried = 0usize;
    let mut pos = 0usize;
    let mut index = 0usize;
    while plain.len() < n_bits {
        let (_, state, swap_pos) = next_keys(&mut ks, codec, index, carried);
        let (transition, next) = codec
            .read_codeword(state, cipher, pos, swap_pos)
            .ok_or(Error::TruncatedStream)?;
        let t = &rm.transitions()[transition];
        plain.extend_from_slice(&t.input_block);
        carried = t.to;
        pos = next;
        index += 1;
    }
    if pos != cipher.len() {
        return Err(Error::WrongKey);
    }
    plain.truncate(n_bits);
    Ok(plain)
}
