//! Per-state Huffman output tables.
//!
//! The arithmetic outputs of a reduced state are not prefix-free, so a
//! decoder that loses the state sequence cannot resynchronize. Each state's
//! outputs are replaced by a Huffman code designed for the weights
//! `2^-len(output)`, which keeps every step independently parseable.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::reduce::ReducedMachine;
use crate::trie::{PrefixTrie, Walk};
use crate::{Error, Result};

/// Exact heuristic weights of one state: `numerators[i] / denominator`,
/// proportional to `2^-len(output_i)` and summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicWeights {
    pub numerators: Vec<u64>,
    pub denominator: u64,
}

impl HeuristicWeights {
    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&n| n as f64 / self.denominator as f64)
            .collect()
    }
}

pub fn heuristic_weights(rm: &ReducedMachine, state: usize) -> HeuristicWeights {
    weights_from_lengths(rm.transitions_of(state).iter().map(|t| t.output_bits.len()))
}

pub fn weights_from_lengths(lengths: impl IntoIterator<Item = usize>) -> HeuristicWeights {
    let lengths: Vec<usize> = lengths.into_iter().collect();
    let max = lengths.iter().copied().max().unwrap_or(0);
    let numerators: Vec<u64> = lengths.iter().map(|&l| 1u64 << (max - l)).collect();
    let denominator = numerators.iter().sum();
    HeuristicWeights {
        numerators,
        denominator,
    }
}

/// Huffman code lengths for integer weights.
///
/// The two lightest nodes are merged first. Equal weights are ordered with
/// leaves before merged nodes, then by the smallest symbol index the node
/// contains.
pub fn huffman_lengths(weights: &[u64]) -> Vec<usize> {
    let n = weights.len();
    if n == 1 {
        return alloc::vec![1];
    }
    let mut parent = alloc::vec![usize::MAX; 2 * n - 1];
    let mut heap: BinaryHeap<Reverse<(u64, bool, usize, usize)>> = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| Reverse((w, false, i, i)))
        .collect();
    let mut next = n;
    while heap.len() > 1 {
        let Reverse((wa, _, ma, a)) = heap.pop().unwrap();
        let Reverse((wb, _, mb, b)) = heap.pop().unwrap();
        parent[a] = next;
        parent[b] = next;
        heap.push(Reverse((wa + wb, true, ma.min(mb), next)));
        next += 1;
    }
    (0..n)
        .map(|leaf| {
            let mut depth = 0;
            let mut node = leaf;
            while parent[node] != usize::MAX {
                node = parent[node];
                depth += 1;
            }
            depth
        })
        .collect()
}

/// Canonical codewords for the given lengths: entries sorted by
/// `(length, index)` receive lexicographically increasing codewords.
pub fn canonical_codewords(lengths: &[usize]) -> Vec<Vec<bool>> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let mut codes = alloc::vec![Vec::new(); lengths.len()];
    let mut code: Vec<bool> = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 {
            increment(&mut code);
        }
        code.resize(lengths[i], false);
        codes[i] = code.clone();
    }
    codes
}

fn increment(code: &mut [bool]) {
    for bit in code.iter_mut().rev() {
        *bit = !*bit;
        if *bit {
            return;
        }
    }
}

pub fn build_state_code(weights: &[u64]) -> Vec<Vec<bool>> {
    canonical_codewords(&huffman_lengths(weights))
}

/// Complements every bit of `code` at index `pos` or later.
pub fn swap_codeword(code: &[bool], pos: usize) -> Vec<bool> {
    code.iter()
        .enumerate()
        .map(|(i, &b)| b ^ (i >= pos))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCodeTable {
    pub state: usize,
    /// `(global transition index, codeword)` in transition order.
    pub entries: Vec<(usize, Vec<bool>)>,
    pub max_len: usize,
}

/// A reduced machine whose outputs are per-state Huffman codewords.
#[derive(Debug, Clone)]
pub struct HfsacCodec {
    rm: ReducedMachine,
    tables: Vec<StateCodeTable>,
    codewords: Vec<Vec<bool>>,
    decoders: Vec<PrefixTrie>,
}

pub fn attach_tables(rm: ReducedMachine) -> HfsacCodec {
    let tables: Vec<StateCodeTable> = (0..rm.state_count())
        .map(|state| {
            let weights = heuristic_weights(&rm, state);
            let codes = build_state_code(&weights.numerators);
            let max_len = codes.iter().map(Vec::len).max().unwrap_or(0);
            StateCodeTable {
                state,
                entries: rm.transition_range(state).zip(codes).collect(),
                max_len,
            }
        })
        .collect();
    HfsacCodec::from_tables(rm, tables)
}

impl HfsacCodec {
    /// Pairs a machine with explicit tables. Panics if a table is not
    /// prefix-free; use [`attach_tables`] for the derived ones.
    pub fn from_tables(rm: ReducedMachine, tables: Vec<StateCodeTable>) -> Self {
        let mut codewords = alloc::vec![Vec::new(); rm.transitions().len()];
        for table in &tables {
            for (t, code) in &table.entries {
                codewords[*t] = code.clone();
            }
        }
        let decoders = tables
            .iter()
            .map(|table| {
                PrefixTrie::build(table.entries.iter().map(|(t, c)| (&c[..], *t as u32)))
                    .expect("state code table must be prefix-free")
            })
            .collect();
        HfsacCodec {
            rm,
            tables,
            codewords,
            decoders,
        }
    }

    pub fn machine(&self) -> &ReducedMachine {
        &self.rm
    }

    pub fn state_count(&self) -> usize {
        self.rm.state_count()
    }

    pub fn tables(&self) -> &[StateCodeTable] {
        &self.tables
    }

    pub fn max_len(&self, state: usize) -> usize {
        self.tables[state].max_len
    }

    pub fn codeword(&self, transition: usize) -> &[bool] {
        &self.codewords[transition]
    }

    /// Reads one codeword of `state` from `code[pos..]`, with bits at
    /// codeword index `swap_pos` or later complemented before matching.
    /// Returns the transition index and the position after the codeword, or
    /// `None` if `code` ends mid-codeword.
    pub(crate) fn read_codeword(
        &self,
        state: usize,
        code: &[bool],
        pos: usize,
        swap_pos: usize,
    ) -> Option<(usize, usize)> {
        let trie = &self.decoders[state];
        let mut node = PrefixTrie::ROOT;
        let mut at = pos;
        loop {
            let bit = *code.get(at)? ^ (at - pos >= swap_pos);
            at += 1;
            match trie.walk(node, bit) {
                Walk::Inner(n) => node = n,
                Walk::Leaf(t) => return Some((t as usize, at)),
                // Complete codes have no dead branches; a hand-built
                // incomplete table can still end up here.
                Walk::Dead => return None,
            }
        }
    }
}

pub fn hfac_encode(bits: &[bool], codec: &HfsacCodec) -> Vec<bool> {
    hfac_encode_traced(bits, codec).0
}

/// Like [`hfac_encode`] but also returns the state in which each block was
/// consumed.
pub fn hfac_encode_traced(bits: &[bool], codec: &HfsacCodec) -> (Vec<bool>, Vec<usize>) {
    let rm = codec.machine();
    let mut out = Vec::new();
    let mut states = Vec::new();
    let mut state = 0usize;
    let mut pos = 0usize;
    while pos < bits.len() {
        let (t, next) = rm
            .match_block(state, bits, pos)
            .expect("reduced machine has complete prefix-free input blocks");
        states.push(state);
        out.extend_from_slice(codec.codeword(t));
        state = rm.transitions()[t].to;
        pos = next;
    }
    (out, states)
}

pub fn hfac_decode(code: &[bool], codec: &HfsacCodec, n_bits: usize) -> Result<Vec<bool>> {
    let rm = codec.machine();
    let mut out = Vec::with_capacity(n_bits);
    let mut state = 0usize;
    let mut pos = 0usize;
    while pos < code.len() {
        let (t, next) = codec
            .read_codeword(state, code, pos, usize::MAX)
            .ok_or(Error::CorruptStream)?;
        let t = &rm.transitions()[t];
        out.extend_from_slice(&t.input_block);
        state = t.to;
        pos = next;
    }
    if out.len() < n_bits {
        return Err(Error::CorruptStream);
    }
    out.truncate(n_bits);
    Ok(out)
}
