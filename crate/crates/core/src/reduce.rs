//! Mute-transition elimination.
//!
//! A mute transition emits nothing, so it is folded forward into the
//! transitions of its target: `s --b/-> s'` together with `s' --bi/oi-> ti`
//! becomes `s --b·bi/oi-> ti`. After folding, states that were only reachable
//! through mute transitions drop out and the survivors are renumbered
//! breadth-first from the initial state. Each state's input blocks form a
//! complete prefix-free set, so any input parses uniquely into blocks.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::fsm::{CoderParams, FullMachine, FullState};
use crate::trie::{PrefixTrie, Walk};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedTransition {
    pub from: usize,
    pub input_block: Vec<bool>,
    pub output_bits: Vec<bool>,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMachine {
    params: CoderParams,
    transitions: Vec<ReducedTransition>,
    /// `offsets[s]..offsets[s + 1]` indexes the transitions leaving `s`.
    offsets: Vec<usize>,
    origin: Vec<FullState>,
    input_tries: Vec<Option<PrefixTrie>>,
}

impl ReducedMachine {
    /// Assembles a machine from raw transitions without checking any of the
    /// structural invariants; see [`validate_reduced`]. Transitions are
    /// regrouped by `from` with their relative order kept.
    pub fn from_parts(
        params: CoderParams,
        mut transitions: Vec<ReducedTransition>,
        origin: Vec<FullState>,
    ) -> Self {
        let state_count = origin.len();
        transitions.sort_by_key(|t| t.from);
        let mut offsets = alloc::vec![0usize; state_count + 1];
        for t in &transitions {
            offsets[t.from + 1] += 1;
        }
        for s in 0..state_count {
            offsets[s + 1] += offsets[s];
        }
        let input_tries = (0..state_count)
            .map(|s| {
                let range = offsets[s]..offsets[s + 1];
                PrefixTrie::build(
                    transitions[range.clone()]
                        .iter()
                        .zip(range)
                        .map(|(t, i)| (&t.input_block[..], i as u32)),
                )
            })
            .collect();
        ReducedMachine {
            params,
            transitions,
            offsets,
            origin,
            input_tries,
        }
    }

    pub fn params(&self) -> &CoderParams {
        &self.params
    }

    pub fn state_count(&self) -> usize {
        self.origin.len()
    }

    pub fn transitions(&self) -> &[ReducedTransition] {
        &self.transitions
    }

    pub fn transition_range(&self, state: usize) -> core::ops::Range<usize> {
        self.offsets[state]..self.offsets[state + 1]
    }

    pub fn transitions_of(&self, state: usize) -> &[ReducedTransition] {
        &self.transitions[self.transition_range(state)]
    }

    /// The full-machine state each reduced state came from.
    pub fn origin(&self) -> &[FullState] {
        &self.origin
    }

    /// Finds the input block of `state` that prefixes `input[pos..]`, reading
    /// zeros past the end of `input`. Returns the global transition index and
    /// the position after the block, which exceeds `input.len()` when padding
    /// was needed. Returns `None` if the state's blocks do not form a
    /// complete prefix-free set.
    pub fn match_block(&self, state: usize, input: &[bool], pos: usize) -> Option<(usize, usize)> {
        let trie = self.input_tries[state].as_ref()?;
        let mut node = PrefixTrie::ROOT;
        let mut at = pos;
        loop {
            let bit = input.get(at).copied().unwrap_or(false);
            at += 1;
            match trie.walk(node, bit) {
                Walk::Inner(n) => node = n,
                Walk::Leaf(t) => return Some((t as usize, at)),
                Walk::Dead => return None,
            }
        }
    }
}

/// Longest mute chain a well-formed machine can produce. Each mute step
/// shrinks the interval by at least one unit and at most `Fmax` middle
/// expansions double it back, so a chain stays below `(Fmax + 1) * 2^N`.
pub fn mute_depth_bound(params: &CoderParams) -> usize {
    let n = params.n_bits() as usize;
    let f = params.f_max() as usize;
    (4 * n + f).max((f + 1) << n)
}

/// Folds every mute transition of `machine` into its successors.
pub fn reduce(machine: &FullMachine) -> Result<ReducedMachine> {
    let params = machine.params;
    let max_depth = mute_depth_bound(&params);

    // Emitting paths out of each full state that is the target of an
    // emitting path, discovered breadth-first from the initial state.
    let mut reduced_id = alloc::vec![usize::MAX; machine.states.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    reduced_id[0] = 0;
    order.push(0usize);
    queue.push_back(0usize);

    let mut transitions = Vec::new();
    while let Some(full) = queue.pop_front() {
        let from = reduced_id[full];
        let start = transitions.len();
        expand(machine, full, max_depth, &mut transitions)?;
        for t in &mut transitions[start..] {
            let target: &mut ReducedTransition = t;
            target.from = from;
            if reduced_id[target.to] == usize::MAX {
                reduced_id[target.to] = order.len();
                order.push(target.to);
                queue.push_back(target.to);
            }
        }
    }
    for t in &mut transitions {
        t.to = reduced_id[t.to];
    }
    let origin = order.iter().map(|&i| machine.states[i]).collect();
    Ok(ReducedMachine::from_parts(params, transitions, origin))
}

/// Depth-first walk over mute chains from `root`; symbol 0 first, so blocks
/// come out in lexicographic order. Emitted transitions temporarily carry
/// the full-state index in `to`.
fn expand(
    machine: &FullMachine,
    root: usize,
    max_depth: usize,
    out: &mut Vec<ReducedTransition>,
) -> Result<()> {
    let mut block = Vec::new();
    // (full state, next symbol to try; 2 = both done)
    let mut stack = alloc::vec![(root, 0u8)];
    while let Some(top) = stack.last_mut() {
        let (state, next) = *top;
        if next == 2 {
            stack.pop();
            block.pop();
            continue;
        }
        top.1 += 1;
        let symbol = next == 1;
        let t = machine.transition(state, symbol);
        block.push(symbol);
        if !t.is_mute() {
            out.push(ReducedTransition {
                from: 0,
                input_block: block.clone(),
                output_bits: t.emitted.clone(),
                to: t.to,
            });
            block.pop();
        } else if block.len() >= max_depth {
            return Err(Error::NonEmittingCycle { state: root });
        } else {
            stack.push((t.to, 0));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCheck {
    pub state: usize,
    pub prefix_free: bool,
    /// Kraft sum of the input blocks equals one exactly.
    pub kraft_complete: bool,
    pub reachable: bool,
    pub enough_transitions: bool,
    pub emitting: bool,
}

impl StateCheck {
    pub fn passed(&self) -> bool {
        self.prefix_free
            && self.kraft_complete
            && self.reachable
            && self.enough_transitions
            && self.emitting
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub states: Vec<StateCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.states.iter().all(StateCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StateCheck> {
        self.states.iter().filter(|s| !s.passed())
    }
}

pub fn validate_reduced(rm: &ReducedMachine) -> ValidationReport {
    let n = rm.state_count();
    let mut reachable = alloc::vec![false; n];
    if n > 0 {
        let mut stack = alloc::vec![0usize];
        reachable[0] = true;
        while let Some(s) = stack.pop() {
            for t in rm.transitions_of(s) {
                if t.to < n && !reachable[t.to] {
                    reachable[t.to] = true;
                    stack.push(t.to);
                }
            }
        }
    }
    let states = (0..n)
        .map(|s| {
            let ts = rm.transitions_of(s);
            let blocks: Vec<&[bool]> = ts.iter().map(|t| &t.input_block[..]).collect();
            StateCheck {
                state: s,
                prefix_free: is_prefix_free(&blocks),
                kraft_complete: kraft_sum_is_one(blocks.iter().map(|b| b.len())),
                reachable: reachable[s],
                enough_transitions: ts.len() >= 2,
                emitting: ts.iter().all(|t| !t.output_bits.is_empty()),
            }
        })
        .collect();
    ValidationReport { states }
}

/// True when no word is a prefix of another (and none is empty).
pub fn is_prefix_free(words: &[&[bool]]) -> bool {
    let mut sorted: Vec<&[bool]> = words.to_vec();
    sorted.sort();
    sorted.first().is_none_or(|w| !w.is_empty())
        && sorted.windows(2).all(|w| !w[1].starts_with(w[0]))
}

/// Exact test of `sum 2^-len == 1` for any lengths, by carrying pairs of
/// equal-length words up one level.
pub fn kraft_sum_is_one(lengths: impl IntoIterator<Item = usize>) -> bool {
    let mut counts: Vec<u64> = Vec::new();
    for l in lengths {
        if counts.len() <= l {
            counts.resize(l + 1, 0);
        }
        counts[l] += 1;
    }
    for l in (1..counts.len()).rev() {
        if counts[l] % 2 == 1 {
            return false;
        }
        counts[l - 1] += counts[l] / 2;
    }
    counts.first() == Some(&1)
}

/// Compresses `bits` through the reduced machine from state 0, zero-padding
/// the final block.
pub fn fsac_encode(bits: &[bool], rm: &ReducedMachine) -> Vec<bool> {
    let mut out = Vec::new();
    let mut state = 0usize;
    let mut pos = 0usize;
    while pos < bits.len() {
        let (t, next) = rm
            .match_block(state, bits, pos)
            .expect("reduced machine has complete prefix-free input blocks");
        let t = &rm.transitions()[t];
        out.extend_from_slice(&t.output_bits);
        state = t.to;
        pos = next;
    }
    out
}
