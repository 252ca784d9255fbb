//! The binary integer arithmetic coder as a finite-state machine.
//!
//! The coder works on the integer interval `[0, 2^N)` with the usual three
//! expansion rules (lower half, upper half, middle half). The middle-half
//! rule defers its output through a follow counter which is capped at
//! `f_max`: once the counter is saturated the rule stops firing and the next
//! symbol is coded with the interval cut at the midpoint, which flushes the
//! pending bits. The set of post-renormalization states `(low, high, follow)`
//! is therefore finite and can be enumerated.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::{Error, Result};

/// Default ceiling on the number of states [`build_full_fsm`] may discover.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

/// Parameters of one codec instance.
///
/// The probability of symbol 0 is `p0_num / 2^n_bits`; the jump probability
/// used by the cipher is `jump_q_num / 256`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoderParams {
    n_bits: u8,
    p0_num: u32,
    f_max: u8,
    jump_q_num: u16,
}

impl CoderParams {
    pub const MIN_BITS: u8 = 3;
    pub const MAX_BITS: u8 = 16;
    pub const MAX_FOLLOW: u8 = 15;
    pub const JUMP_DENOM: u16 = 256;

    pub fn new(n_bits: u8, p0_num: u32, f_max: u8, jump_q_num: u16) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&n_bits) {
            return Err(Error::InvalidParams("N must be in 3..=16"));
        }
        if p0_num == 0 || p0_num >= 1u32 << n_bits {
            return Err(Error::InvalidParams("p0_num must be in 1..2^N"));
        }
        if f_max > Self::MAX_FOLLOW {
            return Err(Error::InvalidParams("Fmax must be in 0..=15"));
        }
        if jump_q_num > Self::JUMP_DENOM {
            return Err(Error::InvalidParams(
                "jump probability numerator must be in 0..=256",
            ));
        }
        Ok(CoderParams {
            n_bits,
            p0_num,
            f_max,
            jump_q_num,
        })
    }

    /// Builds parameters from a real-valued `P(0)`, rounded to the nearest
    /// numerator over `2^n_bits` and clamped to `[1, 2^n_bits - 1]`.
    pub fn with_probability(n_bits: u8, p0: f64, f_max: u8, jump_q_num: u16) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&n_bits) {
            return Err(Error::InvalidParams("N must be in 3..=16"));
        }
        if !(p0 > 0.0 && p0 < 1.0) {
            return Err(Error::InvalidParams(
                "P(0) must lie strictly between 0 and 1",
            ));
        }
        let full = (1u32 << n_bits) as f64;
        let num = libm::round(p0 * full).clamp(1.0, full - 1.0) as u32;
        Self::new(n_bits, num, f_max, jump_q_num)
    }

    pub fn n_bits(&self) -> u8 {
        self.n_bits
    }

    pub fn p0_num(&self) -> u32 {
        self.p0_num
    }

    pub fn f_max(&self) -> u8 {
        self.f_max
    }

    pub fn jump_q_num(&self) -> u16 {
        self.jump_q_num
    }

    pub fn p0(&self) -> f64 {
        self.p0_num as f64 / self.full() as f64
    }

    #[inline]
    pub fn full(&self) -> u32 {
        1 << self.n_bits
    }

    #[inline]
    pub fn half(&self) -> u32 {
        1 << (self.n_bits - 1)
    }

    #[inline]
    pub fn quarter(&self) -> u32 {
        1 << (self.n_bits - 2)
    }
}

/// One post-renormalization encoder state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FullState {
    pub low: u32,
    pub high: u32,
    pub follow: u8,
}

impl FullState {
    pub fn initial(params: &CoderParams) -> Self {
        FullState {
            low: 0,
            high: params.full(),
            follow: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTransition {
    pub from: usize,
    pub symbol: bool,
    pub emitted: Vec<bool>,
    pub to: usize,
}

impl FullTransition {
    pub fn is_mute(&self) -> bool {
        self.emitted.is_empty()
    }
}

/// Every reachable state of the encoder together with its two outgoing
/// transitions. The transition for `(state, symbol)` lives at index
/// `2 * state + symbol`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullMachine {
    pub params: CoderParams,
    pub states: Vec<FullState>,
    pub transitions: Vec<FullTransition>,
}

impl FullMachine {
    pub fn transition(&self, state: usize, symbol: bool) -> &FullTransition {
        &self.transitions[2 * state + symbol as usize]
    }

    pub fn mute_count(&self) -> usize {
        self.transitions.iter().filter(|t| t.is_mute()).count()
    }
}

/// Splits `[low, high)` into `[low, s)` for symbol 0 and `[s, high)` for
/// symbol 1.
pub fn split_interval(low: u32, high: u32, params: &CoderParams) -> Result<u32> {
    if high < low + 2 || high > params.full() {
        return Err(Error::IntervalTooNarrow { low, high });
    }
    Ok(split_unchecked(low, high, params))
}

#[inline]
fn split_unchecked(low: u32, high: u32, params: &CoderParams) -> u32 {
    let width = (high - low) as u64;
    let s = low + ((width * params.p0_num as u64) >> params.n_bits) as u32;
    s.clamp(low + 1, high - 1)
}

/// Split point used when coding from a canonical state. Once the follow
/// counter is saturated the interval is cut at the midpoint instead of in
/// proportion to `P(0)`, so the next symbol is guaranteed to trigger a
/// lower- or upper-half expansion and release the pending follow bits.
#[inline]
pub fn split_for_state(state: FullState, params: &CoderParams) -> u32 {
    if state.follow >= params.f_max {
        params.half()
    } else {
        split_unchecked(state.low, state.high, params)
    }
}

/// Applies the expansion rules until none fires, returning the canonical
/// state and the bits emitted on the way.
pub fn renormalize(state: FullState, params: &CoderParams) -> (FullState, Vec<bool>) {
    let mut out = Vec::new();
    let next = renormalize_into(state, params, &mut out);
    (next, out)
}

/// Like [`renormalize`] but appends the emitted bits to `out`.
pub fn renormalize_into(state: FullState, params: &CoderParams, out: &mut Vec<bool>) -> FullState {
    let (half, quarter) = (params.half(), params.quarter());
    let FullState {
        mut low,
        mut high,
        mut follow,
    } = state;
    loop {
        if high <= half {
            emit_with_follow(out, false, follow);
            follow = 0;
            low *= 2;
            high *= 2;
        } else if low >= half {
            emit_with_follow(out, true, follow);
            follow = 0;
            low = 2 * (low - half);
            high = 2 * (high - half);
        } else if low >= quarter && high <= 3 * quarter && follow < params.f_max {
            follow += 1;
            low = 2 * (low - quarter);
            high = 2 * (high - quarter);
        } else {
            return FullState { low, high, follow };
        }
    }
}

#[inline]
fn emit_with_follow(out: &mut Vec<bool>, bit: bool, follow: u8) {
    out.push(bit);
    out.extend(core::iter::repeat_n(!bit, follow as usize));
}

/// One encoder step from a canonical state: split, select, renormalize.
#[inline]
pub fn step(
    state: FullState,
    symbol: bool,
    params: &CoderParams,
    out: &mut Vec<bool>,
) -> FullState {
    let split = split_for_state(state, params);
    let sub = if symbol {
        FullState {
            low: split,
            ..state
        }
    } else {
        FullState {
            high: split,
            ..state
        }
    };
    renormalize_into(sub, params, out)
}

pub fn build_full_fsm(params: CoderParams) -> Result<FullMachine> {
    build_full_fsm_with_limit(params, DEFAULT_STATE_LIMIT)
}

/// Breadth-first enumeration from `(0, 2^N, 0)`. Symbol 0 is explored before
/// symbol 1, so state indices are deterministic.
pub fn build_full_fsm_with_limit(params: CoderParams, limit: usize) -> Result<FullMachine> {
    let initial = FullState::initial(&params);
    let mut index: BTreeMap<FullState, usize> = BTreeMap::new();
    let mut states = Vec::new();
    let mut transitions = Vec::new();
    let mut queue = VecDeque::new();

    index.insert(initial, 0);
    states.push(initial);
    queue.push_back(0usize);

    while let Some(from) = queue.pop_front() {
        for symbol in [false, true] {
            let mut emitted = Vec::new();
            let next = step(states[from], symbol, &params, &mut emitted);
            let to = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if states.len() >= limit {
                        return Err(Error::StateExplosion {
                            n_bits: params.n_bits,
                            p0_num: params.p0_num,
                            f_max: params.f_max,
                            limit,
                        });
                    }
                    let i = states.len();
                    index.insert(next, i);
                    states.push(next);
                    queue.push_back(i);
                    i
                }
            };
            transitions.push(FullTransition {
                from,
                symbol,
                emitted,
                to,
            });
        }
    }

    Ok(FullMachine {
        params,
        states,
        transitions,
    })
}

/// Streaming encoder. Bits pushed so far are available through
/// [`AcEncoder::output`]; [`AcEncoder::finish`] appends the flush.
#[derive(Debug, Clone)]
pub struct AcEncoder {
    params: CoderParams,
    state: FullState,
    out: Vec<bool>,
}

impl AcEncoder {
    pub fn new(params: CoderParams) -> Self {
        AcEncoder {
            params,
            state: FullState::initial(&params),
            out: Vec::new(),
        }
    }

    pub fn push(&mut self, symbol: bool) {
        self.state = step(self.state, symbol, &self.params, &mut self.out);
    }

    pub fn state(&self) -> FullState {
        self.state
    }

    pub fn output(&self) -> &[bool] {
        &self.out
    }

    pub fn finish(mut self) -> Vec<bool> {
        let follow = self.state.follow + 1;
        let bit = self.state.low >= self.params.quarter();
        self.out.push(bit);
        self.out.extend(core::iter::repeat_n(!bit, follow as usize));
        self.out
    }
}

pub fn ac_encode_stream(bits: &[bool], params: CoderParams) -> Vec<bool> {
    let mut enc = AcEncoder::new(params);
    for &b in bits {
        enc.push(b);
    }
    enc.finish()
}

/// Decodes `n_symbols` bits from `code`. Bits past the end of `code` read as
/// zero, matching the flush convention; decoding fails only if the decoder
/// would need a bit more than `N` positions beyond the end.
pub fn ac_decode_stream(code: &[bool], n_symbols: usize, params: CoderParams) -> Result<Vec<bool>> {
    let (half, quarter) = (params.half(), params.quarter());
    let n = params.n_bits as usize;
    let mut pos = 0usize;
    let next_bit = |pos: &mut usize| -> Result<u32> {
        let b = code.get(*pos).copied().unwrap_or(false);
        *pos += 1;
        if *pos > code.len() + n {
            return Err(Error::TruncatedCode);
        }
        Ok(b as u32)
    };

    let mut value = 0u32;
    for _ in 0..n {
        value = (value << 1) | next_bit(&mut pos)?;
    }
    let FullState {
        mut low,
        mut high,
        mut follow,
    } = FullState::initial(&params);
    let mut out = Vec::with_capacity(n_symbols);
    for _ in 0..n_symbols {
        let split = split_for_state(FullState { low, high, follow }, &params);
        let symbol = value >= split;
        if symbol {
            low = split;
        } else {
            high = split;
        }
        out.push(symbol);
        loop {
            if high <= half {
                follow = 0;
            } else if low >= half {
                follow = 0;
                low -= half;
                high -= half;
                value -= half;
            } else if low >= quarter && high <= 3 * quarter && follow < params.f_max {
                follow += 1;
                low -= quarter;
                high -= quarter;
                value -= quarter;
            } else {
                break;
            }
            low *= 2;
            high *= 2;
            value = (value << 1) | next_bit(&mut pos)?;
        }
    }
    if code.is_empty() && n_symbols > 0 {
        return Err(Error::TruncatedCode);
    }
    Ok(out)
}
