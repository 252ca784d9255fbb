pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(state: u64) -> Self {
        SplitMix64 { state }
    }

    /// Generator for one keyed substream: `seed ^ (tag * GOLDEN_GAMMA)`.
    pub fn substream(seed: u64, tag: u64) -> Self {
        SplitMix64::new(seed ^ tag.wrapping_mul(GOLDEN_GAMMA))
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// True with probability `q_num / 256`.
    #[inline]
    pub fn bernoulli(&mut self, q_num: u16) -> bool {
        ((self.next_u64() >> 56) as u16) < q_num
    }

    /// `next_u64() mod m`. The modulo bias is at most `m / 2^64` and is
    /// accepted.
    #[inline]
    pub fn uniform(&mut self, m: u64) -> u64 {
        assert!(m >= 1, "uniform draw needs a nonempty range");
        self.next_u64() % m
    }

    /// Uniform real in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// The three keyed substreams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Substream {
    /// K1: whether to jump.
    Jump = 1,
    /// K2: jump target.
    Target = 2,
    /// K3: swap position.
    Swap = 3,
}

/// The secret schedule shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeySchedule {
    seed: u64,
    jump_q_num: u16,
    jump: SplitMix64,
    target: SplitMix64,
    swap: SplitMix64,
}

impl KeySchedule {
    pub fn new(seed: u64, jump_q_num: u16) -> Self {
        KeySchedule {
            seed,
            jump_q_num,
            jump: SplitMix64::substream(seed, Substream::Jump as u64),
            target: SplitMix64::substream(seed, Substream::Target as u64),
            swap: SplitMix64::substream(seed, Substream::Swap as u64),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn jump_q_num(&self) -> u16 {
        self.jump_q_num
    }

    /// Flips one bit of a single substream's generator state, leaving the
    /// other two untouched. Used for key-sensitivity experiments.
    pub fn with_flipped_bit(mut self, stream: Substream, bit: u32) -> Self {
        let g = match stream {
            Substream::Jump => &mut self.jump,
            Substream::Target => &mut self.target,
            Substream::Swap => &mut self.swap,
        };
        *g = SplitMix64::new(g.state() ^ (1u64 << (bit % 64)));
        self
    }

    pub(crate) fn streams(&mut self) -> (&mut SplitMix64, &mut SplitMix64, &mut SplitMix64) {
        (&mut self.jump, &mut self.target, &mut self.swap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substream_init() {
        assert_eq!(SplitMix64::substream(0, 1).state(), 0x9E37_79B9_7F4A_7C15);
        for s in [0u64, 1, 0xDEAD_BEEF, u64::MAX] {
            assert_ne!(SplitMix64::substream(s, 1), SplitMix64::substream(s, 2));
            assert_ne!(SplitMix64::substream(s, 2), SplitMix64::substream(s, 3));
        }
    }

    #[test]
    fn first_output_from_zero_state() {
        assert_eq!(SplitMix64::new(0).next_u64(), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn equal_states_give_equal_streams() {
        let mut a = SplitMix64::substream(42, 3);
        let mut b = SplitMix64::substream(42, 3);
        assert!((0..10_000).all(|_| a.next_u64() == b.next_u64()));
    }

    #[test]
    fn draw_edges() {
        let mut g = SplitMix64::new(7);
        assert!((0..1000).all(|_| !g.bernoulli(0)));
        assert!((0..1000).all(|_| g.bernoulli(256)));
        assert!((0..1000).all(|_| g.uniform(1) == 0));
        let hits = (0..100_000).filter(|_| g.bernoulli(128)).count();
        assert!((hits as f64 / 1e5 - 0.5).abs() < 0.01, "{hits}");
    }

    #[test]
    fn flipping_one_stream_leaves_the_others() {
        let base = KeySchedule::new(99, 128);
        let mut flipped = base.clone().with_flipped_bit(Substream::Target, 5);
        let mut base = base;
        let (bj, bt, bs) = base.streams();
        let (fj, ft, fs) = flipped.streams();
        assert_eq!(bj, fj);
        assert_eq!(bs, fs);
        assert_eq!(bt.state() ^ ft.state(), 1 << 5);
    }
}
