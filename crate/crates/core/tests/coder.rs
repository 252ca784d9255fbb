use hfsac_core::analysis::iid_bits;
use hfsac_core::fsm::{
    ac_decode_stream, ac_encode_stream, build_full_fsm, renormalize, AcEncoder, CoderParams,
    FullState,
};
use hfsac_core::reduce::{fsac_encode, reduce, ReducedMachine};
use proptest::prelude::*;

fn params(n: u8, p0: u32, f: u8) -> CoderParams {
    CoderParams::new(n, p0, f, 0).unwrap()
}

fn all_inputs(max_len: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..=max_len)
        .flat_map(|len| (0u32..1 << len).map(move |v| (0..len).map(|i| v >> i & 1 == 1).collect()))
}

/// AC output body (no flush) after feeding `bits` and then zeros until a
/// step emits, which is where a reduced block must end.
fn ac_body_to_boundary(bits: &[bool], p: CoderParams) -> Vec<bool> {
    let mut enc = AcEncoder::new(p);
    let mut emitted_last = true;
    for &b in bits {
        let before = enc.output().len();
        enc.push(b);
        emitted_last = enc.output().len() > before;
    }
    while !emitted_last {
        let before = enc.output().len();
        enc.push(false);
        emitted_last = enc.output().len() > before;
    }
    enc.output().to_vec()
}

/// Output of walking the unreduced machine symbol by symbol, padding with
/// zeros until an emitting transition.
fn full_machine_walk(bits: &[bool], p: CoderParams) -> Vec<bool> {
    let m = build_full_fsm(p).unwrap();
    let mut state = 0;
    let mut out = Vec::new();
    let mut last_mute = false;
    for &b in bits {
        let t = m.transition(state, b);
        out.extend_from_slice(&t.emitted);
        last_mute = t.is_mute();
        state = t.to;
    }
    while last_mute {
        let t = m.transition(state, false);
        out.extend_from_slice(&t.emitted);
        last_mute = t.is_mute();
        state = t.to;
    }
    out
}

fn reduced(p: CoderParams) -> ReducedMachine {
    reduce(&build_full_fsm(p).unwrap()).unwrap()
}

fn small_grid() -> Vec<CoderParams> {
    let mut out = Vec::new();
    for n in 3u8..=5 {
        for p0 in [1, (1u32 << n) / 5, (1u32 << n) * 44 / 100, 1 << (n - 1)] {
            for f in [1, 3] {
                if p0 > 0 {
                    out.push(params(n, p0, f));
                }
            }
        }
    }
    out
}

#[test]
fn ac_roundtrip_exhaustive_short_inputs() {
    let p = params(4, 3, 1);
    for bits in all_inputs(10) {
        let code = ac_encode_stream(&bits, p);
        assert_eq!(ac_decode_stream(&code, bits.len(), p).unwrap(), bits);
    }
}

#[test]
fn ac_roundtrip_random_across_precisions() {
    for n in 3u8..=12 {
        for (i, p0) in [0.05, 0.2, 0.44, 0.5, 0.8].into_iter().enumerate() {
            for f in [0, 1, 3, 15] {
                let p = CoderParams::with_probability(n, p0, f, 0).unwrap();
                let bits = iid_bits(3000, p0, (n as u64) << 8 | i as u64);
                let code = ac_encode_stream(&bits, p);
                assert_eq!(
                    ac_decode_stream(&code, bits.len(), p).unwrap(),
                    bits,
                    "{p:?}"
                );
            }
        }
    }
}

#[test]
fn fsac_matches_streaming_ac_exhaustively() {
    for p in small_grid() {
        let rm = reduced(p);
        for bits in all_inputs(12) {
            assert_eq!(
                fsac_encode(&bits, &rm),
                ac_body_to_boundary(&bits, p),
                "{p:?} {bits:?}"
            );
        }
    }
}

#[test]
fn reduced_machine_matches_full_machine_paths() {
    for p in small_grid() {
        let rm = reduced(p);
        for bits in all_inputs(10) {
            assert_eq!(fsac_encode(&bits, &rm), full_machine_walk(&bits, p));
        }
    }
}

#[test]
fn fsac_matches_streaming_ac_on_random_inputs() {
    for (i, (n, p0, f)) in [(7u8, 44u32, 10u8), (8, 51, 1), (8, 26, 3), (6, 13, 3)]
        .into_iter()
        .enumerate()
    {
        let p = params(n, p0, f);
        let rm = reduced(p);
        for k in 0..200 {
            let bits = iid_bits(50 + k * 7, p.p0(), (i * 1000 + k) as u64);
            assert_eq!(fsac_encode(&bits, &rm), ac_body_to_boundary(&bits, p));
        }
    }
}

#[test]
fn renormalization_emits_at_most_n_plus_fmax_bits() {
    for n in 3u8..=8 {
        for f in [0u8, 1, 3, 7] {
            let p = params(n, 1 << (n - 2), f);
            let full = p.full();
            for low in 0..full {
                for high in low + 1..=full {
                    for follow in 0..=f {
                        let (_, out) = renormalize(FullState { low, high, follow }, &p);
                        assert!(out.len() <= (n + f) as usize);
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn ac_roundtrip_property(
        n in 3u8..=16,
        p0_frac in 0.01f64..0.99,
        f in 0u8..=15,
        bits in proptest::collection::vec(any::<bool>(), 0..400),
    ) {
        let p = CoderParams::with_probability(n, p0_frac, f, 0).unwrap();
        let code = ac_encode_stream(&bits, p);
        prop_assert_eq!(ac_decode_stream(&code, bits.len(), p).unwrap(), bits);
    }

    #[test]
    fn machine_build_is_deterministic(n in 3u8..=6, p0 in 1u32..8, f in 0u8..=3) {
        let p = params(n, p0.min((1 << n) - 1), f);
        prop_assert_eq!(reduced(p), reduced(p));
    }
}
