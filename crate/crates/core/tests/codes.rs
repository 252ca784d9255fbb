use hfsac_core::fsm::{build_full_fsm, CoderParams};
use hfsac_core::huffman::{
    attach_tables, build_state_code, huffman_lengths, swap_codeword, weights_from_lengths,
};
use hfsac_core::reduce::{is_prefix_free, kraft_sum_is_one, reduce, validate_reduced};
use proptest::prelude::*;

/// Minimum of `sum w_i l_i` over all complete prefix codes, by enumerating
/// nondecreasing length sequences (heaviest weight gets the shortest word).
fn brute_force_optimal_cost(weights: &[u64]) -> u128 {
    // Lengths are below `n`, so Kraft sums are exact multiples of 2^-n.
    fn go(lens: &mut Vec<usize>, kraft_left: u128, w: &[u64], best: &mut u128) {
        let n = w.len();
        if lens.len() == n {
            if kraft_left == 0 {
                *best = (*best).min(cost(w, lens));
            }
            return;
        }
        for l in lens.last().copied().unwrap_or(1)..n {
            let unit = 1u128 << (n - l);
            if unit <= kraft_left {
                lens.push(l);
                go(lens, kraft_left - unit, w, best);
                lens.pop();
            }
        }
    }
    let mut w = weights.to_vec();
    w.sort_unstable_by(|a, b| b.cmp(a));
    if w.len() == 1 {
        return w[0] as u128;
    }
    let mut best = u128::MAX;
    go(&mut Vec::new(), 1u128 << w.len(), &w, &mut best);
    best
}

fn cost(weights: &[u64], lengths: &[usize]) -> u128 {
    weights
        .iter()
        .zip(lengths)
        .map(|(&w, &l)| w as u128 * l as u128)
        .sum()
}

#[test]
fn derived_codes_are_optimal_and_complete() {
    let mut checked = 0;
    for n in 3u8..=7 {
        for p0 in [1, (1u32 << n) / 5, (1u32 << n) * 44 / 100, 1 << (n - 1)] {
            for f in [1, 3] {
                if p0 == 0 {
                    continue;
                }
                let rm = reduce(&build_full_fsm(CoderParams::new(n, p0, f, 0).unwrap()).unwrap())
                    .unwrap();
                assert!(validate_reduced(&rm).passed());
                let codec = attach_tables(rm);
                for s in 0..codec.state_count() {
                    let lens: Vec<usize> = codec
                        .machine()
                        .transitions_of(s)
                        .iter()
                        .map(|t| t.output_bits.len())
                        .collect();
                    let weights = weights_from_lengths(lens).numerators;
                    let codes: Vec<&[bool]> = codec
                        .machine()
                        .transition_range(s)
                        .map(|t| codec.codeword(t))
                        .collect();
                    assert!(is_prefix_free(&codes));
                    assert!(kraft_sum_is_one(codes.iter().map(|c| c.len())));
                    if weights.len() <= 8 {
                        let lengths: Vec<usize> = codes.iter().map(|c| c.len()).collect();
                        assert_eq!(cost(&weights, &lengths), brute_force_optimal_cost(&weights));
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn brute_force_oracle_sanity() {
    assert_eq!(brute_force_optimal_cost(&[1, 1]), 2);
    assert_eq!(brute_force_optimal_cost(&[4, 1, 4]), 4 + 2 + 8);
    assert_eq!(brute_force_optimal_cost(&[1, 1, 1, 1]), 8);
}

proptest! {
    #[test]
    fn huffman_matches_brute_force(weights in proptest::collection::vec(1u64..1000, 1..=8)) {
        let lengths = huffman_lengths(&weights);
        prop_assert_eq!(cost(&weights, &lengths), brute_force_optimal_cost(&weights));
        let codes = build_state_code(&weights);
        let refs: Vec<&[bool]> = codes.iter().map(Vec::as_slice).collect();
        prop_assert!(is_prefix_free(&refs));
        if weights.len() > 1 {
            prop_assert!(kraft_sum_is_one(lengths.iter().copied()));
        }
    }

    #[test]
    fn swap_is_an_involution_preserving_prefix_freeness(
        weights in proptest::collection::vec(1u64..1000, 2..=24),
        pos in 0usize..30,
    ) {
        let codes = build_state_code(&weights);
        let swapped: Vec<Vec<bool>> = codes.iter().map(|c| swap_codeword(c, pos)).collect();
        for (s, c) in swapped.iter().zip(&codes) {
            prop_assert_eq!(&swap_codeword(s, pos), c);
            prop_assert_eq!(s.len(), c.len());
        }
        let refs: Vec<&[bool]> = swapped.iter().map(Vec::as_slice).collect();
        prop_assert!(is_prefix_free(&refs));
        prop_assert!(kraft_sum_is_one(refs.iter().map(|c| c.len())));
    }

    #[test]
    fn kraft_agrees_with_float_sum(lengths in proptest::collection::vec(1usize..20, 1..40)) {
        let sum: f64 = lengths.iter().map(|&l| (-(l as f64)).exp2()).sum();
        prop_assert_eq!(kraft_sum_is_one(lengths.iter().copied()), sum == 1.0);
    }
}
