use hfsac::container::{CipherContainer, ContainerError, HEADER_LEN};
use hfsac::pgm;
use hfsac_core::analysis::GrayImage;
use hfsac_core::fsm::CoderParams;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = CoderParams> {
    (3u8..=16, 0u8..=15, 0u16..=256, any::<u32>()).prop_map(|(n, f, q, p)| {
        let p0 = 1 + p % ((1u32 << n) - 1);
        CoderParams::new(n, p0, f, q).unwrap()
    })
}

proptest! {
    #[test]
    fn container_roundtrip(
        params in params(),
        plain_bit_len in any::<u64>(),
        cipher in proptest::collection::vec(any::<bool>(), 0..200),
    ) {
        let c = CipherContainer { params, plain_bit_len, cipher };
        let bytes = c.to_bytes();
        prop_assert_eq!(bytes.len(), HEADER_LEN + c.cipher.len().div_ceil(8));
        prop_assert_eq!(CipherContainer::from_bytes(&bytes).unwrap(), c);
    }

    #[test]
    fn every_strict_prefix_is_rejected(
        params in params(),
        cipher in proptest::collection::vec(any::<bool>(), 0..64),
    ) {
        let bytes = CipherContainer { params, plain_bit_len: 7, cipher }.to_bytes();
        for cut in 0..bytes.len() {
            prop_assert!(CipherContainer::from_bytes(&bytes[..cut]).is_err());
        }
    }

    #[test]
    fn pgm_roundtrip(w in 1usize..40, h in 1usize..40, seed in any::<u64>()) {
        let mut g = hfsac_core::crypto::SplitMix64::new(seed);
        let img = GrayImage::from_fn(w, h, |_, _| g.next_u64() as u8);
        prop_assert_eq!(pgm::read(&pgm::write(&img)).unwrap(), img);
    }
}

#[test]
fn container_truncation_message() {
    let c = CipherContainer {
        params: CoderParams::new(7, 44, 10, 230).unwrap(),
        plain_bit_len: 16,
        cipher: vec![true; 20],
    };
    let bytes = c.to_bytes();
    let err = CipherContainer::from_bytes(&bytes[..bytes.len() - 1]).unwrap_err();
    assert_eq!(err, ContainerError::Truncated);
    assert_eq!(err.to_string(), "truncated stream");
}

#[test]
fn pad_bit_edge_cases() {
    for bits in [0usize, 1, 7, 8, 9, 15, 16, 17] {
        let c = CipherContainer {
            params: CoderParams::new(4, 3, 1, 0).unwrap(),
            plain_bit_len: 0,
            cipher: vec![true; bits],
        };
        let bytes = c.to_bytes();
        assert_eq!(bytes.len(), HEADER_LEN + bits.div_ceil(8));
        assert_eq!(CipherContainer::from_bytes(&bytes).unwrap(), c);
    }
}
