use hfsac_core::analysis::{
    block_frequency, histogram, histogram_chi_square, igamc, monobit, npcr, pearson_corr, runs,
    shannon_entropy_binary, uaci, GrayImage,
};
use proptest::prelude::*;

fn image(pixels: Vec<u8>) -> GrayImage {
    let w = pixels.len();
    GrayImage::new(w, 1, pixels).unwrap()
}

#[test]
fn uniform_histogram_has_zero_chi_square() {
    let counts = [100u64; 256];
    let (stat, p) = histogram_chi_square(&counts);
    assert_eq!(stat, 0.0);
    assert!((p - 1.0).abs() < 1e-12);
}

#[test]
fn chi_square_critical_value() {
    // Upper 1% point of chi-square with 255 degrees of freedom.
    let p = igamc(255.0 / 2.0, 310.4574 / 2.0);
    assert!((p - 0.01).abs() < 1e-4, "{p}");
}

#[test]
fn constant_streams_fail_randomness() {
    let ones = vec![true; 1000];
    assert!(monobit(&ones).unwrap() < 1e-10);
    assert!(block_frequency(&ones, 100).unwrap() < 1e-10);
    assert_eq!(runs(&ones).unwrap(), 0.0);
}

proptest! {
    #[test]
    fn pearson_symmetric_and_scale_invariant(
        pairs in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 3..200),
        scale in 0.1f64..100.0,
        shift in -50.0f64..50.0,
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        if let (Ok(a), Ok(b)) = (pearson_corr(&x, &y), pearson_corr(&y, &x)) {
            prop_assert!((a - b).abs() < 1e-9);
            prop_assert!(a.abs() <= 1.0 + 1e-9);
            let xs: Vec<f64> = x.iter().map(|v| v * scale + shift).collect();
            let c = pearson_corr(&xs, &y).unwrap();
            prop_assert!((a - c).abs() < 1e-6);
        }
    }

    #[test]
    fn entropy_in_unit_interval(bits in proptest::collection::vec(any::<bool>(), 1..500)) {
        let h = shannon_entropy_binary(&bits).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
        let flipped: Vec<bool> = bits.iter().map(|b| !b).collect();
        prop_assert!((h - shannon_entropy_binary(&flipped).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn npcr_uaci_bounds(a in proptest::collection::vec(any::<u8>(), 1..300)) {
        let img = image(a.clone());
        prop_assert_eq!(npcr(&img, &img).unwrap(), 0.0);
        prop_assert_eq!(uaci(&img, &img).unwrap(), 0.0);
        let inverted = image(a.iter().map(|v| 255 - v).collect());
        let u = uaci(&img, &inverted).unwrap();
        prop_assert!((0.0..=100.0).contains(&u));
        let shifted = image(a.iter().map(|v| v.wrapping_add(1)).collect());
        prop_assert_eq!(npcr(&img, &shifted).unwrap(), 100.0);
        prop_assert_eq!(histogram(&img).iter().sum::<u64>(), a.len() as u64);
    }

    #[test]
    fn randomness_p_values_in_unit_interval(bits in proptest::collection::vec(any::<bool>(), 100..600)) {
        for p in [monobit(&bits).unwrap(), block_frequency(&bits, 20).unwrap(), runs(&bits).unwrap()] {
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
