mod common;

use dynheight_core::{nonarch_height, nonarch_height_factored, trial_division};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn g_sequence_matches_exact_orbit() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..120 {
        let d = rng.gen_range(2..=3);
        let lift = common::random_lift(&mut rng, d, 20);
        let p = common::random_point(&mut rng, 50);
        let n = rng.gen_range(1..=if d == 2 { 8 } else { 6 });
        let got = nonarch_height(&lift, &p, n, 128).unwrap();
        assert_eq!(got.g_sequence, common::exact_gcds(&lift, &p, n), "lift {lift:?} at {p}");
    }
}

#[test]
fn factored_variant_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..60 {
        let lift = common::random_lift(&mut rng, 2, 20);
        let p = common::random_point(&mut rng, 50);
        let parts = trial_division(&lift.resultant_abs(), 100);
        let plain = nonarch_height(&lift, &p, 10, 128).unwrap();
        let split = nonarch_height_factored(&lift, &p, 10, 128, &parts).unwrap();
        assert_eq!(plain.g_sequence, split.g_sequence);
        let diff = (plain.value - split.value).abs();
        assert!(diff.to_f64() < 1e-30);
    }
}
