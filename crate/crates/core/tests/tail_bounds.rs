mod common;

use dynheight_core::{arch_height, nonarch_height};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn truncation_error_is_within_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    for _ in 0..30 {
        let d = rng.gen_range(2..=3);
        let l = common::random_lift(&mut rng, d, 20);
        let p = common::random_point(&mut rng, 50);
        let (n10, n20) = (nonarch_height(&l, &p, 10, 128).unwrap(), nonarch_height(&l, &p, 20, 128).unwrap());
        assert!((&n20.value - &n10.value).abs() <= n10.tail_bound);
        let (a10, a20) = (arch_height(&l, &p, 10, 128).unwrap(), arch_height(&l, &p, 20, 128).unwrap());
        assert!((&a20.value - &a10.value).abs() <= a10.tail_bound);
    }
}
