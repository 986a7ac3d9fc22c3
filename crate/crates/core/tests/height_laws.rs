mod common;

use dynheight_core::{
    canonical_height, canonical_height_oracle, height_identity_check, BinaryForm, FactoringPolicy,
    MapLift, ProjectivePoint, Real, DEFAULT_DIGIT_BUDGET,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lift(f: &[i64], g: &[i64]) -> MapLift {
    MapLift::new(BinaryForm::from_i64s(f), BinaryForm::from_i64s(g)).unwrap()
}

fn pt(x: i64, y: i64) -> ProjectivePoint {
    ProjectivePoint::from_i64(x, y).unwrap()
}

#[test]
fn one_step_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1901);
    let tol = Real::parse_decimal("1e-20", 128).unwrap();
    for _ in 0..100 {
        let d = rng.gen_range(2..=3);
        let l = common::random_lift(&mut rng, d, 20);
        let p = common::random_point(&mut rng, 50);
        let residual = height_identity_check(&l, &p, 128).unwrap();
        assert!(residual < tol, "{residual} for {l:?} at {p}");
    }
}

#[test]
fn functoriality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1902);
    for _ in 0..30 {
        let l = common::random_lift(&mut rng, 2, 10);
        let p = common::random_point(&mut rng, 20);
        let h = canonical_height(&l, &p, 40, 192, &FactoringPolicy::None).unwrap();
        let h1 = canonical_height(&l, &l.image(&p), 40, 192, &FactoringPolicy::None).unwrap();
        let d = Real::from(2i64);
        let gap = (&h1.canonical - &d * &h.canonical).abs();
        let allowed = Real::from(3i64) * (&h.error_bound + &h1.error_bound);
        assert!(gap <= allowed);
        assert!(h.is_consistent());
    }
}

#[test]
fn preperiodic_points_vanish() {
    let sq = lift(&[1, 0, 0], &[0, 0, 1]);
    let cheb = lift(&[1, 0, -1], &[0, 0, 1]);
    for (l, p) in [(&sq, pt(0, 1)), (&sq, pt(1, 1)), (&sq, pt(1, 0)), (&cheb, pt(0, 1))] {
        let h = canonical_height(l, &p, 30, 128, &FactoringPolicy::None).unwrap();
        assert!(h.canonical.abs() <= h.error_bound);
    }
    // z -> z^2 - 2 fixes 2 and sends 0 to -2 to 2
    let l = lift(&[1, 0, -2], &[0, 0, 1]);
    let h = canonical_height(&l, &pt(0, 1), 30, 128, &FactoringPolicy::None).unwrap();
    assert!(h.canonical.abs() <= h.error_bound);
}

#[test]
fn scaling_the_lift_keeps_the_height() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1903);
    for _ in 0..20 {
        let l = common::random_lift(&mut rng, 2, 10);
        let c = BigInt::from(rng.gen_range(2i64..=12));
        let lc = MapLift::new(l.f().scale(&c), l.g().scale(&c)).unwrap();
        let p = common::random_point(&mut rng, 30);
        let a = canonical_height(&l, &p, 40, 192, &FactoringPolicy::None).unwrap();
        let b = canonical_height(&lc, &p, 40, 192, &FactoringPolicy::None).unwrap();
        assert!((&a.canonical - &b.canonical).abs() <= &a.error_bound + &b.error_bound);
    }
}

#[test]
fn limit_definition_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1904);
    for _ in 0..20 {
        let l = common::random_lift(&mut rng, 2, 10);
        let p = common::random_point(&mut rng, 10);
        let seq = canonical_height_oracle(&l, &p, 12, 128, DEFAULT_DIGIT_BUDGET).unwrap();
        let h = canonical_height(&l, &p, 30, 128, &FactoringPolicy::None).unwrap();
        let last = seq.last().unwrap();
        assert!((last - &h.canonical).abs().to_f64() < 1e-2);
    }
}
