#![allow(dead_code)]

use dynheight_core::{BinaryForm, MapLift, ProjectivePoint};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::Rng;

pub fn random_form<R: Rng>(rng: &mut R, d: usize, c: i64) -> BinaryForm {
    BinaryForm::new((0..=d).map(|_| BigInt::from(rng.gen_range(-c..=c))).collect()).unwrap()
}

/// Rejection-samples a lift with nonzero resultant.
pub fn random_lift<R: Rng>(rng: &mut R, d: usize, c: i64) -> MapLift {
    loop {
        if let Ok(l) = MapLift::new(random_form(rng, d, c), random_form(rng, d, c)) {
            return l;
        }
    }
}

/// A point with `max(|x|, |y|) <= bound`.
pub fn random_point<R: Rng>(rng: &mut R, bound: i64) -> ProjectivePoint {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(0..=bound));
        if let Ok(p) = ProjectivePoint::from_i64(x, y) {
            return p;
        }
    }
}

/// Exact gcds `gcd(F, G)(phi^j P)` for `j < n`.
pub fn exact_gcds(lift: &MapLift, p: &ProjectivePoint, n: usize) -> Vec<BigUint> {
    let mut q = p.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, b) = lift.evaluate(q.x(), q.y());
        out.push(a.gcd(&b).magnitude().clone());
        q = lift.image(&q);
    }
    out
}
