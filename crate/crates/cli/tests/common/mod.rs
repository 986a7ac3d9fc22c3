#![allow(dead_code)]

use dynheight_core::{BinaryForm, MapLift, ProjectivePoint, Real};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::Rng;

pub fn random_lift<R: Rng>(rng: &mut R, d: usize, c: i64) -> MapLift {
    let form = |rng: &mut R| {
        BinaryForm::new((0..=d).map(|_| BigInt::from(rng.gen_range(-c..=c))).collect()).unwrap()
    };
    loop {
        let (f, g) = (form(rng), form(rng));
        if let Ok(l) = MapLift::new(f, g) {
            return l;
        }
    }
}

/// A point of naive height at most `log bound`.
pub fn random_point<R: Rng>(rng: &mut R, bound: i64) -> ProjectivePoint {
    loop {
        let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(0..=bound));
        if let Ok(p) = ProjectivePoint::from_i64(x, y) {
            return p;
        }
    }
}

/// `gcd(F(a_j, b_j), G(a_j, b_j))` along the exact orbit, by plain big
/// integer gcds of the full-size values.
pub fn exact_gcds(lift: &MapLift, p: &ProjectivePoint, n: usize) -> Vec<BigUint> {
    let (mut x, mut y) = (p.x().clone(), p.y().clone());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (a, b) = lift.evaluate(&x, &y);
        let g = a.gcd(&b);
        x = a / &g;
        y = b / &g;
        out.push(g.magnitude().clone());
    }
    out
}

pub fn real(s: &str) -> Real {
    Real::parse_decimal(s, 512).expect("decimal literal")
}

/// `|x - expect| <= tol`, with the difference for diagnostics.
pub fn within(x: &Real, expect: &str, tol: &str) -> Result<(), String> {
    let diff = (x - &real(expect)).abs();
    if diff <= real(tol) {
        Ok(())
    } else {
        Err(format!("{} differs from {expect} by {} > {tol}", x.to_decimal(40), diff.to_decimal(3)))
    }
}
