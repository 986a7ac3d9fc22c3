//! The nonarchimedean series `H_0(P) = sum_n log gcd(F, G)(phi^n P) / d^(n+1)`,
//! computed without factoring the resultant.
//!
//! Every orbit gcd divides `R = |Res(F, G)|`, and it can be read off as
//! `gcd(x', y', R)` from any representatives `x' = F(x, y)`, `y' = G(x, y)`
//! modulo `R`. Carrying the orbit modulo `R^(N-i)` at step `i` leaves enough
//! room for the `N` divisions by gcds that follow, so the exact orbit (whose
//! coordinates grow like `d^n` digits) is never formed.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::forms::{reduce, MapLift, ProjectivePoint};
use crate::real::{Logarithms, Real};
use crate::{Error, Result};

/// Default bound for the trial-division pre-step.
pub const DEFAULT_TRIAL_BOUND: u64 = 100_000;

/// Truncated nonarchimedean series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonArchResult {
    /// `sum_{i<N} log(g_i) / d^(i+1)`
    pub value: Real,
    /// `g_0, ..., g_{N-1}`, each a positive divisor of `|Res(F, G)|`.
    pub g_sequence: Vec<BigUint>,
    /// `log|Res| / ((d-1) d^N)`
    pub tail_bound: Real,
    pub terms: usize,
    /// Bit length of the initial working modulus `|Res|^N`.
    pub modulus_bits: u64,
}

/// Where a coprime part came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartKind {
    PrimePower { prime: u64, exponent: u32 },
    Cofactor,
    UserSupplied,
}

/// `|Res(F, G)|` split into pairwise coprime factors `> 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFactorization {
    parts: Vec<(BigUint, PartKind)>,
}

impl PartialFactorization {
    /// Checks that `parts` are `> 1`, pairwise coprime, and multiply to `n`.
    pub fn new(n: &BigUint, parts: Vec<(BigUint, PartKind)>) -> Result<Self> {
        if parts.iter().any(|(p, _)| *p <= BigUint::one()) {
            return Err(Error::InvalidFactorization("every part must exceed 1"));
        }
        for (i, (a, _)) in parts.iter().enumerate() {
            for (b, _) in &parts[i + 1..] {
                if !a.gcd(b).is_one() {
                    return Err(Error::InvalidFactorization("parts are not pairwise coprime"));
                }
            }
        }
        let product: BigUint = parts.iter().map(|(p, _)| p).product();
        if &product != n {
            return Err(Error::InvalidFactorization("parts do not multiply to |Res|"));
        }
        Ok(PartialFactorization { parts })
    }

    /// Wraps user-supplied parts.
    pub fn from_parts(n: &BigUint, parts: Vec<BigUint>) -> Result<Self> {
        PartialFactorization::new(n, parts.into_iter().map(|p| (p, PartKind::UserSupplied)).collect())
    }

    /// The trivial split `[n]` (empty when `n = 1`).
    pub fn whole(n: &BigUint) -> Self {
        let parts = if n.is_one() {
            Vec::new()
        } else {
            alloc::vec![(n.clone(), PartKind::Cofactor)]
        };
        PartialFactorization { parts }
    }

    pub fn parts(&self) -> impl Iterator<Item = &BigUint> {
        self.parts.iter().map(|(p, _)| p)
    }

    pub fn entries(&self) -> &[(BigUint, PartKind)] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn product(&self) -> BigUint {
        self.parts().product()
    }
}

/// Primes up to `bound` by the sieve of Eratosthenes.
fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = alloc::vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Strips every prime power `p^e` with `p <= bound` from `n`; whatever is
/// left over (if `> 1`) becomes a single unfactored part. `n = 1` gives no
/// parts.
///
/// # Panics
/// Panics when `n` is zero.
pub fn trial_division(n: &BigUint, bound: u64) -> PartialFactorization {
    assert!(!n.is_zero(), "trial division of zero");
    let mut rest = n.clone();
    let mut parts = Vec::new();
    for p in primes_up_to(bound) {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            parts.push((num_traits::pow(pb, e as usize), PartKind::PrimePower { prime: p, exponent: e }));
        }
    }
    if !rest.is_one() {
        parts.push((rest, PartKind::Cofactor));
    }
    PartialFactorization { parts }
}

/// `log gcd(F(x, y), G(x, y))` from full-size evaluations. Exponential along
/// orbits; intended as a reference.
pub fn omega0_exact(lift: &MapLift, q: &ProjectivePoint, bits: u32) -> Real {
    let (a, b) = lift.evaluate(q.x(), q.y());
    let g = a.gcd(&b);
    Logarithms::new(bits).ln_int(g.magnitude())
}

fn check_args(terms: usize, bits: u32) -> Result<()> {
    if terms == 0 {
        return Err(Error::ZeroTerms);
    }
    if bits < 64 {
        return Err(Error::PrecisionTooLow(bits));
    }
    Ok(())
}

/// The orbit gcds restricted to the primes of `modulus`: step `i` evaluates
/// modulo `modulus^(terms-i)`, takes `gcd(x', y', modulus)`, and divides the
/// reduced pair by it.
fn gcd_sequence(lift: &MapLift, p: &ProjectivePoint, terms: usize, modulus: &BigUint) -> Vec<BigUint> {
    if modulus.is_one() {
        return alloc::vec![BigUint::one(); terms];
    }
    let mut work = num_traits::pow(modulus.clone(), terms);
    let mut x = p.x().clone();
    let mut y = p.y().clone();
    let mut out = Vec::with_capacity(terms);
    for i in 0..terms {
        if i > 0 {
            work /= modulus;
        }
        let (xr, yr) = (reduce(&x, &work), reduce(&y, &work));
        let (fx, gx) = evaluate_pair_mod(lift.f().coefficients(), lift.g().coefficients(), &xr, &yr, &work);
        // gcd(0, 0, m) = m: both residues vanishing is legitimate
        let g = fx.gcd(&gx).gcd(modulus);
        x = BigInt::from(fx / &g);
        y = BigInt::from(gx / &g);
        out.push(g);
    }
    out
}

/// Evaluates both forms at `(x, y)` modulo `m`, sharing the powers of `y`.
/// `x` and `y` must already lie in `[0, m)`.
fn evaluate_pair_mod(
    f: &[BigInt],
    g: &[BigInt],
    x: &BigUint,
    y: &BigUint,
    m: &BigUint,
) -> (BigUint, BigUint) {
    let mut acc_f = reduce(&f[0], m);
    let mut acc_g = reduce(&g[0], m);
    let mut y_pow = BigUint::one();
    for (cf, cg) in f[1..].iter().zip(&g[1..]) {
        y_pow = (y_pow * y) % m;
        acc_f = horner_step(acc_f, x, cf, &y_pow, m);
        acc_g = horner_step(acc_g, x, cg, &y_pow, m);
    }
    (acc_f, acc_g)
}

/// `(acc * x + c * y_pow) mod m` with `c` kept at its natural (small) size.
fn horner_step(acc: BigUint, x: &BigUint, c: &BigInt, y_pow: &BigUint, m: &BigUint) -> BigUint {
    let t = acc * x;
    let t = match c.sign() {
        Sign::NoSign => t,
        Sign::Plus => t + c.magnitude() * y_pow,
        // -c * y = c * (m - y) mod m
        Sign::Minus => t + c.magnitude() * (m - y_pow),
    };
    t % m
}

/// `sum_i log(g_i) / d^(i+1)` at `bits` of precision.
fn weighted_log_sum(gs: &[BigUint], degree: usize, bits: u32) -> Real {
    let logs = Logarithms::new(bits);
    let d = BigInt::from(degree);
    let mut weight = BigInt::one();
    let mut sum = Real::zero();
    for g in gs {
        weight *= &d;
        if g.is_one() {
            continue;
        }
        let term = logs.ln_int(g).div_int(&weight, bits + 16);
        sum = (sum + term).round(bits + 16);
    }
    sum.round(bits)
}

fn tail_bound(r: &BigUint, degree: usize, terms: usize, bits: u32) -> Real {
    if r.is_one() {
        return Real::zero();
    }
    let d = BigInt::from(degree);
    let denom = (&d - 1u32) * num_traits::pow(d, terms);
    Logarithms::new(bits).ln_int(r).div_int(&denom, bits)
}

/// Truncated `H_0(P)` with `terms` terms, working modulo powers of `|Res|`.
///
/// Satisfies `|H_0(P) - value| <= tail_bound`.
pub fn nonarch_height(lift: &MapLift, p: &ProjectivePoint, terms: usize, bits: u32) -> Result<NonArchResult> {
    check_args(terms, bits)?;
    let r = lift.resultant_abs();
    let d = lift.degree();
    if r.is_one() {
        return Ok(NonArchResult {
            value: Real::zero(),
            g_sequence: alloc::vec![BigUint::one(); terms],
            tail_bound: Real::zero(),
            terms,
            modulus_bits: 1,
        });
    }
    let gs = gcd_sequence(lift, p, terms, &r);
    Ok(NonArchResult {
        value: weighted_log_sum(&gs, d, bits),
        tail_bound: tail_bound(&r, d, terms, bits),
        modulus_bits: num_traits::pow(r.clone(), terms).bits(),
        g_sequence: gs,
        terms,
    })
}

/// Same series, run once per coprime part with the part in place of `|Res|`.
/// The per-part gcd sequences multiply to the unfactored one.
pub fn nonarch_height_factored(
    lift: &MapLift,
    p: &ProjectivePoint,
    terms: usize,
    bits: u32,
    parts: &PartialFactorization,
) -> Result<NonArchResult> {
    check_args(terms, bits)?;
    let r = lift.resultant_abs();
    if parts.product() != r {
        return Err(Error::InvalidFactorization("parts do not multiply to |Res|"));
    }
    let d = lift.degree();
    let mut gs = alloc::vec![BigUint::one(); terms];
    let mut value = Real::zero();
    let mut modulus_bits = 1;
    for part in parts.parts() {
        let part_gs = gcd_sequence(lift, p, terms, part);
        value = value + weighted_log_sum(&part_gs, d, bits + 8);
        for (acc, g) in gs.iter_mut().zip(part_gs) {
            *acc *= g;
        }
        modulus_bits = modulus_bits.max(num_traits::pow(part.clone(), terms).bits());
    }
    Ok(NonArchResult {
        value: value.round(bits),
        g_sequence: gs,
        tail_bound: tail_bound(&r, d, terms, bits),
        terms,
        modulus_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::BinaryForm;

    fn lift(f: &[i64], g: &[i64]) -> MapLift {
        MapLift::new(BinaryForm::from_i64s(f), BinaryForm::from_i64s(g)).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn trial_division_small() {
        let tf = trial_division(&big(360), 10);
        let parts: Vec<BigUint> = tf.parts().cloned().collect();
        assert_eq!(parts, [big(8), big(9), big(5)]);
        assert_eq!(
            tf.entries()[0].1,
            PartKind::PrimePower { prime: 2, exponent: 3 }
        );
        let pq = big(101 * 103);
        let tf = trial_division(&pq, 100);
        assert_eq!(tf.entries(), &[(pq.clone(), PartKind::Cofactor)]);
        assert_eq!(trial_division(&big(97), 97).entries()[0].1, PartKind::PrimePower { prime: 97, exponent: 1 });
    }

    #[test]
    fn factorization_validation() {
        let n = big(360);
        assert!(PartialFactorization::from_parts(&n, alloc::vec![big(40), big(9)]).is_ok());
        assert_eq!(
            PartialFactorization::from_parts(&n, alloc::vec![big(20), big(18)]),
            Err(Error::InvalidFactorization("parts are not pairwise coprime"))
        );
        assert_eq!(
            PartialFactorization::from_parts(&n, alloc::vec![big(8), big(9)]),
            Err(Error::InvalidFactorization("parts do not multiply to |Res|"))
        );
        assert!(PartialFactorization::from_parts(&n, alloc::vec![big(1), big(360)]).is_err());
    }

    #[test]
    fn unit_resultant_short_circuits() {
        let l = lift(&[1, 0, 0, 0], &[0, 0, 0, 1]);
        for (x, y) in [(2, 3), (-7, 1), (1, 0)] {
            let p = ProjectivePoint::from_i64(x, y).unwrap();
            let res = nonarch_height(&l, &p, 7, 128).unwrap();
            assert!(res.value.is_zero());
            assert!(res.tail_bound.is_zero());
            assert!(res.g_sequence.iter().all(BigUint::is_one));
        }
    }

    #[test]
    fn argument_errors() {
        let l = lift(&[1, 0, 1], &[0, 1, 0]);
        let p = ProjectivePoint::from_i64(1, 1).unwrap();
        assert_eq!(nonarch_height(&l, &p, 0, 128), Err(Error::ZeroTerms));
        assert_eq!(nonarch_height(&l, &p, 3, 32), Err(Error::PrecisionTooLow(32)));
        let wrong = PartialFactorization::from_parts(&big(6), alloc::vec![big(2), big(3)]).unwrap();
        assert!(matches!(
            nonarch_height_factored(&l, &p, 3, 128, &wrong),
            Err(Error::InvalidFactorization(_))
        ));
    }

    #[test]
    fn omega_examples() {
        let squares = lift(&[1, 0, 0], &[0, 0, 1]);
        assert!(omega0_exact(&squares, &ProjectivePoint::from_i64(2, 3).unwrap(), 128).is_zero());
        for a in [3i64, 6, 9, 4, 5] {
            let l = lift(&[1, 1, 1], &[1, a, 2]);
            let got = omega0_exact(&l, &ProjectivePoint::from_i64(1, 1).unwrap(), 128);
            let expect = Real::from(BigInt::from(3).gcd(&BigInt::from(a + 3))).ln(128);
            assert_eq!(got, expect);
        }
        for a in [2i64, 10, 99991] {
            let l = lift(&[a, 0, 1], &[0, 1, 0]);
            assert!(omega0_exact(&l, &ProjectivePoint::from_i64(a, 1).unwrap(), 128).is_zero());
        }
    }

    #[test]
    fn linear_family_gcds() {
        // z -> a z + 1/z at [a, 1]: g_0 = 1, g_1 = a, then 1
        for a in [2i64, 15, 1_000_003] {
            let l = lift(&[a, 0, 1], &[0, 1, 0]);
            let p = ProjectivePoint::from_i64(a, 1).unwrap();
            let res = nonarch_height(&l, &p, 10, 128).unwrap();
            let mut expected = alloc::vec![big(1); 10];
            expected[1] = big(a as u64);
            assert_eq!(res.g_sequence, expected);
            let quarter = Real::from(a).ln(140).div_int(&BigInt::from(4), 140);
            assert!((&res.value - &quarter).abs() < Real::pow2(-120));
        }
    }

    #[test]
    fn factored_run_matches_single_part() {
        let l = lift(&[1, 1, 1], &[1, 3000, 2]);
        let p = ProjectivePoint::from_i64(1, 1).unwrap();
        let r = l.resultant_abs();
        let plain = nonarch_height(&l, &p, 12, 128).unwrap();
        let whole = nonarch_height_factored(&l, &p, 12, 128, &PartialFactorization::whole(&r)).unwrap();
        assert_eq!(plain.g_sequence, whole.g_sequence);
        assert!((&plain.value - &whole.value).abs() < Real::pow2(-120));
        let split = nonarch_height_factored(&l, &p, 12, 128, &trial_division(&r, 100)).unwrap();
        assert_eq!(plain.g_sequence, split.g_sequence);
        assert!((&plain.value - &split.value).abs() < Real::pow2(-120));
    }

    #[test]
    fn modulus_bits_is_exact() {
        let l = lift(&[1, 1, 1], &[1, 10, 2]); // Res = 73
        let p = ProjectivePoint::from_i64(1, 1).unwrap();
        let res = nonarch_height(&l, &p, 9, 128).unwrap();
        assert_eq!(res.modulus_bits, num_traits::pow(big(73), 9).bits());
    }
}
