//! The archimedean series `H_inf(P) = sum_n Lambda(phi^n P) / d^(n+1)` with
//! `Lambda(x, y) = -log ||Phi(x, y)|| + d log ||(x, y)||` for the sup norm.
//!
//! `Lambda` is invariant under scaling `(x, y)`, so the orbit is followed on
//! unit-sup-norm real representatives: `u_{n+1} = Phi(u_n) / ||Phi(u_n)||`,
//! and `Lambda(u_n) = -log ||Phi(u_n)||`.
//!
//! `|Lambda|` is bounded by `C = max(log((d+1) ||F, G||), log(2d ||A, B||) -
//! log|Res|)`. The first term follows from the triangle inequality over the
//! `d + 1` monomials; the second from evaluating the cofactor identity
//! `A F + B G = Res X^(2d-1)` (or its `Y` twin) at a unit vector.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::forms::{MapLift, ProjectivePoint};
use crate::real::{Logarithms, Real};
use crate::{Error, Result};

/// Guard bits for the orbit iteration on top of the requested precision.
const GUARD_BITS: u32 = 32;

/// Truncated archimedean series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchResult {
    pub value: Real,
    /// `C / ((d-1) d^N) + N 2^(8 - precision_bits)`
    pub tail_bound: Real,
    /// `C`, a rigorous bound on `|Lambda|`.
    pub lambda_bound: Real,
    pub precision_bits: u32,
    pub terms: usize,
    /// `Lambda(phi^n P)` for `n < N`.
    pub lambdas: Vec<Real>,
}

/// `max(256, 64 + ceil(N log2 d) + bits(||F, G||))`.
pub fn default_precision(lift: &MapLift, terms: usize) -> u32 {
    let d = BigUint::from(lift.degree());
    let dn = num_traits::pow(d, terms);
    let log2_dn = (dn - 1u32).bits();
    let bits = 64 + log2_dn + lift.coeff_norm().bits();
    bits.clamp(256, u64::from(u32::MAX)) as u32
}

/// `-log max(|F(u)|, |G(u)|)` for a unit-sup-norm `u`.
pub fn lambda_arch(lift: &MapLift, u: (&Real, &Real), bits: u32) -> Result<Real> {
    let norm = u.0.abs().max(u.1.abs());
    let slack = Real::pow2(2 - i64::from(bits));
    if (norm - Real::one()).abs() > slack {
        return Err(Error::NotUnitNorm);
    }
    let work = bits + GUARD_BITS;
    let a = lift.f().evaluate_real(u.0, u.1, work);
    let b = lift.g().evaluate_real(u.0, u.1, work);
    let image_norm = a.abs().max(b.abs());
    if image_norm.is_zero() {
        return Err(Error::ArchUnderflow);
    }
    Ok(-Logarithms::new(bits).ln(&image_norm))
}

/// The constant `C` bounding `|Lambda|` on all of `P^1(R)`.
pub fn lambda_bound(lift: &MapLift) -> Real {
    const BITS: u32 = 128;
    let logs = Logarithms::new(BITS);
    let d = lift.degree() as u64;
    let upper = logs.ln_int(&(BigUint::from(d + 1) * lift.coeff_norm()));
    let cof = lift.cofactors();
    let cof_norm = cof.max_abs_coefficient();
    let lower = if cof_norm == BigUint::from(0u32) {
        Real::zero()
    } else {
        logs.ln_int(&(BigUint::from(2 * d) * cof_norm)) - logs.ln_int(&lift.resultant_abs())
    };
    let c = upper.max(lower).max(Real::zero());
    // cover the logarithm rounding
    (c + Real::pow2(-100)).round(BITS)
}

/// Truncated `H_inf(P)`; `|H_inf(P) - value| <= tail_bound`.
pub fn arch_height(lift: &MapLift, p: &ProjectivePoint, terms: usize, bits: u32) -> Result<ArchResult> {
    let bound = lambda_bound(lift);
    arch_height_with_bound(lift, p, terms, bits, bound)
}

/// As [`arch_height`], reusing a precomputed [`lambda_bound`].
pub fn arch_height_with_bound(
    lift: &MapLift,
    p: &ProjectivePoint,
    terms: usize,
    bits: u32,
    lambda_bound: Real,
) -> Result<ArchResult> {
    if terms == 0 {
        return Err(Error::ZeroTerms);
    }
    if bits < 64 {
        return Err(Error::PrecisionTooLow(bits));
    }
    let work = bits + GUARD_BITS;
    let logs = Logarithms::new(work);
    let d = BigInt::from(lift.degree());

    let (mut ux, mut uy) = unit_representative(p, work);
    let mut weight = BigInt::one();
    let mut value = Real::zero();
    let mut lambdas = Vec::with_capacity(terms);
    for _ in 0..terms {
        let a = lift.f().evaluate_real(&ux, &uy, work);
        let b = lift.g().evaluate_real(&ux, &uy, work);
        let (norm, a_is_max) = if a.abs() >= b.abs() {
            (a.abs(), true)
        } else {
            (b.abs(), false)
        };
        if norm.is_zero() {
            return Err(Error::ArchUnderflow);
        }
        let lambda = -logs.ln(&norm);
        weight *= &d;
        value = (value + lambda.div_int(&weight, work)).round(work);
        lambdas.push(lambda.round(bits));
        // the dominant coordinate is exactly +-1 after renormalizing
        let sign_one = |v: &Real| if v.is_negative() { -Real::one() } else { Real::one() };
        if a_is_max {
            uy = b.div(&norm, work);
            ux = sign_one(&a);
        } else {
            ux = a.div(&norm, work);
            uy = sign_one(&b);
        }
    }

    let dn = num_traits::pow(d.clone(), terms);
    let truncation = lambda_bound.div_int(&((&d - 1) * dn), bits);
    let rounding = Real::from(terms as u64).mul_pow2(8 - i64::from(bits));
    Ok(ArchResult {
        value: value.round(bits),
        tail_bound: (truncation + rounding).round(bits),
        lambda_bound,
        precision_bits: bits,
        terms,
        lambdas,
    })
}

/// `(x, y) / max(|x|, |y|)` with the dominant coordinate exactly `+-1`.
pub(crate) fn unit_representative(p: &ProjectivePoint, bits: u32) -> (Real, Real) {
    let (x, y) = (Real::from(p.x()), Real::from(p.y()));
    if p.x().abs() >= p.y().abs() {
        let n = x.abs();
        let ux = if x.is_negative() { -Real::one() } else { Real::one() };
        (ux, y.div(&n, bits))
    } else {
        let n = y.abs();
        (x.div(&n, bits), Real::one())
    }
}
