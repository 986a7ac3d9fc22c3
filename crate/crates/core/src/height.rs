//! Assembly of `h_hat(P) = h(P) - H_inf(P) - H_0(P)` and the limit-definition
//! reference `d^-n h(phi^n P)`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arch::{arch_height, unit_representative, ArchResult};
use crate::forms::{MapLift, ProjectivePoint};
use crate::nonarch::{
    nonarch_height, nonarch_height_factored, omega0_exact, trial_division, NonArchResult,
    PartialFactorization,
};
use crate::real::{Logarithms, Real};
use crate::{arch, Error, Result};

/// Decimal digits allowed per coordinate in [`canonical_height_oracle`].
pub const DEFAULT_DIGIT_BUDGET: u64 = 10_000_000;

/// How much of `|Res|` to split before running the nonarchimedean series.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum FactoringPolicy {
    /// Work modulo powers of `|Res|` directly.
    #[default]
    None,
    /// Strip primes below `bound` first.
    TrialDivision { bound: u64 },
    /// Caller-supplied coprime split of `|Res|`.
    Parts(PartialFactorization),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightBreakdown {
    /// `h(P)`
    pub naive: Real,
    pub nonarch: NonArchResult,
    pub arch: ArchResult,
    /// `naive - arch.value - nonarch.value`
    pub canonical: Real,
    /// `nonarch.tail_bound + arch.tail_bound`
    pub error_bound: Real,
}

impl HeightBreakdown {
    pub fn assemble(naive: Real, nonarch: NonArchResult, arch: ArchResult) -> Self {
        let canonical = &naive - &arch.value - &nonarch.value;
        let error_bound = &nonarch.tail_bound + &arch.tail_bound;
        HeightBreakdown {
            naive,
            nonarch,
            arch,
            canonical,
            error_bound,
        }
    }

    /// `canonical >= -error_bound`.
    pub fn is_consistent(&self) -> bool {
        self.canonical >= -self.error_bound.clone()
    }
}

/// `log max(|x|, |y|)`.
pub fn naive_height(p: &ProjectivePoint, bits: u32) -> Real {
    Logarithms::new(bits).ln_int(p.sup_norm().magnitude())
}

/// Runs the nonarchimedean series under `policy`.
pub fn nonarch_with_policy(
    lift: &MapLift,
    p: &ProjectivePoint,
    terms: usize,
    bits: u32,
    policy: &FactoringPolicy,
) -> Result<NonArchResult> {
    match policy {
        FactoringPolicy::None => nonarch_height(lift, p, terms, bits),
        FactoringPolicy::TrialDivision { bound } => {
            let parts = trial_division(&lift.resultant_abs(), *bound);
            nonarch_height_factored(lift, p, terms, bits, &parts)
        }
        FactoringPolicy::Parts(parts) => nonarch_height_factored(lift, p, terms, bits, parts),
    }
}

/// `h_hat(P)` from `terms` terms of each series.
pub fn canonical_height(
    lift: &MapLift,
    p: &ProjectivePoint,
    terms: usize,
    bits: u32,
    policy: &FactoringPolicy,
) -> Result<HeightBreakdown> {
    let nonarch = nonarch_with_policy(lift, p, terms, bits, policy)?;
    let arch = arch_height(lift, p, terms, bits)?;
    Ok(HeightBreakdown::assemble(naive_height(p, bits), nonarch, arch))
}

/// `d^-n h(phi^n P)` for `n = 0..=n_max`, from exact iterates.
///
/// Fails with [`Error::DigitBudgetExceeded`] before an iterate whose
/// coordinates could exceed `digit_budget` decimal digits.
pub fn canonical_height_oracle(
    lift: &MapLift,
    p: &ProjectivePoint,
    n_max: usize,
    bits: u32,
    digit_budget: u64,
) -> Result<Vec<Real>> {
    let logs = Logarithms::new(bits);
    let d = lift.degree() as u64;
    let d_big = BigInt::from(d);
    let extra = decimal_digits(&(BigUint::from(d + 1) * lift.coeff_norm()));
    let mut q = p.clone();
    let mut weight = BigInt::one();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(logs.ln_int(q.sup_norm().magnitude()));
    for _ in 0..n_max {
        let needed = d * decimal_digits(q.sup_norm().magnitude()) + extra;
        if needed > digit_budget {
            return Err(Error::DigitBudgetExceeded {
                needed,
                budget: digit_budget,
            });
        }
        q = lift.image(&q);
        weight *= &d_big;
        let h = logs.ln_int(q.sup_norm().magnitude());
        out.push(h.div_int(&weight, bits));
    }
    Ok(out)
}

/// Upper estimate of the decimal length of `n`.
fn decimal_digits(n: &BigUint) -> u64 {
    // log10(2) < 0.30103
    n.bits() * 30103 / 100_000 + 1
}

/// `|(h(phi P) - d h(P)) + (Lambda(P) + Omega_0(P))|`, which vanishes
/// identically; computed from one exact step.
pub fn height_identity_check(lift: &MapLift, p: &ProjectivePoint, bits: u32) -> Result<Real> {
    let (image, _) = lift.step_exact(p);
    let d = Real::from(lift.degree() as u64);
    let lhs = naive_height(&image, bits) - d * naive_height(p, bits);
    let (ux, uy) = unit_representative(p, bits + 32);
    let lambda = arch::lambda_arch(lift, (&ux, &uy), bits)?;
    let omega = omega0_exact(lift, p, bits);
    Ok((lhs + lambda + omega).abs())
}
