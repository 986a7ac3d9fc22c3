//! Canonical heights of rational points under morphisms of the projective line.
//!
//! For a degree `d >= 2` morphism `phi` of `P^1` over `Q` with integer lift
//! `Phi = [F, G]`, the canonical height splits as
//!
//! ```text
//! h_hat(P) = h(P) - H_inf(P) - H_0(P)
//! ```
//!
//! where `H_inf` and `H_0` are geometrically weighted sums of the archimedean
//! and nonarchimedean local defects along the orbit of `P`. The nonarchimedean
//! sum is computed in [`nonarch`] without factoring `Res(F, G)`: orbit
//! coordinates are carried modulo shrinking powers of the resultant, and each
//! orbit gcd is recovered as a gcd with the resultant itself. The archimedean
//! sum is computed in [`arch`] by renormalized real iteration. [`height`]
//! assembles both with rigorous truncation bounds.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod arch;
mod error;
pub mod forms;
pub mod height;
pub mod nonarch;
pub mod real;

pub use arch::{arch_height, default_precision, lambda_arch, lambda_bound, ArchResult};
pub use error::{Error, Result};
pub use forms::{
    normalize_point, resultant, BinaryForm, CofactorIdentity, MapLift, ProjectivePoint,
};
pub use height::{
    canonical_height, canonical_height_oracle, height_identity_check, naive_height,
    FactoringPolicy, HeightBreakdown, DEFAULT_DIGIT_BUDGET,
};
pub use nonarch::{
    nonarch_height, nonarch_height_factored, omega0_exact, trial_division, NonArchResult,
    PartKind, PartialFactorization, DEFAULT_TRIAL_BOUND,
};
pub use real::{Logarithms, Real};
