use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A point `[x, y]` of `P^1(Q)` in lowest terms.
///
/// Coordinates are coprime integers with `y > 0`, or `y = 0` and `x = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    x: BigInt,
    y: BigInt,
}

impl ProjectivePoint {
    /// Normalizes an integer pair.
    pub fn new(x: BigInt, y: BigInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / &g, y / &g);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        Ok(ProjectivePoint { x, y })
    }

    /// Fixes the sign of a pair already known to be coprime and nonzero.
    pub(crate) fn from_coprime(x: BigInt, y: BigInt) -> Self {
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            ProjectivePoint { x: -x, y: -y }
        } else {
            ProjectivePoint { x, y }
        }
    }

    /// Accepts a pair only if it is already normalized.
    pub fn from_normalized(x: BigInt, y: BigInt) -> Result<Self> {
        let p = ProjectivePoint::new(x.clone(), y.clone())?;
        if p.x != x || p.y != y {
            return Err(Error::NotNormalized);
        }
        Ok(p)
    }

    pub fn from_i64(x: i64, y: i64) -> Result<Self> {
        ProjectivePoint::new(BigInt::from(x), BigInt::from(y))
    }

    /// `[1, 0]`.
    pub fn infinity() -> Self {
        ProjectivePoint {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// `max(|x|, |y|)`.
    pub fn sup_norm(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

/// Clears denominators and reduces a pair of rationals to a normalized point.
pub fn normalize_point(x: &BigRational, y: &BigRational) -> Result<ProjectivePoint> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let den = x.denom().lcm(y.denom());
    let xi = x.numer() * (&den / x.denom());
    let yi = y.numer() * (&den / y.denom());
    ProjectivePoint::new(xi, yi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn coords(p: &ProjectivePoint) -> (i64, i64) {
        use num_traits::ToPrimitive;
        (p.x().to_i64().unwrap(), p.y().to_i64().unwrap())
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(coords(&normalize_point(&q(-5, 1), &q(1, 1)).unwrap()), (-5, 1));
        assert_eq!(coords(&normalize_point(&q(4, 6), &q(2, 3)).unwrap()), (1, 1));
        assert_eq!(coords(&normalize_point(&q(3, 1), &q(0, 1)).unwrap()), (1, 0));
        assert_eq!(coords(&normalize_point(&q(-3, 1), &q(0, 1)).unwrap()), (1, 0));
        assert_eq!(coords(&normalize_point(&q(2, 1), &q(-4, 1)).unwrap()), (-1, 2));
        assert_eq!(coords(&normalize_point(&q(1, 2), &q(1, 3)).unwrap()), (3, 2));
    }

    #[test]
    fn zero_point_rejected() {
        assert_eq!(normalize_point(&q(0, 1), &q(0, 5)), Err(Error::ZeroPoint));
        assert_eq!(ProjectivePoint::from_i64(0, 0), Err(Error::ZeroPoint));
    }

    #[test]
    fn strict_constructor() {
        assert!(ProjectivePoint::from_normalized(BigInt::from(-5), BigInt::from(1)).is_ok());
        assert_eq!(
            ProjectivePoint::from_normalized(BigInt::from(2), BigInt::from(4)),
            Err(Error::NotNormalized)
        );
        assert_eq!(
            ProjectivePoint::from_normalized(BigInt::from(5), BigInt::from(-1)),
            Err(Error::NotNormalized)
        );
    }
}
