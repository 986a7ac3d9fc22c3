//! Homogeneous binary forms over the integers and integer lifts of morphisms.

mod point;
mod sylvester;

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::real::Real;
use crate::{Error, Result};

pub use point::{normalize_point, ProjectivePoint};
pub use sylvester::{cofactors, resultant, sylvester_matrix, CofactorIdentity};

/// A homogeneous form `sum_i c_i X^(d-i) Y^i`.
///
/// Coefficients are stored in descending powers of `X`: index `i` holds the
/// coefficient of `X^(d-i) Y^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(BinaryForm { coeffs })
    }

    /// Convenience constructor for small coefficients.
    ///
    /// # Panics
    /// Panics on an empty slice.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("non-empty coefficient list")
    }

    /// The zero form of the given degree.
    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: alloc::vec![BigInt::zero(); degree + 1],
        }
    }

    /// `c X^(d-i) Y^i`.
    pub fn monomial(degree: usize, y_power: usize, c: BigInt) -> Self {
        let mut f = BinaryForm::zero(degree);
        f.coeffs[y_power] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_default()
    }

    /// Gcd of the coefficients.
    pub fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c.magnitude()))
    }

    /// Exact value at `(x, y)`.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = self.coeffs[0].clone();
        let mut y_pow = BigInt::one();
        for c in &self.coeffs[1..] {
            y_pow *= y;
            acc = acc * x + c * &y_pow;
        }
        acc
    }

    /// Value at `(x, y)` reduced into `[0, m)`, with every intermediate
    /// product reduced mod `m`.
    ///
    /// # Panics
    /// Panics when `m` is zero.
    pub fn evaluate_mod(&self, x: &BigInt, y: &BigInt, m: &BigUint) -> BigUint {
        assert!(!m.is_zero(), "modulus must be positive");
        if m.is_one() {
            return BigUint::zero();
        }
        let xr = reduce(x, m);
        let yr = reduce(y, m);
        let mut acc = reduce(&self.coeffs[0], m);
        let mut y_pow = BigUint::one();
        for c in &self.coeffs[1..] {
            y_pow = (y_pow * &yr) % m;
            acc = (acc * &xr + reduce(c, m) * &y_pow) % m;
        }
        acc
    }

    /// Value at a real point, each Horner step rounded to `bits`.
    pub fn evaluate_real(&self, x: &Real, y: &Real, bits: u32) -> Real {
        let mut acc = Real::from(&self.coeffs[0]);
        let mut y_pow = Real::one();
        for c in &self.coeffs[1..] {
            y_pow = (&y_pow * y).round(bits);
            acc = (&acc * x + Real::from(c) * &y_pow).round(bits);
        }
        acc
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in form sum");
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = alloc::vec![BigInt::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

pub(crate) fn reduce(v: &BigInt, m: &BigUint) -> BigUint {
    let r = v.magnitude() % m;
    if v.is_negative() && !r.is_zero() {
        m - r
    } else {
        r
    }
}

/// An integer lift `Phi = [F, G]` of a morphism of degree `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapLift {
    f: BinaryForm,
    g: BinaryForm,
    resultant: BigInt,
    coeff_norm: BigUint,
}

impl MapLift {
    /// Validates degrees and computes the resultant.
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch(f.degree(), g.degree()));
        }
        if f.degree() < 2 {
            return Err(Error::DegreeTooSmall(f.degree()));
        }
        let res = resultant(&f, &g);
        if res.is_zero() {
            return Err(Error::ZeroResultant);
        }
        let coeff_norm = f.max_abs_coefficient().max(g.max_abs_coefficient());
        Ok(MapLift {
            f,
            g,
            resultant: res,
            coeff_norm,
        })
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// Sylvester determinant, sign included.
    pub fn resultant(&self) -> &BigInt {
        &self.resultant
    }

    pub fn resultant_abs(&self) -> BigUint {
        self.resultant.magnitude().clone()
    }

    /// `||F, G||`, the largest absolute coefficient of either form.
    pub fn coeff_norm(&self) -> &BigUint {
        &self.coeff_norm
    }

    /// Gcd of all coefficients of `F` and `G`.
    pub fn content(&self) -> BigUint {
        self.f.content().gcd(&self.g.content())
    }

    /// `(2d)! * ||F, G||^(2d)`, the a priori bound on `|Res(F, G)|`.
    pub fn resultant_size_bound(&self) -> BigUint {
        let n = 2 * self.degree();
        let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
        fact * num_traits::pow(self.coeff_norm.clone(), n)
    }

    /// `(F(x, y), G(x, y))` exactly.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (self.f.evaluate(x, y), self.g.evaluate(x, y))
    }

    /// One exact step of the orbit: the normalized image of `p` and the
    /// positive gcd that was divided out.
    ///
    /// The gcd divides the resultant, so it is found as `gcd(a, b, Res)`
    /// with the full-size values reduced first; this keeps the step linear
    /// in their length.
    pub fn step_exact(&self, p: &ProjectivePoint) -> (ProjectivePoint, BigUint) {
        let (a, b) = self.evaluate(p.x(), p.y());
        let r = self.resultant_abs();
        let g = reduce(&a, &r).gcd(&r);
        let g = reduce(&b, &g).gcd(&g);
        let gi = BigInt::from(g.clone());
        // Res != 0 and gcd(x, y) = 1 keep (a, b) away from (0, 0)
        let image = ProjectivePoint::from_coprime(a / &gi, b / &gi);
        (image, g)
    }

    /// `Phi(p)` normalized to lowest terms.
    pub fn image(&self, p: &ProjectivePoint) -> ProjectivePoint {
        self.step_exact(p).0
    }

    pub fn cofactors(&self) -> CofactorIdentity {
        cofactors(&self.f, &self.g).expect("lift resultant is nonzero")
    }
}
