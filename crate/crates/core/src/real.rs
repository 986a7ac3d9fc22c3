//! Arbitrary-precision binary floating point.
//!
//! A [`Real`] is `mantissa * 2^exponent` with a big-integer mantissa. Addition,
//! subtraction and multiplication are exact; division, logarithms and explicit
//! [`Real::round`] calls take a precision in bits. The mantissa is kept odd (or
//! zero), so structural equality is numeric equality.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Guard bits carried through fixed-point series evaluation. Half of them
/// absorb the `e * ln 2` term for binary exponents up to 2^64.
const SERIES_GUARD_BITS: u64 = 128;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    mantissa: BigInt,
    exponent: i64,
}

impl Real {
    pub fn zero() -> Self {
        Real {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Real::from(1i64)
    }

    /// Builds `mantissa * 2^exponent`.
    pub fn from_parts(mantissa: BigInt, exponent: i64) -> Self {
        let mut r = Real { mantissa, exponent };
        r.canonicalize();
        r
    }

    /// `2^exponent`.
    pub fn pow2(exponent: i64) -> Self {
        Real {
            mantissa: BigInt::one(),
            exponent,
        }
    }

    fn canonicalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Bits in the mantissa.
    pub fn precision(&self) -> u64 {
        self.mantissa.bits()
    }

    /// `floor(log2 |self|) + 1`, the position just above the leading bit.
    /// Zero maps to `i64::MIN`.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mantissa.bits() as i64 + self.exponent
        }
    }

    /// Multiplies by `2^shift` exactly.
    pub fn mul_pow2(&self, shift: i64) -> Real {
        if self.is_zero() {
            return Real::zero();
        }
        Real {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + shift,
        }
    }

    /// Rounds to at most `bits` significant bits, ties away from zero.
    pub fn round(&self, bits: u32) -> Real {
        let bits = u64::from(bits.max(1));
        let len = self.mantissa.bits();
        if len <= bits {
            return self.clone();
        }
        let drop = len - bits;
        let (sign, mag) = (self.mantissa.sign(), self.mantissa.magnitude());
        let half = BigUint::one() << (drop - 1);
        let rounded: BigUint = (mag + half) >> drop;
        Real::from_parts(BigInt::from_biguint(sign, rounded), self.exponent + drop as i64)
    }

    /// Quotient rounded to `bits` significant bits.
    ///
    /// # Panics
    /// Panics when `rhs` is zero.
    pub fn div(&self, rhs: &Real, bits: u32) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero();
        }
        let want = u64::from(bits) + 2;
        let num_bits = self.mantissa.bits();
        let den_bits = rhs.mantissa.bits();
        let shift = (want + den_bits).saturating_sub(num_bits);
        let q = (&self.mantissa << shift) / &rhs.mantissa;
        Real::from_parts(q, self.exponent - rhs.exponent - shift as i64).round(bits)
    }

    /// Division by a machine integer, rounded to `bits`.
    pub fn div_int(&self, rhs: &BigInt, bits: u32) -> Real {
        self.div(&Real::from(rhs.clone()), bits)
    }

    /// Natural logarithm with absolute error below `2^-bits` (for arguments
    /// whose binary exponent fits comfortably in an `i64`).
    ///
    /// # Panics
    /// Panics when `self <= 0`.
    pub fn ln(&self, bits: u32) -> Real {
        Logarithms::new(bits).ln(self)
    }

    /// Exact value when it fits in an `f64`, otherwise the nearest double.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60);
        let m = r.mantissa.to_f64().unwrap_or(f64::NAN);
        let e = r.exponent;
        if e > 2000 {
            return m * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0 * m;
        }
        // split the scaling so intermediate powers stay finite
        let half = (e / 2) as i32;
        m * FloatCore::powi(2f64, half) * FloatCore::powi(2f64, e as i32 - half)
    }

    /// Parses a decimal literal such as `-12.5e-3`, rounding to `bits`.
    pub fn parse_decimal(text: &str, bits: u32) -> Option<Real> {
        let s = text.trim();
        let (neg, s) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (body, exp10) = match s.find(['e', 'E']) {
            Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(pos) => (&body[..pos], &body[pos + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut m: BigInt = digits.parse().ok()?;
        if neg {
            m = -m;
        }
        let scale = exp10 - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let value = if scale >= 0 {
            Real::from(m * num_traits::pow(ten, scale as usize)).round(bits)
        } else {
            Real::from(m).div(&Real::from(num_traits::pow(ten, (-scale) as usize)), bits)
        };
        Some(value)
    }

    /// `round(|self| * 10^power)` as an integer, ties away from zero.
    fn scaled_decimal(&self, power: i64) -> BigUint {
        let mut num = self.mantissa.magnitude().clone();
        let mut den = BigUint::one();
        let ten = BigUint::from(10u32);
        if power >= 0 {
            num *= num_traits::pow(ten, power as usize);
        } else {
            den *= num_traits::pow(ten, (-power) as usize);
        }
        if self.exponent >= 0 {
            num <<= self.exponent as u64;
        } else {
            den <<= (-self.exponent) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if r << 1u32 >= den {
            q + 1u32
        } else {
            q
        }
    }

    /// Decimal string with `sig` significant digits, in positional notation
    /// when the decimal exponent lies in `[-9, 40)` and scientific otherwise.
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return String::from("0");
        }
        // estimate of floor(log10 |x|), corrected below
        let mut k = FloatCore::floor((self.magnitude() - 1) as f64 * core::f64::consts::LOG10_2) as i64;
        let lo = num_traits::pow(BigUint::from(10u32), sig - 1);
        let hi = &lo * 10u32;
        let mut n = self.scaled_decimal(sig as i64 - 1 - k);
        for _ in 0..4 {
            if n >= hi {
                k += 1;
            } else if n < lo {
                k -= 1;
            } else {
                break;
            }
            n = self.scaled_decimal(sig as i64 - 1 - k);
        }
        if n >= hi {
            // rounding carried into a new digit: 9.99.. -> 10.0..
            k += 1;
            n = self.scaled_decimal(sig as i64 - 1 - k);
        }
        let digits = n.to_str_radix(10);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if (-9..40).contains(&k) {
            if k < 0 {
                out.push_str("0.");
                for _ in 0..(-k - 1) {
                    out.push('0');
                }
                out.push_str(&digits);
            } else {
                let int_len = (k + 1) as usize;
                if digits.len() <= int_len {
                    out.push_str(&digits);
                    for _ in digits.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&digits[..int_len]);
                    out.push('.');
                    out.push_str(&digits[int_len..]);
                }
            }
        } else {
            out.push_str(&digits[..1]);
            if digits.len() > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{k}"));
        }
        out
    }

    /// Decimal digits needed to pin down every mantissa bit.
    pub fn decimal_digits_for(bits: u32) -> usize {
        FloatCore::ceil(f64::from(bits) * core::f64::consts::LOG10_2) as usize + 1
    }
}

impl Default for Real {
    fn default() -> Self {
        Real::zero()
    }
}

impl From<BigInt> for Real {
    fn from(value: BigInt) -> Self {
        Real::from_parts(value, 0)
    }
}

impl From<&BigInt> for Real {
    fn from(value: &BigInt) -> Self {
        Real::from_parts(value.clone(), 0)
    }
}

impl From<BigUint> for Real {
    fn from(value: BigUint) -> Self {
        Real::from_parts(BigInt::from(value), 0)
    }
}

impl From<&BigUint> for Real {
    fn from(value: &BigUint) -> Self {
        Real::from_parts(BigInt::from(value.clone()), 0)
    }
}

impl From<i64> for Real {
    fn from(value: i64) -> Self {
        Real::from_parts(BigInt::from(value), 0)
    }
}

impl From<u64> for Real {
    fn from(value: u64) -> Self {
        Real::from_parts(BigInt::from(value), 0)
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let by_magnitude = match self.magnitude().cmp(&other.magnitude()) {
            Ordering::Equal => {
                let e = self.exponent.min(other.exponent);
                let a = self.mantissa.magnitude() << (self.exponent - e) as u64;
                let b = other.mantissa.magnitude() << (other.exponent - e) as u64;
                a.cmp(&b)
            }
            ord => ord,
        };
        if sa == Sign::Minus {
            by_magnitude.reverse()
        } else {
            by_magnitude
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Real {
    type Output = Real;

    fn add(self, rhs: &Real) -> Real {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &rhs.mantissa << (rhs.exponent - e) as u64;
        Real::from_parts(a + b, e)
    }
}

impl Sub for &Real {
    type Output = Real;

    fn sub(self, rhs: &Real) -> Real {
        self + &(-rhs)
    }
}

impl Mul for &Real {
    type Output = Real;

    fn mul(self, rhs: &Real) -> Real {
        Real::from_parts(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for &Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Real {
    type Output = Real;

    fn neg(self) -> Real {
        Real {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or_else(|| Real::decimal_digits_for(self.precision().max(1) as u32));
        f.write_str(&self.to_decimal(digits))
    }
}

/// Logarithm evaluator that computes `ln 2` once for a fixed precision.
#[derive(Clone, Debug)]
pub struct Logarithms {
    bits: u32,
    work: u64,
    /// `ln 2 * 2^work`
    ln2: BigInt,
}

impl Logarithms {
    pub fn new(bits: u32) -> Self {
        let work = u64::from(bits) + SERIES_GUARD_BITS;
        let one = BigInt::one() << work;
        let third = &one / BigInt::from(3u32);
        let ln2 = atanh_fixed(&third, work) << 1u32;
        Logarithms { bits, work, ln2 }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `ln 2` at this evaluator's precision.
    pub fn ln2(&self) -> Real {
        Real::from_parts(self.ln2.clone(), -(self.work as i64)).round(self.bits + 8)
    }

    /// Natural logarithm of a positive real.
    ///
    /// # Panics
    /// Panics when `x <= 0`.
    pub fn ln(&self, x: &Real) -> Real {
        assert!(x.is_positive(), "logarithm of a non-positive number");
        let len = x.mantissa.bits();
        let work = self.work;
        let ln2 = &self.ln2;
        // x = f * 2^e2 with f in [1/sqrt2, sqrt2)
        let mag = x.mantissa.magnitude();
        let mut frac: BigUint = if len <= work {
            mag << (work - len)
        } else {
            mag >> (len - work)
        };
        let mut e2 = x.exponent + len as i64;
        // f < 1/sqrt2  <=>  2 f^2 < 1
        if (&frac * &frac) << 1u32 < BigUint::one() << (2 * work) {
            frac <<= 1u32;
            e2 -= 1;
        }
        let one = BigInt::one() << work;
        let frac = BigInt::from(frac);
        let t = ((&frac - &one) << work) / (&frac + &one);
        let ln_frac = atanh_fixed(&t, work) << 1u32;
        let total = ln_frac + ln2 * BigInt::from(e2);
        Real::from_parts(total, -(work as i64)).round(self.bits + 8)
    }

    /// `ln n` for a positive integer.
    pub fn ln_int(&self, n: &BigUint) -> Real {
        if n.is_one() {
            return Real::zero();
        }
        // leading mantissa bits are all the series needs
        let r = Real::from(n).round(self.bits + 72);
        self.ln(&r)
    }
}

/// `atanh(t)` in fixed point with `work` fractional bits, `|t| < 1/2`.
fn atanh_fixed(t: &BigInt, work: u64) -> BigInt {
    if t.is_zero() {
        return BigInt::zero();
    }
    let t2 = (t * t) >> work;
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut k: u64 = 1;
    loop {
        power = (&power * &t2) >> work;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    sum
}

/// Collects the decimal rendering of a slice, used by reports and tests.
pub fn render_all(values: &[Real], sig: usize) -> Vec<String> {
    values.iter().map(|v| v.to_decimal(sig)).collect()
}
