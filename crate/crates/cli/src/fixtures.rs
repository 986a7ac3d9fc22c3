//! Built-in examples with embedded constants and reference values.

use dynheight_core::{BinaryForm, MapLift, ProjectivePoint};
use num_bigint::BigInt;
use sha2::{Digest, Sha256};

/// An embedded decimal constant with its SHA-256.
pub struct DataFile {
    pub name: &'static str,
    pub contents: &'static str,
    pub sha256: &'static str,
}

impl DataFile {
    pub fn verify(&self) -> bool {
        hex::encode(Sha256::digest(self.contents.as_bytes())) == self.sha256
    }

    /// The digit string without surrounding whitespace.
    pub fn digits(&self) -> &'static str {
        self.contents.trim()
    }

    pub fn integer(&self) -> BigInt {
        self.digits().parse().expect("data files hold decimal integers")
    }
}

/// Coefficients of the degree-80 numerator: the first 81 decimal digits of
/// the exact binary value of pi rounded to an 85-bit significand.
pub const EX1_PI: DataFile = DataFile {
    name: "ex1_pi_coefficients.txt",
    contents: include_str!("../data/ex1_pi_coefficients.txt"),
    sha256: "95579d600ae679bc24c4a49c1f8adf4577d60cee90cbd1a52c2653ca544b6dd1",
};

/// As [`EX1_PI`], for e.
pub const EX1_E: DataFile = DataFile {
    name: "ex1_e_coefficients.txt",
    contents: include_str!("../data/ex1_e_coefficients.txt"),
    sha256: "2fd6aeba4c71c2e695aef0a0349f158ecb3a0798f1c154399a4e8b3f866d9d88",
};

/// The first 201 decimal digits of pi.
pub const PI_201: DataFile = DataFile {
    name: "pi_201_digits.txt",
    contents: include_str!("../data/pi_201_digits.txt"),
    sha256: "6ad089e9fcc21cf2230880cdd9e515456d331254fe81445f1577207c2322f385",
};

/// RSA-768.
pub const RSA_768: DataFile = DataFile {
    name: "rsa768.txt",
    contents: include_str!("../data/rsa768.txt"),
    sha256: "d3eb4fab668ffa4b4160a7e4dafd55c784605a757a25c2f5834593e23e180212",
};

pub const DATA_FILES: [&DataFile; 4] = [&EX1_PI, &EX1_E, &PI_201, &RSA_768];

/// A named reference value.
#[derive(Clone, Copy, Debug)]
pub struct Expected {
    pub label: &'static str,
    pub value: &'static str,
}

pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub degree: usize,
    pub point: (i64, i64),
    pub terms: usize,
    pub resultant: &'static str,
    pub expected: &'static [Expected],
    pub notes: &'static str,
    build: fn() -> MapLift,
}

impl Fixture {
    pub fn lift(&self) -> MapLift {
        (self.build)()
    }

    /// Points with huge coordinates are built by [`Fixture::point`].
    pub fn point(&self) -> ProjectivePoint {
        if self.id == "ex4" {
            return ProjectivePoint::new(RSA_768.integer(), BigInt::from(1)).expect("nonzero");
        }
        ProjectivePoint::from_i64(self.point.0, self.point.1).expect("fixture points are nonzero")
    }

    pub fn point_label(&self) -> String {
        if self.id == "ex4" {
            return String::from("[a, 1]");
        }
        format!("[{}, {}]", self.point.0, self.point.1)
    }

    pub fn expected(&self, label: &str) -> Option<&'static str> {
        self.expected.iter().find(|e| e.label == label).map(|e| e.value)
    }
}

fn digit_form(digits: &str) -> BinaryForm {
    BinaryForm::new(digits.bytes().map(|b| BigInt::from(b - b'0')).collect()).expect("non-empty")
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Degree-65 numerator: `-i` at prime `i`, else `1`.
pub fn prime_rule_coefficients() -> Vec<BigInt> {
    (0..=65).map(|i| BigInt::from(if is_prime(i) { -i } else { 1 })).collect()
}

/// Degree-65 denominator: `1` for `i <= 33`, else `-1`.
pub fn sign_rule_coefficients() -> Vec<BigInt> {
    (0..=65).map(|i| BigInt::from(if i <= 33 { 1 } else { -1 })).collect()
}

fn build_ex1() -> MapLift {
    MapLift::new(digit_form(EX1_PI.digits()), digit_form(EX1_E.digits())).expect("nonzero resultant")
}

fn build_ex2() -> MapLift {
    let f = BinaryForm::new(prime_rule_coefficients()).expect("non-empty");
    let g = BinaryForm::new(sign_rule_coefficients()).expect("non-empty");
    MapLift::new(f, g).expect("nonzero resultant")
}

fn build_ex3() -> MapLift {
    let a = PI_201.integer();
    let one = BigInt::from(1);
    let f = BinaryForm::new(vec![one.clone(), one.clone(), one.clone()]).expect("non-empty");
    let g = BinaryForm::new(vec![one, a, BigInt::from(2)]).expect("non-empty");
    MapLift::new(f, g).expect("nonzero resultant")
}

fn build_ex4() -> MapLift {
    let a = RSA_768.integer();
    let (zero, one) = (BigInt::from(0), BigInt::from(1));
    let f = BinaryForm::new(vec![a, zero.clone(), one.clone()]).expect("non-empty");
    let g = BinaryForm::new(vec![zero.clone(), one, zero]).expect("non-empty");
    MapLift::new(f, g).expect("nonzero resultant")
}

pub static FIXTURES: [Fixture; 4] = [
    Fixture {
        id: "ex1",
        title: "degree 80, coefficients from the digits of pi and e",
        degree: 80,
        point: (-5, 1),
        terms: 50,
        resultant: "516438964415067184645... (654 bits) = 2^8 * 3^2 * R'",
        expected: &[
            Expected { label: "nonarch", value: "0.044907161659276960113044136254" },
            Expected { label: "arch", value: "-0.013757185585214127675440651473" },
            Expected { label: "naive", value: "1.6094379124341003746007593332" },
            Expected { label: "canonical", value: "1.5782879363600375421631558484" },
            Expected { label: "modulus_bits", value: "32674" },
        ],
        notes: "F, G homogenize z^80..z^0 with coefficients the leading 81 digits of pi and e \
                as 85-bit binary values (the true decimal digits give a different orbit: g_0 = 1). \
                g = 36, 2, 12, then 2 at odd and 4 at even indices.",
        build: build_ex1,
    },
    Fixture {
        id: "ex2",
        title: "degree 65, coefficients from prime and sign rules",
        degree: 65,
        point: (0, 1),
        terms: 50,
        resultant: "201910883195612036622... (433 bits) = 3^3 * 19 * R'",
        expected: &[
            Expected { label: "nonarch", value: "0.0014769884100219430907588636039" },
            Expected { label: "arch", value: "-0.0014773310580301870814703316397" },
            Expected { label: "naive", value: "0" },
            Expected { label: "canonical", value: "0.00000034264800824399071146803578925" },
        ],
        notes: "a_i = -i for prime i else 1; b_i = 1 for i <= 33 else -1. \
                g takes values in {1, 19, 27, 513} with period 20.",
        build: build_ex2,
    },
    Fixture {
        id: "ex3",
        title: "z -> (z^2 + z + 1)/(z^2 + a z + 2), a = first 201 digits of pi",
        degree: 2,
        point: (1, 1),
        terms: 50,
        resultant: "a^2 - 3a + 3 = 3 * 7 * 61 * R'",
        expected: &[
            Expected { label: "nonarch", value: "0.62900702" },
            Expected { label: "arch", value: "-308.06749879" },
            Expected { label: "naive", value: "0" },
            Expected { label: "canonical", value: "307.43849177" },
        ],
        notes: "g takes values in {1, 3}.",
        build: build_ex3,
    },
    Fixture {
        id: "ex4",
        title: "z -> a z + 1/z, a = RSA-768",
        degree: 2,
        point: (0, 0),
        terms: 50,
        resultant: "a",
        expected: &[
            Expected { label: "nonarch", value: "133.0260806" },
            Expected { label: "arch", value: "-532.1043224" },
            Expected { label: "naive", value: "532.1043224" },
            Expected { label: "canonical", value: "931.1825642" },
        ],
        notes: "P = [a, 1]. g_1 = a and every other g_i = 1 (g_0 = 1 since gcd(a^3 + 1, a) = 1). \
                Each archimedean term lies strictly below -log a.",
        build: build_ex4,
    },
];

pub fn find(id: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.id.eq_ignore_ascii_case(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::{Signed, Zero};

    #[test]
    fn checksums_match() {
        for f in DATA_FILES {
            assert!(f.verify(), "{} changed", f.name);
        }
    }

    #[test]
    fn digit_lengths() {
        assert_eq!(EX1_PI.digits().len(), 81);
        assert_eq!(EX1_E.digits().len(), 81);
        assert_eq!(PI_201.digits().len(), 201);
        assert_eq!(RSA_768.integer().bits(), 768);
    }

    #[test]
    fn catalog() {
        assert_eq!(FIXTURES.len(), 4);
        let ex1 = find("ex1").unwrap();
        assert_eq!((ex1.degree, ex1.point), (80, (-5, 1)));
        assert_eq!(ex1.lift().degree(), 80);
        assert!(find("ex3").unwrap().resultant.contains("a^2 - 3a + 3"));
        assert!(find("EX2").is_some());
        assert!(find("ex5").is_none());
    }

    #[test]
    fn resultants() {
        let a = PI_201.integer();
        assert_eq!(find("ex3").unwrap().lift().resultant().abs(), &a * &a - 3 * &a + 3);
        assert_eq!(find("ex4").unwrap().lift().resultant().abs(), RSA_768.integer());
        let r1 = find("ex1").unwrap().lift().resultant_abs();
        assert!(r1.to_string().starts_with("516438964415067184645"));
        assert!((&r1 % BigUint::from(256u32 * 9)).is_zero());
        assert_eq!(r1.bits(), 654);
    }
}
