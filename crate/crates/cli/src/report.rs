//! Text and JSON renderings of a computed breakdown. Every number is carried
//! as a decimal string.

use std::fmt::Write as _;

use dynheight_core::{HeightBreakdown, MapLift, ProjectivePoint, Real};
use serde::{Deserialize, Serialize};

pub const FORMAT_NAME: &str = "dynheight-report";
pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub version: String,
    pub map: MapSummary,
    pub point: [String; 2],
    pub terms: String,
    pub precision_bits: String,
    pub naive_height: String,
    pub nonarch: NonArchSummary,
    pub arch: ArchSummary,
    pub canonical_height: String,
    pub error_bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<String>>,
    pub timing_ms: Timing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSummary {
    pub source: String,
    pub degree: String,
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub resultant_sign: String,
    pub resultant_bits: String,
    pub content: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonArchSummary {
    pub value: String,
    pub tail_bound: String,
    pub modulus_bits: String,
    pub factoring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_sequence: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchSummary {
    pub value: String,
    pub tail_bound: String,
    pub lambda_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub nonarch: String,
    pub arch: String,
    pub total: String,
}

/// A value at the full working precision.
pub fn value_string(x: &Real, bits: u32) -> String {
    x.to_decimal(Real::decimal_digits_for(bits))
}

/// A bound rounded up to six significant digits.
pub fn bound_string(x: &Real) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    (x + &x.abs().mul_pow2(-16)).to_decimal(6)
}

pub fn millis(d: std::time::Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

pub struct Inputs<'a> {
    pub source: String,
    pub lift: &'a MapLift,
    pub point: &'a ProjectivePoint,
    pub breakdown: &'a HeightBreakdown,
    pub precision_bits: u32,
    pub factoring: String,
    pub emit_g_sequence: bool,
    pub oracle: Option<&'a [Real]>,
    pub timing: Timing,
}

pub fn build(inp: Inputs<'_>) -> Report {
    let bits = inp.precision_bits;
    let hb = inp.breakdown;
    let strings = |v: &[num_bigint::BigInt]| v.iter().map(ToString::to_string).collect();
    Report {
        format: FORMAT_NAME.into(),
        version: FORMAT_VERSION.into(),
        map: MapSummary {
            source: inp.source,
            degree: inp.lift.degree().to_string(),
            f: strings(inp.lift.f().coefficients()),
            g: strings(inp.lift.g().coefficients()),
            resultant_sign: if inp.lift.resultant().sign() == num_bigint::Sign::Minus {
                "-".into()
            } else {
                "+".into()
            },
            resultant_bits: inp.lift.resultant_abs().bits().to_string(),
            content: inp.lift.content().to_string(),
        },
        point: [inp.point.x().to_string(), inp.point.y().to_string()],
        terms: hb.nonarch.terms.to_string(),
        precision_bits: bits.to_string(),
        naive_height: value_string(&hb.naive, bits),
        nonarch: NonArchSummary {
            value: value_string(&hb.nonarch.value, bits),
            tail_bound: bound_string(&hb.nonarch.tail_bound),
            modulus_bits: hb.nonarch.modulus_bits.to_string(),
            factoring: inp.factoring,
            g_sequence: inp
                .emit_g_sequence
                .then(|| hb.nonarch.g_sequence.iter().map(ToString::to_string).collect()),
        },
        arch: ArchSummary {
            value: value_string(&hb.arch.value, bits),
            tail_bound: bound_string(&hb.arch.tail_bound),
            lambda_bound: bound_string(&hb.arch.lambda_bound),
        },
        canonical_height: value_string(&hb.canonical, bits),
        error_bound: bound_string(&hb.error_bound),
        oracle: inp
            .oracle
            .map(|seq| seq.iter().map(|v| value_string(v, bits)).collect()),
        timing_ms: inp.timing,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.map;
        let sign = if m.resultant_sign == "-" { "negative" } else { "positive" };
        let _ = writeln!(s, "map         {}", m.source);
        let _ = writeln!(
            s,
            "            degree {}, |Res| {} bits ({sign}), content {}",
            m.degree, m.resultant_bits, m.content
        );
        let _ = writeln!(s, "point       [{}, {}]", self.point[0], self.point[1]);
        let _ = writeln!(s, "terms       {}", self.terms);
        let _ = writeln!(s, "precision   {} bits", self.precision_bits);
        let _ = writeln!(s, "h(P)        {}", self.naive_height);
        let n = &self.nonarch;
        let _ = writeln!(s, "H_0         {}", n.value);
        let _ = writeln!(s, "            tail <= {}, modulus {} bits, {}", n.tail_bound, n.modulus_bits, n.factoring);
        if let Some(gs) = &n.g_sequence {
            for (i, g) in gs.iter().enumerate() {
                let _ = writeln!(s, "            g_{i} = {g}");
            }
        }
        let a = &self.arch;
        let _ = writeln!(s, "H_inf       {}", a.value);
        let _ = writeln!(s, "            tail <= {}, |Lambda| <= {}", a.tail_bound, a.lambda_bound);
        let _ = writeln!(s, "h_hat(P)    {}", self.canonical_height);
        let _ = writeln!(s, "error       <= {}", self.error_bound);
        if let Some(seq) = &self.oracle {
            let _ = writeln!(s, "d^-n h(phi^n P)");
            for (i, v) in seq.iter().enumerate() {
                let _ = writeln!(s, "            n = {i}: {v}");
            }
        }
        let t = &self.timing_ms;
        let _ = writeln!(s, "time        nonarch {} ms, arch {} ms, total {} ms", t.nonarch, t.arch, t.total);
        s
    }
}
