//! Text grammar for maps and points.
//!
//! Maps are written either as a pair of forms,
//!
//! ```text
//! F = 3X^2 + XY - 7Y^2; G = X*Y
//! ```
//!
//! or as a rational function of `z` that is homogenized to its degree,
//!
//! ```text
//! phi(z) = (z^2 + z + 1)/(z^2 + 5z + 2)
//! ```
//!
//! Multiplication may be written with `*` or by juxtaposition; `^` takes a
//! non-negative integer exponent; integer literals have no size limit. `#`
//! starts a comment that runs to the end of the line.
//!
//! Points are `P = [x, y]`, `P = x` (meaning `[x, 1]`), or the same without
//! the `P =` prefix, with integer or fractional coordinates. `inf` is `[1, 0]`.

use std::collections::BTreeMap;
use std::fmt;

use dynheight_core::{normalize_point, BinaryForm, ProjectivePoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A failure to parse, with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} (at offset {offset})")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

fn fail<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        message: message.into(),
        offset,
    })
}

/// Exponents above this are rejected rather than expanded.
const MAX_EXPONENT: u32 = 10_000;

/// Sparse polynomial in `X` and `Y`, keyed by `(deg_X, deg_Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Poly(BTreeMap<(u32, u32), BigInt>);

impl Poly {
    fn constant(c: BigInt) -> Poly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Poly(m)
    }

    fn var(x: u32, y: u32) -> Poly {
        let mut m = BTreeMap::new();
        m.insert((x, y), BigInt::one());
        Poly(m)
    }

    fn add(mut self, other: &Poly, sign: i32) -> Poly {
        for (k, v) in &other.0 {
            let e = self.0.entry(*k).or_default();
            if sign < 0 {
                *e -= v;
            } else {
                *e += v;
            }
        }
        self.0.retain(|_, v| !v.is_zero());
        self
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((a, b), u) in &self.0 {
            for ((c, d), v) in &other.0 {
                *out.entry((a + c, b + d)).or_default() += u * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly(out)
    }

    fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn neg(mut self) -> Poly {
        for v in self.0.values_mut() {
            *v = -std::mem::take(v);
        }
        self
    }

    /// `Some(d)` when every term has total degree `d`; zero gives `None`.
    fn homogeneous_degree(&self) -> Result<Option<u32>, ()> {
        let mut degs = self.0.keys().map(|(a, b)| a + b);
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(())
        }
    }

    /// Coefficients of a form of degree `d`, descending in `X`.
    fn to_form(&self, d: u32) -> BinaryForm {
        let mut coeffs = vec![BigInt::zero(); d as usize + 1];
        for ((_, y), v) in &self.0 {
            coeffs[*y as usize] = v.clone();
        }
        BinaryForm::new(coeffs).expect("degree + 1 coefficients")
    }

    /// Degree in the single variable stored in the `X` slot.
    fn univariate_degree(&self) -> Option<u32> {
        self.0.keys().map(|(a, _)| *a).max()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Vars {
    /// `X` and `Y` (either case).
    Homogeneous,
    /// `z` only, stored in the `X` slot.
    Affine,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: Vars) -> Self {
        Parser { src, pos: 0, vars }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => fail(self.pos, format!("expected '{c}', found '{found}'")),
                None => fail(self.pos, format!("expected '{c}', found end of input")),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let n = r.bytes().take_while(u8::is_ascii_digit).count();
            &r[..n]
        };
        if digits.is_empty() {
            return fail(self.pos, "expected an integer");
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    /// term := power (['*'] power)*
    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some(c) => self.variable(c).is_some(),
            None => false,
        }
    }

    fn variable(&self, c: char) -> Option<(u32, u32)> {
        match (self.vars, c) {
            (Vars::Homogeneous, 'X' | 'x') => Some((1, 0)),
            (Vars::Homogeneous, 'Y' | 'y') => Some((0, 1)),
            (Vars::Affine, 'z' | 'Z') => Some((1, 0)),
            _ => None,
        }
    }

    /// power := atom ['^' integer]
    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let e = self.integer()?;
            match e.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => fail(at, format!("exponent {e} exceeds {MAX_EXPONENT}")),
            }
        } else {
            Ok(base)
        }
    }

    /// atom := integer | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.integer()?)),
            Some(c) => match self.variable(c) {
                Some((x, y)) => {
                    self.pos += c.len_utf8();
                    Ok(Poly::var(x, y))
                }
                None => fail(self.pos, format!("unexpected '{c}'")),
            },
            None => fail(self.pos, "unexpected end of input"),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => fail(self.pos, format!("unexpected '{c}' after expression")),
        }
    }
}

/// Parses `F = ...; G = ...` or `phi(z) = (...)/(...)` into a form pair of
/// equal degree. Resultant and degree checks are left to `MapLift::new`.
pub fn parse_map(text: &str) -> Result<(BinaryForm, BinaryForm), ParseError> {
    let stripped = strip_comments(text);
    let trimmed = stripped.trim_start();
    let lead = stripped.len() - trimmed.len();
    if starts_with_ident(trimmed, "phi") {
        parse_rational(&stripped, lead)
    } else {
        parse_pair(&stripped)
    }
}

/// Blanks out comments, keeping byte offsets intact.
fn strip_comments(text: &str) -> String {
    text.split('\n')
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn starts_with_ident(s: &str, ident: &str) -> bool {
    s.starts_with(ident) && !s[ident.len()..].starts_with(|c: char| c.is_ascii_alphanumeric())
}

fn parse_pair(text: &str) -> Result<(BinaryForm, BinaryForm), ParseError> {
    let mut defs: [Option<(Poly, usize)>; 2] = [None, None];
    let mut offset = 0;
    for chunk in text.split(';') {
        let chunk_start = offset;
        offset += chunk.len() + 1;
        if chunk.trim().is_empty() {
            continue;
        }
        let Some(eq) = chunk.find('=') else {
            return fail(chunk_start, "expected 'F = ...' or 'G = ...'");
        };
        let name = chunk[..eq].trim();
        let slot = match name {
            "F" | "f" => 0,
            "G" | "g" => 1,
            _ => return fail(chunk_start, format!("unknown form name '{name}'")),
        };
        if defs[slot].is_some() {
            return fail(chunk_start, format!("{name} defined twice"));
        }
        let body_start = chunk_start + eq + 1;
        let body = &chunk[eq + 1..];
        let poly = parse_poly(body, body_start, Vars::Homogeneous)?;
        defs[slot] = Some((poly, body_start));
    }
    let [Some((f, f_at)), Some((g, g_at))] = defs else {
        return fail(text.len(), "both F and G must be given");
    };
    let df = f
        .homogeneous_degree()
        .or_else(|_| fail(f_at, "F is not homogeneous"))?;
    let dg = g
        .homogeneous_degree()
        .or_else(|_| fail(g_at, "G is not homogeneous"))?;
    let d = match (df, dg) {
        (Some(a), Some(b)) if a == b => a,
        (Some(a), Some(b)) => return fail(g_at, format!("F has degree {a} but G has degree {b}")),
        (None, _) => return fail(f_at, "F is zero"),
        (_, None) => return fail(g_at, "G is zero"),
    };
    Ok((f.to_form(d), g.to_form(d)))
}

fn parse_rational(text: &str, lead: usize) -> Result<(BinaryForm, BinaryForm), ParseError> {
    let after = lead + "phi".len();
    let mut p = Parser {
        src: text,
        pos: after,
        vars: Vars::Affine,
    };
    p.expect('(')?;
    if !matches!(p.peek(), Some('z' | 'Z')) {
        return fail(p.pos, "expected 'phi(z)'");
    }
    p.pos += 1;
    p.expect(')')?;
    p.expect('=')?;
    let num = p.expr()?;
    let den = if p.eat('/') { p.power()? } else { Poly::constant(BigInt::one()) };
    p.eat(';');
    p.end()?;
    if den.0.is_empty() {
        return fail(after, "denominator is zero");
    }
    let d = num.univariate_degree().unwrap_or(0).max(den.univariate_degree().unwrap_or(0));
    Ok((homogenize(&num, d), homogenize(&den, d)))
}

/// `Y^d p(X/Y)`.
fn homogenize(p: &Poly, d: u32) -> BinaryForm {
    let mut coeffs = vec![BigInt::zero(); d as usize + 1];
    for ((k, _), v) in &p.0 {
        coeffs[(d - k) as usize] = v.clone();
    }
    BinaryForm::new(coeffs).expect("degree + 1 coefficients")
}

fn parse_poly(body: &str, base: usize, vars: Vars) -> Result<Poly, ParseError> {
    let mut p = Parser::new(body, vars);
    let out = p.expr().and_then(|e| p.end().map(|_| e));
    out.map_err(|e| ParseError {
        offset: e.offset + base,
        ..e
    })
}

/// Parses a point; see the module docs for the accepted forms.
pub fn parse_point(text: &str) -> Result<ProjectivePoint, ParseError> {
    let mut s = text.trim();
    let mut base = text.len() - text.trim_start().len();
    if let Some(rest) = s.strip_prefix('P').or_else(|| s.strip_prefix('p')) {
        let r = rest.trim_start();
        if let Some(r) = r.strip_prefix('=') {
            base += s.len() - r.len();
            s = r;
        }
    }
    let inner = s.trim();
    base += s.len() - s.trim_start().len();
    if inner.eq_ignore_ascii_case("inf") || inner.eq_ignore_ascii_case("infinity") {
        return Ok(ProjectivePoint::infinity());
    }
    let (x, y) = if let Some(body) = inner.strip_prefix('[') {
        let Some(body) = body.strip_suffix(']') else {
            return fail(base + inner.len(), "expected ']'");
        };
        let Some(comma) = body.find(',') else {
            return fail(base + 1, "expected '[x, y]'");
        };
        let x = parse_rational_literal(&body[..comma], base + 1)?;
        let y = parse_rational_literal(&body[comma + 1..], base + 2 + comma)?;
        (x, y)
    } else {
        (parse_rational_literal(inner, base)?, BigRational::one())
    };
    normalize_point(&x, &y).or_else(|_| fail(base, "the point [0, 0] is not in P^1"))
}

fn parse_rational_literal(text: &str, base: usize) -> Result<BigRational, ParseError> {
    let t = text.trim();
    let at = base + (text.len() - text.trim_start().len());
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim_start()),
    };
    let int = |s: &str| -> Result<BigInt, ParseError> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return fail(at, format!("'{t}' is not an integer or fraction"));
        }
        Ok(s.parse().expect("ascii digits"))
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return fail(at, "zero denominator");
            }
            BigRational::new(int(n)?, d)
        }
        None => BigRational::from_integer(int(body)?),
    };
    Ok(if neg { -value } else { value })
}

/// Renders a form in the `F = ...` grammar.
pub struct FormDisplay<'a>(pub &'a BinaryForm);

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.0.coefficients();
        let d = self.0.degree();
        let mut first = true;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (d - i, i);
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one() && (xe + ye) > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            for (v, e) in [('X', xe), ('Y', ye)] {
                match e {
                    0 => {}
                    1 => write!(f, "{v}")?,
                    _ => write!(f, "{v}^{e}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
