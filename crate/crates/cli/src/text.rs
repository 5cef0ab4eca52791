//! The text formats: multivectors, index lists, vectors, operators and states.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use grassmann_core::fermion::{NormalOrderedOperator, Order};
use grassmann_core::{Blade, Gaussian, IndexTuple, Multivector, Rational, Scalar, MAX_DIM};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

/// Scalars with a text form.
pub trait ScalarText: Scalar {
    /// Name used by `--field`.
    const FIELD: &'static str;

    /// `(negative, magnitude)` for printing a term; the magnitude of `1` is `"1"`.
    fn split(&self) -> (bool, String);

    /// Parses a parenthesised coefficient `(a+bi)`; the parens are included in `s`.
    fn parse_complex(s: &str, pos: usize) -> Result<Self, ParseError>;

    fn from_rational(q: Rational) -> Self;

    /// Full text, sign included.
    fn text(&self) -> String {
        let (neg, mag) = self.split();
        if neg {
            format!("-{mag}")
        } else {
            mag
        }
    }
}

fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl ScalarText for Rational {
    const FIELD: &'static str = "rational";

    fn split(&self) -> (bool, String) {
        (self.is_negative(), rational_text(&self.abs()))
    }

    fn parse_complex(_s: &str, pos: usize) -> Result<Self, ParseError> {
        err(pos, "complex coefficients need --field gaussian")
    }

    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl ScalarText for Gaussian {
    const FIELD: &'static str = "gaussian";

    fn split(&self) -> (bool, String) {
        if self.im.is_zero() {
            return self.re.split();
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        (false, format!("({}{}{}i)", rational_text(&self.re), sign, rational_text(&self.im.abs())))
    }

    fn parse_complex(s: &str, pos: usize) -> Result<Self, ParseError> {
        let inner = &s[1..s.len() - 1];
        let body = inner.strip_suffix('i').ok_or(ParseError { pos, msg: "expected `(a+bi)`".into() })?;
        // the sign splitting the parts is the last `+` or `-` not at the start
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or(ParseError { pos, msg: "expected `(a+bi)`".into() })?;
        let re = parse_rational(&body[..cut], pos + 1)?;
        let im_text = &body[cut..];
        let im = match im_text {
            "+" => Rational::one(),
            "-" => -Rational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t), pos + 1 + cut)?,
        };
        Ok(Gaussian::new(re, im))
    }

    fn from_rational(q: Rational) -> Self {
        Gaussian::from(q)
    }
}

/// `int ('/' posint)?` with an optional leading `-`.
pub fn parse_rational(s: &str, pos: usize) -> Result<Rational, ParseError> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return err(pos, format!("invalid number `{s}`"));
    }
    let n = BigInt::from_str(num).map_err(|_| ParseError { pos, msg: format!("invalid number `{s}`") })?;
    let d = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => BigInt::from_str(d).unwrap(),
        Some(_) => return err(pos, format!("invalid denominator in `{s}`")),
    };
    if d.is_zero() {
        return err(pos, "zero denominator");
    }
    Ok(Rational::new(n, d))
}

/// `e13` for `n <= 9`, `e{1,3}` otherwise; `1` for the scalar blade.
pub fn blade_text(n: usize, b: Blade) -> String {
    if b.is_scalar() {
        return "1".into();
    }
    if n <= 9 {
        let mut s = String::from("e");
        for i in b.indices() {
            let _ = write!(s, "{i}");
        }
        s
    } else {
        braced_blade(b)
    }
}

/// `e{1,3}`, whatever the dimension; `e{}` for the scalar blade.
pub fn braced_blade(b: Blade) -> String {
    let idx: Vec<String> = b.indices().map(|i| i.to_string()).collect();
    format!("e{{{}}}", idx.join(","))
}

/// Canonical multivector text.
pub fn mv_text<S: ScalarText>(m: &Multivector<S>) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let n = m.dim();
    let mut out = String::new();
    for (k, (b, c)) in m.terms().enumerate() {
        let (neg, mag) = c.split();
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if b.is_scalar() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&blade_text(n, b));
        } else {
            let _ = write!(out, "{mag}*{}", blade_text(n, b));
        }
    }
    out
}

/// Terms as `+c e{..}` joined by spaces; `0` for zero.
pub fn state_text<S: ScalarText>(m: &Multivector<S>) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = m
        .terms()
        .map(|(b, c)| {
            let (neg, mag) = c.split();
            format!("{}{} {}", if neg { '-' } else { '+' }, mag, braced_blade(b))
        })
        .collect();
    terms.join(" ")
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }
}

fn parse_blade(cur: &mut Cursor<'_>, n: usize) -> Result<(i8, Blade), ParseError> {
    let start = cur.pos;
    if cur.eat(b'1') {
        return Ok((1, Blade::SCALAR));
    }
    if !cur.eat(b'e') {
        return err(start, "expected a blade");
    }
    let mut idx: Vec<usize> = Vec::new();
    if cur.eat(b'{') {
        loop {
            let at = cur.pos;
            let d = cur.take_while(|c| c.is_ascii_digit());
            if d.is_empty() {
                return err(at, "expected an index");
            }
            idx.push(d.parse().map_err(|_| ParseError { pos: at, msg: "index too large".into() })?);
            if cur.eat(b'}') {
                break;
            }
            if !cur.eat(b',') {
                return err(cur.pos, "expected `,` or `}`");
            }
        }
    } else {
        let d = cur.take_while(|c| c.is_ascii_digit());
        if d.is_empty() {
            return err(cur.pos, "expected blade indices");
        }
        if n > 9 {
            return err(start, "compact blades like `e12` need n <= 9; write `e{1,2}`");
        }
        idx.extend(d.bytes().map(|b| usize::from(b - b'0')));
    }
    if let Some(&i) = idx.iter().find(|&&i| i == 0 || i > n) {
        return err(start, format!("index {i} out of range 1..={n}"));
    }
    let bytes: Vec<u8> = idx.iter().map(|&i| i as u8).collect();
    let t = IndexTuple::new(&bytes).map_err(|e| ParseError { pos: start, msg: e.to_string() })?;
    Ok(t.to_signed_blade())
}

fn parse_coeff<S: ScalarText>(cur: &mut Cursor<'_>) -> Result<S, ParseError> {
    let start = cur.pos;
    if cur.peek() == Some(b'(') {
        let close = cur.src[start..].find(')').ok_or(ParseError { pos: start, msg: "unclosed `(`".into() })?;
        let text: String = cur.src[start..=start + close].chars().filter(|c| !c.is_whitespace()).collect();
        cur.pos = start + close + 1;
        return S::parse_complex(&text, start);
    }
    let text = cur.take_while(|c| c.is_ascii_digit() || c == b'/');
    Ok(S::from_rational(parse_rational(text, start)?))
}

/// Parses the multivector grammar in dimension `n`.
pub fn parse_mv<S: ScalarText>(n: usize, src: &str) -> Result<Multivector<S>, ParseError> {
    if n == 0 || n > MAX_DIM {
        return err(0, format!("dimension must be in 1..={MAX_DIM}"));
    }
    let mut cur = Cursor { src, pos: 0 };
    let mut terms: Vec<(Blade, S)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return err(0, "empty input");
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign_pos = cur.pos;
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return err(sign_pos, "expected `+` or `-`");
        };
        first = false;
        cur.skip_ws();
        let (coeff, (s, blade)) = match cur.peek() {
            Some(b'e') => (S::one(), parse_blade(&mut cur, n)?),
            Some(c) if c.is_ascii_digit() || c == b'(' => {
                let c = parse_coeff::<S>(&mut cur)?;
                cur.skip_ws();
                if cur.eat(b'*') {
                    cur.skip_ws();
                    (c, parse_blade(&mut cur, n)?)
                } else {
                    (c, (1, Blade::SCALAR))
                }
            }
            _ => return err(cur.pos, "expected a coefficient or a blade"),
        };
        let mut c = coeff * S::from_i64(s.into());
        if negative {
            c = -c;
        }
        terms.push((blade, c));
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Multivector::from_terms(n, terms).map_err(|e| ParseError { pos: 0, msg: e.to_string() })
}

/// Vectors separated by `;`, each in the multivector grammar and of grade 1.
pub fn parse_vectors<S: ScalarText>(n: usize, src: &str) -> Result<Vec<Vec<S>>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(';') {
        let m = parse_mv::<S>(n, part).map_err(|e| ParseError { pos: e.pos + offset, msg: e.msg })?;
        if m.terms().any(|(b, _)| b.grade() != 1) {
            return err(offset, "expected a vector");
        }
        out.push(m.vector_coords());
        offset += part.len() + 1;
    }
    Ok(out)
}

/// An index list: digits (`2347`), a comma list (`2,3,4,7`), or `{}` for the empty list.
/// Only the syntax is checked here.
pub fn parse_indices(src: &str) -> Result<Vec<u8>, ParseError> {
    let s = src.trim();
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        let mut pos = src.find(s).unwrap_or(0);
        let mut out = Vec::new();
        for t in s.split(',') {
            match t.trim().parse::<u8>() {
                Ok(i) => out.push(i),
                Err(_) => return err(pos, format!("invalid index `{t}`")),
            }
            pos += t.len() + 1;
        }
        Ok(out)
    } else if let Some(k) = s.bytes().position(|b| !b.is_ascii_digit()) {
        err(k, format!("invalid index list `{src}`"))
    } else {
        Ok(s.bytes().map(|b| b - b'0').collect())
    }
}

fn list(b: Blade) -> String {
    let idx: Vec<String> = b.indices().map(|i| i.to_string()).collect();
    idx.join(",")
}

/// `+c a+[..] a[..]` terms; `Id` for the identity, `0` for zero.
pub fn operator_text<S: ScalarText>(op: &NormalOrderedOperator<S>) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let terms: Vec<(&S, Blade, Blade)> = op.terms().collect();
    if let [(c, cr, an)] = terms.as_slice() {
        if cr.is_scalar() && an.is_scalar() && c.is_one() {
            return "Id".into();
        }
    }
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(c, cr, an)| {
            let (neg, mag) = c.split();
            let up = (!cr.is_scalar()).then(|| format!("a+[{}]", list(cr)));
            let down = (!an.is_scalar()).then(|| format!("a[{}]", list(an)));
            let factors: Vec<String> = match op.order() {
                Order::CreateAnnihilate => [up, down],
                Order::AnnihilateCreate => [down, up],
            }
            .into_iter()
            .flatten()
            .collect();
            let body = if factors.is_empty() { "Id".to_string() } else { factors.join(" ") };
            format!("{}{} {}", if neg { '-' } else { '+' }, mag, body)
        })
        .collect();
    parts.join(" ")
}

/// Coordinates as texts, for structured output.
pub fn coords_text<S: ScalarText>(v: &[S]) -> Vec<String> {
    v.iter().map(ScalarText::text).collect()
}
