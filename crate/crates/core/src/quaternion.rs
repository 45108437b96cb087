//! Real quaternions `w + xi + yj + zk` over `f64`.
//!
//! Multiplication is the Hamilton product (`i² = j² = k² = ijk = -1`), so the
//! order of factors matters everywhere in this crate.
//!
//! The text form accepted by [`Quaternion::from_str`] is a signed sum of
//! coefficient-first terms over `{1, i, j, k}` with an implicit coefficient of
//! one, e.g. `"3i-k"`, `"-1+j+k"` or `"0"`. Whitespace is ignored.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default absolute tolerance for comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm `√(w²+x²+y²+z²)`.
    #[inline]
    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary for the magnitudes used here
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.norm_sqr() == 0.0
    }

    /// Multiplicative inverse `conj(q)/‖q‖²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// True when `‖self − other‖ ≤ tol`.
    #[inline]
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    /// Splits `w + xi + yj + zk = X + jY` into complex parts
    /// `X = w + xi` and `Y = y − zi`.
    #[inline]
    pub fn complex_parts(self) -> (num_complex::Complex64, num_complex::Complex64) {
        (
            num_complex::Complex64::new(self.w, self.x),
            num_complex::Complex64::new(self.y, -self.z),
        )
    }

    /// Inverse of [`Quaternion::complex_parts`]: builds `X + jY`.
    #[inline]
    pub fn from_complex_parts(x: num_complex::Complex64, y: num_complex::Complex64) -> Self {
        Self::new(x.re, x.im, y.re, -y.im)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (r.w, r.x, r.y, r.z);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, t: f64) -> Self {
        Self::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, t: f64) -> Self {
        Self::new(self.w / t, self.x / t, self.y / t, self.z / t)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")];
        let mut first = true;
        for (coef, unit) in terms {
            if coef == 0.0 {
                continue;
            }
            if coef < 0.0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let mag = coef.abs();
            if unit.is_empty() || mag != 1.0 {
                write!(f, "{mag}")?;
            }
            f.write_str(unit)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }
}

/// Convenience wrapper around [`Quaternion::from_str`].
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    text.parse()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, text }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(o, _)| o)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.offset(), message: message.into() }
    }

    fn parse(mut self) -> Result<Quaternion> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut acc = Quaternion::ZERO;
        let mut first = true;
        while self.peek().is_some() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1.0
                }
                Some('-') => {
                    self.pos += 1;
                    -1.0
                }
                _ if first => 1.0,
                Some(c) => return Err(self.err(format!("expected '+' or '-', found '{c}'"))),
                None => unreachable!(),
            };
            first = false;
            acc += self.term()? * sign;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Quaternion> {
        let start = self.pos;
        let coef = self.number()?;
        let unit = match self.peek() {
            Some('i') => Some(Quaternion::I),
            Some('j') => Some(Quaternion::J),
            Some('k') => Some(Quaternion::K),
            _ => None,
        };
        if unit.is_some() {
            self.pos += 1;
        }
        match (coef, unit) {
            (None, None) => {
                self.pos = start;
                match self.peek() {
                    Some(c) => Err(self.err(format!("expected a term, found '{c}'"))),
                    None => Err(self.err("expected a term, found end of input")),
                }
            }
            (Some(c), None) => Ok(Quaternion::real(c)),
            (c, Some(u)) => Ok(u * c.unwrap_or(1.0)),
        }
    }

    fn number(&mut self) -> Result<Option<f64>> {
        let start = self.pos;
        let mut s = String::new();
        let mut digits = 0;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits += 1;
            } else if c != '.' {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            return Ok(None);
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.err("malformed number"));
        }
        // exponent only when followed by digits, so that "2e" is rejected cleanly
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            let mut exp = String::from("e");
            self.pos += 1;
            if let Some(c @ ('+' | '-')) = self.peek() {
                exp.push(c);
                self.pos += 1;
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                exp.push(c);
                exp_digits += 1;
                self.pos += 1;
            }
            if exp_digits == 0 {
                self.pos = save;
                return Err(self.err("malformed exponent"));
            }
            s.push_str(&exp);
        }
        s.parse::<f64>().map(Some).map_err(|_| {
            self.pos = start;
            self.err(format!("malformed number '{s}'"))
        })
    }
}

/// Serialized as a `[w, x, y, z]` array; deserialized from either that array
/// or a text string in the grammar above.
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuatRepr {
    Array([f64; 4]),
    Text(String),
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match QuatRepr::deserialize(deserializer)? {
            QuatRepr::Array(a) => Ok(Quaternion::from_array(a)),
            QuatRepr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
