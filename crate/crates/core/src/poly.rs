//! Integer polynomials in `z` (the Conway variable) and Laurent polynomials in
//! `t` (used by the Burau route).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// A polynomial `c0 + c1 z + c2 z^2 + ...` with exact integer coefficients.
///
/// The coefficient vector never carries trailing zeros, so structural equality
/// is polynomial equality. For a knot only even powers occur and `c0 = 1`; for
/// a two-component link only odd powers occur.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConwayPolynomial {
    coeffs: Vec<BigInt>,
}

impl ConwayPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Self { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// True when every odd coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// True when every even coefficient vanishes.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// Compact list form, e.g. `[1,0,1,0,-2]`.
    pub fn to_list_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "[0]".to_string();
        }
        let body: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        format!("[{}]", body.join(","))
    }

    /// Parses the compact list form. Whitespace around entries is tolerated.
    pub fn parse_list(text: &str) -> Result<Self, ParseError> {
        let trimmed = text.trim();
        let offset = text.len() - text.trim_start().len();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ParseError::at(text, offset, "expected a coefficient list like [1,0,1]"))?;
        if inner.trim().is_empty() {
            return Err(ParseError::at(text, offset, "empty coefficient list"));
        }
        let mut coeffs = Vec::new();
        let mut pos = offset + 1;
        for entry in inner.split(',') {
            let value = entry.trim();
            let lead = entry.len() - entry.trim_start().len();
            let c = BigInt::from_str(value)
                .map_err(|_| ParseError::at(text, pos + lead, format!("invalid integer `{value}`")))?;
            coeffs.push(c);
            pos += entry.len() + 1;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

impl FromStr for ConwayPolynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_list(s)
    }
}

/// Pretty form: ascending powers with explicit coefficients, `1 + 1*z^2 - 2*z^4`.
impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Add for &ConwayPolynomial {
    type Output = ConwayPolynomial;
    fn add(self, rhs: Self) -> ConwayPolynomial {
        ConwayPolynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &ConwayPolynomial {
    type Output = ConwayPolynomial;
    fn sub(self, rhs: Self) -> ConwayPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ConwayPolynomial {
    type Output = ConwayPolynomial;
    fn neg(self) -> ConwayPolynomial {
        ConwayPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ConwayPolynomial {
    type Output = ConwayPolynomial;
    fn mul(self, rhs: Self) -> ConwayPolynomial {
        ConwayPolynomial::from_coeffs(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ConwayPolynomial {
            type Output = ConwayPolynomial;
            fn $m(self, rhs: Self) -> ConwayPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Laurent polynomial `sum c_i t^(low + i)` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        Self::new(exp, vec![BigInt::from(c)])
    }

    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut l = Self { low, coeffs };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent; meaningless for zero.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        if exp < self.low {
            return BigInt::zero();
        }
        self.coeffs.get((exp - self.low) as usize).cloned().unwrap_or_default()
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        Self::new(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.low + rhs.low, mul_slices(&self.coeffs, &rhs.coeffs))
    }

    /// Exact division by a nonzero divisor. Returns `None` when the quotient is
    /// not a Laurent polynomial with integer coefficients.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let d = &divisor.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let lead = d.last().expect("nonzero divisor");
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &q * dj;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - divisor.low, quot))
    }
}
