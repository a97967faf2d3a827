//! Exact Laurent polynomials in one variable with arbitrary-precision
//! integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `Σ cᵢ tⁱ`. The coefficient vector never has zero entries at either end,
/// and the zero polynomial is the empty vector.
///
/// Serializes as its printed form, e.g. `"1 - t + t^2"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::from_coeffs(e, vec![c.into()])
    }

    /// Coefficients starting at exponent `low`.
    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Difference between the highest and lowest exponents.
    pub fn span(&self) -> i64 {
        self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Replaces `t` by `t⁻¹`.
    pub fn reflect(&self) -> Self {
        match self.high_degree() {
            None => Self::zero(),
            Some(h) => LaurentPolynomial {
                low: -h,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiply by `±t^k` so the lowest exponent is 0 and the constant term
    /// is positive.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        if coeffs[0].is_negative() {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        LaurentPolynomial { low: 0, coeffs }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs[0].is_positive())
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self` in
    /// `Z[t, t⁻¹]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Both sides have nonzero constant terms after shifting, so the
        // quotient is an honest polynomial times t^(low difference).
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        let lead = d.last().expect("nonzero");
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let c = top / lead;
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - divisor.low, q))
    }
}

impl Zero for LaurentPolynomial {
    fn zero() -> Self {
        LaurentPolynomial::zero()
    }

    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
}

impl One for LaurentPolynomial {
    fn one() -> Self {
        LaurentPolynomial::one()
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        LaurentPolynomial::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().unwrap().max(rhs.high_degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        LaurentPolynomial::from_coeffs(low, coeffs)
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> Self {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut acc = Self::zero();
        let mut pos = 0;
        let mut negative = false;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
            pos += 1;
        }
        loop {
            let cut = [" + ", " - "].iter().filter_map(|sep| rest.find(sep)).min();
            let (term, next) = match cut {
                Some(k) => (&rest[..k], Some(&rest[k..])),
                None => (rest, None),
            };
            let mut mono = parse_term(term).map_err(|m| Error::parse(pos, m))?;
            if negative {
                mono = -mono;
            }
            acc = &acc + &mono;
            let Some(next) = next else { break };
            negative = next.starts_with(" - ");
            pos += term.len() + 3;
            rest = &next[3..];
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<LaurentPolynomial, String> {
    let bad = || format!("bad term '{term}'");
    let (coef, var) = match term.split_once('*') {
        Some((c, v)) => (c.parse::<BigInt>().map_err(|_| bad())?, Some(v)),
        None if term.starts_with('t') => (BigInt::one(), Some(term)),
        None => (term.parse::<BigInt>().map_err(|_| bad())?, None),
    };
    let exp = match var {
        None => 0,
        Some("t") => 1,
        Some(v) => v
            .strip_prefix("t^")
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(bad)?,
    };
    Ok(LaurentPolynomial::monomial(coef, exp))
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
