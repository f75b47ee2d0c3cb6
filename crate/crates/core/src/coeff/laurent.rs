use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::Dense;

/// Laurent polynomial in the formal root `v` with rational coefficients.
///
/// No stored coefficient is ever zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `v -> v^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Greatest common divisor of all exponents (0 for constants and zero).
    pub fn exponent_stride(&self) -> i64 {
        self.terms.keys().fold(0i64, |g, &e| num_integer::Integer::gcd(&g, &e))
    }

    /// Dense coefficients of `self * v^-min_exp`, optionally compressing the
    /// variable by `stride` (all exponents must be multiples of it).
    pub(crate) fn to_dense(&self, base: i64, stride: i64) -> Dense {
        let Some(max) = self.max_exp() else {
            return Vec::new();
        };
        let len = ((max - base) / stride + 1) as usize;
        let mut out = vec![BigRational::zero(); len];
        for (e, c) in &self.terms {
            debug_assert_eq!((e - base) % stride, 0);
            out[((e - base) / stride) as usize] = c.clone();
        }
        out
    }

    pub(crate) fn from_dense(p: &Dense, base: i64, stride: i64) -> Self {
        Self {
            terms: p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (base + stride * i as i64, c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, v0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(v0, *e);
        }
        acc
    }
}

pub(crate) fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom() == &BigInt::one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Terms as `c*v^k` in decreasing `k`; zero prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                write!(f, "{}*v^{}", fmt_coeff(&c.abs()), e)?;
            } else {
                write!(f, "{}*v^{}", fmt_coeff(c), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn parse_poly(s: &str) -> Option<LaurentPoly> {
    let s = s.trim();
    if s == "0" {
        return Some(LaurentPoly::zero());
    }
    let bytes = s.as_bytes();
    let mut out = LaurentPoly::zero();
    let mut start = 0usize;
    let mut i = 1usize;
    let mut pieces = Vec::new();
    while i <= bytes.len() {
        let at_split = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if at_split {
            pieces.push(&s[start..i]);
            start = i;
        }
        i += 1;
    }
    for piece in pieces {
        let piece = piece.strip_prefix('+').unwrap_or(piece);
        let (c, e) = piece.split_once("*v^")?;
        let c: BigRational = c.parse().ok()?;
        let e: i64 = e.parse().ok()?;
        if c.is_zero() || !out.coeff(e).is_zero() {
            return None;
        }
        out.add_term(e, &c);
    }
    Some(out)
}
