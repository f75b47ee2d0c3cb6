use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dense;
use super::laurent::{parse_poly, LaurentPoly};
use crate::error::{Error, Result};

/// Element of the rational function field Q(v).
///
/// Canonical form: the denominator is an ordinary polynomial with constant
/// term 1, all `v`-power content sits in the numerator, and numerator and
/// denominator are coprime. Equal values therefore have equal
/// representations, so derived `PartialEq`/`Hash` are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::v_pow(k))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Bring an arbitrary pair into canonical form. `den` must be nonzero.
    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let dmin = den.min_exp().expect("nonzero denominator");
        let nmin = num.min_exp().expect("nonzero numerator");
        // num * v^-nmin and den * v^-dmin are polynomials with nonzero constant terms
        let shift = nmin - dmin;
        if den.is_monomial() {
            let c = den.coeff(dmin);
            return Self {
                num: num.shift(-dmin).scale(&c.recip()),
                den: LaurentPoly::one(),
            };
        }
        if num.is_monomial() {
            let c0 = den.coeff(dmin);
            let inv = c0.recip();
            return Self {
                num: num.shift(-dmin).scale(&inv),
                den: den.shift(-dmin).scale(&inv),
            };
        }
        let stride = num_integer::Integer::gcd(&num.exponent_stride_from(nmin), &den.exponent_stride_from(dmin));
        let stride = if stride == 0 { 1 } else { stride };
        let p = num.to_dense(nmin, stride);
        let r = den.to_dense(dmin, stride);
        let g = dense::gcd(&p, &r);
        let (p, r) = if g.len() > 1 {
            (dense::div_exact(&p, &g), dense::div_exact(&r, &g))
        } else {
            (p, r)
        };
        let inv = r[0].recip();
        let p: Vec<BigRational> = p.iter().map(|c| c * &inv).collect();
        let r: Vec<BigRational> = r.iter().map(|c| c * &inv).collect();
        Self {
            num: LaurentPoly::from_dense(&p, shift, stride),
            den: LaurentPoly::from_dense(&r, 0, stride),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            num: self.num.scale(c),
            den: if c.is_zero() {
                LaurentPoly::one()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `v -> v^-1`.
    pub fn bar_v(&self) -> Self {
        Self::normalized(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Exact value at `v = v0`.
    pub fn eval_at(&self, v0: &BigRational) -> Result<BigRational> {
        if v0.is_zero() {
            return Err(Error::InvalidEvaluationPoint);
        }
        let d = self.den.eval(v0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(v0) / d)
    }

    /// Exact value at `q = q0` where `v^root = q`. Every exponent of the
    /// canonical form must then be a multiple of `root`, otherwise the value
    /// would need an irrational root of `q0`.
    pub fn eval_at_q(&self, q0: &BigRational, root: u32) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::InvalidEvaluationPoint);
        }
        let root = root as i64;
        let stride_ok = |p: &LaurentPoly| p.terms().all(|(e, _)| e % root == 0);
        if !stride_ok(&self.num) || !stride_ok(&self.den) {
            return Err(Error::FractionalExponent);
        }
        let squash = |p: &LaurentPoly| LaurentPoly::from_terms(p.terms().map(|(e, c)| (e / root, c.clone())));
        let num = squash(&self.num);
        let den = squash(&self.den);
        let d = den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(num.eval(q0) / d)
    }

    /// Rough size used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl LaurentPoly {
    pub(crate) fn exponent_stride_from(&self, base: i64) -> i64 {
        self.terms()
            .fold(0i64, |g, (e, _)| num_integer::Integer::gcd(&g, &(e - base)))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

/// Canonical serialization `(num)/(den)`, each side a sum of `c*v^k`
/// terms in decreasing `k`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational function `{s}`"));
        let s = s.trim();
        let inner = s.strip_prefix('(').ok_or_else(bad)?;
        let (num, rest) = inner.split_once(")/(").ok_or_else(bad)?;
        let den = rest.strip_suffix(')').ok_or_else(bad)?;
        let num = parse_poly(num).ok_or_else(bad)?;
        let den = parse_poly(den).ok_or_else(bad)?;
        RatFunc::new(num, den)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                RatFunc::$imp(self, rhs)
            }
        }
        impl std::ops::$tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                RatFunc::$imp(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> BigRational {
        BigRational::from_integer(c.into())
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn cancels_common_factor() {
        // (v^2 - 1)/(v - 1) = v + 1
        let r = RatFunc::new(poly(&[(2, 1), (0, -1)]), poly(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(r, RatFunc::from_poly(poly(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn moves_v_content_to_numerator() {
        // 1/(v^3 + v^5) = v^-3 / (1 + v^2)
        let r = RatFunc::new(LaurentPoly::one(), poly(&[(3, 1), (5, 1)])).unwrap();
        assert_eq!(r.numer(), &poly(&[(-3, 1)]));
        assert_eq!(r.denom(), &poly(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn denominator_constant_term_is_one() {
        let r = RatFunc::new(poly(&[(0, 3)]), poly(&[(0, 2), (1, 4)])).unwrap();
        assert_eq!(r.denom().coeff(0), int(1));
        assert_eq!(r.numer().coeff(0), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(RatFunc::one().div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn eval_pole_and_invalid_point() {
        let r = RatFunc::new(LaurentPoly::one(), poly(&[(1, 1), (0, -1)])).unwrap();
        assert!(matches!(r.eval_at(&int(1)), Err(Error::Pole)));
        assert!(matches!(r.eval_at(&int(0)), Err(Error::InvalidEvaluationPoint)));
        assert_eq!(r.eval_at(&int(3)).unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn display_and_parse() {
        let r = RatFunc::new(poly(&[(2, -1), (-2, 3)]), poly(&[(0, 1), (4, 2)])).unwrap();
        let s = r.to_string();
        assert_eq!(s, "(-1*v^2+3*v^-2)/(2*v^4+1*v^0)");
        assert_eq!(s.parse::<RatFunc>().unwrap(), r);
        assert_eq!(RatFunc::zero().to_string(), "(0)/(1*v^0)");
        assert!("1/2".parse::<RatFunc>().is_err());
    }
}
