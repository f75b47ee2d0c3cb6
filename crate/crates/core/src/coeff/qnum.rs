//! Quantum integers, factorials and binomials.
//!
//! All values live in Q(v) with `q = v^root`; `root` is the per-session
//! exponent that makes every q-power of a weight pairing integral in `v`.

use num_rational::BigRational;
use num_traits::One;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// `[n]` with base `v^step`: `v^{step(n-1)} + v^{step(n-3)} + ... + v^{-step(n-1)}`.
pub fn qint_poly(n: i64, step: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.abs();
    let p = LaurentPoly::from_terms((0..m).map(|k| (step * (m - 1 - 2 * k), BigRational::one())));
    if n < 0 {
        p.neg()
    } else {
        p
    }
}

/// `[n]_q = (q^n - q^-n)/(q - q^-1)` for an integer `n`.
pub fn qint(n: i64, root: u32) -> RatFunc {
    RatFunc::from_poly(qint_poly(n, root as i64))
}

/// `q^x` for a rational `x` with `root * x` integral.
pub fn q_pow(x: &BigRational, root: u32) -> Result<RatFunc> {
    Ok(RatFunc::v_pow(v_exponent(x, root)?))
}

pub(crate) fn v_exponent(x: &BigRational, root: u32) -> Result<i64> {
    let scaled = x * BigRational::from_integer((root as i64).into());
    if !scaled.is_integer() {
        return Err(Error::FractionalExponent);
    }
    i64::try_from(scaled.to_integer()).map_err(|_| Error::FractionalExponent)
}

/// `[x]_q` for a rational eigenvalue `x` of `h_alpha`.
pub fn qint_rational(x: &BigRational, root: u32) -> Result<RatFunc> {
    if x.is_integer() {
        let n = i64::try_from(x.to_integer()).map_err(|_| Error::FractionalExponent)?;
        return Ok(qint(n, root));
    }
    let e = v_exponent(x, root)?;
    let r = root as i64;
    let num = LaurentPoly::v_pow(e).sub(&LaurentPoly::v_pow(-e));
    let den = LaurentPoly::v_pow(r).sub(&LaurentPoly::v_pow(-r));
    RatFunc::new(num, den)
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn qfact(n: i64, root: u32) -> Result<RatFunc> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    Ok((1..=n).fold(RatFunc::one(), |acc, k| acc.mul(&qint(k, root))))
}

/// Gaussian binomial with base `v^step`; always a Laurent polynomial.
pub fn qbinom(n: i64, k: i64, step: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    // [n,k] = v^{step k}[n-1,k] + v^{-step(n-k)}[n-1,k-1]
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = vec![LaurentPoly::zero(); (m + 1) as usize];
        for j in 0..=m {
            let mut acc = LaurentPoly::zero();
            if j < m {
                acc = acc.add(&row[j as usize].shift(step * j));
            }
            if j > 0 {
                acc = acc.add(&row[(j - 1) as usize].shift(-step * (m - j)));
            }
            next[j as usize] = acc;
        }
        row = next;
    }
    row[k as usize].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 2;

    fn q(k: i64) -> RatFunc {
        RatFunc::v_pow(D as i64 * k)
    }

    #[test]
    fn small_qints() {
        assert!(qint(0, D).is_zero());
        assert!(qint(1, D).is_one());
        assert_eq!(qint(2, D), q(1).add(&q(-1)));
        assert_eq!(qint(-3, D), q(2).add(&RatFunc::one()).add(&q(-2)).neg());
    }

    #[test]
    fn qfact_values() {
        assert!(qfact(0, D).unwrap().is_one());
        assert_eq!(qfact(2, D).unwrap(), qint(2, D));
        // multiply out by hand: (q + q^-1)(q^2 + 1 + q^-2) = q^3 + 2q + 2q^-1 + q^-3
        let expect = q(3)
            .add(&q(1).scale(&BigRational::from_integer(2.into())))
            .add(&q(-1).scale(&BigRational::from_integer(2.into())))
            .add(&q(-3));
        assert_eq!(qfact(3, D).unwrap(), expect);
        assert!(matches!(qfact(-1, D), Err(Error::NegativeFactorial(-1))));
    }

    #[test]
    fn qbinom_matches_factorial_ratio() {
        for n in 0..7 {
            for k in 0..=n {
                let ratio = qfact(n, D)
                    .unwrap()
                    .div(&qfact(k, D).unwrap().mul(&qfact(n - k, D).unwrap()))
                    .unwrap();
                assert_eq!(RatFunc::from_poly(qbinom(n, k, D as i64)), ratio, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rational_qint_reduces_to_integer_case() {
        let x = BigRational::from_integer(3.into());
        assert_eq!(qint_rational(&x, D).unwrap(), qint(3, D));
        let half = BigRational::new(1.into(), 2.into());
        assert!(qint_rational(&BigRational::new(1.into(), 4.into()), D).is_err());
        // with v^4 = q, [1/2]_q = (v^2 - v^-2)/(v^4 - v^-4) = 1/(v^2 + v^-2)
        let r = qint_rational(&half, 4).unwrap();
        let expect = RatFunc::one().div(&RatFunc::v_pow(2).add(&RatFunc::v_pow(-2))).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn eval_examples() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(
            qint(2, D).eval_at_q(&two, D).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
        assert_eq!(
            qint(3, D).eval_at_q(&BigRational::one(), D).unwrap(),
            BigRational::from_integer(3.into())
        );
    }
}
