//! Dense univariate polynomials over the rationals.
//!
//! Only used internally by the canonicalization of rational functions:
//! `coeffs[i]` is the coefficient of `v^i`, and the vector never carries
//! trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigRational>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Dense) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

#[cfg(test)]
pub(crate) fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Polynomial long division; `b` must be nonzero.
pub(crate) fn divrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / lead;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[shift + j] -= &c * y;
            }
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Exact quotient; panics in debug builds if the division leaves a remainder.
pub(crate) fn div_exact(a: &Dense, b: &Dense) -> Dense {
    let (q, r) = divrem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Clear denominators and content: returns an integer polynomial with
/// positive leading coefficient and unit content, same roots as `p`.
fn primitive(p: &Dense) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p.iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in ints.iter_mut() {
        *c /= &g;
    }
    ints
}

fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // prem(a, b) with b's leading coefficient multiplied in at every step
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while rem.len() > db && !rem.is_empty() {
        let dr = rem.len() - 1;
        let c = rem[dr].clone();
        let shift = dr - db;
        for x in rem.iter_mut() {
            *x *= lead;
        }
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

fn int_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &p {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Monic greatest common divisor, computed by the primitive remainder
/// sequence over the integers to keep coefficient growth in check.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() {
        return monic(b);
    }
    if b.is_empty() {
        return monic(a);
    }
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigRational::one()];
        }
        let r = int_primitive(int_pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    let dense: Dense = x.into_iter().map(BigRational::from_integer).collect();
    monic(&dense)
}

fn monic(p: &Dense) -> Dense {
    match p.last() {
        None => Vec::new(),
        Some(lead) => {
            let lead = lead.clone();
            p.iter().map(|c| c / &lead).collect()
        }
    }
}
