//! Elements of `U_q(g)` as combinations of `e`/`f` letter sequences followed
//! by a torus element `q^{h_beta}`, with `beta` in the root lattice.
//!
//! Only the torus commutation `q^{h_b} e_a = q^{(b,a)} e_a q^{h_b}` (and the
//! analogue with `-` for `f_a`) is applied; products of `e` and `f` letters
//! are kept as written. This is enough to compare images of generators and
//! words under the (anti)automorphisms used by the engine.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::cartan::Context;
use crate::coeff::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub letters: Vec<Gen>,
    /// Root-lattice coordinates of `beta` in the trailing `q^{h_beta}`.
    pub torus: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    rank: usize,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::torus(rank, vec![0; rank])
    }

    pub fn gen(rank: usize, g: Gen) -> Self {
        Self::monomial(rank, vec![g], vec![0; rank], RatFunc::one())
    }

    /// `q^{h_beta}`.
    pub fn torus(rank: usize, beta: Vec<i64>) -> Self {
        Self::monomial(rank, Vec::new(), beta, RatFunc::one())
    }

    /// `q^{sign * h_{alpha_a}}`.
    pub fn k(rank: usize, a: usize, sign: i64) -> Self {
        let mut beta = vec![0; rank];
        beta[a] = sign;
        Self::torus(rank, beta)
    }

    pub fn monomial(rank: usize, letters: Vec<Gen>, torus: Vec<i64>, c: RatFunc) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(Monomial { letters, torus }, c);
        out
    }

    /// Product of generator letters with coefficient 1.
    pub fn word(rank: usize, letters: &[Gen]) -> Self {
        Self::monomial(rank, letters.to_vec(), vec![0; rank], RatFunc::one())
    }

    fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(RatFunc::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self, ctx: &Context) -> Self {
        let datum = ctx.datum();
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // move q^{h_beta1} right across the letters of m2
                let mut exp = 0i64;
                for g in &m2.letters {
                    let (a, sign) = match *g {
                        Gen::E(a) => (a, 1),
                        Gen::F(a) => (a, -1),
                    };
                    let pair: i64 = (0..self.rank).map(|i| m1.torus[i] * datum.root_pairing(i, a)).sum();
                    exp += sign * pair;
                }
                let mut letters = m1.letters.clone();
                letters.extend_from_slice(&m2.letters);
                let torus = m1.torus.iter().zip(&m2.torus).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2).mul(&ctx.q_pow_int(exp));
                out.add_term(Monomial { letters, torus }, c);
            }
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let letters: Vec<String> = m
                    .letters
                    .iter()
                    .map(|g| match g {
                        Gen::E(a) => format!("e{}", a + 1),
                        Gen::F(a) => format!("f{}", a + 1),
                    })
                    .collect();
                format!("{c}*{}*K{:?}", letters.join("."), m.torus)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An algebra automorphism or anti-automorphism given on generators.
#[derive(Clone, Debug)]
pub struct GenMap {
    pub anti: bool,
    pub e: Vec<Element>,
    pub f: Vec<Element>,
    /// `q^{h_beta} -> q^{torus_sign * h_beta}`.
    pub torus_sign: i64,
}

impl GenMap {
    pub fn apply(&self, x: &Element, ctx: &Context) -> Element {
        let rank = ctx.rank();
        let mut out = Element::zero(rank);
        for (m, c) in x.terms() {
            let beta: Vec<i64> = m.torus.iter().map(|b| b * self.torus_sign).collect();
            let mut factors: Vec<Element> = m
                .letters
                .iter()
                .map(|g| match *g {
                    Gen::E(a) => self.e[a].clone(),
                    Gen::F(a) => self.f[a].clone(),
                })
                .collect();
            factors.push(Element::torus(rank, beta));
            if self.anti {
                factors.reverse();
            }
            let img = factors.iter().fold(Element::one(rank), |acc, y| acc.mul(y, ctx));
            out = out.add(&img.scale(c));
        }
        out
    }

    fn from_fns(
        ctx: &Context,
        anti: bool,
        torus_sign: i64,
        e: impl Fn(usize) -> Element,
        f: impl Fn(usize) -> Element,
    ) -> Self {
        let r = ctx.rank();
        Self {
            anti,
            e: (0..r).map(&e).collect(),
            f: (0..r).map(&f).collect(),
            torus_sign,
        }
    }

    /// `sigma`: `e <-> f`, `q^h -> q^{-h}`.
    pub fn sigma(ctx: &Context) -> Self {
        let r = ctx.rank();
        Self::from_fns(
            ctx,
            false,
            -1,
            |a| Element::gen(r, Gen::F(a)),
            |a| Element::gen(r, Gen::E(a)),
        )
    }

    /// `omega~`: anti, `e <-> f`, `q^h -> q^h`.
    pub fn omega_tilde(ctx: &Context) -> Self {
        let r = ctx.rank();
        Self::from_fns(
            ctx,
            true,
            1,
            |a| Element::gen(r, Gen::F(a)),
            |a| Element::gen(r, Gen::E(a)),
        )
    }

    /// Antipode: `f -> -q^h f`, `e -> -e q^{-h}`, `q^h -> q^{-h}`.
    pub fn antipode(ctx: &Context) -> Self {
        let r = ctx.rank();
        let c = ctx.clone();
        let c2 = ctx.clone();
        Self::from_fns(
            ctx,
            true,
            -1,
            move |a| {
                Element::gen(r, Gen::E(a))
                    .mul(&Element::k(r, a, -1), &c)
                    .scale(&RatFunc::from_int(-1))
            },
            move |a| {
                Element::k(r, a, 1)
                    .mul(&Element::gen(r, Gen::F(a)), &c2)
                    .scale(&RatFunc::from_int(-1))
            },
        )
    }

    /// Inverse antipode: `f -> -f q^h`, `e -> -q^{-h} e`, `q^h -> q^{-h}`.
    pub fn antipode_inverse(ctx: &Context) -> Self {
        let r = ctx.rank();
        let c = ctx.clone();
        let c2 = ctx.clone();
        Self::from_fns(
            ctx,
            true,
            -1,
            move |a| {
                Element::k(r, a, -1)
                    .mul(&Element::gen(r, Gen::E(a)), &c)
                    .scale(&RatFunc::from_int(-1))
            },
            move |a| {
                Element::gen(r, Gen::F(a))
                    .mul(&Element::k(r, a, 1), &c2)
                    .scale(&RatFunc::from_int(-1))
            },
        )
    }

    /// `omega = gamma^{-1} o sigma`: anti, `f -> -q^{-h} e`, `e -> -f q^h`, `q^h -> q^h`.
    pub fn omega(ctx: &Context) -> Self {
        let sigma = Self::sigma(ctx);
        let ginv = Self::antipode_inverse(ctx);
        Self::compose(&ginv, &sigma, ctx)
    }

    /// Compact star structure: anti, `f -> q^{-h} e`, `e -> f q^h`, `q^h -> q^h`.
    pub fn star(ctx: &Context) -> Self {
        let r = ctx.rank();
        let c = ctx.clone();
        let c2 = ctx.clone();
        Self::from_fns(
            ctx,
            true,
            1,
            move |a| Element::gen(r, Gen::F(a)).mul(&Element::k(r, a, 1), &c),
            move |a| Element::k(r, a, -1).mul(&Element::gen(r, Gen::E(a)), &c2),
        )
    }

    /// Conjugation at real `q`: `f -> -f`, `e -> -e`, `q^h -> q^h`.
    pub fn bar(ctx: &Context) -> Self {
        let r = ctx.rank();
        Self::from_fns(
            ctx,
            false,
            1,
            |a| Element::gen(r, Gen::E(a)).scale(&RatFunc::from_int(-1)),
            |a| Element::gen(r, Gen::F(a)).scale(&RatFunc::from_int(-1)),
        )
    }

    /// The automorphism `f_a -> c f_a q^{sign h_a}` of the negative part.
    pub fn f_twist(ctx: &Context, c: &BigRational, sign: i64) -> Self {
        let r = ctx.rank();
        let cc = ctx.clone();
        let c = RatFunc::from_rational(c.clone());
        Self::from_fns(
            ctx,
            false,
            1,
            |a| Element::gen(r, Gen::E(a)),
            move |a| Element::gen(r, Gen::F(a)).mul(&Element::k(r, a, sign), &cc).scale(&c),
        )
    }

    /// `outer o inner` on generators.
    pub fn compose(outer: &Self, inner: &Self, ctx: &Context) -> Self {
        Self {
            anti: outer.anti != inner.anti,
            e: inner.e.iter().map(|x| outer.apply(x, ctx)).collect(),
            f: inner.f.iter().map(|x| outer.apply(x, ctx)).collect(),
            torus_sign: outer.torus_sign * inner.torus_sign,
        }
    }
}

/// Every sequence of `e_a`/`f_a` letters of length at most `max_len`, shortest first.
pub fn generator_words(rank: usize, max_len: usize) -> Vec<Vec<Gen>> {
    let gens: Vec<Gen> = (0..rank).flat_map(|a| [Gen::E(a), Gen::F(a)]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in &gens {
                let mut v: Vec<Gen> = w.clone();
                v.push(*g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, RootDatum};

    fn contexts() -> Vec<Context> {
        CartanType::ALL
            .into_iter()
            .map(|t| Context::with_root(RootDatum::new(t), 2))
            .collect()
    }

    #[test]
    fn antipode_inverse_round_trip() {
        for ctx in contexts() {
            let r = ctx.rank();
            let s = GenMap::antipode(&ctx);
            let si = GenMap::antipode_inverse(&ctx);
            for w in generator_words(r, 2) {
                let x = Element::word(r, &w).mul(&Element::k(r, 0, 1), &ctx);
                assert_eq!(s.apply(&si.apply(&x, &ctx), &ctx), x);
                assert_eq!(si.apply(&s.apply(&x, &ctx), &ctx), x);
            }
        }
    }

    #[test]
    fn omega_on_generators_and_involutive() {
        for ctx in contexts() {
            let r = ctx.rank();
            let om = GenMap::omega(&ctx);
            for a in 0..r {
                let expect_f = Element::k(r, a, -1)
                    .mul(&Element::gen(r, Gen::E(a)), &ctx)
                    .scale(&RatFunc::from_int(-1));
                assert_eq!(om.f[a], expect_f);
                let expect_e = Element::gen(r, Gen::F(a))
                    .mul(&Element::k(r, a, 1), &ctx)
                    .scale(&RatFunc::from_int(-1));
                assert_eq!(om.e[a], expect_e);
            }
            assert_eq!(om.torus_sign, 1);
            for w in generator_words(r, 3) {
                let x = Element::word(r, &w);
                assert_eq!(om.apply(&om.apply(&x, &ctx), &ctx), x);
            }
        }
    }

    #[test]
    fn star_identities() {
        for ctx in contexts() {
            let r = ctx.rank();
            let star = GenMap::star(&ctx);
            let om = GenMap::omega(&ctx);
            let bar = GenMap::bar(&ctx);
            for w in generator_words(r, 3) {
                let x = Element::word(r, &w);
                assert_eq!(star.apply(&star.apply(&x, &ctx), &ctx), x);
                assert_eq!(bar.apply(&bar.apply(&x, &ctx), &ctx), x);
            }
            for a in 0..r {
                for g in [Gen::E(a), Gen::F(a)] {
                    let x = Element::gen(r, g);
                    assert_eq!(om.apply(&star.apply(&x, &ctx), &ctx), bar.apply(&x, &ctx));
                }
            }
        }
    }

    #[test]
    fn f_twist_moves_torus_to_the_right() {
        let ctx = Context::with_root(RootDatum::new(CartanType::A2), 2);
        let datum = ctx.datum().clone();
        let c = BigRational::new(3.into(), 2.into());
        for sign in [1i64, -1] {
            let phi = GenMap::f_twist(&ctx, &c, sign);
            for w in generator_words(2, 4) {
                if w.iter().any(|g| matches!(g, Gen::E(_))) {
                    continue;
                }
                let betas: Vec<usize> = w
                    .iter()
                    .map(|g| match g {
                        Gen::F(a) => *a,
                        Gen::E(_) => unreachable!(),
                    })
                    .collect();
                let mut cross = 0i64;
                for i in 0..betas.len() {
                    for j in i + 1..betas.len() {
                        cross += datum.root_pairing(betas[i], betas[j]);
                    }
                }
                let mut torus = vec![0i64; 2];
                for &b in &betas {
                    torus[b] += sign;
                }
                let coeff =
                    RatFunc::from_rational(num_traits::pow(c.clone(), betas.len())).mul(&ctx.q_pow_int(-sign * cross));
                let expect = Element::monomial(2, w.clone(), torus, coeff);
                assert_eq!(phi.apply(&Element::word(2, &w), &ctx), expect);
            }
        }
    }
}
