//! Words in the negative generators `f_i` acting on a formal highest vector.
//!
//! A word `w = f_{w0} f_{w1} ... f_{w(m-1)}` acts on `1_lambda` with the
//! rightmost letter first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cartan::{Context, RootDatum, RootSum, Weight};
use crate::coeff::{qbinom, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::{span_basis, Matrix};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Self(vec![i as u8])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn drop_in(&self, rank: usize) -> RootSum {
        let mut m = vec![0u32; rank];
        for &l in &self.0 {
            m[l as usize] += 1;
        }
        RootSum(m)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn without(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k);
        Word(v)
    }

    pub fn tail(&self) -> Word {
        Word(self.0[1..].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("f{}", l + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Weight-homogeneous linear combination of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordExpr {
    drop: RootSum,
    terms: BTreeMap<Word, RatFunc>,
}

impl WordExpr {
    pub fn zero(drop: RootSum) -> Self {
        Self {
            drop,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(w: Word, rank: usize) -> Self {
        let drop = w.drop_in(rank);
        let mut terms = BTreeMap::new();
        terms.insert(w, RatFunc::one());
        Self { drop, terms }
    }

    pub fn drop(&self) -> &RootSum {
        &self.drop
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Add `c * w`; `w` must carry this expression's drop.
    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.drop_in(self.drop.rank()), self.drop);
        let entry = self.terms.entry(w.clone()).or_insert_with(RatFunc::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.drop.clone());
        }
        Self {
            drop: self.drop.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    /// `left * self * right` in the free algebra.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        let rank = self.drop.rank();
        let drop = self.drop.add(&left.drop_in(rank)).add(&right.drop_in(rank));
        Self {
            drop,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Coordinates in the lexicographic word basis of the drop.
    pub fn to_vector(&self, words: &[Word]) -> Vec<RatFunc> {
        words.iter().map(|w| self.coeff(w)).collect()
    }

    pub fn from_vector(drop: RootSum, words: &[Word], coords: &[RatFunc]) -> Self {
        let mut out = Self::zero(drop);
        for (w, c) in words.iter().zip(coords) {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Index of every word of a drop inside the lexicographic enumeration.
#[derive(Clone, Debug)]
pub struct WordBasis {
    pub drop: RootSum,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordBasis {
    pub fn new(datum: &RootDatum, drop: &RootSum) -> Self {
        let words = datum.enumerate_words(drop);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self {
            drop: drop.clone(),
            words,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> usize {
        self.index[w]
    }
}

/// `(lambda - drop(suffix after position k), alpha_a)` for each position `k`.
fn intermediate_pairings(ctx: &Context, w: &Word, lambda: &Weight, a: usize) -> Vec<BigRational> {
    let datum = ctx.datum();
    let rank = ctx.rank();
    let mut below = RootSum::zero(rank);
    let mut out = vec![BigRational::zero(); w.len()];
    for k in (0..w.len()).rev() {
        out[k] = datum.pairing_below(lambda, &below, a);
        below = below.plus_simple(w.letters()[k] as usize);
    }
    out
}

/// `e_a (w 1_lambda)` expanded as words of drop `drop(w) - alpha_a`.
///
/// Commuting `e_a` past `f_a` at position `k` leaves `[h_a]_q` acting on the
/// weight `lambda - drop(letters after k)`.
pub fn act_e(ctx: &Context, a: usize, w: &Word, lambda: &Weight) -> Result<WordExpr> {
    let rank = ctx.rank();
    if a >= rank {
        return Err(Error::InvalidIndex(a));
    }
    ctx.datum().check_weight(lambda)?;
    let drop = w.drop_in(rank);
    let Some(target) = drop.minus_simple(a) else {
        return Ok(WordExpr::zero(drop));
    };
    let pairings = intermediate_pairings(ctx, w, lambda, a);
    let mut out = WordExpr::zero(target);
    for (k, &l) in w.letters().iter().enumerate() {
        if l as usize == a {
            out.add_term(w.without(k), &ctx.qint(&pairings[k])?);
        }
    }
    Ok(out)
}

/// Apply an `e`-word (rightmost letter first) to `w 1_lambda`.
pub fn act_e_word(ctx: &Context, e_word: &Word, x: &WordExpr, lambda: &Weight) -> Result<WordExpr> {
    let mut cur = x.clone();
    for &a in e_word.letters().iter().rev() {
        let a = a as usize;
        let Some(drop) = cur.drop().minus_simple(a) else {
            return Ok(WordExpr::zero(RootSum::zero(ctx.rank())));
        };
        let mut next = WordExpr::zero(drop);
        for (w, c) in cur.terms() {
            let img = act_e(ctx, a, w, lambda)?;
            for (v, d) in img.terms() {
                next.add_term(v.clone(), &d.mul(c));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `omega(f_a) = -q^{-h_a} e_a` evaluated after `e_a` lands on weight `mu`.
fn omega_scalar(ctx: &Context, mu_pairing: &BigRational) -> Result<RatFunc> {
    Ok(ctx.q_pow(&-mu_pairing)?.neg())
}

/// Word-level Gram matrices of the contravariant form on the Verma module
/// `M_lambda`, filled drop by drop from the recursion
/// `<f_a u, x> = <u, omega(f_a) x>`, `<1, 1> = 1`.
#[derive(Clone, Debug)]
pub struct WordGram {
    ctx: Context,
    lambda: Weight,
    bases: HashMap<RootSum, WordBasis>,
    grams: HashMap<RootSum, Matrix<RatFunc>>,
}

impl WordGram {
    pub fn new(ctx: &Context, lambda: &Weight) -> Result<Self> {
        ctx.datum().check_weight(lambda)?;
        if !ctx.can_host(lambda) {
            return Err(Error::FractionalExponent);
        }
        Ok(Self {
            ctx: ctx.clone(),
            lambda: lambda.clone(),
            bases: HashMap::new(),
            grams: HashMap::new(),
        })
    }

    pub fn basis(&mut self, drop: &RootSum) -> &WordBasis {
        if !self.bases.contains_key(drop) {
            let b = WordBasis::new(self.ctx.datum(), drop);
            self.bases.insert(drop.clone(), b);
        }
        &self.bases[drop]
    }

    pub fn gram(&mut self, drop: &RootSum) -> Result<Matrix<RatFunc>> {
        if let Some(g) = self.grams.get(drop) {
            return Ok(g.clone());
        }
        let g = self.compute(drop)?;
        self.grams.insert(drop.clone(), g.clone());
        Ok(g)
    }

    fn compute(&mut self, drop: &RootSum) -> Result<Matrix<RatFunc>> {
        let words = self.basis(drop).words.clone();
        let n = words.len();
        if drop.is_zero() {
            return Ok(Matrix::identity(1));
        }
        let rank = self.ctx.rank();
        let mut lower: HashMap<usize, (Matrix<RatFunc>, WordBasis)> = HashMap::new();
        for a in 0..rank {
            if let Some(d) = drop.minus_simple(a) {
                let g = self.gram(&d)?;
                lower.insert(a, (g, self.basis(&d).clone()));
            }
        }
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            let a = words[i].letters()[0] as usize;
            let (low, lb) = &lower[&a];
            let row = lb.index_of(&words[i].tail());
            // omega(f_a) x: e_a lands on weight lambda - drop + alpha_a
            let below = drop.minus_simple(a).expect("letter occurs in drop");
            let mu = self.ctx.datum().pairing_below(&self.lambda, &below, a);
            let s = omega_scalar(&self.ctx, &mu)?;
            for j in 0..n {
                let ex = act_e(&self.ctx, a, &words[j], &self.lambda)?;
                let mut acc = RatFunc::zero();
                for (v, c) in ex.terms() {
                    let val = &low[(row, lb.index_of(v))];
                    if !val.is_zero() {
                        acc = acc.add(&c.mul(val));
                    }
                }
                g[(i, j)] = acc.mul(&s);
            }
        }
        Ok(g)
    }

    pub fn pair(&mut self, w: &Word, x: &Word) -> Result<RatFunc> {
        let rank = self.ctx.rank();
        let d = w.drop_in(rank);
        if x.drop_in(rank) != d {
            return Ok(RatFunc::zero());
        }
        let g = self.gram(&d)?;
        let b = self.basis(&d);
        Ok(g[(b.index_of(w), b.index_of(x))].clone())
    }
}

/// `<w 1_lambda, x 1_lambda>` under the contravariant form with `<1,1> = 1`.
pub fn shapovalov_pair(ctx: &Context, w: &Word, x: &Word, lambda: &Weight) -> Result<RatFunc> {
    WordGram::new(ctx, lambda)?.pair(w, x)
}

/// `gamma^{-1}(w)` on a vector of weight `mu` equals `scalar * reversed(w)`.
///
/// With `gamma^{-1}(f_a) = -f_a q^{h_a}` and `gamma^{-1}` anti-multiplicative
/// the scalar is `(-1)^m q^{(mu, drop w) - sum_{j<k} (alpha_{wj}, alpha_{wk})}`.
pub fn gamma_inv_word(ctx: &Context, w: &Word, mu: &Weight) -> Result<(RatFunc, Word)> {
    let datum = ctx.datum();
    let rank = ctx.rank();
    let drop = w.drop_in(rank);
    let mut exponent = datum.pairing_with_drop(mu, &drop);
    let l = w.letters();
    let mut cross = 0i64;
    for j in 0..l.len() {
        for k in j + 1..l.len() {
            cross += datum.root_pairing(l[j] as usize, l[k] as usize);
        }
    }
    exponent -= BigRational::from_integer(cross.into());
    let mut s = ctx.q_pow(&exponent)?;
    if l.len() % 2 == 1 {
        s = s.neg();
    }
    Ok((s, w.reversed()))
}

/// Quantum Serre element
/// `sum_k (-1)^k [1-a_ij, k]_{q_i} f_i^{1-a_ij-k} f_j f_i^k`.
pub fn serre_element(ctx: &Context, i: usize, j: usize) -> Result<WordExpr> {
    let datum = ctx.datum();
    let rank = ctx.rank();
    if i >= rank {
        return Err(Error::InvalidIndex(i));
    }
    if j >= rank {
        return Err(Error::InvalidIndex(j));
    }
    if i == j {
        return Err(Error::SameSerreIndices(i));
    }
    let n = 1 - datum.cartan_entry(i, j);
    let step = ctx.root() as i64 * datum.symmetrizer(i);
    let mut drop = vec![0u32; rank];
    drop[i] = n as u32;
    drop[j] = 1;
    let mut out = WordExpr::zero(RootSum(drop));
    for k in 0..=n {
        let mut letters = vec![i as u8; (n - k) as usize];
        letters.push(j as u8);
        letters.extend(std::iter::repeat_n(i as u8, k as usize));
        let mut c = RatFunc::from_poly(qbinom(n, k, step));
        if k % 2 == 1 {
            c = c.neg();
        }
        out.add_term(Word::new(letters), &c);
    }
    Ok(out)
}

/// All Serre elements of the datum.
pub fn serre_elements(ctx: &Context) -> Vec<WordExpr> {
    ctx.datum()
        .serre_pairs()
        .into_iter()
        .map(|(i, j)| serre_element(ctx, i, j).expect("valid Serre pair"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealSide {
    Left,
    TwoSided,
}

/// Basis, as word-coordinate rows, of the component at `drop` of the ideal
/// generated by `generators` in the free algebra on the `f_i`.
pub fn ideal_component_rows(
    ctx: &Context,
    generators: &[WordExpr],
    drop: &RootSum,
    side: IdealSide,
) -> (WordBasis, Vec<Vec<RatFunc>>) {
    let datum = ctx.datum();
    let basis = WordBasis::new(datum, drop);
    let mut rows = Vec::new();
    for g in generators {
        let Some(rest) = drop.checked_sub(g.drop()) else {
            continue;
        };
        let splits: Vec<(RootSum, RootSum)> = match side {
            IdealSide::Left => vec![(rest, RootSum::zero(ctx.rank()))],
            IdealSide::TwoSided => sub_drops(&rest)
                .into_iter()
                .map(|l| {
                    let r = rest.checked_sub(&l).expect("sub-drop");
                    (l, r)
                })
                .collect(),
        };
        for (l, r) in splits {
            let lw = datum.enumerate_words(&l);
            let rw = datum.enumerate_words(&r);
            for u in &lw {
                for v in &rw {
                    let e = g.sandwich(u, v);
                    let mut row = vec![RatFunc::zero(); basis.len()];
                    for (w, c) in e.terms() {
                        row[basis.index_of(w)] = c.clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    let rows = span_basis(&rows, basis.len());
    (basis, rows)
}

/// Spanning set (deduplicated by exact elimination) of the ideal component.
pub fn ideal_component(ctx: &Context, generators: &[WordExpr], drop: &RootSum, side: IdealSide) -> Vec<WordExpr> {
    let (basis, rows) = ideal_component_rows(ctx, generators, drop, side);
    rows.iter()
        .map(|r| WordExpr::from_vector(drop.clone(), &basis.words, r))
        .collect()
}

/// Every `b` with `0 <= b <= d` componentwise.
pub fn sub_drops(d: &RootSum) -> Vec<RootSum> {
    let mut out = vec![Vec::new()];
    for &m in d.multiplicities() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=m).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<RootSum> = out.into_iter().map(RootSum).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::coeff::qint;

    fn ctx(t: CartanType) -> Context {
        Context::with_root(RootDatum::new(t), 2)
    }

    fn q(k: i64) -> RatFunc {
        RatFunc::v_pow(2 * k)
    }

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn e_on_single_letter() {
        let c = ctx(CartanType::A1);
        for n in -3..5 {
            let lam = Weight::from_ints(&[n]);
            let r = act_e(&c, 0, &w(&[0]), &lam).unwrap();
            assert_eq!(r.coeff(&Word::empty()), qint(n, 2));
            assert_eq!(r.len(), if n == 0 { 0 } else { 1 });
        }
        let c2 = ctx(CartanType::A2);
        let lam = Weight::from_ints(&[1, 1]);
        assert!(act_e(&c2, 0, &w(&[1]), &lam).unwrap().is_zero());
    }

    #[test]
    fn e_on_square() {
        let c = ctx(CartanType::A1);
        for n in -3..6 {
            let lam = Weight::from_ints(&[n]);
            let r = act_e(&c, 0, &w(&[0, 0]), &lam).unwrap();
            let sum = qint(n, 2).add(&qint(n - 2, 2));
            assert_eq!(r.coeff(&w(&[0])), sum);
            assert_eq!(sum, qint(2, 2).mul(&qint(n - 1, 2)));
        }
    }

    #[test]
    fn a1_norm_of_f() {
        let c = ctx(CartanType::A1);
        for n in -2..5 {
            let lam = Weight::from_ints(&[n]);
            let p = shapovalov_pair(&c, &w(&[0]), &w(&[0]), &lam).unwrap();
            assert_eq!(p, q(-n).mul(&qint(n, 2)).neg());
            assert!(shapovalov_pair(&c, &Word::empty(), &Word::empty(), &lam)
                .unwrap()
                .is_one());
        }
    }

    #[test]
    fn word_gram_is_symmetric() {
        for t in [CartanType::A1, CartanType::A2, CartanType::B2] {
            let c = ctx(t);
            let lam = Weight::from_ints(&vec![1; c.rank()]);
            let mut wg = WordGram::new(&c, &lam).unwrap();
            for d in c.datum().enumerate_drops(4) {
                assert!(wg.gram(&d).unwrap().is_symmetric(), "{t} {d}");
            }
        }
    }

    #[test]
    fn a2_mixed_pair() {
        // e1 f2 f1 1 = [2] f2 1, then q^{-h1} on weight lambda - a2 gives -q^{-3}
        let c = ctx(CartanType::A2);
        let lam = Weight::from_ints(&[2, 3]);
        let p = shapovalov_pair(&c, &w(&[0, 1]), &w(&[1, 0]), &lam).unwrap();
        let expect = q(-3).neg().mul(&qint(2, 2)).mul(&q(-3).neg().mul(&qint(3, 2)));
        assert_eq!(p, expect);
        let back = shapovalov_pair(&c, &w(&[1, 0]), &w(&[0, 1]), &lam).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn gamma_inverse_scalar() {
        let c = ctx(CartanType::A2);
        let mu = Weight::from_ints(&[3, -1]);
        let (s, r) = gamma_inv_word(&c, &Word::empty(), &mu).unwrap();
        assert!(s.is_one());
        assert!(r.is_empty());
        let (s, r) = gamma_inv_word(&c, &w(&[0]), &mu).unwrap();
        assert_eq!(s, q(3).neg());
        assert_eq!(r, w(&[0]));
        // compose: gamma^{-1}(f1 f2) = gamma^{-1}(f2) gamma^{-1}(f1)
        let (s, r) = gamma_inv_word(&c, &w(&[0, 1]), &mu).unwrap();
        assert_eq!(r, w(&[1, 0]));
        let (s1, _) = gamma_inv_word(&c, &w(&[0]), &mu).unwrap();
        let mu2 = c.datum().lower(&mu, &RootSum(vec![1, 0]));
        let (s2, _) = gamma_inv_word(&c, &w(&[1]), &mu2).unwrap();
        assert_eq!(s, s1.mul(&s2));
    }

    #[test]
    fn serre_a2() {
        let c = ctx(CartanType::A2);
        let s = serre_element(&c, 0, 1).unwrap();
        assert_eq!(s.coeff(&w(&[0, 0, 1])), RatFunc::one());
        assert_eq!(s.coeff(&w(&[0, 1, 0])), qint(2, 2).neg());
        assert_eq!(s.coeff(&w(&[1, 0, 0])), RatFunc::one());
        assert!(serre_element(&c, 1, 1).is_err());
        assert!(serre_elements(&ctx(CartanType::A1)).is_empty());
        let b2 = serre_element(&ctx(CartanType::B2), 0, 1).unwrap();
        assert_eq!(b2.drop(), &RootSum(vec![3, 1]));
        assert_eq!(b2.len(), 4);
    }

    #[test]
    fn ideal_components() {
        let c = ctx(CartanType::A2);
        assert!(ideal_component(&c, &[], &RootSum(vec![2, 1]), IdealSide::TwoSided).is_empty());
        let gens = serre_elements(&c);
        let comp = ideal_component(&c, &gens, &RootSum(vec![2, 1]), IdealSide::TwoSided);
        assert_eq!(comp.len(), 1);
        let a1 = ctx(CartanType::A1);
        let g = WordExpr::from_word(w(&[0, 0, 0]), 1);
        let comp = ideal_component(&a1, &[g], &RootSum(vec![4]), IdealSide::Left);
        assert_eq!(comp.len(), 1);
        assert_eq!(comp[0].coeff(&w(&[0, 0, 0, 0])), RatFunc::one());
    }

    #[test]
    fn display() {
        assert_eq!(w(&[0, 1, 0]).to_string(), "f1.f2.f1");
        assert_eq!(Word::empty().to_string(), "1");
    }
}
