//! Highest-weight modules materialized weight space by weight space.
//!
//! Each weight space `V[hw - d]` is the span of the words of drop `d` modulo
//! the annihilator of the highest vector in that degree. The basis is the
//! lexicographically first set of words independent modulo that annihilator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::cartan::{Context, RootSum, Weight};
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, Matrix};
use crate::words::{
    act_e, gamma_inv_word, ideal_component_rows, serre_elements, IdealSide, Word, WordBasis, WordExpr, WordGram,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Verma,
    Irreducible,
    /// Generalized Verma module induced from a one-dimensional character of
    /// the parabolic with the given Levi simple roots (0-based).
    Parabolic(Vec<usize>),
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Verma => write!(f, "verma"),
            Self::Irreducible => write!(f, "irr"),
            Self::Parabolic(s) => {
                let idx: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "par:{}", idx.join(","))
            }
        }
    }
}

impl FromStr for ModuleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verma" => Ok(Self::Verma),
            "irr" => Ok(Self::Irreducible),
            _ => {
                let rest = s
                    .strip_prefix("par:")
                    .ok_or_else(|| Error::Parse(format!("unknown module kind `{s}`")))?;
                let mut idx = rest
                    .split(',')
                    .map(|p| match p.trim().parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(Error::Parse(format!("invalid Levi index `{p}`"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                idx.sort_unstable();
                idx.dedup();
                Ok(Self::Parabolic(idx))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub drop: RootSum,
    /// All words of the drop, in lexicographic order.
    pub words: WordBasis,
    /// Positions (in `words`) of the basis words.
    pub basis: Vec<usize>,
    /// Shapovalov Gram matrix on the basis classes.
    pub gram: Matrix<RatFunc>,
    /// Column `j` is the class of word `j` in basis coordinates.
    pub word_to_class: Matrix<RatFunc>,
    /// Word-coordinate rows spanning the annihilator of the highest vector.
    pub annihilator: Vec<Vec<RatFunc>>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_word(&self, k: usize) -> &Word {
        &self.words.words[self.basis[k]]
    }

    pub fn class_of_word(&self, w: &Word) -> Vec<RatFunc> {
        self.word_to_class.col(self.words.index_of(w))
    }

    pub fn class_of_expr(&self, x: &WordExpr) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.dim()];
        for (w, c) in x.terms() {
            let j = self.words.index_of(w);
            for (i, o) in out.iter_mut().enumerate() {
                let m = &self.word_to_class[(i, j)];
                if !m.is_zero() {
                    *o = o.add(&m.mul(c));
                }
            }
        }
        out
    }

    /// Basis classes as word expressions.
    pub fn basis_exprs(&self, rank: usize) -> Vec<WordExpr> {
        (0..self.dim())
            .map(|k| WordExpr::from_word(self.basis_word(k).clone(), rank))
            .collect()
    }

    pub fn annihilator_exprs(&self) -> Vec<WordExpr> {
        self.annihilator
            .iter()
            .map(|r| WordExpr::from_vector(self.drop.clone(), &self.words.words, r))
            .collect()
    }
}

/// A highest-weight module truncated at a height cutoff.
#[derive(Clone, Debug)]
pub struct HWModule {
    ctx: Context,
    hw: Weight,
    kind: ModuleKind,
    cutoff: u32,
    spaces: BTreeMap<RootSum, WeightSpace>,
    /// `e[a][d]`: matrix of `e_a` from `V[hw-d]` to `V[hw-d+alpha_a]`.
    e: Vec<BTreeMap<RootSum, Matrix<RatFunc>>>,
}

fn quotient_basis(
    words: WordBasis,
    annihilator: Vec<Vec<RatFunc>>,
    word_gram: &Matrix<RatFunc>,
    drop: &RootSum,
) -> WeightSpace {
    let n = words.len();
    // reverse the columns so every pivot sits at the largest possible word index
    let rev: Vec<Vec<RatFunc>> = annihilator.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let mut m = Matrix::from_rows(rev, n);
    let pivots_rev = if annihilator.is_empty() { Vec::new() } else { m.rref() };
    let pivot_of: BTreeMap<usize, usize> = pivots_rev.iter().enumerate().map(|(r, &c)| (n - 1 - c, r)).collect();
    let basis: Vec<usize> = (0..n).filter(|j| !pivot_of.contains_key(j)).collect();
    let pos: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let dim = basis.len();
    let mut w2c = Matrix::zeros(dim, n);
    for j in 0..n {
        if let Some(&p) = pos.get(&j) {
            w2c[(p, j)] = RatFunc::one();
        } else {
            let r = pivot_of[&j];
            for (&k, &p) in &pos {
                let c = &m[(r, n - 1 - k)];
                if !c.is_zero() {
                    w2c[(p, j)] = c.neg();
                }
            }
        }
    }
    let gram = word_gram.submatrix(&basis, &basis);
    let annihilator = span_basis(&annihilator, n);
    WeightSpace {
        drop: drop.clone(),
        words,
        basis,
        gram,
        word_to_class: w2c,
        annihilator,
    }
}

impl HWModule {
    pub fn build(ctx: &Context, hw: &Weight, kind: ModuleKind, cutoff: u32) -> Result<Self> {
        let datum = ctx.datum();
        datum.check_weight(hw)?;
        if !ctx.can_host(hw) {
            return Err(Error::FractionalExponent);
        }
        if let ModuleKind::Parabolic(levi) = &kind {
            for &a in levi {
                if a >= ctx.rank() {
                    return Err(Error::InvalidIndex(a));
                }
                if !hw.coords[a].is_zero() {
                    return Err(Error::ParabolicCharacter(a));
                }
            }
        }
        let drops = datum.enumerate_drops(cutoff);
        let mut wg = WordGram::new(ctx, hw)?;
        let mut grams = Vec::with_capacity(drops.len());
        for d in &drops {
            grams.push(wg.gram(d)?);
        }
        let serre = serre_elements(ctx);
        let rank = ctx.rank();
        let built: Vec<WeightSpace> = drops
            .par_iter()
            .zip(grams.par_iter())
            .map(|(d, g)| {
                let (words, annihilator) = match &kind {
                    ModuleKind::Irreducible => {
                        let words = WordBasis::new(datum, d);
                        (words, g.kernel())
                    }
                    ModuleKind::Verma => ideal_component_rows(ctx, &serre, d, IdealSide::TwoSided),
                    ModuleKind::Parabolic(levi) => {
                        let (words, mut rows) = ideal_component_rows(ctx, &serre, d, IdealSide::TwoSided);
                        let gens: Vec<WordExpr> = levi
                            .iter()
                            .map(|&a| WordExpr::from_word(Word::letter(a), rank))
                            .collect();
                        let (_, left) = ideal_component_rows(ctx, &gens, d, IdealSide::Left);
                        rows.extend(left);
                        let n = words.len();
                        (words, span_basis(&rows, n))
                    }
                };
                quotient_basis(words, annihilator, g, d)
            })
            .collect();
        let spaces: BTreeMap<RootSum, WeightSpace> = drops.iter().cloned().zip(built).collect();
        let mut module = Self {
            ctx: ctx.clone(),
            hw: hw.clone(),
            kind,
            cutoff,
            spaces,
            e: Vec::new(),
        };
        module.e = (0..rank)
            .map(|a| module.build_e_matrices(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(module)
    }

    fn build_e_matrices(&self, a: usize) -> Result<BTreeMap<RootSum, Matrix<RatFunc>>> {
        let items: Vec<(&RootSum, &WeightSpace)> = self.spaces.iter().collect();
        items
            .par_iter()
            .filter_map(|(d, sp)| d.minus_simple(a).map(|t| (*d, *sp, t)))
            .map(|(d, sp, t)| {
                let target = &self.spaces[&t];
                let mut m = Matrix::zeros(target.dim(), sp.dim());
                for k in 0..sp.dim() {
                    let img = act_e(&self.ctx, a, sp.basis_word(k), &self.hw)?;
                    let col = target.class_of_expr(&img);
                    for (i, c) in col.into_iter().enumerate() {
                        m[(i, k)] = c;
                    }
                }
                Ok((d.clone(), m))
            })
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().collect())
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn hw(&self) -> &Weight {
        &self.hw
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn rank(&self) -> usize {
        self.ctx.rank()
    }

    pub fn drops(&self) -> impl Iterator<Item = &RootSum> {
        self.spaces.keys()
    }

    pub fn space(&self, drop: &RootSum) -> Result<&WeightSpace> {
        self.spaces
            .get(drop)
            .ok_or_else(|| Error::NotMaterialized(drop.clone()))
    }

    pub fn dim(&self, drop: &RootSum) -> usize {
        self.spaces.get(drop).map_or(0, |s| s.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim()).sum()
    }

    /// Weight `hw - drop`.
    pub fn weight_at(&self, drop: &RootSum) -> Weight {
        self.ctx.datum().lower(&self.hw, drop)
    }

    /// Matrix of `e_a` from `V[hw - drop]` to `V[hw - drop + alpha_a]`.
    pub fn e_matrix(&self, a: usize, drop: &RootSum) -> Result<Option<&Matrix<RatFunc>>> {
        if a >= self.rank() {
            return Err(Error::InvalidIndex(a));
        }
        self.space(drop)?;
        Ok(self.e[a].get(drop))
    }

    /// Matrix of `f_a` from `V[hw - drop]` to `V[hw - drop - alpha_a]`.
    pub fn f_matrix(&self, a: usize, drop: &RootSum) -> Result<Matrix<RatFunc>> {
        if a >= self.rank() {
            return Err(Error::InvalidIndex(a));
        }
        let sp = self.space(drop)?;
        let t = drop.plus_simple(a);
        let target = self.spaces.get(&t).ok_or_else(|| Error::OutOfRange(t.clone()))?;
        let letter = Word::letter(a);
        let mut m = Matrix::zeros(target.dim(), sp.dim());
        for k in 0..sp.dim() {
            let col = target.class_of_word(&letter.concat(sp.basis_word(k)));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, k)] = c;
            }
        }
        Ok(m)
    }

    pub fn act_e(&self, a: usize, drop: &RootSum, x: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        let Some(t) = drop.minus_simple(a) else {
            self.space(drop)?;
            return Ok((drop.clone(), Vec::new()));
        };
        let m = self.e_matrix(a, drop)?.expect("e matrix for lower drop");
        Ok((t, m.apply(x)))
    }

    pub fn act_f(&self, a: usize, drop: &RootSum, x: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        let m = self.f_matrix(a, drop)?;
        Ok((drop.plus_simple(a), m.apply(x)))
    }

    /// Eigenvalue of `q^{h_a}` on `V[hw - drop]`; use `inverse` for `q^{-h_a}`.
    pub fn torus_scalar(&self, a: usize, drop: &RootSum, inverse: bool) -> Result<RatFunc> {
        let p = self.ctx.datum().pairing_below(&self.hw, drop, a);
        let p = if inverse { -p } else { p };
        self.ctx.q_pow(&p)
    }

    /// Apply the word `w` (rightmost letter first) to a vector at `drop`.
    pub fn apply_f_word(&self, w: &Word, drop: &RootSum, x: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        let mut d = drop.clone();
        let mut v = x.to_vec();
        for &a in w.letters().iter().rev() {
            let (nd, nv) = self.act_f(a as usize, &d, &v)?;
            d = nd;
            v = nv;
        }
        Ok((d, v))
    }

    /// Apply the `e`-word `sigma(w)` (rightmost letter first) to a vector at `drop`.
    /// Returns `None` when the result leaves the module (drop would go negative).
    pub fn apply_e_word(&self, w: &Word, drop: &RootSum, x: &[RatFunc]) -> Result<Option<Vec<RatFunc>>> {
        let mut d = drop.clone();
        let mut v = x.to_vec();
        for &a in w.letters().iter().rev() {
            let a = a as usize;
            let Some(t) = d.minus_simple(a) else {
                return Ok(None);
            };
            v = self.e_matrix(a, &d)?.expect("lower drop materialized").apply(&v);
            d = t;
        }
        Ok(Some(v))
    }

    /// `gamma^{-1}(w)` applied to a vector at `drop`.
    pub fn gamma_inv_apply(&self, w: &Word, drop: &RootSum, x: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        let mu = self.weight_at(drop);
        let (s, rev) = gamma_inv_word(&self.ctx, w, &mu)?;
        let (d, v) = self.apply_f_word(&rev, drop, x)?;
        Ok((d, v.iter().map(|c| c.mul(&s)).collect()))
    }

    /// Apply a word expression to a vector at `drop`.
    pub fn apply_expr(&self, x: &WordExpr, drop: &RootSum, v: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        let target = drop.add(x.drop());
        let t = self
            .spaces
            .get(&target)
            .ok_or_else(|| Error::OutOfRange(target.clone()))?;
        let mut acc = vec![RatFunc::zero(); t.dim()];
        for (w, c) in x.terms() {
            let (_, img) = self.apply_f_word(w, drop, v)?;
            for (a, b) in acc.iter_mut().zip(img) {
                *a = a.add(&b.mul(c));
            }
        }
        Ok((target, acc))
    }

    /// Basis of the singular vectors in `V[hw - drop]`.
    pub fn singular_in(&self, drop: &RootSum) -> Result<Vec<Vec<RatFunc>>> {
        let sp = self.space(drop)?;
        let mut rows = Vec::new();
        for a in 0..self.rank() {
            if let Some(m) = self.e_matrix(a, drop)? {
                rows.extend(m.to_rows());
            }
        }
        if rows.is_empty() {
            return Ok(Matrix::<RatFunc>::identity(sp.dim()).to_rows());
        }
        Ok(Matrix::from_rows(rows, sp.dim()).kernel())
    }

    /// Annihilator of the highest vector in degree `drop`.
    pub fn annihilator_ideal(&self, drop: &RootSum) -> Result<Vec<WordExpr>> {
        Ok(self.space(drop)?.annihilator_exprs())
    }

    /// Shapovalov pairing of two vectors of `V[hw - drop]`.
    pub fn pair(&self, drop: &RootSum, x: &[RatFunc], y: &[RatFunc]) -> Result<RatFunc> {
        let g = &self.space(drop)?.gram;
        let gy = g.apply(y);
        Ok(x.iter()
            .zip(&gy)
            .fold(RatFunc::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
    }
}
