//! Tensor products `V ⊗ Z` of two materialized highest-weight modules.
//!
//! The weight space of drop `d` is the direct sum of blocks
//! `V[nu - a] ⊗ Z[zeta - b]` over `a + b = d`, ordered by `a` (so the block
//! `1_nu ⊗ Z` comes first and `V ⊗ 1_zeta` last). Inside a block the
//! coordinate of `v_i ⊗ z_j` is `offset + i * dim Z[b] + j`.
//!
//! Coproduct: `Δ(e) = e ⊗ q^h + 1 ⊗ e`, `Δ(f) = f ⊗ 1 + q^{-h} ⊗ f`.

mod extremal;
mod filtration;
mod singular;
mod twist;
mod verdict;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cartan::{Context, RootSum};
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::HWModule;
use crate::words::sub_drops;

pub use extremal::{ExtremalSubspaces, IdealImage};
pub use filtration::{Clause, ClauseResult, FiltrationReport, Graded};
pub use singular::SingularSpace;
pub use twist::{TwistReport, VermaLift};
pub use verdict::{Conclusion, DropRecord, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: RootSum,
    pub b: RootSum,
    pub offset: usize,
    pub dim_v: usize,
    pub dim_z: usize,
}

#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub drop: RootSum,
    pub blocks: Vec<Block>,
    pub dim: usize,
}

impl TensorSpace {
    pub fn block(&self, a: &RootSum) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.a == a)
    }

    /// The block `V[nu - drop] ⊗ 1_zeta`.
    pub fn v_leading(&self) -> &Block {
        self.blocks.last().expect("at least one block")
    }

    /// The block `1_nu ⊗ Z[zeta - drop]`.
    pub fn z_leading(&self) -> &Block {
        &self.blocks[0]
    }
}

/// Weight-homogeneous element of `V ⊗ Z`, keyed by
/// `(V drop, V class, Z drop, Z class)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    pub drop: RootSum,
    pub terms: BTreeMap<(RootSum, usize, RootSum, usize), RatFunc>,
}

impl TensorVector {
    pub fn from_coords(space: &TensorSpace, x: &[RatFunc]) -> Self {
        let mut terms = BTreeMap::new();
        for blk in &space.blocks {
            for i in 0..blk.dim_v {
                for j in 0..blk.dim_z {
                    let c = &x[blk.offset + i * blk.dim_z + j];
                    if !c.is_zero() {
                        terms.insert((blk.a.clone(), i, blk.b.clone(), j), c.clone());
                    }
                }
            }
        }
        Self {
            drop: space.drop.clone(),
            terms,
        }
    }

    pub fn to_coords(&self, space: &TensorSpace) -> Vec<RatFunc> {
        let mut x = vec![RatFunc::zero(); space.dim];
        for ((a, i, _, j), c) in &self.terms {
            let blk = space.block(a).expect("block of the drop");
            x[blk.offset + i * blk.dim_z + j] = c.clone();
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(usize),
    F(usize),
    /// `q^{h_a}`, or `q^{-h_a}` when the flag is set.
    K(usize, bool),
}

/// `V ⊗ Z` materialized up to a height cutoff.
pub struct TensorProduct<'m> {
    v: &'m HWModule,
    z: &'m HWModule,
    cutoff: u32,
    spaces: BTreeMap<RootSum, TensorSpace>,
    /// `e[a][d]`: `Δ(e_a)` from drop `d` to drop `d - alpha_a`.
    e: Vec<BTreeMap<RootSum, Matrix<RatFunc>>>,
}

/// Add `coef * (A ⊗ B)` into `out`, placing rows at `row_off` and columns at `col_off`.
fn add_kron(
    out: &mut Matrix<RatFunc>,
    a: &Matrix<RatFunc>,
    b: &Matrix<RatFunc>,
    row_off: usize,
    col_off: usize,
    coef: &RatFunc,
) {
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            let xc = x.mul(coef);
            for j in 0..b.rows() {
                for l in 0..b.cols() {
                    let y = &b[(j, l)];
                    if y.is_zero() {
                        continue;
                    }
                    let r = row_off + i * b.rows() + j;
                    let c = col_off + k * b.cols() + l;
                    out[(r, c)] = out[(r, c)].add(&xc.mul(y));
                }
            }
        }
    }
}

impl<'m> TensorProduct<'m> {
    pub fn new(v: &'m HWModule, z: &'m HWModule, cutoff: u32) -> Result<Self> {
        if v.ctx() != z.ctx() {
            return Err(Error::SessionMismatch);
        }
        let limit = v.cutoff().min(z.cutoff());
        if cutoff > limit {
            return Err(Error::CutoffExceeded {
                requested: cutoff,
                available: limit,
            });
        }
        let datum = v.ctx().datum();
        let spaces: BTreeMap<RootSum, TensorSpace> = datum
            .enumerate_drops(cutoff)
            .into_iter()
            .map(|d| {
                let mut offset = 0;
                let blocks = sub_drops(&d)
                    .into_iter()
                    .map(|a| {
                        let b = d.checked_sub(&a).expect("sub-drop");
                        let blk = Block {
                            dim_v: v.dim(&a),
                            dim_z: z.dim(&b),
                            a,
                            b,
                            offset,
                        };
                        offset += blk.dim_v * blk.dim_z;
                        blk
                    })
                    .collect();
                (
                    d.clone(),
                    TensorSpace {
                        drop: d,
                        blocks,
                        dim: offset,
                    },
                )
            })
            .collect();
        let mut tp = Self {
            v,
            z,
            cutoff,
            spaces,
            e: Vec::new(),
        };
        tp.e = (0..tp.rank())
            .map(|a| {
                let drops: Vec<RootSum> = tp.spaces.keys().cloned().collect();
                drops
                    .par_iter()
                    .filter(|d| d.minus_simple(a).is_some())
                    .map(|d| tp.build_e(a, d).map(|m| (d.clone(), m)))
                    .collect::<Result<Vec<_>>>()
                    .map(|v| v.into_iter().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(tp)
    }

    pub fn v(&self) -> &'m HWModule {
        self.v
    }

    pub fn z(&self) -> &'m HWModule {
        self.z
    }

    pub fn ctx(&self) -> &Context {
        self.v.ctx()
    }

    pub fn rank(&self) -> usize {
        self.v.rank()
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn drops(&self) -> impl Iterator<Item = &RootSum> {
        self.spaces.keys()
    }

    pub fn space(&self, d: &RootSum) -> Result<&TensorSpace> {
        self.spaces.get(d).ok_or_else(|| Error::OutOfRange(d.clone()))
    }

    fn build_e(&self, a: usize, d: &RootSum) -> Result<Matrix<RatFunc>> {
        let src = self.space(d)?;
        let t = d.minus_simple(a).expect("drop contains alpha_a");
        let dst = self.space(&t)?;
        let mut m = Matrix::zeros(dst.dim, src.dim);
        for blk in &src.blocks {
            if blk.dim_v == 0 || blk.dim_z == 0 {
                continue;
            }
            // e ⊗ q^h
            if let Some(a_low) = blk.a.minus_simple(a) {
                let target = dst.block(&a_low).expect("block");
                let ev = self.v.e_matrix(a, &blk.a)?.expect("e matrix");
                let zs = self.z.torus_scalar(a, &blk.b, false)?;
                add_kron(&mut m, ev, &Matrix::identity(blk.dim_z), target.offset, blk.offset, &zs);
            }
            // 1 ⊗ e
            if blk.b.minus_simple(a).is_some() {
                let target = dst.block(&blk.a).expect("block");
                let ez = self.z.e_matrix(a, &blk.b)?.expect("e matrix");
                add_kron(
                    &mut m,
                    &Matrix::identity(blk.dim_v),
                    ez,
                    target.offset,
                    blk.offset,
                    &RatFunc::one(),
                );
            }
        }
        Ok(m)
    }

    /// Matrix of `Δ(e_a)` from drop `d`; `None` when `d - alpha_a` is not a drop.
    pub fn e_matrix(&self, a: usize, d: &RootSum) -> Option<&Matrix<RatFunc>> {
        self.e[a].get(d)
    }

    /// Matrix of `Δ(f_a)` from drop `d` to `d + alpha_a`.
    pub fn f_matrix(&self, a: usize, d: &RootSum) -> Result<Matrix<RatFunc>> {
        let src = self.space(d)?;
        let t = d.plus_simple(a);
        let dst = self.space(&t)?;
        let mut m = Matrix::zeros(dst.dim, src.dim);
        for blk in &src.blocks {
            if blk.dim_v == 0 || blk.dim_z == 0 {
                continue;
            }
            // f ⊗ 1
            let target = dst.block(&blk.a.plus_simple(a)).expect("block");
            let fv = self.v.f_matrix(a, &blk.a)?;
            add_kron(
                &mut m,
                &fv,
                &Matrix::identity(blk.dim_z),
                target.offset,
                blk.offset,
                &RatFunc::one(),
            );
            // q^{-h} ⊗ f
            let target = dst.block(&blk.a).expect("block");
            let fz = self.z.f_matrix(a, &blk.b)?;
            let vs = self.v.torus_scalar(a, &blk.a, true)?;
            add_kron(
                &mut m,
                &Matrix::identity(blk.dim_v),
                &fz,
                target.offset,
                blk.offset,
                &vs,
            );
        }
        Ok(m)
    }

    /// Coproduct action of a generator on a vector at drop `d`.
    pub fn coproduct_act(&self, g: Generator, d: &RootSum, x: &[RatFunc]) -> Result<(RootSum, Vec<RatFunc>)> {
        match g {
            Generator::E(a) => {
                if a >= self.rank() {
                    return Err(Error::InvalidIndex(a));
                }
                match d.minus_simple(a) {
                    Some(t) => {
                        let m = self.e_matrix(a, d).expect("e matrix");
                        Ok((t, m.apply(x)))
                    }
                    None => Ok((d.clone(), Vec::new())),
                }
            }
            Generator::F(a) => {
                if a >= self.rank() {
                    return Err(Error::InvalidIndex(a));
                }
                let m = self.f_matrix(a, d)?;
                Ok((d.plus_simple(a), m.apply(x)))
            }
            Generator::K(a, inverse) => {
                let sp = self.space(d)?;
                let mut out = x.to_vec();
                for blk in &sp.blocks {
                    let s = self
                        .v
                        .torus_scalar(a, &blk.a, inverse)?
                        .mul(&self.z.torus_scalar(a, &blk.b, inverse)?);
                    for c in &mut out[blk.offset..blk.offset + blk.dim_v * blk.dim_z] {
                        *c = c.mul(&s);
                    }
                }
                Ok((d.clone(), out))
            }
        }
    }

    /// Coordinates of `v ⊗ z` for `v` in `V[nu - a]`, `z` in `Z[zeta - b]`.
    pub fn pure_tensor(&self, a: &RootSum, v: &[RatFunc], b: &RootSum, z: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let d = a.add(b);
        let sp = self.space(&d)?;
        let blk = sp.block(a).expect("block");
        let mut x = vec![RatFunc::zero(); sp.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, zj) in z.iter().enumerate() {
                x[blk.offset + i * blk.dim_z + j] = vi.mul(zj);
            }
        }
        Ok(x)
    }

    /// Product of the two Shapovalov forms on the whole weight space.
    pub fn canonical_form(&self, d: &RootSum) -> Result<Matrix<RatFunc>> {
        let sp = self.space(d)?;
        let mut g = Matrix::zeros(sp.dim, sp.dim);
        for blk in &sp.blocks {
            if blk.dim_v == 0 || blk.dim_z == 0 {
                continue;
            }
            let gv = &self.v.space(&blk.a)?.gram;
            let gz = &self.z.space(&blk.b)?.gram;
            add_kron(&mut g, gv, gz, blk.offset, blk.offset, &RatFunc::one());
        }
        Ok(g)
    }

    /// `x^T G y` for the canonical form at drop `d`.
    pub fn canonical_pair(&self, d: &RootSum, x: &[RatFunc], y: &[RatFunc]) -> Result<RatFunc> {
        let g = self.canonical_form(d)?;
        Ok(dot(x, &g.apply(y)))
    }
}

pub(crate) fn dot(x: &[RatFunc], y: &[RatFunc]) -> RatFunc {
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(RatFunc::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}
