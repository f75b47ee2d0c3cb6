//! Extremal subspaces of `V` relative to `Z` at one drop:
//! `V^+_Z` (killed by `sigma(I^-_Z)`), `V^perp_Z` (spanned by
//! `gamma^{-1}(I^-_Z)` images) and a transversal `^+V_Z` to `V^perp_Z`.

use crate::cartan::RootSum;
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::{complement_indices, span_basis, Matrix};
use crate::module::HWModule;
use crate::words::WordExpr;

use super::TensorProduct;

#[derive(Clone, Debug)]
pub struct ExtremalSubspaces {
    pub drop: RootSum,
    pub dim_v: usize,
    /// Basis of `V^+_Z` in `V[nu - drop]`.
    pub plus: Vec<Vec<RatFunc>>,
    /// Basis of `V^perp_Z` in `V[nu - drop]`.
    pub perp: Vec<Vec<RatFunc>>,
    /// Unit vectors `e_i` spanning the chosen complement `^+V_Z`.
    pub transversal: Vec<usize>,
}

impl ExtremalSubspaces {
    /// Coordinates, in the transversal, of the projection of `x` along `V^perp_Z`.
    pub fn project(&self, x: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let n = self.dim_v;
        let mut cols = self.perp.clone();
        for &i in &self.transversal {
            let mut e = vec![RatFunc::zero(); n];
            e[i] = RatFunc::one();
            cols.push(e);
        }
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let c = Matrix::from_cols(&cols, n)
            .solve(x)
            .ok_or_else(|| Error::Inconsistent("transversal does not complete V^perp".into()))?;
        Ok(c[self.perp.len()..].to_vec())
    }

    /// The transversal coordinates as a vector of `V[nu - drop]`.
    pub fn embed(&self, coords: &[RatFunc]) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.dim_v];
        for (&i, c) in self.transversal.iter().zip(coords) {
            out[i] = c.clone();
        }
        out
    }
}

/// How an annihilator element `x = sum c_w w` of `Z` is turned into an
/// operator on `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealImage {
    /// `gamma^{-1}(x)`.
    AntipodeInverse,
    /// `omega~(sigma(x))`: each word reversed.
    Reversal,
}

fn apply_image(v: &HWModule, x: &WordExpr, kind: IdealImage, from: &RootSum, y: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let target = from.add(x.drop());
    let mut acc = vec![RatFunc::zero(); v.dim(&target)];
    for (w, c) in x.terms() {
        let (_, img) = match kind {
            IdealImage::AntipodeInverse => v.gamma_inv_apply(w, from, y)?,
            IdealImage::Reversal => v.apply_f_word(&w.reversed(), from, y)?,
        };
        for (a, b) in acc.iter_mut().zip(img) {
            if !b.is_zero() {
                *a = a.add(&b.mul(c));
            }
        }
    }
    Ok(acc)
}

impl TensorProduct<'_> {
    fn annihilator_pieces(&self, d: &RootSum) -> Result<Vec<(RootSum, Vec<WordExpr>)>> {
        let mut out = Vec::new();
        for b in crate::words::sub_drops(d) {
            if b.is_zero() {
                continue;
            }
            let ann = self.z().annihilator_ideal(&b)?;
            if !ann.is_empty() {
                out.push((b, ann));
            }
        }
        Ok(out)
    }

    /// Joint kernel in `V[nu - d]` of `sigma(x)` over the annihilator of `1_zeta`.
    pub fn v_plus(&self, d: &RootSum) -> Result<Vec<Vec<RatFunc>>> {
        let v = self.v();
        let n = v.dim(d);
        let mut rows = Vec::new();
        for (b, ann) in self.annihilator_pieces(d)? {
            let low = d.checked_sub(&b).expect("sub-drop");
            let m = v.dim(&low);
            if m == 0 {
                continue;
            }
            for x in &ann {
                // matrix of sigma(x): V[d] -> V[d - b]
                let mut op = Matrix::zeros(m, n);
                for k in 0..n {
                    let mut e = vec![RatFunc::zero(); n];
                    e[k] = RatFunc::one();
                    let mut col = vec![RatFunc::zero(); m];
                    for (w, c) in x.terms() {
                        if let Some(img) = v.apply_e_word(w, d, &e)? {
                            for (a, y) in col.iter_mut().zip(img) {
                                if !y.is_zero() {
                                    *a = a.add(&y.mul(c));
                                }
                            }
                        }
                    }
                    for (i, c) in col.into_iter().enumerate() {
                        op[(i, k)] = c;
                    }
                }
                rows.extend(op.to_rows());
            }
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        if rows.is_empty() {
            return Ok(Matrix::<RatFunc>::identity(n).to_rows());
        }
        Ok(Matrix::from_rows(rows, n).kernel())
    }

    /// Span in `V[nu - d]` of the images of the annihilator of `1_zeta`
    /// under the chosen anti-automorphism.
    pub fn v_perp_via(&self, d: &RootSum, kind: IdealImage) -> Result<Vec<Vec<RatFunc>>> {
        let v = self.v();
        let n = v.dim(d);
        let mut vecs = Vec::new();
        for (b, ann) in self.annihilator_pieces(d)? {
            let from = d.checked_sub(&b).expect("sub-drop");
            let m = v.dim(&from);
            for x in &ann {
                for k in 0..m {
                    let mut e = vec![RatFunc::zero(); m];
                    e[k] = RatFunc::one();
                    vecs.push(apply_image(v, x, kind, &from, &e)?);
                }
            }
        }
        Ok(span_basis(&vecs, n))
    }

    pub fn extremal_subspaces(&self, d: &RootSum) -> Result<ExtremalSubspaces> {
        let n = self.v().dim(d);
        let perp = self.v_perp_via(d, IdealImage::AntipodeInverse)?;
        let transversal = complement_indices(&perp, n);
        Ok(ExtremalSubspaces {
            drop: d.clone(),
            dim_v: n,
            plus: self.v_plus(d)?,
            perp,
            transversal,
        })
    }
}
