use crate::cartan::RootSum;
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{Block, TensorProduct, TensorVector};

/// Singular vectors of `V ⊗ Z` at one drop.
#[derive(Clone, Debug)]
pub struct SingularSpace {
    pub drop: RootSum,
    /// Basis vectors in tensor coordinates.
    pub basis: Vec<Vec<RatFunc>>,
    /// Column `k`: the `V ⊗ 1_zeta` coefficient of basis vector `k`.
    pub leading_v: Matrix<RatFunc>,
    /// Column `k`: the `1_nu ⊗ Z` coefficient of basis vector `k`.
    pub leading_z: Matrix<RatFunc>,
}

impl SingularSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn block_part(blk: &Block, x: &[RatFunc]) -> Vec<RatFunc> {
    x[blk.offset..blk.offset + blk.dim_v * blk.dim_z].to_vec()
}

/// `sum c_k b_k`.
pub(crate) fn combine(basis: &[Vec<RatFunc>], c: &[RatFunc], n: usize) -> Vec<RatFunc> {
    let mut u = vec![RatFunc::zero(); n];
    for (ck, b) in c.iter().zip(basis) {
        if ck.is_zero() {
            continue;
        }
        for (ui, bi) in u.iter_mut().zip(b) {
            if !bi.is_zero() {
                *ui = ui.add(&ck.mul(bi));
            }
        }
    }
    u
}

impl TensorProduct<'_> {
    pub fn singular_space(&self, d: &RootSum) -> Result<SingularSpace> {
        let sp = self.space(d)?;
        let mut rows = Vec::new();
        for a in 0..self.rank() {
            if let Some(m) = self.e_matrix(a, d) {
                rows.extend(m.to_rows());
            }
        }
        let basis = if sp.dim == 0 {
            Vec::new()
        } else if rows.is_empty() {
            Matrix::<RatFunc>::identity(sp.dim).to_rows()
        } else {
            Matrix::from_rows(rows, sp.dim).kernel()
        };
        let lv = sp.v_leading();
        let lz = sp.z_leading();
        let leading_v: Vec<Vec<RatFunc>> = basis.iter().map(|u| block_part(lv, u)).collect();
        let leading_z: Vec<Vec<RatFunc>> = basis.iter().map(|u| block_part(lz, u)).collect();
        Ok(SingularSpace {
            drop: d.clone(),
            leading_v: Matrix::from_cols(&leading_v, lv.dim_v * lv.dim_z),
            leading_z: Matrix::from_cols(&leading_z, lz.dim_v * lz.dim_z),
            basis,
        })
    }

    /// Gram matrix of the canonical form on the given vectors of drop `d`.
    pub fn gram_of(&self, d: &RootSum, vectors: &[Vec<RatFunc>]) -> Result<Matrix<RatFunc>> {
        let g = self.canonical_form(d)?;
        let n = vectors.len();
        let gv: Vec<Vec<RatFunc>> = vectors.iter().map(|y| g.apply(y)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = super::dot(&vectors[i], &gv[j]);
            }
        }
        Ok(out)
    }

    pub fn canonical_gram(&self, s: &SingularSpace) -> Result<Matrix<RatFunc>> {
        self.gram_of(&s.drop, &s.basis)
    }

    fn solve_leading(&self, s: &SingularSpace, lead: &Matrix<RatFunc>, x: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let mismatch = || Error::LeadingMismatch(s.drop.clone());
        if s.dim() == 0 {
            if x.iter().all(|c| c.is_zero()) {
                return Ok(vec![RatFunc::zero(); self.space(&s.drop)?.dim]);
            }
            return Err(mismatch());
        }
        if lead.rank() < s.dim() {
            return Err(mismatch());
        }
        let c = lead.solve(x).ok_or_else(mismatch)?;
        Ok(combine(&s.basis, &c, self.space(&s.drop)?.dim))
    }

    /// The singular vector whose `V ⊗ 1_zeta` coefficient is `v`.
    pub fn delta_l(&self, s: &SingularSpace, v: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.solve_leading(s, &s.leading_v, v)
    }

    /// The singular vector whose `1_nu ⊗ Z` coefficient is `z`.
    pub fn delta_r(&self, s: &SingularSpace, z: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.solve_leading(s, &s.leading_z, z)
    }

    pub fn as_tensor_vector(&self, d: &RootSum, x: &[RatFunc]) -> Result<TensorVector> {
        Ok(TensorVector::from_coords(self.space(d)?, x))
    }
}
