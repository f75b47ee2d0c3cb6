//! The extremal twist `theta_{V,Z}: V^+_Z -> ^+V_Z`.
//!
//! For `v` in `V^+_Z` write `delta_l(v) = sum v_{ij} ⊗ z_j 1_zeta` with each
//! `z_j` a word lifting a basis class of `Z`; then
//! `theta(v) = sum gamma^{-1}(z_j) v_{ij}` projected along `V^perp_Z`.

use crate::cartan::RootSum;
use crate::coeff::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::{span_rank, Matrix};
use crate::module::HWModule;
use crate::words::WordExpr;

use super::singular::combine;
use super::{ExtremalSubspaces, SingularSpace, TensorProduct};

#[derive(Clone, Debug)]
pub struct TwistReport {
    pub drop: RootSum,
    pub dim_singular: usize,
    /// Canonical form on the singular basis.
    pub gram: Matrix<RatFunc>,
    pub gram_rank: usize,
    /// Columns: `theta(v_k)` for the `V^+_Z` basis, in transversal coordinates.
    pub theta: Matrix<RatFunc>,
    pub theta_rank: usize,
    /// `<theta v_i, v_j>` under the Shapovalov form of `V`.
    pub pullback: Matrix<RatFunc>,
    /// Canonical form on `delta_l(v_i)`.
    pub delta_gram: Matrix<RatFunc>,
    pub pullback_ok: bool,
}

/// Outcome of computing the twist through the Verma module `M_zeta`.
#[derive(Clone, Debug)]
pub enum VermaLift {
    Matrix(Matrix<RatFunc>),
    /// Singular vectors of `V ⊗ M_zeta` project onto a space of dimension
    /// `lifted`, short of the `expected` singular dimension of `V ⊗ Z`.
    DimensionGap {
        lifted: usize,
        expected: usize,
    },
}

fn unit(n: usize, i: usize) -> Vec<RatFunc> {
    let mut e = vec![RatFunc::zero(); n];
    e[i] = RatFunc::one();
    e
}

fn axpy(acc: &mut [RatFunc], c: &RatFunc, x: &[RatFunc]) {
    if c.is_zero() {
        return;
    }
    for (a, y) in acc.iter_mut().zip(x) {
        if !y.is_zero() {
            *a = a.add(&c.mul(y));
        }
    }
}

impl TensorProduct<'_> {
    /// `sum gamma^{-1}(lift(b, j)) v_{ij}` for a vector `u` of drop `d`,
    /// where `lift(b, j)` represents basis class `j` of the right-hand
    /// module at drop `b`.
    fn untwist(
        &self,
        d: &RootSum,
        u: &[RatFunc],
        lift: &dyn Fn(&RootSum, usize) -> Result<WordExpr>,
    ) -> Result<Vec<RatFunc>> {
        let v = self.v();
        let sp = self.space(d)?;
        let mut out = vec![RatFunc::zero(); v.dim(d)];
        for blk in &sp.blocks {
            for i in 0..blk.dim_v {
                for j in 0..blk.dim_z {
                    let c = &u[blk.offset + i * blk.dim_z + j];
                    if c.is_zero() {
                        continue;
                    }
                    let e = unit(blk.dim_v, i);
                    let x = lift(&blk.b, j)?;
                    for (w, cw) in x.terms() {
                        let (_, img) = v.gamma_inv_apply(w, &blk.a, &e)?;
                        axpy(&mut out, &c.mul(cw), &img);
                    }
                }
            }
        }
        Ok(out)
    }

    fn basis_lift(z: &HWModule) -> impl Fn(&RootSum, usize) -> Result<WordExpr> + '_ {
        move |b: &RootSum, j: usize| {
            let sp = z.space(b)?;
            Ok(WordExpr::from_word(sp.basis_word(j).clone(), z.rank()))
        }
    }

    fn theta_from_lift(
        &self,
        ex: &ExtremalSubspaces,
        s: &SingularSpace,
        lift: &dyn Fn(&RootSum, usize) -> Result<WordExpr>,
    ) -> Result<(Matrix<RatFunc>, Vec<Vec<RatFunc>>)> {
        if ex.plus.len() != s.dim() {
            return Err(Error::LeadingMismatch(s.drop.clone()));
        }
        let mut cols = Vec::with_capacity(ex.plus.len());
        let mut deltas = Vec::with_capacity(ex.plus.len());
        for v in &ex.plus {
            let u = self.delta_l(s, v)?;
            let t = self.untwist(&s.drop, &u, lift)?;
            cols.push(ex.project(&t)?);
            deltas.push(u);
        }
        Ok((Matrix::from_cols(&cols, ex.transversal.len()), deltas))
    }

    /// Twist matrix at `d` with basis-word lifts.
    pub fn theta(&self, d: &RootSum) -> Result<TwistReport> {
        let s = self.singular_space(d)?;
        let ex = self.extremal_subspaces(d)?;
        let lift = Self::basis_lift(self.z());
        let (theta, deltas) = self.theta_from_lift(&ex, &s, &lift)?;
        let gram = self.canonical_gram(&s)?;
        let delta_gram = self.gram_of(d, &deltas)?;
        let gv = &self.v().space(d)?.gram;
        let n = ex.plus.len();
        let mut pullback = Matrix::zeros(n, n);
        for i in 0..n {
            let ti = ex.embed(&theta.col(i));
            let gti = gv.apply(&ti);
            for j in 0..n {
                pullback[(i, j)] = super::dot(&gti, &ex.plus[j]);
            }
        }
        Ok(TwistReport {
            drop: d.clone(),
            dim_singular: s.dim(),
            gram_rank: gram.rank(),
            gram,
            theta_rank: theta.rank(),
            theta,
            pullback_ok: pullback == delta_gram,
            pullback,
            delta_gram,
        })
    }

    /// Twist matrix at `d` where the lift of class `j` at drop `b` is
    /// `lift(b, j)`; any lift differing from the basis word by an
    /// annihilator element gives the same matrix.
    pub fn theta_with_lift(
        &self,
        d: &RootSum,
        lift: &dyn Fn(&RootSum, usize) -> Result<WordExpr>,
    ) -> Result<Matrix<RatFunc>> {
        let s = self.singular_space(d)?;
        let ex = self.extremal_subspaces(d)?;
        Ok(self.theta_from_lift(&ex, &s, lift)?.0)
    }

    /// Twist computed from singular vectors of `V ⊗ M_zeta`, pushed down to
    /// `V ⊗ Z`. `m_hat` must be the Verma module with the highest weight of `Z`.
    pub fn theta_via_verma(&self, m_hat: &HWModule, d: &RootSum) -> Result<VermaLift> {
        if m_hat.hw() != self.z().hw() || m_hat.kind() != &crate::module::ModuleKind::Verma {
            return Err(Error::Inconsistent("lift module must be the Verma module of Z".into()));
        }
        let lifted_tp = TensorProduct::new(self.v(), m_hat, d.height())?;
        let s_hat = lifted_tp.singular_space(d)?;
        let s = self.singular_space(d)?;
        let src = lifted_tp.space(d)?;
        let dst = self.space(d)?;
        // push V ⊗ M_zeta down to V ⊗ Z blockwise
        let mut images = Vec::with_capacity(s_hat.dim());
        for u in &s_hat.basis {
            let mut x = vec![RatFunc::zero(); dst.dim];
            for (sb, db) in src.blocks.iter().zip(&dst.blocks) {
                let zsp = self.z().space(&sb.b)?;
                let msp = m_hat.space(&sb.b)?;
                for j in 0..sb.dim_z {
                    let col = zsp.class_of_word(msp.basis_word(j));
                    for i in 0..sb.dim_v {
                        let c = &u[sb.offset + i * sb.dim_z + j];
                        if c.is_zero() {
                            continue;
                        }
                        for (l, p) in col.iter().enumerate() {
                            if !p.is_zero() {
                                let k = db.offset + i * db.dim_z + l;
                                x[k] = x[k].add(&c.mul(p));
                            }
                        }
                    }
                }
            }
            images.push(x);
        }
        let lifted = span_rank(&images, dst.dim);
        if lifted < s.dim() {
            return Ok(VermaLift::DimensionGap {
                lifted,
                expected: s.dim(),
            });
        }
        // each delta_l(v) is the image of some singular vector of V ⊗ M_zeta
        let ex = self.extremal_subspaces(d)?;
        let lift = Self::basis_lift(m_hat);
        let proj = Matrix::from_cols(&images, dst.dim);
        let mut cols = Vec::with_capacity(ex.plus.len());
        for v in &ex.plus {
            let u = self.delta_l(&s, v)?;
            let c = proj
                .solve(&u)
                .ok_or_else(|| Error::Inconsistent("singular vector outside the projected span".into()))?;
            let u_hat = combine(&s_hat.basis, &c, src.dim);
            let t = lifted_tp.untwist(d, &u_hat, &lift)?;
            cols.push(ex.project(&t)?);
        }
        Ok(VermaLift::Matrix(Matrix::from_cols(&cols, ex.transversal.len())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Context, RootDatum, Weight};
    use crate::coeff::qint;
    use crate::module::ModuleKind;

    fn a1(hw: i64, kind: ModuleKind, h: u32) -> HWModule {
        let ctx = Context::with_root(RootDatum::new(CartanType::A1), 2);
        HWModule::build(&ctx, &Weight::from_ints(&[hw]), kind, h).unwrap()
    }

    #[test]
    fn l1_times_l1_twist() {
        let v = a1(1, ModuleKind::Irreducible, 2);
        let tp = TensorProduct::new(&v, &v, 2).unwrap();
        let r0 = tp.theta(&RootSum(vec![0])).unwrap();
        assert_eq!(r0.theta, Matrix::identity(1));
        assert!(r0.pullback_ok);
        let r1 = tp.theta(&RootSum(vec![1])).unwrap();
        assert!(r1.pullback_ok);
        assert_eq!(r1.pullback[(0, 0)], qint(2, 2).neg());
        assert_eq!(r1.theta_rank, 1);
    }

    #[test]
    fn degenerate_twist() {
        let v = a1(1, ModuleKind::Irreducible, 3);
        let z = a1(-1, ModuleKind::Verma, 3);
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        for d in tp.drops().cloned().collect::<Vec<_>>() {
            let r = tp.theta(&d).unwrap();
            assert!(r.pullback_ok, "{d}");
            assert_eq!(r.theta_rank, r.gram_rank, "{d}");
        }
        let r = tp.theta(&RootSum(vec![1])).unwrap();
        assert_eq!(r.theta_rank, 0);
    }

    #[test]
    fn trivial_partner_lift() {
        // M_0 is reducible but its singular vectors still cover those of L(1) ⊗ L(0)
        let v = a1(1, ModuleKind::Irreducible, 1);
        let z = a1(0, ModuleKind::Irreducible, 1);
        let m = a1(0, ModuleKind::Verma, 1);
        let tp = TensorProduct::new(&v, &z, 1).unwrap();
        for d in [RootSum(vec![0]), RootSum(vec![1])] {
            match tp.theta_via_verma(&m, &d).unwrap() {
                VermaLift::Matrix(x) => assert_eq!(x, tp.theta(&d).unwrap().theta),
                VermaLift::DimensionGap { lifted, expected } => panic!("{lifted} < {expected}"),
            }
        }
    }

    #[test]
    fn verma_partner_lift_is_identical() {
        let v = a1(2, ModuleKind::Irreducible, 3);
        let z = a1(-3, ModuleKind::Verma, 3);
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        for d in tp.drops().cloned().collect::<Vec<_>>() {
            match tp.theta_via_verma(&z, &d).unwrap() {
                VermaLift::Matrix(m) => assert_eq!(m, tp.theta(&d).unwrap().theta),
                VermaLift::DimensionGap { .. } => panic!("gap for a Verma partner"),
            }
        }
    }
}
