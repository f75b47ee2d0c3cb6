//! Hermitian forms at real `q0 > 0` relative to the compact star structure,
//! and positivity on finite-dimensional irreducibles.
//!
//! Coefficients are rational, so conjugation only affects `f`-words:
//! `bar(f) = -f` turns the Shapovalov form into the Hermitian one by the
//! sign `(-1)^height` on each weight space.

use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::{generator_words, Element, Gen, GenMap};
use crate::cartan::{Context, RootSum};
use crate::coeff::{qfact, qint, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{HWModule, ModuleKind};

/// Conjugation, star and Chevalley involution of `U_q(g)` on generators.
#[derive(Clone, Debug)]
pub struct StarData {
    pub bar: GenMap,
    pub star: GenMap,
    pub omega: GenMap,
}

impl StarData {
    pub fn new(ctx: &Context) -> Self {
        Self {
            bar: GenMap::bar(ctx),
            star: GenMap::star(ctx),
            omega: GenMap::omega(ctx),
        }
    }

    /// `bar` and `star` square to the identity on every generator word up to
    /// `max_len`, and `omega(star(x)) = bar(x)` on generators.
    pub fn verify(&self, ctx: &Context, max_len: usize) -> bool {
        let r = ctx.rank();
        let words_ok = generator_words(r, max_len).iter().all(|w| {
            let x = Element::word(r, w);
            self.star.apply(&self.star.apply(&x, ctx), ctx) == x && self.bar.apply(&self.bar.apply(&x, ctx), ctx) == x
        });
        let gens_ok = (0..r).flat_map(|a| [Gen::E(a), Gen::F(a)]).all(|g| {
            let x = Element::gen(r, g);
            self.omega.apply(&self.star.apply(&x, ctx), ctx) == self.bar.apply(&x, ctx)
        });
        words_ok && gens_ok
    }
}

fn check_q0(q0: &BigRational) -> Result<()> {
    if !q0.is_positive() {
        return Err(Error::InvalidEvaluationPoint);
    }
    Ok(())
}

fn eval(m: &Matrix<RatFunc>, q0: &BigRational, root: u32) -> Result<Matrix<BigRational>> {
    m.try_map(|x| x.eval_at_q(q0, root))
}

/// Hermitian Gram matrix of `M` at drop `d`, evaluated at `q = q0`.
pub fn hermitian_gram(m: &HWModule, d: &RootSum, q0: &BigRational) -> Result<Matrix<BigRational>> {
    check_q0(q0)?;
    let g = eval(&m.space(d)?.gram, q0, m.ctx().root())?;
    Ok(if d.height() % 2 == 1 { g.map(|x| -x.clone()) } else { g })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropMinors {
    pub drop: RootSum,
    pub minors: Vec<BigRational>,
}

/// A leading principal minor that is not positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub drop: RootSum,
    /// Size of the offending minor.
    pub order: usize,
    pub minor: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub q0: BigRational,
    pub drops: Vec<DropMinors>,
    pub failure: Option<MinorWitness>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Sylvester's criterion on every materialized Hermitian Gram matrix of a
/// finite-dimensional irreducible module.
pub fn positivity_check(m: &HWModule, q0: &BigRational) -> Result<PositivityReport> {
    check_q0(q0)?;
    if m.kind() != &ModuleKind::Irreducible || !m.hw().is_dominant_integral(m.ctx().datum()) {
        return Err(Error::InfiniteDimensional(format!(
            "{} module with highest weight {}",
            m.kind(),
            m.hw()
        )));
    }
    let mut drops = Vec::new();
    let mut failure = None;
    for d in m.drops() {
        if m.dim(d) == 0 {
            continue;
        }
        let h = hermitian_gram(m, d, q0)?;
        let minors = h.leading_minors();
        if failure.is_none() {
            if let Some((order, minor)) = minors
                .iter()
                .position(|x| !x.is_positive())
                .map(|k| (k + 1, minors[k].clone()))
            {
                failure = Some(MinorWitness {
                    drop: d.clone(),
                    order,
                    minor,
                });
            }
        }
        drops.push(DropMinors {
            drop: d.clone(),
            minors,
        });
    }
    Ok(PositivityReport {
        q0: q0.clone(),
        drops,
        failure,
    })
}

/// `H(x v, w) = H(v, x^* w)` for `x` in `{e_a, f_a}`, on every pair of
/// materialized weight spaces, at `q = q0`.
pub fn star_adjointness(m: &HWModule, q0: &BigRational) -> Result<bool> {
    check_q0(q0)?;
    let root = m.ctx().root();
    for d in m.drops() {
        if d.height() >= m.cutoff() {
            continue;
        }
        let hd = hermitian_gram(m, d, q0)?;
        for a in 0..m.rank() {
            let up = d.plus_simple(a);
            let hu = hermitian_gram(m, &up, q0)?;
            let f = eval(&m.f_matrix(a, d)?, q0, root)?;
            let e = match m.e_matrix(a, &up)? {
                Some(e) => eval(e, q0, root)?,
                None => continue,
            };
            // f^* = q^{-h} e and e^* = f q^h; both torus factors see the weight at d
            let k_inv = m.torus_scalar(a, d, true)?.eval_at_q(q0, root)?;
            let k = m.torus_scalar(a, d, false)?.eval_at_q(q0, root)?;
            let lhs_f = f.transpose().mul(&hu);
            let rhs_f = hd.mul(&e).map(|x| x * &k_inv);
            let lhs_e = e.transpose().mul(&hd);
            let rhs_e = hu.mul(&f).map(|x| x * &k);
            if lhs_f != rhs_f || lhs_e != rhs_e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Norm of `f^m 1_n` in the rank-one module of highest weight `n` under the
/// Hermitian form: `[m]! [n][n-1]...[n-m+1] q^{-mn + m(m-1)}`.
pub fn sl2_norm(n: i64, m: u32, root: u32) -> Result<RatFunc> {
    let m = m as i64;
    let mut x = qfact(m, root)?;
    for k in 0..m {
        x = x.mul(&qint(n - k, root));
    }
    Ok(x.mul(&crate::coeff::q_pow(
        &BigRational::from_integer((-m * n + m * (m - 1)).into()),
        root,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, RootDatum, Weight};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn build(t: CartanType, hw: &[i64], kind: ModuleKind, h: u32) -> HWModule {
        let ctx = Context::with_root(RootDatum::new(t), 2);
        HWModule::build(&ctx, &Weight::from_ints(hw), kind, h).unwrap()
    }

    #[test]
    fn l1_value_at_two() {
        let m = build(CartanType::A1, &[1], ModuleKind::Irreducible, 1);
        let h = hermitian_gram(&m, &RootSum(vec![1]), &q(2, 1)).unwrap();
        assert_eq!(h[(0, 0)], q(1, 2));
        let h0 = hermitian_gram(&m, &RootSum(vec![0]), &q(2, 1)).unwrap();
        assert_eq!(h0[(0, 0)], q(1, 1));
    }

    #[test]
    fn positivity_small_cases() {
        let m = build(CartanType::A1, &[3], ModuleKind::Irreducible, 3);
        let r = positivity_check(&m, &q(11, 10)).unwrap();
        assert!(r.passed());
        assert_eq!(r.drops.len(), 4);
        let m = build(CartanType::A1, &[1], ModuleKind::Irreducible, 1);
        let r = positivity_check(&m, &q(1, 1)).unwrap();
        assert!(r.passed());
        assert!(r.drops.iter().all(|d| d.minors == vec![q(1, 1)]));
    }

    #[test]
    fn negative_form_is_caught() {
        let m = build(CartanType::A1, &[1], ModuleKind::Irreducible, 1);
        assert!(matches!(
            positivity_check(&m, &q(-2, 1)),
            Err(Error::InvalidEvaluationPoint)
        ));
        let v = build(CartanType::A1, &[1], ModuleKind::Verma, 2);
        assert!(matches!(
            positivity_check(&v, &q(2, 1)),
            Err(Error::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn star_adjoint_on_finite_modules() {
        let m = build(CartanType::A1, &[3], ModuleKind::Irreducible, 3);
        assert!(star_adjointness(&m, &q(2, 1)).unwrap());
        let m = build(CartanType::A2, &[1, 1], ModuleKind::Irreducible, 4);
        assert!(star_adjointness(&m, &q(2, 1)).unwrap());
    }

    #[test]
    fn star_tables() {
        for t in CartanType::ALL {
            let ctx = Context::with_root(RootDatum::new(t), 2);
            assert!(StarData::new(&ctx).verify(&ctx, 3));
        }
    }

    #[test]
    fn sl2_norm_matches_recursion() {
        for n in 0..5i64 {
            let m = build(CartanType::A1, &[n], ModuleKind::Verma, 4);
            for k in 0..=4u32 {
                let d = RootSum(vec![k]);
                let g = &m.space(&d).unwrap().gram;
                let sign = if k % 2 == 1 {
                    RatFunc::from_int(-1)
                } else {
                    RatFunc::one()
                };
                assert_eq!(g[(0, 0)].mul(&sign), sl2_norm(n, k, 2).unwrap(), "n={n} m={k}");
            }
        }
    }
}
