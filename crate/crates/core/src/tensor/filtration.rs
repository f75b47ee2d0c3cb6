//! Submodule closures inside the truncated tensor product and the height
//! filtration `(V ⊗ Z)_k`: the submodule generated by `V[nu - a] ⊗ 1_zeta`
//! over all drops `a` of height at most `k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::RootSum;
use crate::coeff::RatFunc;
use crate::error::Result;
use crate::linalg::{in_span, span_basis};

use super::{dot, TensorProduct};

/// A subspace of the truncated tensor product, as a span basis per drop.
pub type Graded = BTreeMap<RootSum, Vec<Vec<RatFunc>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// Everything of height at most `k` lies in `(V ⊗ Z)_k`.
    Saturation,
    /// `V^perp_Z ⊗ 1_zeta` at height `k` lies in `(V ⊗ Z)_{k-1}`.
    PerpIsLower,
    /// `(V ⊗ Z)_{k-1}` and `^+V_Z ⊗ 1_zeta` at height `k` generate `(V ⊗ Z)_k`.
    TransversalGenerates,
    /// `theta(v) ⊗ 1_zeta - delta_l(v)` lies in `(V ⊗ Z)_{k-1}`.
    TwistDiagonal,
}

impl Clause {
    pub const ALL: [Clause; 4] = [
        Clause::Saturation,
        Clause::PerpIsLower,
        Clause::TransversalGenerates,
        Clause::TwistDiagonal,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            Clause::Saturation => "i",
            Clause::PerpIsLower => "ii",
            Clause::TransversalGenerates => "iii",
            Clause::TwistDiagonal => "iv",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseResult {
    pub clause: Clause,
    pub k: u32,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub cutoff: u32,
    pub results: Vec<ClauseResult>,
}

impl FiltrationReport {
    pub fn passed(&self, clause: Clause) -> bool {
        self.results.iter().filter(|r| r.clause == clause).all(|r| r.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn contains_all(big: &[Vec<RatFunc>], small: &[Vec<RatFunc>], n: usize) -> bool {
    small.iter().all(|x| in_span(big, x, n))
}

impl TensorProduct<'_> {
    /// Smallest subspace containing `seeds` and stable under every `e_a`, and
    /// under every `f_a` whose image stays within the cutoff.
    pub fn closure(&self, seeds: &Graded) -> Result<Graded> {
        let drops: Vec<RootSum> = self.drops().cloned().collect();
        let mut cur: Graded = drops
            .iter()
            .map(|d| (d.clone(), seeds.get(d).cloned().unwrap_or_default()))
            .collect();
        // U = U^- U^0 U^+: raise first, then lower
        for d in drops.iter().rev() {
            let n = self.space(d)?.dim;
            let basis = span_basis(&cur[d], n);
            for a in 0..self.rank() {
                if let (Some(t), Some(m)) = (d.minus_simple(a), self.e_matrix(a, d)) {
                    let imgs: Vec<_> = basis.iter().map(|x| m.apply(x)).collect();
                    cur.get_mut(&t).expect("lower drop").extend(imgs);
                }
            }
            cur.insert(d.clone(), basis);
        }
        for d in &drops {
            let n = self.space(d)?.dim;
            let basis = span_basis(&cur[d], n);
            if d.height() < self.cutoff() {
                for a in 0..self.rank() {
                    let m = self.f_matrix(a, d)?;
                    let imgs: Vec<_> = basis.iter().map(|x| m.apply(x)).collect();
                    cur.get_mut(&d.plus_simple(a)).expect("upper drop").extend(imgs);
                }
            }
            cur.insert(d.clone(), basis);
        }
        Ok(cur)
    }

    /// Submodule generated by all singular vectors up to the cutoff.
    pub fn singular_closure(&self) -> Result<Graded> {
        let mut seeds = Graded::new();
        for d in self.drops() {
            seeds.insert(d.clone(), self.singular_space(d)?.basis);
        }
        self.closure(&seeds)
    }

    /// Whether the submodule generated by singular vectors fills every weight
    /// space up to the cutoff.
    pub fn singular_vectors_exhaust(&self) -> Result<bool> {
        let c = self.singular_closure()?;
        for (d, b) in &c {
            if b.len() != self.space(d)?.dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether two subspaces are orthogonal under the canonical form at every drop.
    pub fn orthogonal(&self, x: &Graded, y: &Graded) -> Result<bool> {
        for (d, xs) in x {
            let Some(ys) = y.get(d) else { continue };
            if xs.is_empty() || ys.is_empty() {
                continue;
            }
            let g = self.canonical_form(d)?;
            for a in xs {
                let ga = g.apply(a);
                if ys.iter().any(|b| !dot(&ga, b).is_zero()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn v_seeds(&self, d: &RootSum, only: Option<&[usize]>) -> Result<Vec<Vec<RatFunc>>> {
        let sp = self.space(d)?;
        let blk = sp.v_leading();
        let one = vec![RatFunc::one(); blk.dim_z];
        let z0 = RootSum::zero(self.rank());
        let idx: Vec<usize> = match only {
            Some(s) => s.to_vec(),
            None => (0..blk.dim_v).collect(),
        };
        idx.into_iter()
            .map(|i| {
                let mut e = vec![RatFunc::zero(); blk.dim_v];
                e[i] = RatFunc::one();
                self.pure_tensor(d, &e, &z0, &one)
            })
            .collect()
    }

    /// `(V ⊗ Z)_k` for every `k` from 0 to the cutoff.
    pub fn height_filtration(&self) -> Result<Vec<Graded>> {
        let mut seeds = Graded::new();
        let mut out = Vec::new();
        for k in 0..=self.cutoff() {
            for d in self.drops().filter(|d| d.height() == k) {
                seeds.insert(d.clone(), self.v_seeds(d, None)?);
            }
            out.push(self.closure(&seeds)?);
        }
        Ok(out)
    }

    fn embed_v(&self, d: &RootSum, v: &[RatFunc]) -> Result<Vec<RatFunc>> {
        let z0 = RootSum::zero(self.rank());
        self.pure_tensor(d, v, &z0, &[RatFunc::one()])
    }

    /// Check the four filtration clauses for every `k` up to the cutoff.
    pub fn filtration_check(&self) -> Result<FiltrationReport> {
        let filt = self.height_filtration()?;
        let empty: Graded = self.drops().map(|d| (d.clone(), Vec::new())).collect();
        let mut results = Vec::new();
        for k in 0..=self.cutoff() {
            let cur = &filt[k as usize];
            let prev = if k == 0 { &empty } else { &filt[k as usize - 1] };
            let level: Vec<RootSum> = self.drops().filter(|d| d.height() == k).cloned().collect();

            let mut sat = true;
            for d in self.drops().filter(|d| d.height() <= k) {
                sat &= cur[d].len() == self.space(d)?.dim;
            }
            results.push(ClauseResult {
                clause: Clause::Saturation,
                k,
                passed: sat,
            });

            let mut perp_ok = true;
            let mut diag_ok = true;
            let mut seeds: Graded = prev.clone();
            for d in &level {
                let n = self.space(d)?.dim;
                let ex = self.extremal_subspaces(d)?;
                for p in &ex.perp {
                    perp_ok &= in_span(&prev[d], &self.embed_v(d, p)?, n);
                }
                let twist = self.theta(d)?;
                let s = self.singular_space(d)?;
                for (c, v) in ex.plus.iter().enumerate() {
                    let t = ex.embed(&twist.theta.col(c));
                    let lhs = self.embed_v(d, &t)?;
                    let u = self.delta_l(&s, v)?;
                    let diff: Vec<RatFunc> = lhs.iter().zip(&u).map(|(a, b)| a.sub(b)).collect();
                    diag_ok &= in_span(&prev[d], &diff, n);
                }
                let extra = self.v_seeds(d, Some(&ex.transversal))?;
                seeds.entry(d.clone()).or_default().extend(extra);
            }
            let generated = self.closure(&seeds)?;
            let mut gen_ok = true;
            for d in self.drops() {
                let n = self.space(d)?.dim;
                gen_ok &= generated[d].len() == cur[d].len() && contains_all(&cur[d], &generated[d], n);
            }
            results.push(ClauseResult {
                clause: Clause::PerpIsLower,
                k,
                passed: perp_ok,
            });
            results.push(ClauseResult {
                clause: Clause::TransversalGenerates,
                k,
                passed: gen_ok,
            });
            results.push(ClauseResult {
                clause: Clause::TwistDiagonal,
                k,
                passed: diag_ok,
            });
        }
        Ok(FiltrationReport {
            cutoff: self.cutoff(),
            results,
        })
    }
}
