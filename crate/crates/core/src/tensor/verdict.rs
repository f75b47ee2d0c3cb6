use std::fmt;

use rayon::prelude::*;

use crate::cartan::RootSum;
use crate::error::{Error, Result};

use super::TensorProduct;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropRecord {
    pub drop: RootSum,
    pub dim_singular: usize,
    pub gram_rank: usize,
    /// Present when the twist was computed.
    pub theta_rank: Option<usize>,
    pub pullback_ok: Option<bool>,
}

impl DropRecord {
    pub fn is_degenerate(&self) -> bool {
        self.gram_rank < self.dim_singular
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    CompletelyReducibleUpTo(u32),
    DefectAt(RootSum),
}

impl Conclusion {
    pub fn is_defect(&self) -> bool {
        matches!(self, Conclusion::DefectAt(_))
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::CompletelyReducibleUpTo(h) => write!(f, "completely-reducible-up-to-{h}"),
            Conclusion::DefectAt(d) => write!(f, "defect-at({d})"),
        }
    }
}

/// Per-drop singular data of `V ⊗ Z` and the resulting reducibility call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub cutoff: u32,
    pub drops: Vec<DropRecord>,
    pub conclusion: Conclusion,
}

impl Verdict {
    pub fn from_records(cutoff: u32, drops: Vec<DropRecord>) -> Self {
        let conclusion = drops
            .iter()
            .find(|r| r.is_degenerate())
            .map(|r| Conclusion::DefectAt(r.drop.clone()))
            .unwrap_or(Conclusion::CompletelyReducibleUpTo(cutoff));
        Self {
            cutoff,
            drops,
            conclusion,
        }
    }

    pub fn record(&self, d: &RootSum) -> Option<&DropRecord> {
        self.drops.iter().find(|r| &r.drop == d)
    }

    /// Drops carrying at least one singular vector.
    pub fn singular_drops(&self) -> impl Iterator<Item = &DropRecord> {
        self.drops.iter().filter(|r| r.dim_singular > 0)
    }
}

impl TensorProduct<'_> {
    fn drop_record(&self, d: &RootSum, with_twist: bool) -> Result<DropRecord> {
        if with_twist {
            // the twist needs singular vectors parametrized by V^+_Z; for a
            // reducible factor that can fail and only the form data is kept
            match self.theta(d) {
                Ok(t) => {
                    return Ok(DropRecord {
                        drop: d.clone(),
                        dim_singular: t.dim_singular,
                        gram_rank: t.gram_rank,
                        theta_rank: Some(t.theta_rank),
                        pullback_ok: Some(t.pullback_ok),
                    })
                }
                Err(Error::LeadingMismatch(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let s = self.singular_space(d)?;
        let gram_rank = if s.dim() == 0 {
            0
        } else {
            self.canonical_gram(&s)?.rank()
        };
        Ok(DropRecord {
            drop: d.clone(),
            dim_singular: s.dim(),
            gram_rank,
            theta_rank: None,
            pullback_ok: None,
        })
    }

    /// Singular dimensions and gram ranks for every drop up to the cutoff.
    /// With `with_twist`, also the twist rank and pullback check per drop.
    pub fn verdict(&self, with_twist: bool) -> Result<Verdict> {
        let drops: Vec<RootSum> = self.drops().cloned().collect();
        let records = drops
            .par_iter()
            .map(|d| self.drop_record(d, with_twist))
            .collect::<Result<Vec<_>>>()?;
        Ok(Verdict::from_records(self.cutoff(), records))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Context, RootDatum, Weight};
    use crate::module::{HWModule, ModuleKind};
    use num_rational::BigRational;

    fn a1(hw: i64, kind: ModuleKind, h: u32) -> HWModule {
        let ctx = Context::with_root(RootDatum::new(CartanType::A1), 2);
        HWModule::build(&ctx, &Weight::from_ints(&[hw]), kind, h).unwrap()
    }

    #[test]
    fn clebsch_gordan_small() {
        let v = a1(2, ModuleKind::Irreducible, 3);
        let z = a1(1, ModuleKind::Irreducible, 3);
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        let vd = tp.verdict(true).unwrap();
        assert_eq!(vd.conclusion, Conclusion::CompletelyReducibleUpTo(3));
        assert_eq!(vd.singular_drops().count(), 2);
        for r in &vd.drops {
            assert_eq!(r.theta_rank, Some(r.gram_rank));
            assert_eq!(r.pullback_ok, Some(true));
        }
    }

    #[test]
    fn degenerate_pair() {
        let v = a1(1, ModuleKind::Irreducible, 3);
        let z = a1(-1, ModuleKind::Verma, 3);
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        let vd = tp.verdict(false).unwrap();
        assert_eq!(vd.conclusion, Conclusion::DefectAt(RootSum(vec![1])));
        assert_eq!(vd.conclusion.to_string(), "defect-at(a1)");
    }

    #[test]
    fn generic_vermas() {
        let half = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let hws = [Weight::new(vec![half(1, 3)]), Weight::new(vec![half(-2, 5)])];
        let ctx = Context::for_weights(RootDatum::new(CartanType::A1), hws.iter()).unwrap();
        let v = HWModule::build(&ctx, &hws[0], ModuleKind::Verma, 3).unwrap();
        let z = HWModule::build(&ctx, &hws[1], ModuleKind::Verma, 3).unwrap();
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        let vd = tp.verdict(false).unwrap();
        assert_eq!(vd.conclusion, Conclusion::CompletelyReducibleUpTo(3));
        assert!(vd.drops.iter().all(|r| r.dim_singular == 1 && r.gram_rank == 1));
    }

    #[test]
    fn reducible_partner_keeps_form_data() {
        let v = a1(2, ModuleKind::Irreducible, 3);
        let z = a1(0, ModuleKind::Verma, 3);
        let tp = TensorProduct::new(&v, &z, 3).unwrap();
        let vd = tp.verdict(true).unwrap();
        let r = vd.record(&RootSum(vec![3])).unwrap();
        assert_eq!(r.dim_singular, 1);
        assert_eq!(r.theta_rank, None);
        assert!(vd.conclusion.is_defect());
    }
}
