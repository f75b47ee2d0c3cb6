//! Finite-type Cartan data, weights, root-lattice drops and word enumeration.
//!
//! Weights are stored by their pairings `(lambda, alpha_i)` with the simple
//! roots under the symmetrized inner product, short roots normalized to
//! `(alpha, alpha) = 2`. The pairing vector is the source of truth; nothing
//! here converts to fundamental-weight coordinates except `depth`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{qint_rational, v_exponent, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A1,
    A2,
    A3,
    B2,
    G2,
}

impl CartanType {
    pub const ALL: [CartanType; 5] = [Self::A1, Self::A2, Self::A3, Self::B2, Self::G2];

    pub fn label(self) -> &'static str {
        match self {
            Self::A1 => "A1",
            Self::A2 => "A2",
            Self::A3 => "A3",
            Self::B2 => "B2",
            Self::G2 => "G2",
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownDatum(s.to_string()))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: CartanType,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
}

impl RootDatum {
    pub fn new(label: CartanType) -> Self {
        // index 0 is the short root in B2 and G2
        let (cartan, symmetrizers) = match label {
            CartanType::A1 => (vec![vec![2]], vec![1]),
            CartanType::A2 => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            CartanType::A3 => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], vec![1, 1, 1]),
            CartanType::B2 => (vec![vec![2, -2], vec![-1, 2]], vec![1, 2]),
            CartanType::G2 => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
        };
        Self {
            label,
            cartan,
            symmetrizers,
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.symmetrizers[i]
    }

    /// `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn root_pairing(&self, i: usize, j: usize) -> i64 {
        self.symmetrizers[i] * self.cartan[i][j]
    }

    /// Pairing of two root-lattice elements.
    pub fn drop_pairing(&self, a: &RootSum, b: &RootSum) -> i64 {
        let mut acc = 0;
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                acc += x as i64 * y as i64 * self.root_pairing(i, j);
            }
        }
        acc
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidIndex(i))
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.coords.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::WeightRank {
                expected: self.rank(),
                got: w.coords.len(),
            })
        }
    }

    /// `(lambda, alpha_i)`.
    pub fn inner(&self, lambda: &Weight, i: usize) -> Result<BigRational> {
        self.check_index(i)?;
        self.check_weight(lambda)?;
        Ok(lambda.coords[i].clone())
    }

    /// The simple root `alpha_j` as a weight.
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight {
            coords: (0..self.rank())
                .map(|i| BigRational::from_integer(self.root_pairing(j, i).into()))
                .collect(),
        }
    }

    /// `lambda - drop`.
    pub fn lower(&self, lambda: &Weight, drop: &RootSum) -> Weight {
        Weight {
            coords: (0..self.rank())
                .map(|i| {
                    let shift: i64 = drop
                        .0
                        .iter()
                        .enumerate()
                        .map(|(j, &m)| m as i64 * self.root_pairing(j, i))
                        .sum();
                    &lambda.coords[i] - BigRational::from_integer(shift.into())
                })
                .collect(),
        }
    }

    /// `(lambda - drop, alpha_i)`.
    pub fn pairing_below(&self, lambda: &Weight, drop: &RootSum, i: usize) -> BigRational {
        let shift: i64 = drop
            .0
            .iter()
            .enumerate()
            .map(|(j, &m)| m as i64 * self.root_pairing(j, i))
            .sum();
        &lambda.coords[i] - BigRational::from_integer(shift.into())
    }

    /// `(lambda, drop)` for a root-lattice element.
    pub fn pairing_with_drop(&self, lambda: &Weight, drop: &RootSum) -> BigRational {
        drop.0
            .iter()
            .enumerate()
            .map(|(i, &m)| &lambda.coords[i] * BigRational::from_integer((m as i64).into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn height(&self, drop: &RootSum) -> u32 {
        drop.height()
    }

    /// All drops of height at most `cutoff`, height first, then decreasing
    /// multiplicity vectors.
    pub fn enumerate_drops(&self, cutoff: u32) -> Vec<RootSum> {
        let mut out = Vec::new();
        for h in 0..=cutoff {
            let mut level = Vec::new();
            compositions(self.rank(), h, &mut vec![0; self.rank()], 0, &mut level);
            level.sort();
            out.extend(level);
        }
        out
    }

    /// All words whose letter multiset is `drop`, in increasing lexicographic order.
    pub fn enumerate_words(&self, drop: &RootSum) -> Vec<Word> {
        let mut out = Vec::new();
        let mut remaining = drop.0.clone();
        let mut current = Vec::with_capacity(drop.height() as usize);
        words_rec(&mut remaining, &mut current, drop.height() as usize, &mut out);
        out
    }

    /// Serre pairs `(i, j)`, `i != j`, with `a_ij != 0`.
    pub fn serre_pairs(&self) -> Vec<(usize, usize)> {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .collect()
    }

    /// Number of simple-root steps from `lambda` to its lowest weight, for a
    /// dominant integral `lambda`: the height of `lambda - w0 lambda`.
    pub fn depth(&self, lambda: &Weight) -> Result<u32> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant_integral(self) {
            return Err(Error::InfiniteDimensional(format!(
                "highest weight {lambda} is not dominant integral"
            )));
        }
        // -w0 is the diagram flip on type A, the identity otherwise
        let flipped: Vec<BigRational> = match self.label {
            CartanType::A2 | CartanType::A3 => lambda.coords.iter().rev().cloned().collect(),
            _ => lambda.coords.clone(),
        };
        let rhs: Vec<BigRational> = lambda.coords.iter().zip(&flipped).map(|(a, b)| a + b).collect();
        let r = self.rank();
        let gram = Matrix::from_rows(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| BigRational::from_integer(self.root_pairing(j, i).into()))
                        .collect()
                })
                .collect(),
            r,
        );
        let coeffs = gram.solve(&rhs).expect("Cartan matrix is invertible");
        let total = coeffs.iter().fold(BigRational::zero(), |a, b| a + b);
        if !total.is_integer() {
            return Err(Error::Inconsistent("non-integral depth".into()));
        }
        Ok(u32::try_from(total.to_integer()).unwrap_or(0))
    }
}

fn compositions(r: usize, h: u32, cur: &mut Vec<u32>, idx: usize, out: &mut Vec<RootSum>) {
    if idx + 1 == r {
        cur[idx] = h;
        out.push(RootSum(cur.clone()));
        return;
    }
    for k in 0..=h {
        cur[idx] = k;
        compositions(r, h - k, cur, idx + 1, out);
    }
}

fn words_rec(remaining: &mut [u32], current: &mut Vec<u8>, len: usize, out: &mut Vec<Word>) {
    if current.len() == len {
        out.push(Word::new(current.clone()));
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            current.push(i as u8);
            words_rec(remaining, current, len, out);
            current.pop();
            remaining[i] += 1;
        }
    }
}

/// A weight, given by its pairings with the simple roots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<BigRational>,
}

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    /// Integral with `2(lambda, alpha_i)/(alpha_i, alpha_i)` a non-negative integer.
    pub fn is_dominant_integral(&self, datum: &RootDatum) -> bool {
        self.coords.iter().enumerate().all(|(i, c)| {
            let coroot = c / BigRational::from_integer(datum.symmetrizer(i).into());
            coroot.is_integer() && !coroot.is_negative()
        })
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> u32 {
        let l = self
            .coords
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        u32::try_from(l).unwrap_or(u32::MAX)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("invalid weight coordinate `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }
}

/// Element of the positive root lattice: multiplicities of the simple roots.
///
/// Ordered by height, then by decreasing multiplicity vector, so that
/// `alpha_1` precedes `alpha_2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootSum(pub Vec<u32>);

impl RootSum {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn plus_simple(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        Self(v)
    }

    pub fn minus_simple(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(Self(v))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `other <= self` componentwise.
    pub fn contains(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b <= a)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    /// Number of distinct words with this letter multiset.
    pub fn multinomial(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut n: u128 = 0;
        for &m in &self.0 {
            for k in 1..=m as u128 {
                n += 1;
                acc = acc * n / k;
            }
        }
        acc
    }
}

impl Ord for RootSum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height().cmp(&other.height()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for RootSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &m) in self.0.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if m == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", m, i + 1)?;
            }
        }
        Ok(())
    }
}

impl RootSum {
    /// Parse the display form (`0`, `a1`, `2a1+a2`) for a datum of the given rank.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid root sum `{s}`"));
        let mut out = Self::zero(rank);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for term in s.split('+') {
            let term = term.trim();
            let (mult, idx) = term.split_once('a').ok_or_else(bad)?;
            let m: u32 = if mult.is_empty() {
                1
            } else {
                mult.parse().map_err(|_| bad())?
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            if i == 0 || i > rank {
                return Err(Error::InvalidIndex(i));
            }
            out.0[i - 1] += m;
        }
        Ok(out)
    }
}

impl fmt::Debug for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSum({self})")
    }
}

/// Shared arithmetic context: a root datum plus the root `D` with `v^D = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    datum: RootDatum,
    root: u32,
}

impl Context {
    /// `D = 2 * lcm` of the denominators of all pairings that occur.
    pub fn for_weights<'a, I: IntoIterator<Item = &'a Weight>>(datum: RootDatum, weights: I) -> Result<Self> {
        let mut l: u32 = 1;
        for w in weights {
            datum.check_weight(w)?;
            l = l.lcm(&w.denominator_lcm());
        }
        Ok(Self { datum, root: 2 * l })
    }

    pub fn with_root(datum: RootDatum, root: u32) -> Self {
        Self { datum, root }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `D` with `v^D = q`.
    pub fn root(&self) -> u32 {
        self.root
    }

    /// `q^x`.
    pub fn q_pow(&self, x: &BigRational) -> Result<RatFunc> {
        Ok(RatFunc::v_pow(v_exponent(x, self.root)?))
    }

    /// `q^n` for an integer `n`.
    pub fn q_pow_int(&self, n: i64) -> RatFunc {
        RatFunc::v_pow(n * self.root as i64)
    }

    /// `[x]_q`.
    pub fn qint(&self, x: &BigRational) -> Result<RatFunc> {
        qint_rational(x, self.root)
    }

    pub fn can_host(&self, w: &Weight) -> bool {
        self.datum.check_weight(w).is_ok() && w.coords.iter().all(|c| v_exponent(c, self.root).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn symmetrizability() {
        for t in CartanType::ALL {
            let d = RootDatum::new(t);
            for i in 0..d.rank() {
                assert_eq!(d.root_pairing(i, i), 2 * d.symmetrizer(i));
                for j in 0..d.rank() {
                    assert_eq!(d.root_pairing(i, j), d.root_pairing(j, i), "{t} {i} {j}");
                }
            }
            let min_norm = (0..d.rank()).map(|i| d.root_pairing(i, i)).min().unwrap();
            assert_eq!(min_norm, 2);
        }
    }

    #[test]
    fn inner_examples() {
        let a1 = RootDatum::new(CartanType::A1);
        assert_eq!(a1.inner(&Weight::from_ints(&[5]), 0).unwrap(), rat(5));
        let a2 = RootDatum::new(CartanType::A2);
        assert_eq!(a2.inner(&a2.simple_root(0), 1).unwrap(), rat(-1));
        let b2 = RootDatum::new(CartanType::B2);
        assert_eq!(b2.inner(&b2.simple_root(0), 1).unwrap(), rat(-2));
        assert!(a2.inner(&Weight::from_ints(&[1]), 0).is_err());
        assert!(a2.inner(&Weight::from_ints(&[1, 0]), 2).is_err());
    }

    #[test]
    fn drop_enumeration() {
        let a1 = RootDatum::new(CartanType::A1);
        assert_eq!(
            a1.enumerate_drops(2),
            vec![RootSum(vec![0]), RootSum(vec![1]), RootSum(vec![2])]
        );
        let a2 = RootDatum::new(CartanType::A2);
        assert_eq!(
            a2.enumerate_drops(1),
            vec![RootSum(vec![0, 0]), RootSum(vec![1, 0]), RootSum(vec![0, 1])]
        );
        let h2 = a2.enumerate_drops(2);
        assert_eq!(h2.len(), 6);
        assert_eq!(
            &h2[3..],
            &[RootSum(vec![2, 0]), RootSum(vec![1, 1]), RootSum(vec![0, 2])]
        );
        let mut sorted = h2.clone();
        sorted.sort();
        assert_eq!(sorted, h2);
    }

    #[test]
    fn word_enumeration() {
        let a1 = RootDatum::new(CartanType::A1);
        assert_eq!(a1.enumerate_words(&RootSum(vec![3])), vec![Word::new(vec![0, 0, 0])]);
        let a2 = RootDatum::new(CartanType::A2);
        assert_eq!(
            a2.enumerate_words(&RootSum(vec![1, 1])),
            vec![Word::new(vec![0, 1]), Word::new(vec![1, 0])]
        );
        assert_eq!(a2.enumerate_words(&RootSum(vec![2, 1])).len(), 3);
        for t in CartanType::ALL {
            let d = RootDatum::new(t);
            for drop in d.enumerate_drops(6) {
                assert_eq!(d.enumerate_words(&drop).len() as u128, drop.multinomial());
            }
        }
    }

    #[test]
    fn heights() {
        assert_eq!(RootSum(vec![0, 0]).height(), 0);
        assert_eq!(RootSum(vec![1, 2]).height(), 3);
        assert_eq!(RootSum(vec![4]).height(), 4);
        let a = RootSum(vec![1, 2, 0]);
        let b = RootSum(vec![3, 0, 1]);
        assert_eq!(a.add(&b).height(), a.height() + b.height());
    }

    #[test]
    fn root_sum_parse_round_trip() {
        for d in RootDatum::new(CartanType::A3).enumerate_drops(4) {
            assert_eq!(RootSum::parse(&d.to_string(), 3).unwrap(), d);
        }
        assert_eq!(RootSum::parse("a1+a1", 1).unwrap(), RootSum(vec![2]));
        assert!(RootSum::parse("a3", 2).is_err());
        assert!(RootSum::parse("b1", 2).is_err());
    }

    #[test]
    fn depth_of_finite_modules() {
        let a1 = RootDatum::new(CartanType::A1);
        assert_eq!(a1.depth(&Weight::from_ints(&[3])).unwrap(), 3);
        let a2 = RootDatum::new(CartanType::A2);
        assert_eq!(a2.depth(&Weight::from_ints(&[1, 1])).unwrap(), 4);
        assert_eq!(a2.depth(&Weight::from_ints(&[1, 0])).unwrap(), 2);
        let b2 = RootDatum::new(CartanType::B2);
        // spin module (4-dimensional) and vector module (5-dimensional)
        assert_eq!(b2.depth(&Weight::from_ints(&[1, 0])).unwrap(), 3);
        assert_eq!(b2.depth(&Weight::from_ints(&[0, 2])).unwrap(), 4);
        let g2 = RootDatum::new(CartanType::G2);
        // 7-dimensional module: highest short root 2a1 + a2, lowest is its negative
        assert_eq!(g2.depth(&Weight::from_ints(&[1, 0])).unwrap(), 6);
        assert!(a1.depth(&Weight::from_ints(&[-1])).is_err());
    }

    #[test]
    fn session_root() {
        let a1 = RootDatum::new(CartanType::A1);
        let w = Weight::new(vec![BigRational::new(1.into(), 3.into())]);
        let ctx = Context::for_weights(a1.clone(), [&w, &Weight::from_ints(&[2])]).unwrap();
        assert_eq!(ctx.root(), 6);
        let ctx = Context::for_weights(a1, [&Weight::from_ints(&[2])]).unwrap();
        assert_eq!(ctx.root(), 2);
    }
}
