//! Degree sequences, Betti tables and pure diagrams.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A strictly increasing tuple `(d_0, ..., d_t)`.
///
/// Degree sequences are partially ordered: `a <= b` when `a` is at least as
/// long as `b` and `a_k <= b_k` on the first `len(b)` positions. Longer
/// sequences therefore sit lower in the order, so that a decomposition chain
/// may finish with a shorter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::domain("a degree sequence needs at least one degree"));
        }
        if let Some(k) = degrees.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NotIncreasing { position: k + 1 });
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    /// Number of degrees, `t + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `t`, the homological length.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn shifted(&self, s: i64) -> Self {
        DegreeSequence(self.0.iter().map(|d| d + s).collect())
    }

    pub fn precedes_or_eq(&self, other: &Self) -> bool {
        deg_seq_leq(self, other)
    }
}

impl PartialOrd for DegreeSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (deg_seq_leq(self, other), deg_seq_leq(other, self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// `a <= b` in the partial order on degree sequences.
pub fn deg_seq_leq(a: &DegreeSequence, b: &DegreeSequence) -> bool {
    a.len() >= b.len() && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// Graded Betti numbers `beta_{i,j}` with only nonzero entries stored.
///
/// Every stored value is strictly positive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), Rational>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(i, j, value)` triples. Duplicate positions and
    /// non-positive values are rejected.
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64, Rational)>,
    {
        let mut t = BettiTable::new();
        for (i, j, v) in entries {
            if t.entries.contains_key(&(i, j)) {
                return Err(Error::domain(alloc::format!("duplicate entry ({i}, {j})")));
            }
            t.insert(i, j, v)?;
        }
        Ok(t)
    }

    /// Sets `beta_{i,j} = value`, which must be positive.
    pub fn insert(&mut self, i: usize, j: i64, value: Rational) -> Result<()> {
        if !rational::is_positive(&value) {
            return Err(Error::domain(alloc::format!(
                "entry ({i}, {j}) must be positive, got {}",
                rational::render(&value)
            )));
        }
        self.entries.insert((i, j), value);
        Ok(())
    }

    pub fn get(&self, i: usize, j: i64) -> Option<&Rational> {
        self.entries.get(&(i, j))
    }

    /// Entries in `(i, j)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, &Rational)> + '_ {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Entries of column `i`, by increasing degree.
    pub fn column(&self, i: usize) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, j), v)| (j, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Projective dimension: the largest occupied column.
    pub fn pdim(&self) -> Option<usize> {
        self.entries.keys().next_back().map(|&(i, _)| i)
    }

    /// Regularity: `max (j - i)` over occupied positions.
    pub fn reg(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// Smallest row index `min (j - i)`.
    pub fn min_row(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).min()
    }

    pub fn total_betti(&self, i: usize) -> Rational {
        self.column(i).map(|(_, v)| v).sum()
    }

    /// Multiplies every entry by `c > 0`.
    pub fn scale(&self, c: &Rational) -> Result<BettiTable> {
        if !rational::is_positive(c) {
            return Err(Error::domain(alloc::format!(
                "scale factor must be positive, got {}",
                rational::render(c)
            )));
        }
        Ok(BettiTable {
            entries: self.entries.iter().map(|(&k, v)| (k, v * c)).collect(),
        })
    }

    /// Entrywise `self - other`, dropping exact zeros.
    pub fn sub(&self, other: &BettiTable) -> Result<BettiTable> {
        let mut entries = self.entries.clone();
        for (&(i, j), v) in &other.entries {
            let diff = match entries.get(&(i, j)) {
                Some(a) => a - v,
                None => -v.clone(),
            };
            match diff.cmp(&Rational::zero()) {
                Ordering::Less => return Err(Error::NegativeEntry { i, j }),
                Ordering::Equal => {
                    entries.remove(&(i, j));
                }
                Ordering::Greater => {
                    entries.insert((i, j), diff);
                }
            }
        }
        Ok(BettiTable { entries })
    }

    /// Entrywise sum.
    pub fn add(&self, other: &BettiTable) -> BettiTable {
        let mut entries = self.entries.clone();
        for (&k, v) in &other.entries {
            entries
                .entry(k)
                .and_modify(|a| *a += v)
                .or_insert_with(|| v.clone());
        }
        BettiTable { entries }
    }
}

/// Sum of column `i` of `t`; zero for an empty column.
pub fn total_betti(t: &BettiTable, i: usize) -> Rational {
    t.total_betti(i)
}

/// The pure diagram of type `d`, normalised so that `beta_{0,d_0} = 1`.
///
/// `beta_{i,d_i} = prod_{j != 0} |d_j - d_0| / prod_{j != i} |d_j - d_i|`,
/// which does not change when every degree is shifted by the same amount.
pub fn pure_diagram(d: &DegreeSequence) -> BettiTable {
    let degs = d.degrees();
    let numerator = abs_diff_product(degs, 0);
    let entries = (0..degs.len())
        .map(|i| {
            let value = Rational::new(numerator.clone(), abs_diff_product(degs, i));
            ((i, degs[i]), value)
        })
        .collect();
    BettiTable { entries }
}

fn abs_diff_product(degs: &[i64], i: usize) -> BigInt {
    degs.iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .fold(BigInt::one(), |acc, (_, &dk)| {
            acc * BigInt::from(dk - degs[i]).abs()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio};
    use alloc::vec;

    fn seq(d: &[i64]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn values(t: &BettiTable) -> Vec<(usize, i64, Rational)> {
        t.iter().map(|(i, j, v)| (i, j, v.clone())).collect()
    }

    #[test]
    fn pure_diagram_0245() {
        let t = pure_diagram(&seq(&[0, 2, 4, 5]));
        assert_eq!(
            values(&t),
            vec![
                (0, 0, from_int(1)),
                (1, 2, ratio(10, 3)),
                (2, 4, from_int(5)),
                (3, 5, ratio(8, 3)),
            ]
        );
    }

    #[test]
    fn pure_diagram_koszul() {
        let t = pure_diagram(&seq(&[0, 1, 2, 3]));
        let expect: Vec<_> = [1, 3, 3, 1]
            .iter()
            .enumerate()
            .map(|(i, &b)| (i, i as i64, from_int(b)))
            .collect();
        assert_eq!(values(&t), expect);
    }

    #[test]
    fn pure_diagram_01235() {
        let t = pure_diagram(&seq(&[0, 1, 2, 3, 5]));
        assert_eq!(
            values(&t),
            vec![
                (0, 0, from_int(1)),
                (1, 1, ratio(15, 4)),
                (2, 2, from_int(5)),
                (3, 3, ratio(5, 2)),
                (4, 5, ratio(1, 4)),
            ]
        );
    }

    #[test]
    fn pure_diagram_035() {
        let t = pure_diagram(&seq(&[0, 3, 5]));
        assert_eq!(
            values(&t),
            vec![(0, 0, from_int(1)), (1, 3, ratio(5, 2)), (2, 5, ratio(3, 2))]
        );
    }

    #[test]
    fn single_degree_is_one() {
        let t = pure_diagram(&seq(&[4]));
        assert_eq!(values(&t), vec![(0, 4, from_int(1))]);
    }

    #[test]
    fn degree_sequence_rejects_non_increasing() {
        assert_eq!(
            DegreeSequence::new(vec![0, 0, 1]),
            Err(Error::NotIncreasing { position: 1 })
        );
        assert_eq!(
            DegreeSequence::new(vec![0, 2, 1]),
            Err(Error::NotIncreasing { position: 2 })
        );
        assert!(DegreeSequence::new(vec![]).is_err());
    }

    #[test]
    fn total_betti_examples() {
        let t = pure_diagram(&seq(&[0, 2, 4, 5]));
        assert_eq!(total_betti(&t, 3), ratio(8, 3));
        assert_eq!(total_betti(&BettiTable::new(), 0), from_int(0));
        assert_eq!(total_betti(&t, 7), from_int(0));
    }

    #[test]
    fn scale_examples() {
        let p = pure_diagram(&seq(&[0, 3, 5]));
        let s = p.scale(&ratio(4, 15)).unwrap();
        assert_eq!(
            values(&s),
            vec![(0, 0, ratio(4, 15)), (1, 3, ratio(2, 3)), (2, 5, ratio(2, 5))]
        );
        assert_eq!(p.scale(&from_int(1)).unwrap(), p);
        assert!(BettiTable::new().scale(&from_int(7)).unwrap().is_empty());
        assert!(p.scale(&from_int(0)).is_err());
        assert!(p.scale(&ratio(-1, 2)).is_err());
    }

    #[test]
    fn sub_examples() {
        let p = pure_diagram(&seq(&[0, 1]));
        assert!(p.sub(&p).unwrap().is_empty());
        assert_eq!(
            BettiTable::new().sub(&p),
            Err(Error::NegativeEntry { i: 0, j: 0 })
        );
    }

    #[test]
    fn insert_rejects_non_positive() {
        let mut t = BettiTable::new();
        assert!(t.insert(0, 0, from_int(0)).is_err());
        assert!(t.insert(0, 0, from_int(-2)).is_err());
        assert!(t.is_empty());
        let dup = BettiTable::from_entries([(0, 0, from_int(1)), (0, 0, from_int(2))]);
        assert!(dup.is_err());
    }

    #[test]
    fn pdim_and_reg() {
        let t = pure_diagram(&seq(&[0, 2, 4, 5]));
        assert_eq!(t.pdim(), Some(3));
        assert_eq!(t.reg(), Some(2));
        assert_eq!(t.min_row(), Some(0));
        assert_eq!(BettiTable::new().pdim(), None);
    }

    #[test]
    fn partial_order_examples() {
        assert!(deg_seq_leq(&seq(&[0, 2, 4, 5]), &seq(&[0, 3, 4, 5])));
        assert!(deg_seq_leq(&seq(&[0, 3, 5, 6]), &seq(&[0, 3, 5])));
        assert!(!deg_seq_leq(&seq(&[0, 3, 5]), &seq(&[0, 3, 5, 6])));
        assert!(seq(&[0, 3, 5, 6]) < seq(&[0, 3, 5]));
        assert_eq!(seq(&[0, 1, 3]).partial_cmp(&seq(&[0, 2, 3])), Some(Ordering::Less));
        assert_eq!(seq(&[0, 3]).partial_cmp(&seq(&[1, 2])), None);
    }
}
