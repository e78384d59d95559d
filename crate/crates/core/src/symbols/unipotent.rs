//! Unipotent labels for the symplectic groups: finitely supported maps
//! m with weighted sum 2n whose odd-index values are even, each counted
//! with multiplicity 2^k where k is the number of even indices in the
//! support.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnipotentError {
    #[error("n = {0} exceeds the enumeration guard {1}")]
    Guard(u64, u64),
    #[error("n must be positive")]
    ZeroN,
}

/// One label: the nonzero values of the map, keyed by index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnipotentLabel {
    m: BTreeMap<u64, u64>,
}

impl UnipotentLabel {
    pub fn values(&self) -> &BTreeMap<u64, u64> {
        &self.m
    }

    pub fn weight(&self) -> u64 {
        self.m.iter().map(|(j, v)| j * v).sum()
    }

    /// Number of even indices in the support.
    pub fn k(&self) -> u32 {
        self.m.keys().filter(|j| *j % 2 == 0).count() as u32
    }

    pub fn multiplicity(&self) -> u64 {
        1u64 << self.k()
    }

    /// True when every value is even; these labels are fixed by the outer
    /// diagonal automorphisms.
    pub fn all_values_even(&self) -> bool {
        self.m.values().all(|v| v % 2 == 0)
    }
}

impl fmt::Display for UnipotentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (j, v)) in self.m.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// The full multiset with its split into the all-even part U1 and the
/// rest U2.  Labels are stored once; multiplicities stay attached as
/// integers rather than materializing copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentSet {
    labels: Vec<UnipotentLabel>,
}

impl UnipotentSet {
    pub fn labels(&self) -> &[UnipotentLabel] {
        &self.labels
    }

    pub fn u1(&self) -> impl Iterator<Item = &UnipotentLabel> {
        self.labels.iter().filter(|l| l.all_values_even())
    }

    pub fn u2(&self) -> impl Iterator<Item = &UnipotentLabel> {
        self.labels.iter().filter(|l| !l.all_values_even())
    }

    /// Size of the multiset, multiplicities included.
    pub fn total(&self) -> u64 {
        self.labels.iter().map(|l| l.multiplicity()).sum()
    }

    pub fn u1_total(&self) -> u64 {
        self.u1().map(|l| l.multiplicity()).sum()
    }

    pub fn u2_total(&self) -> u64 {
        self.u2().map(|l| l.multiplicity()).sum()
    }
}

const GUARD: u64 = 40;

/// Enumerates every label of weight 2n with the odd-index parity
/// constraint, in canonical order.
pub fn unipotent_labels(n: u64) -> Result<UnipotentSet, UnipotentError> {
    if n == 0 {
        return Err(UnipotentError::ZeroN);
    }
    if n > GUARD {
        return Err(UnipotentError::Guard(n, GUARD));
    }
    let target = 2 * n;
    let mut labels = Vec::new();
    let mut current: BTreeMap<u64, u64> = BTreeMap::new();
    fn rec(
        j: u64,
        remaining: u64,
        target_j: u64,
        current: &mut BTreeMap<u64, u64>,
        labels: &mut Vec<UnipotentLabel>,
    ) {
        if remaining == 0 {
            labels.push(UnipotentLabel {
                m: current.clone(),
            });
            return;
        }
        if j > target_j || j > remaining {
            return;
        }
        rec(j + 1, remaining, target_j, current, labels);
        let step = if j % 2 == 1 { 2 } else { 1 };
        let mut count = step;
        while j * count <= remaining {
            current.insert(j, count);
            rec(j + 1, remaining - j * count, target_j, current, labels);
            current.remove(&j);
            count += step;
        }
    }
    rec(1, target, target, &mut current, &mut labels);
    labels.sort();
    Ok(UnipotentSet { labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_one_has_three_with_multiplicity() {
        let set = unipotent_labels(1).unwrap();
        assert_eq!(set.labels().len(), 2);
        assert_eq!(set.total(), 3);
        assert_eq!(set.u1_total(), 1);
        assert_eq!(set.u2_total(), 2);
    }

    #[test]
    fn n_two_has_seven_with_multiplicity() {
        let set = unipotent_labels(2).unwrap();
        assert_eq!(set.labels().len(), 4);
        assert_eq!(set.total(), 7);
        assert_eq!(set.u1_total() + set.u2_total(), 7);
    }

    #[test]
    fn odd_indices_always_carry_even_values() {
        for n in 1..=6 {
            let set = unipotent_labels(n).unwrap();
            for label in set.labels() {
                assert_eq!(label.weight(), 2 * n);
                for (j, v) in label.values() {
                    assert!(*v > 0);
                    if j % 2 == 1 {
                        assert_eq!(v % 2, 0, "label {label} at index {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn parity_violation_is_excluded() {
        // {m(3)=1, m(1)=1} would have weight 4 but odd values at odd indices
        let set = unipotent_labels(2).unwrap();
        assert!(!set
            .labels()
            .iter()
            .any(|l| l.values().get(&3) == Some(&1) && l.values().get(&1) == Some(&1)));
    }

    #[test]
    fn split_is_a_partition_of_the_multiset() {
        for n in 1..=6 {
            let set = unipotent_labels(n).unwrap();
            assert_eq!(set.u1().count() + set.u2().count(), set.labels().len());
            assert_eq!(set.u1_total() + set.u2_total(), set.total());
        }
    }
}
