//! Integer partitions and the multiplicity operations used by the
//! basic-set transform.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive")]
    ZeroPart,
    #[error("parts must be weakly decreasing")]
    NotSorted,
    #[error("{h} does not divide the multiplicity {mult} of part {part}")]
    IndivisibleMultiplicity { h: u64, part: u64, mult: u64 },
    #[error("divisor must be positive")]
    ZeroDivisor,
}

/// A weakly decreasing sequence of positive integers, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        Ok(Self { parts })
    }

    /// Sorts the given parts into canonical order.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |mu|, the sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// The conjugate partition: column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let Some(&first) = self.parts.first() else {
            return Partition::empty();
        };
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u64)
            .collect();
        Partition { parts }
    }

    /// gcd of the parts; 0 for the empty partition.
    pub fn delta(&self) -> u64 {
        self.parts.iter().fold(0, |acc, &p| gcd(acc, p))
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((part, mult)) if *part == p => *mult += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Divides every part multiplicity by `h`.  Requires h | delta of the
    /// transpose, equivalently h divides every multiplicity.
    pub fn divide(&self, h: u64) -> Result<Partition, PartitionError> {
        if h == 0 {
            return Err(PartitionError::ZeroDivisor);
        }
        let mut parts = Vec::new();
        for (part, mult) in self.multiplicities() {
            if mult % h != 0 {
                return Err(PartitionError::IndivisibleMultiplicity { h, part, mult });
            }
            for _ in 0..mult / h {
                parts.push(part);
            }
        }
        Ok(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let mut p = remaining.min(max_part);
        while p >= 1 {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
            p -= 1;
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn transpose_hook_is_self_conjugate() {
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
    }

    #[test]
    fn transpose_row_and_column() {
        assert_eq!(p(&[3]).transpose(), p(&[1, 1, 1]));
        assert_eq!(p(&[1, 1, 1]).transpose(), p(&[3]));
        assert_eq!(p(&[2, 2]).transpose(), p(&[2, 2]));
    }

    #[test]
    fn delta_is_gcd_of_parts() {
        assert_eq!(p(&[4, 2]).delta(), 2);
        assert_eq!(p(&[3, 2]).delta(), 1);
        assert_eq!(Partition::empty().delta(), 0);
    }

    #[test]
    fn divide_halves_multiplicities() {
        assert_eq!(p(&[1, 1]).divide(2).unwrap(), p(&[1]));
        let mu = p(&[1, 1]);
        assert_eq!(mu.divide(2).unwrap().size() * 2, mu.size());
    }

    #[test]
    fn divide_rejects_indivisible_multiplicity() {
        let err = p(&[2, 1]).divide(2).unwrap_err();
        assert!(matches!(err, PartitionError::IndivisibleMultiplicity { .. }));
    }

    #[test]
    fn partitions_of_small_n() {
        assert_eq!(partitions_of(0).len(), 1);
        assert_eq!(partitions_of(4).len(), 5);
        let two: Vec<_> = partitions_of(2);
        assert_eq!(two, vec![p(&[2]), p(&[1, 1])]);
    }

    #[test]
    fn delta_of_transpose_is_gcd_of_multiplicities() {
        for parts in [&[4, 2][..], &[2, 2, 1, 1], &[3, 3, 3], &[5]] {
            let mu = p(parts);
            let mult_gcd = mu
                .multiplicities()
                .iter()
                .fold(0, |acc, &(_, m)| gcd(acc, m));
            assert_eq!(mu.transpose().delta(), mult_gcd);
        }
    }
}
