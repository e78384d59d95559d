//! Cross-checks the greedy ordering search against an independent
//! exhaustive search over all (row order, column order) pairs.

use std::collections::BTreeSet;

use triangulift_core::label::{BrauerLabel, CharLabel};
use triangulift_core::matrix::DecMatrix;

fn chi(i: usize) -> CharLabel {
    CharLabel::new(format!("r{i}")).unwrap()
}

fn phi(j: usize) -> BrauerLabel {
    BrauerLabel::new(format!("c{j}")).unwrap()
}

fn build(n: usize, entries: Vec<Vec<u64>>) -> DecMatrix {
    DecMatrix::new(
        (0..n).map(chi).collect(),
        (0..n).map(phi).collect(),
        entries,
    )
    .unwrap()
}

/// Backtracking enumeration of every certifying pair of orders: position
/// by position, any unused (row, col) with a diagonal 1 whose column is
/// zero in all earlier rows extends the prefix.  Complete by construction
/// and independent of the greedy peel.
fn enumerate_certificates(entries: &[Vec<u64>]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = entries.len();
    let mut rows_used = vec![false; n];
    let mut cols_used = vec![false; n];
    let mut row_order = Vec::new();
    let mut col_order = Vec::new();
    let mut out = Vec::new();
    fn rec(
        entries: &[Vec<u64>],
        rows_used: &mut Vec<bool>,
        cols_used: &mut Vec<bool>,
        row_order: &mut Vec<usize>,
        col_order: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let n = entries.len();
        if row_order.len() == n {
            out.push((row_order.clone(), col_order.clone()));
            return;
        }
        for i in 0..n {
            if rows_used[i] {
                continue;
            }
            for j in 0..n {
                if cols_used[j] || entries[i][j] != 1 {
                    continue;
                }
                if row_order.iter().any(|&prev| entries[prev][j] != 0) {
                    continue;
                }
                rows_used[i] = true;
                cols_used[j] = true;
                row_order.push(i);
                col_order.push(j);
                rec(entries, rows_used, cols_used, row_order, col_order, out);
                row_order.pop();
                col_order.pop();
                rows_used[i] = false;
                cols_used[j] = false;
            }
        }
    }
    rec(
        entries,
        &mut rows_used,
        &mut cols_used,
        &mut row_order,
        &mut col_order,
        &mut out,
    );
    out
}

fn exhaustive_bijections(entries: &[Vec<u64>]) -> BTreeSet<Vec<(usize, usize)>> {
    enumerate_certificates(entries)
        .into_iter()
        .map(|(rows, cols)| {
            let mut pairing: Vec<(usize, usize)> =
                rows.into_iter().zip(cols).collect();
            pairing.sort_unstable();
            pairing
        })
        .collect()
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_entries(rng: &mut Lcg, n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.below(3)).collect())
        .collect()
}

/// Lower unitriangular in a hidden order, then both sides scrambled.
fn planted_entries(rng: &mut Lcg, n: usize) -> Vec<Vec<u64>> {
    let mut hidden = vec![vec![0u64; n]; n];
    for (i, row) in hidden.iter_mut().enumerate() {
        row[i] = 1;
        for (j, entry) in row.iter_mut().enumerate().take(i) {
            let _ = j;
            *entry = rng.below(3);
        }
    }
    let row_perm = random_permutation(rng, n);
    let col_perm = random_permutation(rng, n);
    (0..n)
        .map(|i| (0..n).map(|j| hidden[row_perm[i]][col_perm[j]]).collect())
        .collect()
}

fn random_permutation(rng: &mut Lcg, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        perm.swap(i, j);
    }
    perm
}

#[test]
fn greedy_matches_exhaustive_on_all_binary_3x3() {
    for code in 0..512u32 {
        let entries: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| u64::from(code >> (3 * i + j) & 1)).collect())
            .collect();
        let m = build(3, entries.clone());
        let greedy = m.find_unitriangular();
        let exhaustive = enumerate_certificates(&entries);
        assert_eq!(
            greedy.is_some(),
            !exhaustive.is_empty(),
            "disagreement on matrix {code:03o}: {entries:?}"
        );
        if let Some(cert) = greedy {
            assert!(m.is_certified_by(&cert));
        }
    }
}

#[test]
fn greedy_matches_exhaustive_on_random_matrices() {
    let mut rng = Lcg(0x5eed_0001);
    for trial in 0..1500 {
        let n = 4 + (trial % 2);
        let entries = if trial % 2 == 0 {
            random_entries(&mut rng, n)
        } else {
            planted_entries(&mut rng, n)
        };
        let m = build(n, entries.clone());
        let greedy = m.find_unitriangular();
        let feasible = !enumerate_certificates(&entries).is_empty();
        assert_eq!(greedy.is_some(), feasible, "entries {entries:?}");
        if let Some(cert) = greedy {
            assert!(m.is_certified_by(&cert));
        }
    }
}

#[test]
fn all_certificates_share_one_bijection() {
    let mut rng = Lcg(0x5eed_0002);
    let mut checked = 0;
    for trial in 0..600 {
        let n = 4 + (trial % 3); // up to 6x6
        let entries = planted_entries(&mut rng, n);
        let m = build(n, entries.clone());
        let bijections = exhaustive_bijections(&entries);
        if bijections.is_empty() {
            continue;
        }
        checked += 1;
        assert_eq!(bijections.len(), 1, "entries {entries:?}");
        let canonical = m.canonical_bijection().unwrap();
        let expected: Vec<(usize, usize)> = bijections.into_iter().next().unwrap();
        let got: Vec<(usize, usize)> = {
            let mut pairs: Vec<(usize, usize)> = canonical
                .iter()
                .map(|(r, c)| {
                    (
                        m.row_position(r).unwrap(),
                        m.col_position(c).unwrap(),
                    )
                })
                .collect();
            pairs.sort_unstable();
            pairs
        };
        assert_eq!(got, expected);
    }
    assert!(checked > 100, "only {checked} positive instances seen");
}

#[test]
fn uniqueness_holds_on_all_binary_3x3() {
    for code in 0..512u32 {
        let entries: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| u64::from(code >> (3 * i + j) & 1)).collect())
            .collect();
        let bijections = exhaustive_bijections(&entries);
        assert!(bijections.len() <= 1, "matrix {entries:?}");
    }
}

#[test]
fn storage_order_does_not_change_the_result() {
    let mut rng = Lcg(0x5eed_0003);
    for _ in 0..200 {
        let n = 5;
        let entries = planted_entries(&mut rng, n);
        let m = build(n, entries.clone());
        let row_perm = random_permutation(&mut rng, n);
        let col_perm = random_permutation(&mut rng, n);
        let shuffled = DecMatrix::new(
            row_perm.iter().map(|&i| chi(i)).collect(),
            col_perm.iter().map(|&j| phi(j)).collect(),
            row_perm
                .iter()
                .map(|&i| col_perm.iter().map(|&j| entries[i][j]).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(m.find_unitriangular(), shuffled.find_unitriangular());
    }
}
