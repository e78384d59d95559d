//! Orbit-interval reordering checked against brute force over all row
//! orders on generated commuting instances.

use std::collections::{BTreeMap, BTreeSet};

use triangulift_core::label::{BrauerLabel, CharLabel};
use triangulift_core::matrix::DecMatrix;
use triangulift_core::perm::{
    commutes, interval_reorder, orbits_are_intervals, LabeledPermGroup, PairedAction, Perm,
};

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

/// A commuting (matrix, paired action) instance built from translation
/// cells: each base carries a cyclic coordinate of prime size (or none),
/// entries depend only on base pair and coordinate difference, diagonal
/// cells are identity blocks and cross-cell blocks sit below the diagonal.
struct Instance {
    dec: DecMatrix,
    action: PairedAction,
}

fn fresh_name(rng: &mut Lcg, used: &mut BTreeSet<String>) -> String {
    loop {
        let name = format!("{:05x}", rng.below(0xfffff));
        if used.insert(name.clone()) {
            return name;
        }
    }
}

fn generate(rng: &mut Lcg, max_rows: usize) -> Instance {
    loop {
        let base_count = 1 + rng.below(3) as usize;
        let sizes: Vec<u64> = (0..base_count)
            .map(|_| match rng.below(3) {
                0 => 1,
                1 => 2,
                _ => 3,
            })
            .collect();
        let total: u64 = sizes.iter().sum();
        if total as usize > max_rows {
            continue;
        }
        let mut used = BTreeSet::new();
        // labels per base, rows and columns named independently
        let row_labels: Vec<Vec<CharLabel>> = sizes
            .iter()
            .map(|&s| {
                (0..s)
                    .map(|_| CharLabel::new(fresh_name(rng, &mut used)).unwrap())
                    .collect()
            })
            .collect();
        let col_labels: Vec<Vec<BrauerLabel>> = sizes
            .iter()
            .map(|&s| {
                (0..s)
                    .map(|_| BrauerLabel::new(fresh_name(rng, &mut used)).unwrap())
                    .collect()
            })
            .collect();
        // kernel per (row base, col base): value at coordinate difference,
        // constant when the bases have different coordinate sizes
        let mut entries: BTreeMap<(usize, u64, usize, u64), u64> = BTreeMap::new();
        for rb in 0..base_count {
            for cb in 0..base_count {
                let sparse = rng.below(2) == 0;
                for t in 0..sizes[rb] {
                    for u in 0..sizes[cb] {
                        let value = if rb == cb {
                            u64::from(t == u)
                        } else if rb < cb {
                            0
                        } else if sizes[rb] == sizes[cb] {
                            if sparse {
                                0
                            } else {
                                // depends only on (t - u) mod size
                                1 + (t + sizes[rb] - u) % sizes[rb]
                            }
                        } else {
                            // mixed coordinate sizes force constant blocks
                            if sparse {
                                0
                            } else {
                                1
                            }
                        };
                        entries.insert((rb, t, cb, u), value);
                    }
                }
            }
        }
        let rows: Vec<CharLabel> = row_labels.iter().flatten().cloned().collect();
        let cols: Vec<BrauerLabel> = col_labels.iter().flatten().cloned().collect();
        let table: Vec<Vec<u64>> = (0..base_count)
            .flat_map(|rb| {
                (0..sizes[rb]).map(move |t| (rb, t))
            })
            .map(|(rb, t)| {
                (0..base_count)
                    .flat_map(|cb| (0..sizes[cb]).map(move |u| (cb, u)))
                    .map(|(cb, u)| entries[&(rb, t, cb, u)])
                    .collect()
            })
            .collect();
        let dec = DecMatrix::new(rows.clone(), cols.clone(), table).unwrap();
        let mut row_map = BTreeMap::new();
        let mut col_map = BTreeMap::new();
        for (rb, labels) in row_labels.iter().enumerate() {
            let s = sizes[rb] as usize;
            for (t, label) in labels.iter().enumerate() {
                row_map.insert(label.clone(), labels[(t + 1) % s].clone());
            }
        }
        for (cb, labels) in col_labels.iter().enumerate() {
            let s = sizes[cb] as usize;
            for (u, label) in labels.iter().enumerate() {
                col_map.insert(label.clone(), labels[(u + 1) % s].clone());
            }
        }
        let action = PairedAction::new(
            LabeledPermGroup::new(rows, vec![Perm::from_map(row_map)]).unwrap(),
            LabeledPermGroup::new(cols, vec![Perm::from_map(col_map)]).unwrap(),
        )
        .unwrap();
        return Instance { dec, action };
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Brute force: does some row order exist that keeps orbits consecutive
/// and the matrix lower unitriangular under the canonical bijection?
fn interval_feasible(instance: &Instance) -> bool {
    let f = instance.dec.canonical_bijection().expect("instance certifiable");
    let rows = instance.dec.rows().to_vec();
    for perm in permutations(rows.len()) {
        let order: Vec<CharLabel> = perm.iter().map(|&i| rows[i].clone()).collect();
        if !orbits_are_intervals(instance.action.rows(), &order) {
            continue;
        }
        let ok = (0..order.len()).all(|i| {
            let diag = instance.dec.entry(&order[i], &f[&order[i]]) == Some(1);
            diag && (i + 1..order.len()).all(|j| {
                instance.dec.entry(&order[i], &f[&order[j]]) == Some(0)
            })
        });
        if ok {
            return true;
        }
    }
    false
}

#[test]
fn reorder_yields_interval_certificates_up_to_n7() {
    let mut rng = Lcg(0x1234_5678);
    for _ in 0..300 {
        let instance = generate(&mut rng, 7);
        assert!(commutes(&instance.dec, &instance.action).unwrap());
        let cert = instance.dec.find_unitriangular().expect("planted order exists");
        let out = interval_reorder(&instance.dec, &instance.action, &cert).unwrap();
        assert!(instance.dec.is_certified_by(&out));
        assert!(orbits_are_intervals(instance.action.rows(), out.row_order()));
        assert!(orbits_are_intervals(instance.action.cols(), out.col_order()));
        assert_eq!(out.bijection(), cert.bijection());
    }
}

#[test]
fn reorder_agrees_with_brute_force_up_to_n5() {
    let mut rng = Lcg(0x9876_5432);
    for _ in 0..120 {
        let instance = generate(&mut rng, 5);
        let cert = instance.dec.find_unitriangular().expect("planted order exists");
        let out = interval_reorder(&instance.dec, &instance.action, &cert);
        assert!(out.is_ok());
        assert!(interval_feasible(&instance));
    }
}

/// A concrete instance where the greedy certificate does not already have
/// interval orbits, found by deterministic sampling: the reorder must fix
/// it while keeping the certificate valid.
#[test]
fn reorder_fixes_a_non_interval_input() {
    let mut rng = Lcg(0xbeef_cafe);
    let mut found = 0;
    for _ in 0..4000 {
        let instance = generate(&mut rng, 4);
        if instance.dec.n_rows() != 4 {
            continue;
        }
        let cert = instance.dec.find_unitriangular().expect("planted order exists");
        if orbits_are_intervals(instance.action.rows(), cert.row_order()) {
            continue;
        }
        found += 1;
        let out = interval_reorder(&instance.dec, &instance.action, &cert).unwrap();
        assert!(instance.dec.is_certified_by(&out));
        assert!(orbits_are_intervals(instance.action.rows(), out.row_order()));
        assert_eq!(out.bijection(), cert.bijection());
        assert!(interval_feasible(&instance));
    }
    assert!(found >= 5, "only {found} non-interval inputs sampled");
}
