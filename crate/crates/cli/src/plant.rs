//! Synthetic tower generator with planted unitriangular structure.
//!
//! Bottom levels are built from translation cells: each base row/column
//! pair carries, per step, either a cyclic coordinate of the step's prime
//! size or nothing, and entries depend only on the base pair and the
//! coordinate differences, so the per-step translations commute with the
//! matrix.  Upper levels are derived by the cyclic prime-index rules:
//! free orbits induce to a single character, stable characters spread
//! into extensions (on the ordinary side) or stay single (Brauer side at
//! the ell-index steps), and entries propagate so that restriction sums
//! match.  The planted pair is lower unitriangular in base order at every
//! level, which makes the whole tower lift by construction.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use triangulift_core::label::{BrauerLabel, CharLabel};
use triangulift_core::matrix::DecMatrix;
use triangulift_core::perm::{LabeledPermGroup, PairedAction, Perm};
use triangulift_core::tower::{CliffordTower, Level, Step};

#[derive(Debug, Clone)]
pub struct PlantConfig {
    /// Prime index per step, bottom to top.
    pub step_indices: Vec<u64>,
    pub ell: u64,
    pub planted_bases: usize,
    pub extra_row_bases: usize,
    pub extra_col_bases: usize,
    pub with_degrees: bool,
}

impl PlantConfig {
    pub fn random(rng: &mut impl Rng) -> Self {
        let steps = 2 + rng.gen_range(0..2);
        let ell = [2u64, 3, 5][rng.gen_range(0..3)];
        let step_indices = (0..steps)
            .map(|_| [2u64, 3][rng.gen_range(0..2)])
            .collect();
        PlantConfig {
            step_indices,
            ell,
            planted_bases: 1 + rng.gen_range(0..2),
            extra_row_bases: rng.gen_range(0..2),
            extra_col_bases: rng.gen_range(0..2),
            with_degrees: rng.gen_bool(0.5),
        }
    }

    /// All step indices equal to ell, for the one-shot construction.
    pub fn all_ell(rng: &mut impl Rng) -> Self {
        let ell = [2u64, 3][rng.gen_range(0..2)];
        let steps = 2 + rng.gen_range(0..2);
        PlantConfig {
            step_indices: vec![ell; steps],
            ell,
            planted_bases: 1 + rng.gen_range(0..2),
            extra_row_bases: rng.gen_range(0..2),
            extra_col_bases: rng.gen_range(0..2),
            with_degrees: rng.gen_bool(0.5),
        }
    }

    /// No step index equal to ell.
    pub fn ell_prime(rng: &mut impl Rng) -> Self {
        let ell = 5u64;
        let steps = 2 + rng.gen_range(0..2);
        PlantConfig {
            step_indices: (0..steps)
                .map(|_| [2u64, 3][rng.gen_range(0..2)])
                .collect(),
            ell,
            planted_bases: 1 + rng.gen_range(0..2),
            extra_row_bases: rng.gen_range(0..2),
            extra_col_bases: rng.gen_range(0..2),
            with_degrees: rng.gen_bool(0.5),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Cell {
    base: usize,
    exts: Vec<u64>,
    coords: Vec<u64>,
}

impl Cell {
    fn name(&self, prefix: &str) -> String {
        let mut out = format!("{prefix}{}", self.base);
        if !self.exts.is_empty() {
            out.push('e');
            for v in &self.exts {
                out.push_str(&v.to_string());
            }
        }
        if !self.coords.is_empty() {
            out.push('t');
            for v in &self.coords {
                out.push_str(&v.to_string());
            }
        }
        out
    }
}

struct ModelLevel {
    rows: Vec<Cell>,
    cols: Vec<Cell>,
    entries: Vec<Vec<u64>>,
    row_degrees: Vec<u64>,
}

struct BaseLayout {
    /// activity per step for each base; rows and columns share it for the
    /// planted bases
    row_active: Vec<Vec<bool>>,
    col_active: Vec<Vec<bool>>,
    planted: usize,
}

fn coords_for(active: &[bool], at_step: usize, indices: &[u64]) -> Vec<Vec<u64>> {
    // all coordinate vectors for steps >= at_step (inactive steps pinned to 0)
    let mut out = vec![Vec::new()];
    for (i, &r) in indices.iter().enumerate() {
        let choices: Vec<u64> = if i >= at_step && active[i] {
            (0..r).collect()
        } else {
            vec![0]
        };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

fn base_size(active: &[bool], indices: &[u64]) -> u64 {
    // a base contributes r_i labels at level l for every step i that is
    // either already passed and inactive (extensions) or still ahead and
    // active (coordinates); take the worst level
    (0..=indices.len())
        .map(|l| {
            indices
                .iter()
                .enumerate()
                .map(|(i, &r)| {
                    if (i < l && !active[i]) || (i >= l && active[i]) {
                        r
                    } else {
                        1
                    }
                })
                .product()
        })
        .max()
        .unwrap_or(1)
}

/// A planted tower together with the labels seeded at the bottom.
pub struct PlantedTower {
    pub tower: CliffordTower,
}

pub fn random_tower(rng: &mut impl Rng, config: &PlantConfig) -> PlantedTower {
    let k = config.step_indices.len();
    let layout = loop {
        let mut row_active = Vec::new();
        let mut col_active = Vec::new();
        for _ in 0..config.planted_bases {
            let act: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
            row_active.push(act.clone());
            col_active.push(act);
        }
        for _ in 0..config.extra_row_bases {
            row_active.push((0..k).map(|_| rng.gen_bool(0.5)).collect());
        }
        for _ in 0..config.extra_col_bases {
            col_active.push((0..k).map(|_| rng.gen_bool(0.5)).collect());
        }
        let total: u64 = row_active
            .iter()
            .chain(&col_active)
            .map(|act| base_size(act, &config.step_indices))
            .sum();
        if total <= 28 {
            break BaseLayout {
                row_active,
                col_active,
                planted: config.planted_bases,
            };
        }
    };

    // bottom entries from translation kernels
    let row_cells: Vec<Cell> = layout
        .row_active
        .iter()
        .enumerate()
        .flat_map(|(base, act)| {
            coords_for(act, 0, &config.step_indices)
                .into_iter()
                .map(move |coords| Cell {
                    base,
                    exts: Vec::new(),
                    coords,
                })
        })
        .collect();
    let col_cells: Vec<Cell> = layout
        .col_active
        .iter()
        .enumerate()
        .flat_map(|(base, act)| {
            coords_for(act, 0, &config.step_indices)
                .into_iter()
                .map(move |coords| Cell {
                    base,
                    exts: Vec::new(),
                    coords,
                })
        })
        .collect();

    // kernel per base pair: value indexed by the coordinate differences at
    // steps where both bases are active
    let mut kernels: BTreeMap<(usize, usize), BTreeMap<Vec<u64>, u64>> = BTreeMap::new();
    for (rb, r_act) in layout.row_active.iter().enumerate() {
        for (cb, c_act) in layout.col_active.iter().enumerate() {
            let shared: Vec<usize> = (0..k).filter(|&i| r_act[i] && c_act[i]).collect();
            let mut keys = vec![Vec::new()];
            for &i in &shared {
                let r = config.step_indices[i];
                keys = keys
                    .into_iter()
                    .flat_map(|prefix| {
                        (0..r).map(move |d| {
                            let mut next = prefix.clone();
                            next.push(d);
                            next
                        })
                    })
                    .collect();
            }
            let both_planted = rb < layout.planted && cb < layout.planted;
            let mut table = BTreeMap::new();
            let sparse = rng.gen_bool(0.4);
            for key in keys {
                let value = if both_planted && rb == cb {
                    u64::from(key.iter().all(|&d| d == 0))
                } else if both_planted && rb < cb {
                    0
                } else if sparse {
                    0
                } else {
                    rng.gen_range(0..3)
                };
                table.insert(key, value);
            }
            kernels.insert((rb, cb), table);
        }
    }
    let entry_of = |row: &Cell, col: &Cell| -> u64 {
        let r_act = &layout.row_active[row.base];
        let c_act = &layout.col_active[col.base];
        let key: Vec<u64> = (0..k)
            .filter(|&i| r_act[i] && c_act[i])
            .map(|i| {
                let r = config.step_indices[i];
                (row.coords[i] + r - col.coords[i]) % r
            })
            .collect();
        kernels[&(row.base, col.base)][&key]
    };
    let entries: Vec<Vec<u64>> = row_cells
        .iter()
        .map(|row| col_cells.iter().map(|col| entry_of(row, col)).collect())
        .collect();
    let row_degrees: Vec<u64> = row_cells
        .iter()
        .map(|_| 1 + rng.gen_range(0..3))
        .collect();

    let mut model = ModelLevel {
        rows: row_cells,
        cols: col_cells,
        entries,
        row_degrees,
    };

    let mut levels = Vec::new();
    let mut steps = Vec::new();
    let mut chains: BTreeMap<CharLabel, Vec<CharLabel>> =
        BTreeMap::new();
    let seed_irr: BTreeSet<CharLabel> = model
        .rows
        .iter()
        .filter(|cell| cell.base < layout.planted)
        .map(|cell| CharLabel::new(cell.name("p")).unwrap())
        .collect();
    let seed_ibr: BTreeSet<BrauerLabel> = model
        .cols
        .iter()
        .filter(|cell| cell.base < layout.planted)
        .map(|cell| BrauerLabel::new(cell.name("q")).unwrap())
        .collect();
    for theta in model.rows.iter().filter(|c| c.base < layout.planted) {
        chains.insert(
            CharLabel::new(theta.name("p")).unwrap(),
            vec![CharLabel::new(theta.name("p")).unwrap()],
        );
    }

    levels.push(level_of(&model, 0, config.with_degrees));

    for step_idx in 0..k {
        let r = config.step_indices[step_idx];
        let (next, step, row_lift) = lift_model(
            &model,
            &layout,
            step_idx,
            r,
            config.ell,
            format!("L{step_idx}"),
            format!("L{}", step_idx + 1),
        );
        for chain in chains.values_mut() {
            let current = chain.last().unwrap().clone();
            let next_label = row_lift[&current].clone();
            chain.push(next_label);
        }
        model = next;
        levels.push(level_of(&model, step_idx + 1, config.with_degrees));
        steps.push(step);
    }

    let all_ell = config.step_indices.iter().all(|&r| r == config.ell);
    let tower = CliffordTower {
        ell: config.ell,
        levels,
        steps,
        seed_irr,
        seed_ibr,
        central: None,
        global_ext: if all_ell { Some(chains) } else { None },
    };
    PlantedTower { tower }
}

fn level_of(model: &ModelLevel, level_idx: usize, with_degrees: bool) -> Level {
    let irr: Vec<CharLabel> = model
        .rows
        .iter()
        .map(|c| CharLabel::new(c.name("p")).unwrap())
        .collect();
    let ibr: Vec<BrauerLabel> = model
        .cols
        .iter()
        .map(|c| BrauerLabel::new(c.name("q")).unwrap())
        .collect();
    let dec = DecMatrix::new(irr.clone(), ibr.clone(), model.entries.clone()).unwrap();
    let degrees = if with_degrees {
        irr.iter()
            .cloned()
            .zip(model.row_degrees.iter().copied())
            .collect()
    } else {
        BTreeMap::new()
    };
    Level {
        name: format!("L{level_idx}"),
        irr,
        degrees,
        ibr,
        dec,
    }
}

#[allow(clippy::too_many_arguments)]
fn lift_model(
    model: &ModelLevel,
    layout: &BaseLayout,
    step_idx: usize,
    r: u64,
    ell: u64,
    sub_name: String,
    sup_name: String,
) -> (ModelLevel, Step, BTreeMap<CharLabel, CharLabel>) {
    // group rows into orbits of the step translation
    let row_orbit_key = |cell: &Cell| -> Cell {
        let mut key = cell.clone();
        key.coords[step_idx] = 0;
        key
    };
    let mut row_orbits: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (i, cell) in model.rows.iter().enumerate() {
        row_orbits.entry(row_orbit_key(cell)).or_default().push(i);
    }
    let mut col_orbits: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (j, cell) in model.cols.iter().enumerate() {
        col_orbits
            .entry(row_orbit_key(cell))
            .or_default()
            .push(j);
    }

    // upper rows: per orbit, either r extensions of the stable cell or one
    // induced cell; record restriction lists and per-row provenance
    struct NewRow {
        cell: Cell,
        rest: Vec<usize>,
        source: usize,
        is_extension: bool,
        degree: u64,
    }
    let mut new_rows: Vec<NewRow> = Vec::new();
    for (key, members) in &row_orbits {
        let active = layout.row_active[key.base][step_idx];
        if !active {
            let i = members[0];
            for t in 0..r {
                let mut cell = key.clone();
                cell.exts.push(t);
                new_rows.push(NewRow {
                    cell,
                    rest: vec![i],
                    source: i,
                    is_extension: true,
                    degree: model.row_degrees[i],
                });
            }
        } else {
            new_rows.push(NewRow {
                cell: key.clone(),
                rest: members.clone(),
                source: members[0],
                is_extension: false,
                degree: members.iter().map(|&i| model.row_degrees[i]).sum(),
            });
        }
    }
    struct NewCol {
        cell: Cell,
        rest: Vec<usize>,
        source: usize,
        ext_index: Option<u64>,
    }
    let mut new_cols: Vec<NewCol> = Vec::new();
    for (key, members) in &col_orbits {
        let active = layout.col_active[key.base][step_idx];
        if !active {
            if r == ell {
                new_cols.push(NewCol {
                    cell: key.clone(),
                    rest: vec![members[0]],
                    source: members[0],
                    ext_index: None,
                });
            } else {
                for u in 0..r {
                    let mut cell = key.clone();
                    cell.exts.push(u);
                    new_cols.push(NewCol {
                        cell,
                        rest: vec![members[0]],
                        source: members[0],
                        ext_index: Some(u),
                    });
                }
            }
        } else {
            new_cols.push(NewCol {
                cell: key.clone(),
                rest: members.clone(),
                source: members[0],
                ext_index: None,
            });
        }
    }

    // entries by the prime-index rules
    let mut entries = vec![vec![0u64; new_cols.len()]; new_rows.len()];
    for (ri, row) in new_rows.iter().enumerate() {
        for (cj, col) in new_cols.iter().enumerate() {
            let value = if row.is_extension {
                match col.ext_index {
                    Some(u) => {
                        let t = *row.cell.exts.last().unwrap();
                        if t == u {
                            model.entries[row.source][col.source]
                        } else {
                            0
                        }
                    }
                    None => model.entries[row.source][col.source],
                }
            } else {
                match col.ext_index {
                    // an induced row is fixed by the quotient characters,
                    // so its value is constant across column extensions
                    Some(_) => model.entries[row.source][col.source],
                    // induced-to-induced and the single ell-index column:
                    // sum over the row orbit against a fixed column
                    None => row
                        .rest
                        .iter()
                        .map(|&i| model.entries[i][col.source])
                        .sum(),
                }
            };
            entries[ri][cj] = value;
        }
    }

    // step data on the lower level
    let sub_irr: Vec<CharLabel> = model
        .rows
        .iter()
        .map(|c| CharLabel::new(c.name("p")).unwrap())
        .collect();
    let sub_ibr: Vec<BrauerLabel> = model
        .cols
        .iter()
        .map(|c| BrauerLabel::new(c.name("q")).unwrap())
        .collect();
    let mut row_map = BTreeMap::new();
    for cell in &model.rows {
        if layout.row_active[cell.base][step_idx] {
            let mut image = cell.clone();
            image.coords[step_idx] = (image.coords[step_idx] + 1) % r;
            row_map.insert(
                CharLabel::new(cell.name("p")).unwrap(),
                CharLabel::new(image.name("p")).unwrap(),
            );
        }
    }
    let mut col_map = BTreeMap::new();
    for cell in &model.cols {
        if layout.col_active[cell.base][step_idx] {
            let mut image = cell.clone();
            image.coords[step_idx] = (image.coords[step_idx] + 1) % r;
            col_map.insert(
                BrauerLabel::new(cell.name("q")).unwrap(),
                BrauerLabel::new(image.name("q")).unwrap(),
            );
        }
    }
    let action = PairedAction::new(
        LabeledPermGroup::new(sub_irr.clone(), vec![Perm::from_map(row_map)]).unwrap(),
        LabeledPermGroup::new(sub_ibr.clone(), vec![Perm::from_map(col_map)]).unwrap(),
    )
    .unwrap();

    let mut rest_irr: BTreeMap<CharLabel, Vec<CharLabel>> = BTreeMap::new();
    let mut row_lift: BTreeMap<CharLabel, CharLabel> = BTreeMap::new();
    let mut ext: BTreeMap<CharLabel, CharLabel> = BTreeMap::new();
    for row in &new_rows {
        let name = CharLabel::new(row.cell.name("p")).unwrap();
        let rest: Vec<CharLabel> = row
            .rest
            .iter()
            .map(|&i| CharLabel::new(model.rows[i].name("p")).unwrap())
            .collect();
        if row.is_extension {
            let theta = rest[0].clone();
            if *row.cell.exts.last().unwrap() == 0 {
                ext.insert(theta.clone(), name.clone());
                row_lift.insert(theta, name.clone());
            }
        } else {
            for theta in &rest {
                row_lift.insert(theta.clone(), name.clone());
            }
        }
        rest_irr.insert(name, rest);
    }
    let mut rest_ibr: BTreeMap<BrauerLabel, Vec<BrauerLabel>> = BTreeMap::new();
    for col in &new_cols {
        let name = BrauerLabel::new(col.cell.name("q")).unwrap();
        let rest: Vec<BrauerLabel> = col
            .rest
            .iter()
            .map(|&j| BrauerLabel::new(model.cols[j].name("q")).unwrap())
            .collect();
        rest_ibr.insert(name, rest);
    }

    let step = Step {
        sub: sub_name,
        sup: sup_name,
        index: r,
        rest_irr,
        rest_ibr,
        action,
        ext,
    };

    let next = ModelLevel {
        rows: new_rows.iter().map(|row| row.cell.clone()).collect(),
        cols: new_cols.iter().map(|col| col.cell.clone()).collect(),
        entries,
        row_degrees: new_rows.iter().map(|row| row.degree).collect(),
    };
    (next, step, row_lift)
}
