//! Permutation actions on label sets, orbit computation, and orbit-interval
//! reordering of unitriangularity certificates.
//!
//! Permutations are stored as label-to-label maps rather than index arrays,
//! so reordering a certificate never invalidates an action.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::label::{BrauerLabel, CharLabel};
use crate::matrix::{DecMatrix, UnitriCertificate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("generator maps {0} outside the domain")]
    OutsideDomain(String),
    #[error("generator is not injective at {0}")]
    NotInjective(String),
    #[error("duplicate domain label {0}")]
    DuplicateDomain(String),
    #[error("row action has {rows} generators but column action has {cols}")]
    GeneratorCountMismatch { rows: usize, cols: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("action domain does not match matrix labels: {0}")]
    DomainMismatch(String),
}

/// Why a certificate cannot be reordered by [`interval_reorder`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("input certificate invalid: {0}")]
    BadCertificate(crate::matrix::CertFailure),
    #[error("action does not commute with the matrix")]
    NotCommuting,
    #[error("{0}")]
    Action(#[from] ActionError),
    #[error("action does not stabilize the certificate row set (moves {0})")]
    RowSetNotStable(String),
    #[error("action does not stabilize the certificate column set (moves {0})")]
    ColSetNotStable(String),
    #[error("bijection is not equivariant at row {0}")]
    NotEquivariant(String),
    #[error("reordered certificate failed verification: {0}")]
    ReorderFailed(crate::matrix::CertFailure),
}

/// A permutation of a label set, stored as a map.  Labels absent from the
/// map are fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm<L: Ord + Clone> {
    map: BTreeMap<L, L>,
}

impl<L: Ord + Clone + fmt::Display> Perm<L> {
    pub fn identity() -> Self {
        Self {
            map: BTreeMap::new(),
        }
    }

    pub fn from_map(map: BTreeMap<L, L>) -> Self {
        Self { map }
    }

    /// Builds the permutation sending `cycle[i]` to `cycle[i+1]` (wrapping).
    pub fn from_cycle(cycle: &[L]) -> Self {
        let mut map = BTreeMap::new();
        for (i, l) in cycle.iter().enumerate() {
            map.insert(l.clone(), cycle[(i + 1) % cycle.len()].clone());
        }
        Self { map }
    }

    pub fn apply<'a>(&'a self, l: &'a L) -> &'a L {
        self.map.get(l).unwrap_or(l)
    }

    pub fn moved(&self) -> impl Iterator<Item = &L> {
        self.map.iter().filter(|(k, v)| k != v).map(|(k, _)| k)
    }

    fn check_on(&self, domain: &BTreeSet<L>) -> Result<(), PermError> {
        for l in self.map.keys() {
            if !domain.contains(l) {
                return Err(PermError::OutsideDomain(l.to_string()));
            }
        }
        let mut image = BTreeSet::new();
        for l in domain {
            let v = self.apply(l);
            if !domain.contains(v) {
                return Err(PermError::OutsideDomain(v.to_string()));
            }
            if !image.insert(v.clone()) {
                return Err(PermError::NotInjective(v.to_string()));
            }
        }
        Ok(())
    }
}

/// A finite set of labels together with permutation generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPermGroup<L: Ord + Clone> {
    domain: Vec<L>,
    generators: Vec<Perm<L>>,
}

impl<L: Ord + Clone + fmt::Display> LabeledPermGroup<L> {
    pub fn new(domain: Vec<L>, generators: Vec<Perm<L>>) -> Result<Self, PermError> {
        let mut set = BTreeSet::new();
        for l in &domain {
            if !set.insert(l.clone()) {
                return Err(PermError::DuplicateDomain(l.to_string()));
            }
        }
        for g in &generators {
            g.check_on(&set)?;
        }
        Ok(Self { domain, generators })
    }

    pub fn trivial(domain: Vec<L>) -> Result<Self, PermError> {
        Self::new(domain, Vec::new())
    }

    pub fn domain(&self) -> &[L] {
        &self.domain
    }

    pub fn generators(&self) -> &[Perm<L>] {
        &self.generators
    }

    /// Orbit of one label under the generated group.
    pub fn orbit_of(&self, start: &L) -> BTreeSet<L> {
        let mut orbit = BTreeSet::new();
        orbit.insert(start.clone());
        let mut frontier = vec![start.clone()];
        while let Some(l) = frontier.pop() {
            for g in &self.generators {
                let next = g.apply(&l);
                if orbit.insert(next.clone()) {
                    frontier.push(next.clone());
                }
            }
        }
        orbit
    }

    /// Partition of the domain into orbits, ordered by smallest member.
    pub fn orbits(&self) -> Vec<BTreeSet<L>> {
        let mut seen = BTreeSet::new();
        let mut sorted: Vec<&L> = self.domain.iter().collect();
        sorted.sort();
        let mut out = Vec::new();
        for l in sorted {
            if seen.contains(l) {
                continue;
            }
            let orbit = self.orbit_of(l);
            for member in &orbit {
                seen.insert(member.clone());
            }
            out.push(orbit);
        }
        out
    }

    /// True when every generator maps the subset into itself.
    pub fn stabilizes(&self, subset: &BTreeSet<L>) -> bool {
        subset
            .iter()
            .all(|l| self.generators.iter().all(|g| subset.contains(g.apply(l))))
    }
}

/// Paired permutations of the row and column labels of a decomposition
/// matrix; the i-th row generator corresponds to the i-th column generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedAction {
    rows: LabeledPermGroup<CharLabel>,
    cols: LabeledPermGroup<BrauerLabel>,
}

impl PairedAction {
    pub fn new(
        rows: LabeledPermGroup<CharLabel>,
        cols: LabeledPermGroup<BrauerLabel>,
    ) -> Result<Self, PermError> {
        if rows.generators().len() != cols.generators().len() {
            return Err(PermError::GeneratorCountMismatch {
                rows: rows.generators().len(),
                cols: cols.generators().len(),
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> &LabeledPermGroup<CharLabel> {
        &self.rows
    }

    pub fn cols(&self) -> &LabeledPermGroup<BrauerLabel> {
        &self.cols
    }

    pub fn generator_pairs(
        &self,
    ) -> impl Iterator<Item = (&Perm<CharLabel>, &Perm<BrauerLabel>)> {
        self.rows.generators().iter().zip(self.cols.generators())
    }
}

/// True when every paired generator preserves all matrix entries:
/// d[s(row)][s(col)] = d[row][col].
pub fn commutes(dec: &DecMatrix, action: &PairedAction) -> Result<bool, ActionError> {
    let row_set: BTreeSet<_> = dec.rows().iter().cloned().collect();
    let dom_rows: BTreeSet<_> = action.rows().domain().iter().cloned().collect();
    if row_set != dom_rows {
        return Err(ActionError::DomainMismatch(
            "row action domain differs from matrix rows".into(),
        ));
    }
    let col_set: BTreeSet<_> = dec.cols().iter().cloned().collect();
    let dom_cols: BTreeSet<_> = action.cols().domain().iter().cloned().collect();
    if col_set != dom_cols {
        return Err(ActionError::DomainMismatch(
            "column action domain differs from matrix columns".into(),
        ));
    }
    for (g_row, g_col) in action.generator_pairs() {
        for row in dec.rows() {
            for col in dec.cols() {
                let moved = dec.entry(g_row.apply(row), g_col.apply(col));
                if moved != dec.entry(row, col) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Reorders a certificate so that every row orbit of the action occupies a
/// consecutive interval, preserving validity and the row-column bijection.
///
/// Working from the back: take the orbit of the last row, move its members
/// to the end keeping the relative order of the complement, then repeat on
/// the complement.  Each pass preserves lower unitriangularity because the
/// columns paired with a trailing orbit have their single nonzero entry on
/// the diagonal, and complement entries keep their relative positions.
/// The recursion of the underlying argument is run iteratively.
pub fn interval_reorder(
    dec: &DecMatrix,
    action: &PairedAction,
    cert: &UnitriCertificate,
) -> Result<UnitriCertificate, IntervalError> {
    dec.check_certificate(cert)
        .map_err(IntervalError::BadCertificate)?;
    if !commutes(dec, action)? {
        return Err(IntervalError::NotCommuting);
    }
    let row_set: BTreeSet<_> = cert.row_order().iter().cloned().collect();
    let col_set: BTreeSet<_> = cert.col_order().iter().cloned().collect();
    if !action.rows().stabilizes(&row_set) {
        let witness = row_set
            .iter()
            .find(|l| {
                action
                    .rows()
                    .generators()
                    .iter()
                    .any(|g| !row_set.contains(g.apply(l)))
            })
            .expect("stability failed at some label");
        return Err(IntervalError::RowSetNotStable(witness.to_string()));
    }
    if !action.cols().stabilizes(&col_set) {
        let witness = col_set
            .iter()
            .find(|l| {
                action
                    .cols()
                    .generators()
                    .iter()
                    .any(|g| !col_set.contains(g.apply(l)))
            })
            .expect("stability failed at some label");
        return Err(IntervalError::ColSetNotStable(witness.to_string()));
    }
    // f is unique, hence equivariant when the action commutes; validated.
    let f: BTreeMap<_, _> = cert.bijection();
    for (g_row, g_col) in action.generator_pairs() {
        for row in cert.row_order() {
            let lhs = &f[g_row.apply(row)];
            let rhs = g_col.apply(&f[row]);
            if *lhs != *rhs {
                return Err(IntervalError::NotEquivariant(row.to_string()));
            }
        }
    }

    let mut work: Vec<CharLabel> = cert.row_order().to_vec();
    let mut blocks: Vec<Vec<CharLabel>> = Vec::new();
    while let Some(last) = work.last() {
        let orbit = action.rows().orbit_of(last);
        let (members, rest): (Vec<_>, Vec<_>) =
            work.into_iter().partition(|l| orbit.contains(l));
        blocks.push(members);
        work = rest;
    }
    let mut row_order = Vec::with_capacity(cert.len());
    for block in blocks.into_iter().rev() {
        row_order.extend(block);
    }
    let col_order: Vec<BrauerLabel> = row_order.iter().map(|r| f[r].clone()).collect();
    let reordered = UnitriCertificate::new(row_order, col_order)
        .map_err(IntervalError::ReorderFailed)?;
    dec.check_certificate(&reordered)
        .map_err(IntervalError::ReorderFailed)?;
    Ok(reordered)
}

/// True when consecutive positions of `order` exhaust each orbit before the
/// next one starts.
pub fn orbits_are_intervals<L: Ord + Clone + fmt::Display>(
    group: &LabeledPermGroup<L>,
    order: &[L],
) -> bool {
    let mut pos = BTreeMap::new();
    for (i, l) in order.iter().enumerate() {
        pos.insert(l.clone(), i);
    }
    for l in order {
        let orbit = group.orbit_of(l);
        let mut indices: Vec<usize> = orbit.iter().filter_map(|m| pos.get(m).copied()).collect();
        if indices.len() != orbit.len() {
            continue; // orbit leaves the order; stability is checked elsewhere
        }
        indices.sort_unstable();
        let lo = indices[0];
        if indices.last() != Some(&(lo + indices.len() - 1)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(s: &str) -> CharLabel {
        CharLabel::new(s).unwrap()
    }

    fn phi(s: &str) -> BrauerLabel {
        BrauerLabel::new(s).unwrap()
    }

    fn group(domain: &[&str], cycles: &[&[&str]]) -> LabeledPermGroup<CharLabel> {
        let gens = cycles
            .iter()
            .map(|c| Perm::from_cycle(&c.iter().map(|s| chi(s)).collect::<Vec<_>>()))
            .collect();
        LabeledPermGroup::new(domain.iter().map(|s| chi(s)).collect(), gens).unwrap()
    }

    #[test]
    fn orbits_of_trivial_group_are_singletons() {
        let g = group(&["a", "b", "c"], &[]);
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn orbits_of_transposition() {
        let g = group(&["a", "b", "c"], &[&["a", "b"]]);
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].len(), 2);
        assert!(orbits[1].contains(&chi("c")));
    }

    #[test]
    fn generated_transitivity() {
        let g = group(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 3);
    }

    #[test]
    fn rejects_generator_leaving_domain() {
        let gens = vec![Perm::from_cycle(&[chi("a"), chi("z")])];
        let err = LabeledPermGroup::new(vec![chi("a"), chi("b")], gens).unwrap_err();
        assert!(matches!(err, PermError::OutsideDomain(_)));
    }

    fn paired_swap(dec: &DecMatrix) -> PairedAction {
        let rows = LabeledPermGroup::new(
            dec.rows().to_vec(),
            vec![Perm::from_cycle(&[dec.rows()[0].clone(), dec.rows()[1].clone()])],
        )
        .unwrap();
        let cols = LabeledPermGroup::new(
            dec.cols().to_vec(),
            vec![Perm::from_cycle(&[dec.cols()[0].clone(), dec.cols()[1].clone()])],
        )
        .unwrap();
        PairedAction::new(rows, cols).unwrap()
    }

    fn matrix(rows: &[&str], cols: &[&str], entries: &[&[u64]]) -> DecMatrix {
        DecMatrix::new(
            rows.iter().map(|s| chi(s)).collect(),
            cols.iter().map(|s| phi(s)).collect(),
            entries.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_action_commutes_with_anything() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[2, 1]]);
        let action = PairedAction::new(
            LabeledPermGroup::trivial(m.rows().to_vec()).unwrap(),
            LabeledPermGroup::trivial(m.cols().to_vec()).unwrap(),
        )
        .unwrap();
        assert!(commutes(&m, &action).unwrap());
    }

    #[test]
    fn paired_swap_commutes_with_identity_matrix() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[0, 1]]);
        assert!(commutes(&m, &paired_swap(&m)).unwrap());
    }

    #[test]
    fn paired_swap_detects_asymmetry() {
        // swapped d[r1][c2] = 0 differs from d[r2][c1] = 2
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[2, 1]]);
        assert!(!commutes(&m, &paired_swap(&m)).unwrap());
    }

    #[test]
    fn commutes_rejects_domain_mismatch() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[0, 1]]);
        let action = PairedAction::new(
            LabeledPermGroup::trivial(vec![chi("r1")]).unwrap(),
            LabeledPermGroup::trivial(m.cols().to_vec()).unwrap(),
        )
        .unwrap();
        assert!(commutes(&m, &action).is_err());
    }

    #[test]
    fn interval_reorder_keeps_trivial_action_cert() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[2, 1]]);
        let action = PairedAction::new(
            LabeledPermGroup::trivial(m.rows().to_vec()).unwrap(),
            LabeledPermGroup::trivial(m.cols().to_vec()).unwrap(),
        )
        .unwrap();
        let cert = m.find_unitriangular().unwrap();
        let out = interval_reorder(&m, &action, &cert).unwrap();
        assert_eq!(out, cert);
    }

    #[test]
    fn interval_reorder_single_orbit_is_whole_interval() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[0, 1]]);
        let action = paired_swap(&m);
        let cert = m.find_unitriangular().unwrap();
        let out = interval_reorder(&m, &action, &cert).unwrap();
        assert!(m.is_certified_by(&out));
        assert!(orbits_are_intervals(action.rows(), out.row_order()));
        assert_eq!(out.bijection(), cert.bijection());
    }

    #[test]
    fn interval_reorder_rejects_unstable_row_subset() {
        let m = matrix(
            &["r1", "r2", "r3"],
            &["c1", "c2", "c3"],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        );
        let rows = LabeledPermGroup::new(
            m.rows().to_vec(),
            vec![Perm::from_cycle(&[chi("r1"), chi("r3")])],
        )
        .unwrap();
        let cols = LabeledPermGroup::new(
            m.cols().to_vec(),
            vec![Perm::from_cycle(&[phi("c1"), phi("c3")])],
        )
        .unwrap();
        let action = PairedAction::new(rows, cols).unwrap();
        // certificate on the r1,r2 submatrix only; the action moves r1 out
        let cert =
            UnitriCertificate::new(vec![chi("r1"), chi("r2")], vec![phi("c1"), phi("c2")])
                .unwrap();
        let err = interval_reorder(&m, &action, &cert).unwrap_err();
        assert!(matches!(err, IntervalError::RowSetNotStable(_)));
    }

    #[test]
    fn interval_reorder_rejects_non_commuting_action() {
        let m = matrix(&["r1", "r2"], &["c1", "c2"], &[&[1, 0], &[2, 1]]);
        let action = paired_swap(&m);
        let cert = m.find_unitriangular().unwrap();
        assert_eq!(
            interval_reorder(&m, &action, &cert).unwrap_err(),
            IntervalError::NotCommuting
        );
    }
}
