//! Towers of normal inclusions with prime abelian quotients, carrying
//! restriction graphs, conjugation actions, extension maps and
//! decomposition matrices per level, together with the going-up
//! constructions of unitriangular basic sets.
//!
//! The tower carries all character-theoretic data as input; lifting
//! constructs basic sets and certifies the results, it does not compute
//! modular representation theory from group presentations.  Consistency
//! is enforced by validators rather than assumed, so the going-up
//! theorems run as executable checks: a certificate search that the
//! theory guarantees must succeed reports inconsistent instance data when
//! it does not.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::label::{BrauerLabel, CharLabel};
use crate::matrix::{DecMatrix, MatrixError, UnitriCertificate};
use crate::perm::{commutes, PairedAction};
use crate::symbols::is_prime;

/// One level of the tower: the character data of a single group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub name: String,
    pub irr: Vec<CharLabel>,
    /// Optional character degrees, used for consistency checks only.
    pub degrees: BTreeMap<CharLabel, u64>,
    pub ibr: Vec<BrauerLabel>,
    pub dec: DecMatrix,
}

/// The data of one prime-index inclusion between consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub sub: String,
    pub sup: String,
    /// The prime index of the inclusion.
    pub index: u64,
    /// Constituents of the restriction of each upper ordinary character.
    pub rest_irr: BTreeMap<CharLabel, Vec<CharLabel>>,
    /// Constituents of the restriction of each upper Brauer character.
    pub rest_ibr: BTreeMap<BrauerLabel, Vec<BrauerLabel>>,
    /// Conjugation by a generator of the quotient, acting on the lower
    /// labels; a single paired generator.
    pub action: PairedAction,
    /// Extension witnesses for stable lower characters, consulted only
    /// when the index equals ell.
    pub ext: BTreeMap<CharLabel, CharLabel>,
}

/// Central-character flags on the top level, with the coprimality
/// hypotheses of the central variant recorded as instance assertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralData {
    /// Top-level rows lying over the trivial character of the central
    /// ell-part.
    pub flagged: BTreeSet<CharLabel>,
    pub ell_coprime_quotient: bool,
    pub ell_coprime_intersection: bool,
}

/// A chain of levels with one step per consecutive pair and a seeded
/// basic-set pair at the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordTower {
    pub ell: u64,
    pub levels: Vec<Level>,
    pub steps: Vec<Step>,
    pub seed_irr: BTreeSet<CharLabel>,
    pub seed_ibr: BTreeSet<BrauerLabel>,
    pub central: Option<CentralData>,
    /// One-shot extension data: per seed character, its chain of lifts up
    /// the whole tower.  Consulted by the all-ell construction.
    pub global_ext: Option<BTreeMap<CharLabel, Vec<CharLabel>>>,
}

/// A single consistency failure found by [`CliffordTower::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    code: &'static str,
    detail: String,
}

impl Violation {
    fn new(code: &'static str, detail: impl Into<String>) -> Self {
        Self {
            code,
            detail: detail.into(),
        }
    }

    pub fn code(&self) -> &str {
        self.code
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

pub const V_STRUCTURE: &str = "structure";
pub const V_ORBIT_FIBER: &str = "orbit/fiber size";
pub const V_ORBIT_CONSTANT: &str = "restriction not orbit-constant";
pub const V_MULT_FREE: &str = "multiplicity-free";
pub const V_EXT_WITNESS: &str = "extension witness";
pub const V_DEGREE_SUM: &str = "degree sum";
pub const V_COMMUTES: &str = "action not commuting";
pub const V_SUPPORT: &str = "support predicate";
pub const V_SEED_STABLE: &str = "seed not stable";
pub const V_BOTTOM: &str = "bottom not unitriangular";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("tower is invalid: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("input set at step {step} is not stable under the action (moves {label})")]
    SeedNotStable { step: String, label: String },
    #[error("input pair at level {level} is not unitriangularizable")]
    NotUnitriangular { level: String },
    #[error("no extension witness for stable character {theta} at step {step}")]
    MissingExtension { step: String, theta: String },
    #[error("lifted sets at level {level} have sizes {rows} and {cols}; instance inconsistent")]
    SizeMismatch {
        level: String,
        rows: usize,
        cols: usize,
    },
    #[error("certificate search failed at level {level}; instance inconsistent")]
    CertificateSearchFailed { level: String },
    #[error("step {step} has index {index} equal to ell")]
    EllStepPresent { step: String, index: u64 },
    #[error("step {step} has index {index} different from ell")]
    NonEllStepPresent { step: String, index: u64 },
    #[error("central flags missing from the tower")]
    MissingCentralData,
    #[error("central hypothesis failed: {0}")]
    CentralHypothesisFailed(String),
    #[error("global extension data missing: {0}")]
    MissingGlobalExtension(String),
    #[error("global extension disagrees with the per-step data: {0}")]
    GlobalExtensionMismatch(String),
    #[error("inconsistent instance: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Output of one lifting operation: the lifted pair with its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftOutcome {
    pub b: BTreeSet<CharLabel>,
    pub c: BTreeSet<BrauerLabel>,
    pub cert: UnitriCertificate,
}

/// Per-level sets recorded while folding a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    pub level: String,
    pub b: BTreeSet<CharLabel>,
    pub c: BTreeSet<BrauerLabel>,
}

/// Full result of lifting a tower bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLift {
    pub b_top: BTreeSet<CharLabel>,
    pub c_top: BTreeSet<BrauerLabel>,
    pub cert: UnitriCertificate,
    pub trace: Vec<LevelTrace>,
}

/// Upper characters whose restriction meets the given lower set.
pub fn fiber_irr(
    step: &Step,
    sub: &Level,
    set: &BTreeSet<CharLabel>,
) -> Result<BTreeSet<CharLabel>, LiftError> {
    for label in set {
        if !sub.irr.contains(label) {
            return Err(LiftError::UnknownLabel(label.to_string()));
        }
    }
    Ok(step
        .rest_irr
        .iter()
        .filter(|(_, rest)| rest.iter().any(|theta| set.contains(theta)))
        .map(|(chi, _)| chi.clone())
        .collect())
}

/// Upper Brauer characters whose restriction meets the given lower set.
pub fn fiber_ibr(
    step: &Step,
    sub: &Level,
    set: &BTreeSet<BrauerLabel>,
) -> Result<BTreeSet<BrauerLabel>, LiftError> {
    for label in set {
        if !sub.ibr.contains(label) {
            return Err(LiftError::UnknownLabel(label.to_string()));
        }
    }
    Ok(step
        .rest_ibr
        .iter()
        .filter(|(_, rest)| rest.iter().any(|phi| set.contains(phi)))
        .map(|(phi_sup, _)| phi_sup.clone())
        .collect())
}

impl CliffordTower {
    pub fn bottom(&self) -> &Level {
        &self.levels[0]
    }

    pub fn top(&self) -> &Level {
        self.levels.last().expect("tower has at least one level")
    }

    /// Checks every structural and theoretical invariant of the instance
    /// and returns the violations found; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !is_prime(self.ell) {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("ell = {} is not prime", self.ell),
            ));
        }
        if self.levels.is_empty() {
            out.push(Violation::new(V_STRUCTURE, "tower has no levels"));
            return out;
        }
        let mut names = BTreeSet::new();
        for level in &self.levels {
            if !names.insert(level.name.clone()) {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("duplicate level name {}", level.name),
                ));
            }
            self.validate_level(level, &mut out);
        }
        if self.steps.len() + 1 != self.levels.len() {
            out.push(Violation::new(
                V_STRUCTURE,
                format!(
                    "{} levels need {} steps, found {}",
                    self.levels.len(),
                    self.levels.len() - 1,
                    self.steps.len()
                ),
            ));
            return out;
        }
        for label in &self.seed_irr {
            if !self.bottom().irr.contains(label) {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("seed character {label} not in bottom level"),
                ));
            }
        }
        for label in &self.seed_ibr {
            if !self.bottom().ibr.contains(label) {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("seed Brauer character {label} not in bottom level"),
                ));
            }
        }
        if let Some(central) = &self.central {
            for label in &central.flagged {
                if !self.top().irr.contains(label) {
                    out.push(Violation::new(
                        V_STRUCTURE,
                        format!("central flag {label} not in top level"),
                    ));
                }
            }
        }
        if !out.is_empty() {
            // label-level problems make the remaining checks unreliable
            return out;
        }
        for (i, step) in self.steps.iter().enumerate() {
            self.validate_step(step, &self.levels[i], &self.levels[i + 1], &mut out);
        }
        self.validate_bottom_pair(&mut out);
        self.validate_transitive_stability(&mut out);
        out
    }

    fn validate_level(&self, level: &Level, out: &mut Vec<Violation>) {
        if level.dec.rows() != level.irr.as_slice() {
            out.push(Violation::new(
                V_STRUCTURE,
                format!(
                    "level {}: decomposition rows do not match the character list",
                    level.name
                ),
            ));
        }
        if level.dec.cols() != level.ibr.as_slice() {
            out.push(Violation::new(
                V_STRUCTURE,
                format!(
                    "level {}: decomposition columns do not match the Brauer list",
                    level.name
                ),
            ));
        }
        for (label, degree) in &level.degrees {
            if !level.irr.contains(label) {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("level {}: degree given for unknown {label}", level.name),
                ));
            }
            if *degree == 0 {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("level {}: degree of {label} must be positive", level.name),
                ));
            }
        }
    }

    fn validate_step(&self, step: &Step, sub: &Level, sup: &Level, out: &mut Vec<Violation>) {
        let tag = format!("{} < {}", step.sub, step.sup);
        if step.sub != sub.name || step.sup != sup.name {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("step {tag} does not connect consecutive levels"),
            ));
            return;
        }
        if !is_prime(step.index) {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("step {tag}: index {} is not prime", step.index),
            ));
        }
        if step.action.rows().generators().len() != 1 {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("step {tag}: action must have exactly one paired generator"),
            ));
        }
        let dom_rows: BTreeSet<_> = step.action.rows().domain().iter().cloned().collect();
        let sub_rows: BTreeSet<_> = sub.irr.iter().cloned().collect();
        let dom_cols: BTreeSet<_> = step.action.cols().domain().iter().cloned().collect();
        let sub_cols: BTreeSet<_> = sub.ibr.iter().cloned().collect();
        if dom_rows != sub_rows || dom_cols != sub_cols {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("step {tag}: action domain differs from the lower level"),
            ));
            return;
        }

        let r = step.index;
        // restriction tables must cover the upper level exactly
        let rest_keys: BTreeSet<_> = step.rest_irr.keys().cloned().collect();
        let sup_rows: BTreeSet<_> = sup.irr.iter().cloned().collect();
        if rest_keys != sup_rows {
            out.push(Violation::new(
                V_STRUCTURE,
                format!("step {tag}: restriction table keys differ from the upper characters"),
            ));
            return;
        }
        let rest_ibr_keys: BTreeSet<_> = step.rest_ibr.keys().cloned().collect();
        let sup_cols: BTreeSet<_> = sup.ibr.iter().cloned().collect();
        if rest_ibr_keys != sup_cols {
            out.push(Violation::new(
                V_STRUCTURE,
                format!(
                    "step {tag}: Brauer restriction table keys differ from the upper level"
                ),
            ));
            return;
        }
        for (chi, rest) in &step.rest_irr {
            if rest.is_empty() {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("step {tag}: restriction of {chi} is empty"),
                ));
            }
            let mut seen = BTreeSet::new();
            for theta in rest {
                if !sub_rows.contains(theta) {
                    out.push(Violation::new(
                        V_STRUCTURE,
                        format!("step {tag}: restriction of {chi} names unknown {theta}"),
                    ));
                } else if !seen.insert(theta.clone()) {
                    out.push(Violation::new(
                        V_MULT_FREE,
                        format!("step {tag}: restriction of {chi} repeats {theta}"),
                    ));
                }
            }
            for theta in rest {
                let orbit = step.action.rows().orbit_of(theta);
                if !orbit.iter().all(|t| rest.contains(t)) {
                    out.push(Violation::new(
                        V_ORBIT_CONSTANT,
                        format!("step {tag}: restriction of {chi} splits the orbit of {theta}"),
                    ));
                }
            }
        }
        for (phi_sup, rest) in &step.rest_ibr {
            if rest.is_empty() {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("step {tag}: restriction of {phi_sup} is empty"),
                ));
            }
            let mut seen = BTreeSet::new();
            for phi in rest {
                if !sub_cols.contains(phi) {
                    out.push(Violation::new(
                        V_STRUCTURE,
                        format!("step {tag}: restriction of {phi_sup} names unknown {phi}"),
                    ));
                } else if !seen.insert(phi.clone()) {
                    out.push(Violation::new(
                        V_MULT_FREE,
                        format!("step {tag}: restriction of {phi_sup} repeats {phi}"),
                    ));
                }
            }
            for phi in rest {
                let orbit = step.action.cols().orbit_of(phi);
                if !orbit.iter().all(|t| rest.contains(t)) {
                    out.push(Violation::new(
                        V_ORBIT_CONSTANT,
                        format!(
                            "step {tag}: restriction of {phi_sup} splits the orbit of {phi}"
                        ),
                    ));
                }
            }
        }

        // orbit sizes times fiber sizes follow cyclic prime-index theory
        for theta in &sub.irr {
            let orbit = step.action.rows().orbit_of(theta);
            if orbit.len() != 1 && orbit.len() as u64 != r {
                out.push(Violation::new(
                    V_ORBIT_FIBER,
                    format!(
                        "step {tag}: orbit of {theta} has size {}, expected 1 or {r}",
                        orbit.len()
                    ),
                ));
                continue;
            }
            let fiber = step
                .rest_irr
                .iter()
                .filter(|(_, rest)| rest.contains(theta))
                .count();
            if orbit.len() as u64 * fiber as u64 != r {
                out.push(Violation::new(
                    V_ORBIT_FIBER,
                    format!(
                        "step {tag}: character {theta} has orbit {} and fiber {fiber}, product must be {r}",
                        orbit.len()
                    ),
                ));
            }
        }
        for phi in &sub.ibr {
            let orbit = step.action.cols().orbit_of(phi);
            if orbit.len() != 1 && orbit.len() as u64 != r {
                out.push(Violation::new(
                    V_ORBIT_FIBER,
                    format!(
                        "step {tag}: orbit of {phi} has size {}, expected 1 or {r}",
                        orbit.len()
                    ),
                ));
                continue;
            }
            let fiber = step
                .rest_ibr
                .iter()
                .filter(|(_, rest)| rest.contains(phi))
                .count();
            // at index ell the quotient has a single Brauer character, so
            // every lower Brauer character lies under exactly one upper one
            let ok = if r == self.ell {
                fiber == 1
            } else {
                orbit.len() as u64 * fiber as u64 == r
            };
            if !ok {
                out.push(Violation::new(
                    V_ORBIT_FIBER,
                    format!(
                        "step {tag}: Brauer character {phi} has orbit {} and fiber {fiber}",
                        orbit.len()
                    ),
                ));
            }
        }

        for (theta, lam) in &step.ext {
            if !sub_rows.contains(theta) {
                out.push(Violation::new(
                    V_STRUCTURE,
                    format!("step {tag}: extension map keyed by unknown {theta}"),
                ));
                continue;
            }
            if step.action.rows().orbit_of(theta).len() != 1 {
                out.push(Violation::new(
                    V_EXT_WITNESS,
                    format!("step {tag}: extension given for non-stable {theta}"),
                ));
            }
            match step.rest_irr.get(lam) {
                Some(rest) if rest.len() == 1 && rest[0] == *theta => {}
                Some(_) => out.push(Violation::new(
                    V_EXT_WITNESS,
                    format!("step {tag}: {lam} does not restrict to exactly {theta}"),
                )),
                None => out.push(Violation::new(
                    V_EXT_WITNESS,
                    format!("step {tag}: extension target {lam} not in the upper level"),
                )),
            }
        }

        for (chi, rest) in &step.rest_irr {
            if let Some(&deg_sup) = sup.degrees.get(chi) {
                let parts: Option<Vec<u64>> = rest
                    .iter()
                    .map(|theta| sub.degrees.get(theta).copied())
                    .collect();
                if let Some(parts) = parts {
                    let sum: u64 = parts.iter().sum();
                    if sum != deg_sup {
                        out.push(Violation::new(
                            V_DEGREE_SUM,
                            format!(
                                "step {tag}: degrees of the restriction of {chi} sum to {sum}, expected {deg_sup}"
                            ),
                        ));
                    }
                }
            }
        }

        match commutes(&sub.dec, &step.action) {
            Ok(true) => {}
            Ok(false) => out.push(Violation::new(
                V_COMMUTES,
                format!("step {tag}: the action changes decomposition numbers"),
            )),
            Err(e) => out.push(Violation::new(V_STRUCTURE, format!("step {tag}: {e}"))),
        }

        // support predicate: a nonzero upper entry forces lower support
        // under every restricted Brauer constituent
        for chi in &sup.irr {
            for phi_sup in &sup.ibr {
                if sup.dec.entry(chi, phi_sup) == Some(0) {
                    continue;
                }
                let rest_chi = &step.rest_irr[chi];
                for phi in &step.rest_ibr[phi_sup] {
                    let supported = rest_chi
                        .iter()
                        .any(|theta| sub.dec.entry(theta, phi).unwrap_or(0) != 0);
                    if !supported {
                        out.push(Violation::new(
                            V_SUPPORT,
                            format!(
                                "step {tag}: d[{chi}][{phi_sup}] is nonzero but no constituent of {chi} covers {phi}"
                            ),
                        ));
                    }
                }
            }
        }
    }

    fn validate_bottom_pair(&self, out: &mut Vec<Violation>) {
        let bottom = self.bottom();
        match bottom.dec.submatrix(&self.seed_irr, &self.seed_ibr) {
            Ok(sub) => {
                if sub.find_unitriangular().is_none() {
                    out.push(Violation::new(
                        V_BOTTOM,
                        format!(
                            "the seeded pair of level {} admits no unitriangular ordering",
                            bottom.name
                        ),
                    ));
                }
            }
            Err(e) => out.push(Violation::new(V_STRUCTURE, e.to_string())),
        }
    }

    fn validate_transitive_stability(&self, out: &mut Vec<Violation>) {
        let mut b = self.seed_irr.clone();
        let mut c = self.seed_ibr.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if !step.action.rows().stabilizes(&b) {
                out.push(Violation::new(
                    V_SEED_STABLE,
                    format!("lifted character set is not stable at step {}", step.sub),
                ));
                return;
            }
            if !step.action.cols().stabilizes(&c) {
                out.push(Violation::new(
                    V_SEED_STABLE,
                    format!("lifted Brauer set is not stable at step {}", step.sub),
                ));
                return;
            }
            b = match fiber_irr(step, &self.levels[i], &b) {
                Ok(next) => next,
                Err(e) => {
                    out.push(Violation::new(V_STRUCTURE, e.to_string()));
                    return;
                }
            };
            c = match fiber_ibr(step, &self.levels[i], &c) {
                Ok(next) => next,
                Err(e) => {
                    out.push(Violation::new(V_STRUCTURE, e.to_string()));
                    return;
                }
            };
        }
    }
}

/// Lifts a stable unitriangular pair through one prime-index step.
///
/// The Brauer side is always the fiber of the lower set.  When the index
/// differs from ell, so is the character side.  When the index equals
/// ell, stable characters lift through their extension witnesses and free
/// orbits lift to their unique induced character.  The certificate search
/// on the lifted pair must succeed on consistent data.
pub fn lift_step(
    sub: &Level,
    sup: &Level,
    step: &Step,
    ell: u64,
    b: &BTreeSet<CharLabel>,
    c: &BTreeSet<BrauerLabel>,
) -> Result<LiftOutcome, LiftError> {
    for label in b {
        if !sub.irr.contains(label) {
            return Err(LiftError::UnknownLabel(label.to_string()));
        }
    }
    for label in c {
        if !sub.ibr.contains(label) {
            return Err(LiftError::UnknownLabel(label.to_string()));
        }
    }
    if let Some(label) = b.iter().find(|l| {
        step.action
            .rows()
            .generators()
            .iter()
            .any(|g| !b.contains(g.apply(l)))
    }) {
        return Err(LiftError::SeedNotStable {
            step: step.sub.clone(),
            label: label.to_string(),
        });
    }
    if let Some(label) = c.iter().find(|l| {
        step.action
            .cols()
            .generators()
            .iter()
            .any(|g| !c.contains(g.apply(l)))
    }) {
        return Err(LiftError::SeedNotStable {
            step: step.sub.clone(),
            label: label.to_string(),
        });
    }
    if sub
        .dec
        .submatrix(b, c)?
        .find_unitriangular()
        .is_none()
    {
        return Err(LiftError::NotUnitriangular {
            level: sub.name.clone(),
        });
    }

    let c_sup = fiber_ibr(step, sub, c)?;
    let b_sup = if step.index != ell {
        fiber_irr(step, sub, b)?
    } else {
        let mut lifted = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for theta in b {
            if seen.contains(theta) {
                continue;
            }
            let orbit = step.action.rows().orbit_of(theta);
            seen.extend(orbit.iter().cloned());
            if orbit.len() == 1 {
                let lam = step.ext.get(theta).ok_or_else(|| {
                    LiftError::MissingExtension {
                        step: step.sub.clone(),
                        theta: theta.to_string(),
                    }
                })?;
                match step.rest_irr.get(lam) {
                    Some(rest) if rest.len() == 1 && rest[0] == *theta => {}
                    _ => {
                        return Err(LiftError::Inconsistent(format!(
                            "extension witness {lam} does not restrict to exactly {theta}"
                        )))
                    }
                }
                lifted.insert(lam.clone());
            } else {
                let mut fiber = step
                    .rest_irr
                    .iter()
                    .filter(|(_, rest)| rest.contains(theta))
                    .map(|(chi, _)| chi.clone());
                let induced = fiber.next().ok_or_else(|| {
                    LiftError::Inconsistent(format!("no upper character over {theta}"))
                })?;
                if fiber.next().is_some() {
                    return Err(LiftError::Inconsistent(format!(
                        "free orbit of {theta} lies under more than one upper character"
                    )));
                }
                lifted.insert(induced);
            }
        }
        lifted
    };

    if b_sup.len() != c_sup.len() {
        return Err(LiftError::SizeMismatch {
            level: sup.name.clone(),
            rows: b_sup.len(),
            cols: c_sup.len(),
        });
    }
    let cert = sup
        .dec
        .submatrix(&b_sup, &c_sup)?
        .find_unitriangular()
        .ok_or_else(|| LiftError::CertificateSearchFailed {
            level: sup.name.clone(),
        })?;
    Ok(LiftOutcome {
        b: b_sup,
        c: c_sup,
        cert,
    })
}

/// Folds [`lift_step`] along the whole chain.  The tower must validate.
pub fn lift_tower(tower: &CliffordTower) -> Result<TowerLift, LiftError> {
    let violations = tower.validate();
    if !violations.is_empty() {
        return Err(LiftError::Invalid(violations));
    }
    let mut b = tower.seed_irr.clone();
    let mut c = tower.seed_ibr.clone();
    let mut cert = tower
        .bottom()
        .dec
        .submatrix(&b, &c)?
        .find_unitriangular()
        .ok_or_else(|| LiftError::NotUnitriangular {
            level: tower.bottom().name.clone(),
        })?;
    let mut trace = vec![LevelTrace {
        level: tower.bottom().name.clone(),
        b: b.clone(),
        c: c.clone(),
    }];
    for (i, step) in tower.steps.iter().enumerate() {
        let outcome = lift_step(
            &tower.levels[i],
            &tower.levels[i + 1],
            step,
            tower.ell,
            &b,
            &c,
        )?;
        b = outcome.b;
        c = outcome.c;
        cert = outcome.cert;
        trace.push(LevelTrace {
            level: tower.levels[i + 1].name.clone(),
            b: b.clone(),
            c: c.clone(),
        });
    }
    Ok(TowerLift {
        b_top: b,
        c_top: c,
        cert,
        trace,
    })
}

/// The going-up construction when no step index equals ell: the lifted
/// character set is the plain iterated fiber and no extension map is
/// consulted.  The result is checked against the stepwise lift.
pub fn lift_ellprime(tower: &CliffordTower) -> Result<TowerLift, LiftError> {
    for step in &tower.steps {
        if step.index == tower.ell {
            return Err(LiftError::EllStepPresent {
                step: step.sub.clone(),
                index: step.index,
            });
        }
    }
    let full = lift_tower(tower)?;
    let mut b = tower.seed_irr.clone();
    let mut c = tower.seed_ibr.clone();
    for (i, step) in tower.steps.iter().enumerate() {
        b = fiber_irr(step, &tower.levels[i], &b)?;
        c = fiber_ibr(step, &tower.levels[i], &c)?;
    }
    if b != full.b_top || c != full.c_top {
        return Err(LiftError::Inconsistent(
            "fiber composition differs from the stepwise lift".into(),
        ));
    }
    Ok(full)
}

/// The central variant: intersects the fibered character set with the
/// rows flagged as lying over the trivial central character.
pub fn lift_central(tower: &CliffordTower) -> Result<LiftOutcome, LiftError> {
    let central = tower
        .central
        .as_ref()
        .ok_or(LiftError::MissingCentralData)?;
    if !central.ell_coprime_quotient {
        return Err(LiftError::CentralHypothesisFailed(
            "ell divides the index of the central extension".into(),
        ));
    }
    if !central.ell_coprime_intersection {
        return Err(LiftError::CentralHypothesisFailed(
            "ell divides the central intersection".into(),
        ));
    }
    let violations = tower.validate();
    if !violations.is_empty() {
        return Err(LiftError::Invalid(violations));
    }
    let mut b = tower.seed_irr.clone();
    let mut c = tower.seed_ibr.clone();
    for (i, step) in tower.steps.iter().enumerate() {
        b = fiber_irr(step, &tower.levels[i], &b)?;
        c = fiber_ibr(step, &tower.levels[i], &c)?;
    }
    let b_tilde: BTreeSet<CharLabel> =
        b.intersection(&central.flagged).cloned().collect();
    if b_tilde.len() != c.len() {
        return Err(LiftError::SizeMismatch {
            level: tower.top().name.clone(),
            rows: b_tilde.len(),
            cols: c.len(),
        });
    }
    let cert = tower
        .top()
        .dec
        .submatrix(&b_tilde, &c)?
        .find_unitriangular()
        .ok_or_else(|| LiftError::CertificateSearchFailed {
            level: tower.top().name.clone(),
        })?;
    Ok(LiftOutcome {
        b: b_tilde,
        c,
        cert,
    })
}

/// The one-shot construction for a tower whose every step has index ell:
/// the lifted set is read off the global extension chains, then checked
/// for equality against the stepwise lift.
pub fn direct_ell_lift(tower: &CliffordTower) -> Result<LiftOutcome, LiftError> {
    for step in &tower.steps {
        if step.index != tower.ell {
            return Err(LiftError::NonEllStepPresent {
                step: step.sub.clone(),
                index: step.index,
            });
        }
    }
    let chains = tower
        .global_ext
        .as_ref()
        .ok_or_else(|| LiftError::MissingGlobalExtension("tower carries no chains".into()))?;
    let full = lift_tower(tower)?;
    let mut tops = BTreeSet::new();
    for theta in &tower.seed_irr {
        let chain = chains.get(theta).ok_or_else(|| {
            LiftError::MissingGlobalExtension(format!("no chain for {theta}"))
        })?;
        if chain.len() != tower.levels.len() {
            return Err(LiftError::GlobalExtensionMismatch(format!(
                "chain for {theta} has length {}, expected {}",
                chain.len(),
                tower.levels.len()
            )));
        }
        if chain[0] != *theta {
            return Err(LiftError::GlobalExtensionMismatch(format!(
                "chain for {theta} starts at {}",
                chain[0]
            )));
        }
        let mut current = theta.clone();
        for (i, step) in tower.steps.iter().enumerate() {
            let orbit = step.action.rows().orbit_of(&current);
            let next = if orbit.len() == 1 {
                step.ext
                    .get(&current)
                    .ok_or_else(|| LiftError::MissingExtension {
                        step: step.sub.clone(),
                        theta: current.to_string(),
                    })?
                    .clone()
            } else {
                let mut fiber = step
                    .rest_irr
                    .iter()
                    .filter(|(_, rest)| rest.contains(&current))
                    .map(|(chi, _)| chi.clone());
                let induced = fiber.next().ok_or_else(|| {
                    LiftError::Inconsistent(format!("no upper character over {current}"))
                })?;
                if fiber.next().is_some() {
                    return Err(LiftError::Inconsistent(format!(
                        "free orbit of {current} lies under more than one upper character"
                    )));
                }
                induced
            };
            if chain[i + 1] != next {
                return Err(LiftError::GlobalExtensionMismatch(format!(
                    "chain for {theta} names {} at level {}, per-step data gives {next}",
                    chain[i + 1],
                    tower.levels[i + 1].name
                )));
            }
            current = next;
        }
        tops.insert(current);
    }
    if tops != full.b_top {
        return Err(LiftError::Inconsistent(
            "one-shot character set differs from the stepwise lift".into(),
        ));
    }
    Ok(LiftOutcome {
        b: tops,
        c: full.c_top,
        cert: full.cert,
    })
}

/// Exhaustively searches the subsets of `candidates` with the same size
/// as `cols` for one whose restricted matrix admits a certificate.
/// Intended for small negative fixtures; the subset count is exponential.
pub fn search_unitriangular_subset(
    dec: &DecMatrix,
    candidates: &BTreeSet<CharLabel>,
    cols: &BTreeSet<BrauerLabel>,
) -> Result<Option<(BTreeSet<CharLabel>, UnitriCertificate)>, MatrixError> {
    let want = cols.len();
    let pool: Vec<CharLabel> = candidates.iter().cloned().collect();
    if want > pool.len() {
        return Ok(None);
    }
    let mut indices: Vec<usize> = (0..want).collect();
    loop {
        let subset: BTreeSet<CharLabel> =
            indices.iter().map(|&i| pool[i].clone()).collect();
        let sub = dec.submatrix(&subset, cols)?;
        if let Some(cert) = sub.find_unitriangular() {
            return Ok(Some((subset, cert)));
        }
        // next combination in lexicographic order
        let mut i = want;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if indices[i] != i + pool.len() - want {
                indices[i] += 1;
                for j in i + 1..want {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{LabeledPermGroup, Perm};

    fn chi(s: &str) -> CharLabel {
        CharLabel::new(s).unwrap()
    }

    fn phi(s: &str) -> BrauerLabel {
        BrauerLabel::new(s).unwrap()
    }

    fn chis(names: &[&str]) -> Vec<CharLabel> {
        names.iter().map(|s| chi(s)).collect()
    }

    fn phis(names: &[&str]) -> Vec<BrauerLabel> {
        names.iter().map(|s| phi(s)).collect()
    }

    fn dec(rows: &[&str], cols: &[&str], entries: &[&[u64]]) -> DecMatrix {
        DecMatrix::new(
            chis(rows),
            phis(cols),
            entries.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn rest_c(pairs: &[(&str, &[&str])]) -> BTreeMap<CharLabel, Vec<CharLabel>> {
        pairs
            .iter()
            .map(|(k, v)| (chi(k), chis(v)))
            .collect()
    }

    fn rest_b(pairs: &[(&str, &[&str])]) -> BTreeMap<BrauerLabel, Vec<BrauerLabel>> {
        pairs
            .iter()
            .map(|(k, v)| (phi(k), phis(v)))
            .collect()
    }

    /// The cyclic group of order three under the symmetric group on three
    /// points, at ell = 3.
    fn c3_s3_tower() -> CliffordTower {
        let c3 = Level {
            name: "C3".into(),
            irr: chis(&["triv", "omega", "omega_bar"]),
            degrees: [("triv", 1), ("omega", 1), ("omega_bar", 1)]
                .into_iter()
                .map(|(k, v)| (chi(k), v))
                .collect(),
            ibr: phis(&["triv0"]),
            dec: dec(
                &["triv", "omega", "omega_bar"],
                &["triv0"],
                &[&[1], &[1], &[1]],
            ),
        };
        let s3 = Level {
            name: "S3".into(),
            irr: chis(&["triv", "sgn", "chi2"]),
            degrees: [("triv", 1), ("sgn", 1), ("chi2", 2)]
                .into_iter()
                .map(|(k, v)| (chi(k), v))
                .collect(),
            ibr: phis(&["triv0", "sgn0"]),
            dec: dec(
                &["triv", "sgn", "chi2"],
                &["triv0", "sgn0"],
                &[&[1, 0], &[0, 1], &[1, 1]],
            ),
        };
        let rows = LabeledPermGroup::new(
            c3.irr.clone(),
            vec![Perm::from_cycle(&chis(&["omega", "omega_bar"]))],
        )
        .unwrap();
        let cols =
            LabeledPermGroup::new(c3.ibr.clone(), vec![Perm::identity()]).unwrap();
        let step = Step {
            sub: "C3".into(),
            sup: "S3".into(),
            index: 2,
            rest_irr: rest_c(&[
                ("triv", &["triv"]),
                ("sgn", &["triv"]),
                ("chi2", &["omega", "omega_bar"]),
            ]),
            rest_ibr: rest_b(&[("triv0", &["triv0"]), ("sgn0", &["triv0"])]),
            action: PairedAction::new(rows, cols).unwrap(),
            ext: BTreeMap::new(),
        };
        CliffordTower {
            ell: 3,
            levels: vec![c3, s3],
            steps: vec![step],
            seed_irr: [chi("triv")].into_iter().collect(),
            seed_ibr: [phi("triv0")].into_iter().collect(),
            central: None,
            global_ext: None,
        }
    }

    #[test]
    fn c3_s3_validates() {
        let tower = c3_s3_tower();
        let violations = tower.validate();
        assert!(violations.is_empty(), "{violations:?}");
    }

    #[test]
    fn c3_s3_lifts_to_both_linear_characters() {
        let tower = c3_s3_tower();
        let lift = lift_tower(&tower).unwrap();
        assert_eq!(lift.b_top, [chi("sgn"), chi("triv")].into_iter().collect());
        assert_eq!(
            lift.c_top,
            [phi("sgn0"), phi("triv0")].into_iter().collect()
        );
        let sub = tower
            .top()
            .dec
            .submatrix(&lift.b_top, &lift.c_top)
            .unwrap();
        assert!(sub.is_certified_by(&lift.cert));
        assert_eq!(lift.trace.len(), 2);
    }

    #[test]
    fn c3_s3_ellprime_agrees_with_stepwise() {
        let tower = c3_s3_tower();
        let a = lift_tower(&tower).unwrap();
        let b = lift_ellprime(&tower).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deleting_a_restriction_entry_breaks_the_size_identity() {
        let mut tower = c3_s3_tower();
        tower.steps[0]
            .rest_irr
            .insert(chi("sgn"), Vec::new());
        let violations = tower.validate();
        assert!(
            violations.iter().any(|v| v.code() == V_ORBIT_FIBER),
            "{violations:?}"
        );
    }

    #[test]
    fn raising_an_upper_entry_breaks_the_support_predicate() {
        let mut tower = c3_s3_tower();
        // sgn now claims support over triv0 while restricting to triv,
        // whose only support is triv0 -- break the lower entry instead
        tower.levels[1].dec = dec(
            &["triv", "sgn", "chi2"],
            &["triv0", "sgn0"],
            &[&[1, 0], &[0, 1], &[1, 1]],
        );
        tower.levels[0].dec = dec(
            &["triv", "omega", "omega_bar"],
            &["triv0"],
            &[&[1], &[0], &[0]],
        );
        let violations = tower.validate();
        assert!(
            violations.iter().any(|v| v.code() == V_SUPPORT),
            "{violations:?}"
        );
    }

    #[test]
    fn fiber_of_empty_set_is_empty() {
        let tower = c3_s3_tower();
        let empty = BTreeSet::new();
        let out = fiber_irr(&tower.steps[0], &tower.levels[0], &empty).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn fiber_rejects_unknown_label() {
        let tower = c3_s3_tower();
        let set = [chi("nope")].into_iter().collect();
        assert!(matches!(
            fiber_irr(&tower.steps[0], &tower.levels[0], &set),
            Err(LiftError::UnknownLabel(_))
        ));
    }

    #[test]
    fn lift_step_rejects_unstable_seed() {
        let tower = c3_s3_tower();
        let b = [chi("omega")].into_iter().collect();
        let c = [phi("triv0")].into_iter().collect();
        let err = lift_step(
            &tower.levels[0],
            &tower.levels[1],
            &tower.steps[0],
            3,
            &b,
            &c,
        )
        .unwrap_err();
        assert!(matches!(err, LiftError::SeedNotStable { .. }));
    }

    #[test]
    fn ellprime_rejects_ell_steps() {
        let mut tower = c3_s3_tower();
        tower.ell = 2;
        // at ell = 2 the Brauer data is wrong, but the precondition fires first
        let err = lift_ellprime(&tower).unwrap_err();
        assert!(matches!(err, LiftError::EllStepPresent { .. }));
    }

    #[test]
    fn subset_search_finds_nothing_for_doubled_diagonal() {
        let m = dec(&["chi2"], &["triv0"], &[&[2]]);
        let candidates = [chi("chi2")].into_iter().collect();
        let cols = [phi("triv0")].into_iter().collect();
        assert!(search_unitriangular_subset(&m, &candidates, &cols)
            .unwrap()
            .is_none());
    }

    #[test]
    fn subset_search_finds_a_witness() {
        let m = dec(
            &["a", "b"],
            &["x"],
            &[&[2], &[1]],
        );
        let candidates = [chi("a"), chi("b")].into_iter().collect();
        let cols = [phi("x")].into_iter().collect();
        let (subset, cert) = search_unitriangular_subset(&m, &candidates, &cols)
            .unwrap()
            .unwrap();
        assert_eq!(subset, [chi("b")].into_iter().collect());
        assert_eq!(cert.len(), 1);
    }
}
