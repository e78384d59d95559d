//! JSON instance and certificate formats.
//!
//! Files are UTF-8 JSON with integers only, struct keys in a fixed
//! declared order and maps sorted by key, so serializing a parsed
//! canonical file reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use triangulift_core::label::{BrauerLabel, CharLabel};
use triangulift_core::matrix::{DecMatrix, UnitriCertificate};
use triangulift_core::perm::{LabeledPermGroup, PairedAction, Perm};
use triangulift_core::symbols::{
    AdmissibleSymbol, Eps, PPrimeRoot, Partition, SymbolContext, UnipotentSet,
};
use triangulift_core::tower::{CentralData, CliffordTower, Level, LevelTrace, Step};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

impl IoError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        IoError::Invalid(msg.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Instance {
    Matrix(MatrixInstance),
    Tower(TowerInstance),
    Symbols(SymbolsInstance),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInstance {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionData {
    pub row_generators: Vec<BTreeMap<String, String>>,
    pub col_generators: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerInstance {
    pub ell: u64,
    pub levels: Vec<LevelData>,
    pub steps: Vec<StepData>,
    pub seed_irr: Vec<String>,
    pub seed_ibr: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<CentralDataIo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_ext: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelData {
    pub name: String,
    pub irr: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub degrees: BTreeMap<String, u64>,
    pub ibr: Vec<String>,
    pub dec: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepData {
    pub sub: String,
    pub sup: String,
    pub index: u64,
    pub rest_irr: BTreeMap<String, Vec<String>>,
    pub rest_ibr: BTreeMap<String, Vec<String>>,
    pub row_generator: BTreeMap<String, String>,
    pub col_generator: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ext: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralDataIo {
    pub flagged: Vec<String>,
    pub ell_coprime_quotient: bool,
    pub ell_coprime_intersection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolsInstance {
    pub op: String,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<Vec<PairData>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairData {
    pub root: String,
    pub partition: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub operation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub instance: InstanceFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format_version: u32,
    pub request: Request,
    pub result: ResultPayload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ResultPayload {
    Certificate(CertData),
    #[serde(rename = "none")]
    NoneFound { reason: String },
    Check {
        ok: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<String>,
    },
    Lift {
        b_top: Vec<String>,
        c_top: Vec<String>,
        certificate: CertData,
        trace: Vec<TraceEntry>,
    },
    Symbols {
        symbols: Vec<Vec<PairData>>,
    },
    SymbolMap {
        pairs: Vec<SymbolMapEntry>,
    },
    Invariant {
        invariant: bool,
    },
    Unipotent {
        labels: Vec<UnipotentData>,
        total: u64,
        u1_total: u64,
        u2_total: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertData {
    pub row_order: Vec<String>,
    pub col_order: Vec<String>,
    pub bijection: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEntry {
    pub level: String,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolMapEntry {
    pub from: Vec<PairData>,
    pub to: Vec<PairData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnipotentData {
    pub m: Vec<[u64; 2]>,
    pub k: u32,
    pub multiplicity: u64,
    pub component: String,
}

/// Canonical serialization: pretty two-space indentation plus a trailing
/// newline.  Deterministic for identical values.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(IoError::Version(file.format_version));
    }
    Ok(file)
}

pub fn parse_certificate_file(text: &str) -> Result<CertificateFile, IoError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(IoError::Version(file.format_version));
    }
    Ok(file)
}

pub fn parse_action(text: &str) -> Result<ActionData, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn char_label(s: &str) -> Result<CharLabel, IoError> {
    CharLabel::new(s).map_err(|e| IoError::invalid(format!("label {s:?}: {e}")))
}

fn brauer_label(s: &str) -> Result<BrauerLabel, IoError> {
    BrauerLabel::new(s).map_err(|e| IoError::invalid(format!("label {s:?}: {e}")))
}

fn char_labels(names: &[String]) -> Result<Vec<CharLabel>, IoError> {
    names.iter().map(|s| char_label(s)).collect()
}

fn brauer_labels(names: &[String]) -> Result<Vec<BrauerLabel>, IoError> {
    names.iter().map(|s| brauer_label(s)).collect()
}

impl MatrixInstance {
    pub fn to_matrix(&self) -> Result<DecMatrix, IoError> {
        DecMatrix::new(
            char_labels(&self.rows)?,
            brauer_labels(&self.cols)?,
            self.entries.clone(),
        )
        .map_err(|e| IoError::invalid(e.to_string()))
    }
}

impl ActionData {
    pub fn to_action(&self, dec: &DecMatrix) -> Result<PairedAction, IoError> {
        let row_gens = self
            .row_generators
            .iter()
            .map(|map| {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    out.insert(char_label(k)?, char_label(v)?);
                }
                Ok(Perm::from_map(out))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let col_gens = self
            .col_generators
            .iter()
            .map(|map| {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    out.insert(brauer_label(k)?, brauer_label(v)?);
                }
                Ok(Perm::from_map(out))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let rows = LabeledPermGroup::new(dec.rows().to_vec(), row_gens)
            .map_err(|e| IoError::invalid(e.to_string()))?;
        let cols = LabeledPermGroup::new(dec.cols().to_vec(), col_gens)
            .map_err(|e| IoError::invalid(e.to_string()))?;
        PairedAction::new(rows, cols).map_err(|e| IoError::invalid(e.to_string()))
    }
}

impl LevelData {
    fn to_level(&self) -> Result<Level, IoError> {
        let irr = char_labels(&self.irr)?;
        let ibr = brauer_labels(&self.ibr)?;
        let dec = DecMatrix::new(irr.clone(), ibr.clone(), self.dec.clone())
            .map_err(|e| IoError::invalid(format!("level {}: {e}", self.name)))?;
        let mut degrees = BTreeMap::new();
        for (k, v) in &self.degrees {
            degrees.insert(char_label(k)?, *v);
        }
        Ok(Level {
            name: self.name.clone(),
            irr,
            degrees,
            ibr,
            dec,
        })
    }
}

impl StepData {
    fn to_step(&self, sub: &Level) -> Result<Step, IoError> {
        let mut rest_irr = BTreeMap::new();
        for (k, v) in &self.rest_irr {
            rest_irr.insert(char_label(k)?, char_labels(v)?);
        }
        let mut rest_ibr = BTreeMap::new();
        for (k, v) in &self.rest_ibr {
            rest_ibr.insert(brauer_label(k)?, brauer_labels(v)?);
        }
        let mut row_map = BTreeMap::new();
        for (k, v) in &self.row_generator {
            row_map.insert(char_label(k)?, char_label(v)?);
        }
        let mut col_map = BTreeMap::new();
        for (k, v) in &self.col_generator {
            col_map.insert(brauer_label(k)?, brauer_label(v)?);
        }
        let rows = LabeledPermGroup::new(sub.irr.clone(), vec![Perm::from_map(row_map)])
            .map_err(|e| IoError::invalid(format!("step {}: {e}", self.sub)))?;
        let cols = LabeledPermGroup::new(sub.ibr.clone(), vec![Perm::from_map(col_map)])
            .map_err(|e| IoError::invalid(format!("step {}: {e}", self.sub)))?;
        let mut ext = BTreeMap::new();
        for (k, v) in &self.ext {
            ext.insert(char_label(k)?, char_label(v)?);
        }
        Ok(Step {
            sub: self.sub.clone(),
            sup: self.sup.clone(),
            index: self.index,
            rest_irr,
            rest_ibr,
            action: PairedAction::new(rows, cols)
                .map_err(|e| IoError::invalid(e.to_string()))?,
            ext,
        })
    }
}

impl TowerInstance {
    pub fn to_tower(&self) -> Result<CliffordTower, IoError> {
        let levels = self
            .levels
            .iter()
            .map(|l| l.to_level())
            .collect::<Result<Vec<_>, _>>()?;
        if levels.is_empty() {
            return Err(IoError::invalid("tower has no levels"));
        }
        if self.steps.len() + 1 != levels.len() {
            return Err(IoError::invalid(format!(
                "{} levels need {} steps, found {}",
                levels.len(),
                levels.len() - 1,
                self.steps.len()
            )));
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| s.to_step(&levels[i]))
            .collect::<Result<Vec<_>, _>>()?;
        let seed_irr: BTreeSet<CharLabel> =
            char_labels(&self.seed_irr)?.into_iter().collect();
        let seed_ibr: BTreeSet<BrauerLabel> =
            brauer_labels(&self.seed_ibr)?.into_iter().collect();
        let central = match &self.central {
            Some(c) => Some(CentralData {
                flagged: char_labels(&c.flagged)?.into_iter().collect(),
                ell_coprime_quotient: c.ell_coprime_quotient,
                ell_coprime_intersection: c.ell_coprime_intersection,
            }),
            None => None,
        };
        let global_ext = match &self.global_ext {
            Some(map) => {
                let mut out = BTreeMap::new();
                for (k, chain) in map {
                    out.insert(char_label(k)?, char_labels(chain)?);
                }
                Some(out)
            }
            None => None,
        };
        Ok(CliffordTower {
            ell: self.ell,
            levels,
            steps,
            seed_irr,
            seed_ibr,
            central,
            global_ext,
        })
    }
}

impl SymbolsInstance {
    pub fn context(&self) -> Result<SymbolContext, IoError> {
        let eps = Eps::from_sign(
            self.eps
                .ok_or_else(|| IoError::invalid("symbols request needs eps"))?,
        )
        .map_err(|e| IoError::invalid(e.to_string()))?;
        let q = self
            .q
            .ok_or_else(|| IoError::invalid("symbols request needs q"))?;
        let p = self
            .p
            .ok_or_else(|| IoError::invalid("symbols request needs p"))?;
        SymbolContext::new(self.n, eps, q, p).map_err(|e| IoError::invalid(e.to_string()))
    }
}

pub fn pairs_to_symbol(
    ctx: SymbolContext,
    pairs: &[PairData],
) -> Result<AdmissibleSymbol, IoError> {
    let converted = pairs
        .iter()
        .map(|pair| {
            let root = PPrimeRoot::parse(&pair.root)
                .map_err(|e| IoError::invalid(e.to_string()))?;
            let mu = Partition::new(pair.partition.clone())
                .map_err(|e| IoError::invalid(e.to_string()))?;
            Ok((root, mu))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    AdmissibleSymbol::new(ctx, converted).map_err(|e| IoError::invalid(e.to_string()))
}

pub fn symbol_to_pairs(symbol: &AdmissibleSymbol) -> Vec<PairData> {
    symbol
        .pairs()
        .iter()
        .map(|(orbit, mu)| PairData {
            root: orbit.rep().to_string(),
            partition: mu.parts().to_vec(),
        })
        .collect()
}

pub fn cert_data(cert: &UnitriCertificate) -> CertData {
    CertData {
        row_order: cert.row_order().iter().map(|l| l.to_string()).collect(),
        col_order: cert.col_order().iter().map(|l| l.to_string()).collect(),
        bijection: cert
            .pairs()
            .map(|(r, c)| (r.to_string(), c.to_string()))
            .collect(),
    }
}

impl CertData {
    pub fn to_certificate(&self) -> Result<UnitriCertificate, IoError> {
        let cert = UnitriCertificate::new(
            char_labels(&self.row_order)?,
            brauer_labels(&self.col_order)?,
        )
        .map_err(|e| IoError::invalid(e.to_string()))?;
        for (row, col) in cert.pairs() {
            match self.bijection.get(row.as_str()) {
                Some(mapped) if mapped == col.as_str() => {}
                _ => {
                    return Err(IoError::invalid(format!(
                        "bijection entry for {row} disagrees with the orders"
                    )))
                }
            }
        }
        if self.bijection.len() != self.row_order.len() {
            return Err(IoError::invalid(
                "bijection size differs from the orders".to_string(),
            ));
        }
        Ok(cert)
    }
}

pub fn trace_entries(trace: &[LevelTrace]) -> Vec<TraceEntry> {
    trace
        .iter()
        .map(|entry| TraceEntry {
            level: entry.level.clone(),
            b: entry.b.iter().map(|l| l.to_string()).collect(),
            c: entry.c.iter().map(|l| l.to_string()).collect(),
        })
        .collect()
}

pub fn unipotent_payload(set: &UnipotentSet) -> ResultPayload {
    ResultPayload::Unipotent {
        labels: set
            .labels()
            .iter()
            .map(|label| UnipotentData {
                m: label.values().iter().map(|(j, v)| [*j, *v]).collect(),
                k: label.k(),
                multiplicity: label.multiplicity(),
                component: if label.all_values_even() {
                    "U1".to_string()
                } else {
                    "U2".to_string()
                },
            })
            .collect(),
        total: set.total(),
        u1_total: set.u1_total(),
        u2_total: set.u2_total(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_instance_round_trips() {
        let text = r#"{
  "format_version": 1,
  "instance": {
    "kind": "matrix",
    "rows": ["a", "b"],
    "cols": ["x", "y"],
    "entries": [[1, 0], [2, 1]]
  }
}"#;
        let parsed = parse_instance(text).unwrap();
        let out = to_canonical_json(&parsed);
        assert_eq!(parse_instance(&out).unwrap(), parsed);
    }

    #[test]
    fn rejects_unknown_version() {
        let text = r#"{"format_version": 9, "instance": {"kind": "matrix", "rows": [], "cols": [], "entries": []}}"#;
        assert!(matches!(parse_instance(text), Err(IoError::Version(9))));
    }

    #[test]
    fn rejects_floats_in_entries() {
        let text = r#"{
  "format_version": 1,
  "instance": {"kind": "matrix", "rows": ["a"], "cols": ["x"], "entries": [[1.5]]}
}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn rejects_negative_entries() {
        let text = r#"{
  "format_version": 1,
  "instance": {"kind": "matrix", "rows": ["a"], "cols": ["x"], "entries": [[-1]]}
}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn duplicate_labels_are_named_in_the_error() {
        let instance = MatrixInstance {
            rows: vec!["a".into(), "a".into()],
            cols: vec!["x".into(), "y".into()],
            entries: vec![vec![1, 0], vec![0, 1]],
            action: None,
        };
        let err = instance.to_matrix().unwrap_err();
        assert!(err.to_string().contains('a'));
    }
}
