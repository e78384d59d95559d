//! Shared execution path for CLI commands and fixture verification.

use thiserror::Error;

use triangulift_core::matrix::DecMatrix;
use triangulift_core::symbols::{
    denoncin_basic_set, enumerate_symbols, unipotent_labels, PPrimeRoot,
};
use triangulift_core::tower::{direct_ell_lift, lift_central, lift_ellprime, lift_tower};

use crate::io::{
    cert_data, pairs_to_symbol, symbol_to_pairs, to_canonical_json, trace_entries,
    unipotent_payload, CertificateFile, Instance, InstanceFile, IoError, Request,
    ResultPayload, SymbolMapEntry, SymbolsInstance, FORMAT_VERSION,
};

/// Default bound on symbol enumeration, overridable through the
/// TRIANGULIFT_MAX_ENUM environment variable.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

pub const MAX_ENUM_ENV: &str = "TRIANGULIFT_MAX_ENUM";

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Invalid(String),
}

impl EngineError {
    pub fn invalid(msg: impl std::fmt::Display) -> Self {
        EngineError::Invalid(msg.to_string())
    }
}

pub fn max_enum_bound() -> u64 {
    std::env::var(MAX_ENUM_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// Runs a single-instance request and wraps the result in a
/// certificate file echoing it.
pub fn execute(request: &Request) -> Result<CertificateFile, EngineError> {
    let result = match (request.operation.as_str(), &request.instance.instance) {
        ("find-order", Instance::Matrix(mi)) => find_order(&mi.to_matrix()?),
        ("lift", Instance::Tower(ti)) => {
            lift(&ti.to_tower()?, request.mode.as_deref())?
        }
        ("symbols", Instance::Symbols(si)) => symbols(si)?,
        (op, _) => {
            return Err(EngineError::invalid(format!(
                "operation {op:?} does not apply to this instance kind"
            )))
        }
    };
    Ok(CertificateFile {
        format_version: FORMAT_VERSION,
        request: request.clone(),
        result,
    })
}

pub fn find_order(dec: &DecMatrix) -> ResultPayload {
    match dec.find_unitriangular() {
        Some(cert) => ResultPayload::Certificate(cert_data(&cert)),
        None => ResultPayload::NoneFound {
            reason: if dec.is_square() {
                "no ordering pair makes the matrix lower unitriangular".into()
            } else {
                "matrix is not square".into()
            },
        },
    }
}

fn lift(
    tower: &triangulift_core::tower::CliffordTower,
    mode: Option<&str>,
) -> Result<ResultPayload, EngineError> {
    match mode {
        None => {
            let lifted = lift_tower(tower).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Lift {
                b_top: lifted.b_top.iter().map(|l| l.to_string()).collect(),
                c_top: lifted.c_top.iter().map(|l| l.to_string()).collect(),
                certificate: cert_data(&lifted.cert),
                trace: trace_entries(&lifted.trace),
            })
        }
        Some("ellprime") => {
            let lifted = lift_ellprime(tower).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Lift {
                b_top: lifted.b_top.iter().map(|l| l.to_string()).collect(),
                c_top: lifted.c_top.iter().map(|l| l.to_string()).collect(),
                certificate: cert_data(&lifted.cert),
                trace: trace_entries(&lifted.trace),
            })
        }
        Some("central") => {
            let lifted = lift_central(tower).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Lift {
                b_top: lifted.b.iter().map(|l| l.to_string()).collect(),
                c_top: lifted.c.iter().map(|l| l.to_string()).collect(),
                certificate: cert_data(&lifted.cert),
                trace: Vec::new(),
            })
        }
        Some("direct-ell") => {
            let lifted = direct_ell_lift(tower).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Lift {
                b_top: lifted.b.iter().map(|l| l.to_string()).collect(),
                c_top: lifted.c.iter().map(|l| l.to_string()).collect(),
                certificate: cert_data(&lifted.cert),
                trace: Vec::new(),
            })
        }
        Some(other) => Err(EngineError::invalid(format!("unknown lift mode {other:?}"))),
    }
}

fn symbols(si: &SymbolsInstance) -> Result<ResultPayload, EngineError> {
    let bound = max_enum_bound();
    match si.op.as_str() {
        "enumerate" => {
            let ctx = si.context()?;
            let symbols = enumerate_symbols(&ctx, bound).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Symbols {
                symbols: symbols.iter().map(symbol_to_pairs).collect(),
            })
        }
        "act" => {
            let ctx = si.context()?;
            let pairs = si
                .symbol
                .as_ref()
                .ok_or_else(|| EngineError::invalid("act needs a symbol"))?;
            let symbol = pairs_to_symbol(ctx, pairs)?;
            let action = si
                .action
                .as_deref()
                .ok_or_else(|| EngineError::invalid("act needs an action name"))?;
            let moved = match action {
                "frobenius" => symbol
                    .act_frobenius(si.k.unwrap_or(1))
                    .map_err(EngineError::invalid)?,
                "dual" => symbol.act_dual().map_err(EngineError::invalid)?,
                "linear" => {
                    let z = si
                        .z
                        .as_deref()
                        .ok_or_else(|| EngineError::invalid("linear action needs z"))?;
                    let z = PPrimeRoot::parse(z).map_err(EngineError::invalid)?;
                    symbol.act_linear(&z).map_err(EngineError::invalid)?
                }
                other => {
                    return Err(EngineError::invalid(format!(
                        "unknown symbol action {other:?}"
                    )))
                }
            };
            Ok(ResultPayload::Symbols {
                symbols: vec![symbol_to_pairs(&moved)],
            })
        }
        "invariants" => {
            let ctx = si.context()?;
            let e = si
                .e
                .ok_or_else(|| EngineError::invalid("invariants needs e"))?;
            let gamma = si.gamma.unwrap_or(false);
            match &si.symbol {
                Some(pairs) => {
                    let symbol = pairs_to_symbol(ctx, pairs)?;
                    Ok(ResultPayload::Invariant {
                        invariant: symbol.is_invariant(e, gamma).map_err(EngineError::invalid)?,
                    })
                }
                None => {
                    let symbols =
                        enumerate_symbols(&ctx, bound).map_err(EngineError::invalid)?;
                    let mut out = Vec::new();
                    for symbol in &symbols {
                        if symbol.is_invariant(e, gamma).map_err(EngineError::invalid)? {
                            out.push(symbol_to_pairs(symbol));
                        }
                    }
                    Ok(ResultPayload::Symbols { symbols: out })
                }
            }
        }
        "xi" => {
            let ctx = si.context()?;
            let e = si.e.ok_or_else(|| EngineError::invalid("xi needs e"))?;
            let gamma = si.gamma.unwrap_or(false);
            let symbols = enumerate_symbols(&ctx, bound).map_err(EngineError::invalid)?;
            let mut pairs = Vec::new();
            for symbol in &symbols {
                if symbol.is_invariant(e, gamma).map_err(EngineError::invalid)? {
                    let image = symbol.xi(e, gamma).map_err(EngineError::invalid)?;
                    pairs.push(SymbolMapEntry {
                        from: symbol_to_pairs(symbol),
                        to: symbol_to_pairs(&image),
                    });
                }
            }
            Ok(ResultPayload::SymbolMap { pairs })
        }
        "basic-set" => {
            let ctx = si.context()?;
            let ell = si
                .ell
                .ok_or_else(|| EngineError::invalid("basic-set needs ell"))?;
            let set = denoncin_basic_set(&ctx, ell, bound).map_err(EngineError::invalid)?;
            Ok(ResultPayload::Symbols {
                symbols: set.iter().map(symbol_to_pairs).collect(),
            })
        }
        "unipotent" => {
            let set = unipotent_labels(si.n).map_err(EngineError::invalid)?;
            Ok(unipotent_payload(&set))
        }
        other => Err(EngineError::invalid(format!(
            "unknown symbols operation {other:?}"
        ))),
    }
}

/// Exit-code class of a result: negative findings exit 1.
pub fn is_negative(result: &ResultPayload) -> bool {
    matches!(
        result,
        ResultPayload::NoneFound { .. }
            | ResultPayload::Check { ok: false, .. }
            | ResultPayload::Invariant { invariant: false }
    )
}

pub fn render(file: &CertificateFile) -> String {
    to_canonical_json(file)
}

pub fn request_for(operation: &str, mode: Option<&str>, instance: InstanceFile) -> Request {
    Request {
        operation: operation.to_string(),
        mode: mode.map(|m| m.to_string()),
        instance,
    }
}
