//! The basic-set transform on admissible symbols: starting from the
//! symbols whose roots have order prime to ell, each symbol is spread
//! across the powers of a root w of ell-power order while the partition
//! multiplicities shrink by the same factor.

use thiserror::Error;

use super::partition::Partition;
use super::root::PPrimeRoot;
use super::symbol::{
    ell_part, enumerate_symbols, is_prime, transform_gcd, AdmissibleSymbol, SymbolContext,
    SymbolError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasicSetError {
    #[error("ell = {0} must be a prime different from p")]
    BadEll(u64),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("transform produced a duplicate symbol: {0}")]
    DuplicateSymbol(String),
}

/// Applies the shift-and-divide step to one symbol.
///
/// The shift order ld is the ell-part of gcd(q - eps, delta of each
/// transposed partition).  Each pair ([sigma], mu) becomes the ld pairs
/// ([sigma w^j], mu / ld) for j = 0..ld, where w = 1/ld.  The pair count
/// per original pair must equal ld, otherwise the degree-weighted sum of
/// the result would no longer be n; with ld = 1 the symbol is unchanged.
pub fn transform_symbol(
    symbol: &AdmissibleSymbol,
    ell: u64,
) -> Result<AdmissibleSymbol, BasicSetError> {
    let ld = ell_part(transform_gcd(symbol), ell);
    if ld == 1 {
        return Ok(symbol.clone());
    }
    let w = PPrimeRoot::new(1, ld).expect("ld >= 2");
    let mut pairs: Vec<(PPrimeRoot, Partition)> = Vec::new();
    for (orbit, mu) in symbol.pairs() {
        let divided = mu.divide(ld).map_err(SymbolError::from)?;
        for j in 0..ld {
            pairs.push((orbit.rep().mul(&w.power(j as i64)), divided.clone()));
        }
    }
    Ok(AdmissibleSymbol::new(*symbol.context(), pairs)?)
}

/// The transformed basic set: all ell-regular symbols of the context,
/// each pushed through [`transform_symbol`], in canonical order.
pub fn denoncin_basic_set(
    ctx: &SymbolContext,
    ell: u64,
    max_symbols: u64,
) -> Result<Vec<AdmissibleSymbol>, BasicSetError> {
    if !is_prime(ell) || ell == ctx.p {
        return Err(BasicSetError::BadEll(ell));
    }
    let mut out = Vec::new();
    for symbol in enumerate_symbols(ctx, max_symbols)? {
        if !symbol.is_ell_regular(ell) {
            continue;
        }
        out.push(transform_symbol(&symbol, ell)?);
    }
    out.sort();
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(BasicSetError::DuplicateSymbol(w[0].to_string()));
        }
    }
    Ok(out)
}
