//! Admissible symbols labelling the irreducible characters of GL_n(q) and
//! GU_n(q), together with the automorphism actions on them.
//!
//! A symbol is a multiset of (orbit, partition) pairs with pairwise
//! distinct orbits whose degree-weighted partition sizes sum to n.  The
//! orbit is taken under multiplication by eps*q on roots of unity of order
//! prime to p; its size is the degree of the corresponding semisimple
//! eigenvalue over F_q.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::partition::{gcd, partitions_of, Partition, PartitionError};
use super::root::{deg_eps_q, FrobOrbit, PPrimeRoot, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("symbol pairs must carry non-empty partitions")]
    EmptyPartition,
    #[error("orbit {0} occurs twice in the symbol")]
    DuplicateOrbit(String),
    #[error("degree-weighted sizes sum to {got}, expected n = {expected}")]
    WeightMismatch { got: u64, expected: u64 },
    #[error("enumeration guard exceeded: estimated {estimate} symbols, bound {max}")]
    EnumerationGuard { estimate: u128, max: u64 },
    #[error("linear shift of order {order} does not divide q - eps = {expected}")]
    BadLinearShift { order: u64, expected: u64 },
    #[error("malformed subfield exponent: {0}")]
    MalformedExponent(String),
    #[error("symbol is not invariant under the subfield action")]
    NotInvariant,
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

/// Sign distinguishing the linear (+1) from the unitary (-1) groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self, SymbolError> {
        match sign {
            1 => Ok(Eps::Plus),
            -1 => Ok(Eps::Minus),
            other => Err(SymbolError::InvalidContext(format!(
                "eps must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eps::Plus => write!(f, "+1"),
            Eps::Minus => write!(f, "-1"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The (n, eps, q, p) frame a symbol lives in; q is a power of the
/// defining characteristic p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolContext {
    pub n: u64,
    pub eps: Eps,
    pub q: u64,
    pub p: u64,
}

impl SymbolContext {
    pub fn new(n: u64, eps: Eps, q: u64, p: u64) -> Result<Self, SymbolError> {
        if n == 0 {
            return Err(SymbolError::InvalidContext("n must be positive".into()));
        }
        if !is_prime(p) {
            return Err(SymbolError::InvalidContext(format!("p = {p} is not prime")));
        }
        let ctx = Self { n, eps, q, p };
        ctx.field_exponent()?;
        Ok(ctx)
    }

    /// f with q = p^f.
    pub fn field_exponent(&self) -> Result<u64, SymbolError> {
        let mut f = 0;
        let mut acc: u64 = 1;
        while acc < self.q {
            acc = acc.checked_mul(self.p).ok_or_else(|| {
                SymbolError::InvalidContext(format!("q = {} overflows", self.q))
            })?;
            f += 1;
        }
        if acc != self.q || f == 0 {
            return Err(SymbolError::InvalidContext(format!(
                "q = {} is not a positive power of p = {}",
                self.q, self.p
            )));
        }
        Ok(f)
    }

    pub fn eps_q(&self) -> i64 {
        self.eps.sign() * self.q as i64
    }

    /// q - eps as a positive integer: q - 1 in the linear case, q + 1 in
    /// the unitary case.
    pub fn q_minus_eps(&self) -> u64 {
        match self.eps {
            Eps::Plus => self.q - 1,
            Eps::Minus => self.q + 1,
        }
    }

    /// Parameters of the fixed field of the subfield automorphism with
    /// exponent e: the twisted form (graph automorphism composed with the
    /// field map) applies exactly in the unitary case and needs e even.
    /// Returns (q0, s) with q = q0^s and eps*q = (eps*q0)^s.
    pub fn fixed_field(&self, e: u64, gamma: bool) -> Result<(u64, u64), SymbolError> {
        let f = self.field_exponent()?;
        if e == 0 {
            return Err(SymbolError::MalformedExponent("e must be positive".into()));
        }
        match (self.eps, gamma) {
            (Eps::Plus, true) => Err(SymbolError::MalformedExponent(
                "graph twist is only defined for eps = -1".into(),
            )),
            (Eps::Minus, false) => Err(SymbolError::MalformedExponent(
                "eps = -1 requires the graph-twisted subfield map".into(),
            )),
            (Eps::Plus, false) => {
                if f % e != 0 {
                    return Err(SymbolError::MalformedExponent(format!(
                        "e = {e} does not divide f = {f}"
                    )));
                }
                Ok((self.p.pow(e as u32), f / e))
            }
            (Eps::Minus, true) => {
                if e % 2 != 0 {
                    return Err(SymbolError::MalformedExponent(format!(
                        "twisted case requires even e, got {e}"
                    )));
                }
                let half = e / 2;
                if f % half != 0 {
                    return Err(SymbolError::MalformedExponent(format!(
                        "e/2 = {half} does not divide f = {f}"
                    )));
                }
                let s = f / half;
                if s % 2 == 0 {
                    return Err(SymbolError::MalformedExponent(format!(
                        "2f/e = {s} must be odd in the twisted case"
                    )));
                }
                Ok((self.p.pow(half as u32), s))
            }
        }
    }
}

impl fmt::Display for SymbolContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, q={}, p={})", self.n, self.eps, self.q, self.p)
    }
}

/// Canonical multiset of (orbit, partition) pairs labelling one
/// irreducible character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSymbol {
    ctx: SymbolContext,
    pairs: Vec<(FrobOrbit, Partition)>,
}

impl AdmissibleSymbol {
    /// Canonicalizes roots into orbits, sorts the pairs and checks
    /// admissibility: orders prime to p, pairwise distinct orbits,
    /// non-empty partitions, degree-weighted sizes summing to n.
    pub fn new(
        ctx: SymbolContext,
        pairs: Vec<(PPrimeRoot, Partition)>,
    ) -> Result<Self, SymbolError> {
        let eq = ctx.eps_q();
        let mut canonical = Vec::with_capacity(pairs.len());
        for (root, mu) in pairs {
            root.check_prime_to(ctx.p)?;
            if mu.is_empty() {
                return Err(SymbolError::EmptyPartition);
            }
            canonical.push((FrobOrbit::of(&root, eq), mu));
        }
        canonical.sort();
        for w in canonical.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SymbolError::DuplicateOrbit(w[0].0.to_string()));
            }
        }
        let got = canonical
            .iter()
            .map(|(orbit, mu)| orbit.size() * mu.size())
            .sum::<u64>();
        if got != ctx.n {
            return Err(SymbolError::WeightMismatch {
                got,
                expected: ctx.n,
            });
        }
        Ok(Self {
            ctx,
            pairs: canonical,
        })
    }

    pub fn context(&self) -> &SymbolContext {
        &self.ctx
    }

    pub fn pairs(&self) -> &[(FrobOrbit, Partition)] {
        &self.pairs
    }

    /// All symbol roots have order prime to ell.
    pub fn is_ell_regular(&self, ell: u64) -> bool {
        self.pairs
            .iter()
            .all(|(orbit, _)| orbit.rep().order() % ell != 0)
    }

    fn map_roots(
        &self,
        f: impl Fn(&PPrimeRoot) -> PPrimeRoot,
    ) -> Result<AdmissibleSymbol, SymbolError> {
        let pairs = self
            .pairs
            .iter()
            .map(|(orbit, mu)| (f(orbit.rep()), mu.clone()))
            .collect();
        AdmissibleSymbol::new(self.ctx, pairs)
    }

    /// Field automorphism: raises every root to the p^k-th power.
    pub fn act_frobenius(&self, k: u64) -> Result<AdmissibleSymbol, SymbolError> {
        let p = self.ctx.p;
        self.map_roots(|root| root.power_pow(p, k))
    }

    /// Duality: inverts every root.  An involution.
    pub fn act_dual(&self) -> Result<AdmissibleSymbol, SymbolError> {
        self.map_roots(|root| root.inverse())
    }

    /// Multiplication by a linear character, given as the scalar z whose
    /// order must divide q - eps.
    pub fn act_linear(&self, z: &PPrimeRoot) -> Result<AdmissibleSymbol, SymbolError> {
        let expected = self.ctx.q_minus_eps();
        if expected % z.order() != 0 {
            return Err(SymbolError::BadLinearShift {
                order: z.order(),
                expected,
            });
        }
        self.map_roots(|root| root.mul(z))
    }

    /// Whether the labelled character is fixed by the subfield
    /// automorphism: the multiset of pairs must be stable under raising
    /// roots to the (eps*q0)-th power.
    pub fn is_invariant(&self, e: u64, gamma: bool) -> Result<bool, SymbolError> {
        let (q0, _) = self.ctx.fixed_field(e, gamma)?;
        let eq0 = self.ctx.eps.sign() * q0 as i64;
        let moved = self.map_roots(|root| root.power(eq0))?;
        Ok(moved.pairs == self.pairs)
    }

    /// Regroups an invariant symbol over q into the symbol over the fixed
    /// subfield q0: the (eps*q)-orbits merging into one (eps*q0)-orbit all
    /// carry the same partition, and each such class yields one pair.
    pub fn xi(&self, e: u64, gamma: bool) -> Result<AdmissibleSymbol, SymbolError> {
        if !self.is_invariant(e, gamma)? {
            return Err(SymbolError::NotInvariant);
        }
        let (q0, _) = self.ctx.fixed_field(e, gamma)?;
        let eq = self.ctx.eps_q();
        let eq0 = self.ctx.eps.sign() * q0 as i64;
        let mut remaining: BTreeMap<FrobOrbit, Partition> =
            self.pairs.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((orbit, mu)) = remaining.pop_first() {
            let merged = FrobOrbit::of(orbit.rep(), eq0);
            for member in merged.members(eq0) {
                let sub = FrobOrbit::of(&member, eq);
                if sub == orbit {
                    continue;
                }
                match remaining.remove(&sub) {
                    Some(part) if part == mu => {}
                    Some(_) => {
                        return Err(SymbolError::Inconsistent(format!(
                            "orbit {sub} carries a different partition than {orbit}"
                        )))
                    }
                    None => {
                        return Err(SymbolError::Inconsistent(format!(
                            "orbit {sub} missing from an invariant symbol"
                        )))
                    }
                }
            }
            out.push((*merged.rep(), mu));
        }
        let ctx0 = SymbolContext::new(self.ctx.n, self.ctx.eps, q0, self.ctx.p)?;
        AdmissibleSymbol::new(ctx0, out)
    }
}

impl PartialOrd for AdmissibleSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.pairs.cmp(&other.pairs)
    }
}

impl fmt::Display for AdmissibleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (orbit, mu)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({orbit}, {mu})")?;
        }
        write!(f, "]")
    }
}

/// Orbit representatives of every root whose degree over the context is at
/// most n, grouped nothing: a flat canonical list.
fn orbit_reps_up_to_degree(ctx: &SymbolContext) -> Result<Vec<FrobOrbit>, SymbolError> {
    let eq = ctx.eps_q();
    let mut deg_cache: BTreeMap<u64, u64> = BTreeMap::new();
    let mut orbits = Vec::new();
    for d in 1..=ctx.n {
        let nd_signed = (eq as i128).pow(d as u32) - 1;
        let nd = nd_signed.unsigned_abs();
        let nd = u64::try_from(nd).map_err(|_| SymbolError::EnumerationGuard {
            estimate: nd_signed.unsigned_abs(),
            max: u64::MAX,
        })?;
        for a in 0..nd {
            let root = PPrimeRoot::new(a, nd)?;
            let deg = *deg_cache
                .entry(root.order())
                .or_insert_with(|| deg_eps_q(&root, eq));
            if deg != d {
                continue;
            }
            let orbit = FrobOrbit::of(&root, eq);
            if orbit.rep() == &root {
                orbits.push(orbit);
            }
        }
    }
    orbits.sort();
    Ok(orbits)
}

/// All (n, eps*q)-admissible symbols in canonical order.
///
/// The guard bounds the enumeration: the symbol count matches the
/// conjugacy-class count of the underlying group, which grows like q^n,
/// so contexts with q^n beyond the bound are rejected up front.
pub fn enumerate_symbols(
    ctx: &SymbolContext,
    max_symbols: u64,
) -> Result<Vec<AdmissibleSymbol>, SymbolError> {
    let estimate = (ctx.q as u128)
        .checked_pow(ctx.n as u32)
        .unwrap_or(u128::MAX);
    if estimate > max_symbols as u128 {
        return Err(SymbolError::EnumerationGuard {
            estimate,
            max: max_symbols,
        });
    }
    let orbits = orbit_reps_up_to_degree(ctx)?;
    let partition_cache: Vec<Vec<Partition>> =
        (0..=ctx.n).map(partitions_of).collect();

    let mut out = Vec::new();
    let mut current: Vec<(PPrimeRoot, Partition)> = Vec::new();
    fn assign(
        ctx: &SymbolContext,
        orbits: &[FrobOrbit],
        partition_cache: &[Vec<Partition>],
        idx: usize,
        remaining: u64,
        current: &mut Vec<(PPrimeRoot, Partition)>,
        out: &mut Vec<AdmissibleSymbol>,
        max_symbols: u64,
    ) -> Result<(), SymbolError> {
        if remaining == 0 {
            if out.len() as u64 >= max_symbols {
                return Err(SymbolError::EnumerationGuard {
                    estimate: out.len() as u128 + 1,
                    max: max_symbols,
                });
            }
            out.push(AdmissibleSymbol::new(*ctx, current.clone())?);
            return Ok(());
        }
        if idx == orbits.len() {
            return Ok(());
        }
        // skip this orbit
        assign(
            ctx,
            orbits,
            partition_cache,
            idx + 1,
            remaining,
            current,
            out,
            max_symbols,
        )?;
        let deg = orbits[idx].size();
        let mut w = 1;
        while deg * w <= remaining {
            for mu in &partition_cache[w as usize] {
                current.push((*orbits[idx].rep(), mu.clone()));
                assign(
                    ctx,
                    orbits,
                    partition_cache,
                    idx + 1,
                    remaining - deg * w,
                    current,
                    out,
                    max_symbols,
                )?;
                current.pop();
            }
            w += 1;
        }
        Ok(())
    }
    assign(
        ctx,
        &orbits,
        &partition_cache,
        0,
        ctx.n,
        &mut current,
        &mut out,
        max_symbols,
    )?;
    out.sort();
    Ok(out)
}

/// The ell-part of an integer: the largest power of ell dividing it.
pub fn ell_part(value: u64, ell: u64) -> u64 {
    if value == 0 {
        return 1;
    }
    let mut rest = value;
    let mut part = 1;
    while rest % ell == 0 {
        rest /= ell;
        part *= ell;
    }
    part
}

/// gcd of q - eps and the transposed-partition gcds of all pairs, used to
/// pick the shift order of the basic-set transform.
pub fn transform_gcd(symbol: &AdmissibleSymbol) -> u64 {
    symbol
        .pairs()
        .iter()
        .fold(symbol.context().q_minus_eps(), |acc, (_, mu)| {
            gcd(acc, mu.transpose().delta())
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u64, eps: Eps, q: u64, p: u64) -> SymbolContext {
        SymbolContext::new(n, eps, q, p).unwrap()
    }

    fn part(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn context_rejects_non_power() {
        assert!(SymbolContext::new(2, Eps::Plus, 6, 2).is_err());
        assert!(SymbolContext::new(2, Eps::Plus, 8, 2).is_ok());
        assert!(SymbolContext::new(2, Eps::Plus, 8, 4).is_err());
    }

    #[test]
    fn symbol_weight_must_match_n() {
        let c = ctx(2, Eps::Plus, 2, 2);
        let err =
            AdmissibleSymbol::new(c, vec![(PPrimeRoot::one(), part(&[1]))]).unwrap_err();
        assert_eq!(
            err,
            SymbolError::WeightMismatch {
                got: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn symbol_rejects_duplicate_orbits() {
        let c = ctx(2, Eps::Plus, 2, 2);
        // 1/3 and 2/3 lie in the same orbit under multiplication by 2
        let err = AdmissibleSymbol::new(
            c,
            vec![
                (PPrimeRoot::new(1, 3).unwrap(), part(&[1])),
                (PPrimeRoot::new(2, 3).unwrap(), part(&[1])),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, SymbolError::DuplicateOrbit(_)));
    }

    #[test]
    fn gl1_symbol_count_is_q_minus_one() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let p = (2..=q).find(|&d| q % d == 0).unwrap();
            let c = ctx(1, Eps::Plus, q, p);
            let symbols = enumerate_symbols(&c, 1_000_000).unwrap();
            assert_eq!(symbols.len() as u64, q - 1, "q = {q}");
        }
    }

    #[test]
    fn gl2_f2_has_three_symbols() {
        let symbols = enumerate_symbols(&ctx(2, Eps::Plus, 2, 2), 1_000_000).unwrap();
        assert_eq!(symbols.len(), 3);
    }

    #[test]
    fn gl2_f3_has_eight_symbols() {
        let symbols = enumerate_symbols(&ctx(2, Eps::Plus, 3, 3), 1_000_000).unwrap();
        assert_eq!(symbols.len(), 8);
    }

    #[test]
    fn gl3_f2_has_six_symbols() {
        let symbols = enumerate_symbols(&ctx(3, Eps::Plus, 2, 2), 1_000_000).unwrap();
        assert_eq!(symbols.len(), 6);
    }

    #[test]
    fn gu2_f2_has_nine_symbols() {
        let symbols = enumerate_symbols(&ctx(2, Eps::Minus, 2, 2), 1_000_000).unwrap();
        assert_eq!(symbols.len(), 9);
    }

    #[test]
    fn enumeration_guard_rejects_large_contexts() {
        let c = ctx(2, Eps::Plus, 3, 3);
        assert!(matches!(
            enumerate_symbols(&c, 4),
            Err(SymbolError::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn frobenius_zero_is_identity() {
        for s in enumerate_symbols(&ctx(2, Eps::Plus, 3, 3), 1_000_000).unwrap() {
            assert_eq!(s.act_frobenius(0).unwrap(), s);
        }
    }

    #[test]
    fn dual_is_involution() {
        for s in enumerate_symbols(&ctx(2, Eps::Plus, 3, 3), 1_000_000).unwrap() {
            assert_eq!(s.act_dual().unwrap().act_dual().unwrap(), s);
        }
    }

    #[test]
    fn linear_shift_of_order_two_negates() {
        // z = 1/2 sends the trivial-root pair to the half-twist pair
        let c = ctx(2, Eps::Plus, 3, 3);
        let s = AdmissibleSymbol::new(c, vec![(PPrimeRoot::one(), part(&[2]))]).unwrap();
        let z = PPrimeRoot::new(1, 2).unwrap();
        let shifted = s.act_linear(&z).unwrap();
        assert_eq!(shifted.pairs()[0].0.rep(), &z);
        assert_eq!(shifted.pairs()[0].1, part(&[2]));
    }

    #[test]
    fn linear_shift_rejects_wrong_order() {
        let c = ctx(2, Eps::Plus, 3, 3);
        let s = AdmissibleSymbol::new(c, vec![(PPrimeRoot::one(), part(&[2]))]).unwrap();
        let z = PPrimeRoot::new(1, 5).unwrap();
        assert!(matches!(
            s.act_linear(&z),
            Err(SymbolError::BadLinearShift { .. })
        ));
    }

    #[test]
    fn actions_preserve_admissibility_on_small_contexts() {
        for (n, eps, q, p) in [
            (2, Eps::Plus, 2, 2),
            (2, Eps::Plus, 3, 3),
            (3, Eps::Plus, 2, 2),
            (2, Eps::Minus, 2, 2),
        ] {
            let c = ctx(n, eps, q, p);
            let shift_orders: Vec<u64> = (1..=c.q_minus_eps())
                .filter(|d| c.q_minus_eps() % d == 0)
                .collect();
            for s in enumerate_symbols(&c, 1_000_000).unwrap() {
                s.act_frobenius(1).unwrap();
                s.act_dual().unwrap();
                for &m in &shift_orders {
                    let z = PPrimeRoot::new(1, m).unwrap();
                    s.act_linear(&z).unwrap();
                }
            }
        }
    }

    #[test]
    fn invariants_of_gl2_q32() {
        let c = ctx(2, Eps::Plus, 32, 2);
        let symbols = enumerate_symbols(&c, 1_000_000).unwrap();
        assert_eq!(symbols.len(), 1023);
        let invariant: Vec<_> = symbols
            .iter()
            .filter(|s| s.is_invariant(1, false).unwrap())
            .collect();
        assert_eq!(invariant.len(), 3);
        // order-31 roots are moved by the subfield map
        let sigma = PPrimeRoot::new(1, 31).unwrap();
        let moved =
            AdmissibleSymbol::new(c, vec![(sigma, part(&[1, 1]))]).unwrap();
        assert!(!moved.is_invariant(1, false).unwrap());
    }

    #[test]
    fn xi_is_a_bijection_onto_the_subfield_symbols() {
        let c = ctx(2, Eps::Plus, 32, 2);
        let invariant: Vec<_> = enumerate_symbols(&c, 1_000_000)
            .unwrap()
            .into_iter()
            .filter(|s| s.is_invariant(1, false).unwrap())
            .collect();
        let mut images: Vec<_> = invariant.iter().map(|s| s.xi(1, false).unwrap()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), invariant.len());
        let c0 = ctx(2, Eps::Plus, 2, 2);
        let expected = enumerate_symbols(&c0, 1_000_000).unwrap();
        assert_eq!(images, expected);
    }

    #[test]
    fn xi_on_gl1_tower() {
        let c = ctx(1, Eps::Plus, 32, 2);
        let invariant: Vec<_> = enumerate_symbols(&c, 1_000_000)
            .unwrap()
            .into_iter()
            .filter(|s| s.is_invariant(1, false).unwrap())
            .collect();
        assert_eq!(invariant.len(), 1);
        let expected = enumerate_symbols(&ctx(1, Eps::Plus, 2, 2), 1_000_000).unwrap();
        let images: Vec<_> = invariant.iter().map(|s| s.xi(1, false).unwrap()).collect();
        assert_eq!(images, expected);
    }

    #[test]
    fn xi_preserves_weight_on_order_three_orbit() {
        // orbit of the order-3 root has degree 2 both over q = 32 and q = 2
        let c = ctx(2, Eps::Plus, 32, 2);
        let omega = PPrimeRoot::new(1, 3).unwrap();
        let s = AdmissibleSymbol::new(c, vec![(omega, part(&[1]))]).unwrap();
        assert_eq!(s.pairs()[0].0.size(), 2);
        assert!(s.is_invariant(1, false).unwrap());
        let image = s.xi(1, false).unwrap();
        assert_eq!(image.context().q, 2);
        assert_eq!(image.pairs()[0].0.size(), 2);
    }

    #[test]
    fn xi_rejects_non_invariant_input() {
        let c = ctx(2, Eps::Plus, 32, 2);
        let sigma = PPrimeRoot::new(1, 31).unwrap();
        let s = AdmissibleSymbol::new(c, vec![(sigma, part(&[2]))]).unwrap();
        assert_eq!(s.xi(1, false).unwrap_err(), SymbolError::NotInvariant);
    }

    #[test]
    fn twisted_fixed_field_requires_even_exponent() {
        let c = ctx(2, Eps::Minus, 8, 2);
        assert!(c.fixed_field(3, true).is_err());
        // e = 2: q0 = 2, s = 3 odd
        assert_eq!(c.fixed_field(2, true).unwrap(), (2, 3));
        assert!(c.fixed_field(2, false).is_err());
    }

    #[test]
    fn twisted_invariance_on_gu2() {
        let c = ctx(2, Eps::Minus, 8, 2);
        let symbols = enumerate_symbols(&c, 1_000_000).unwrap();
        let invariant: Vec<_> = symbols
            .iter()
            .filter(|s| s.is_invariant(2, true).unwrap())
            .collect();
        let expected = enumerate_symbols(&ctx(2, Eps::Minus, 2, 2), 1_000_000).unwrap();
        assert_eq!(invariant.len(), expected.len());
        let mut images: Vec<_> = invariant.iter().map(|s| s.xi(2, true).unwrap()).collect();
        images.sort();
        assert_eq!(images, expected);
    }
}
