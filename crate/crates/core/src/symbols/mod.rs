//! Combinatorial labelling machinery for characters of GL_n(q) and
//! GU_n(q): partitions, roots of unity prime to p, admissible symbols,
//! their automorphism actions, the subfield bijection, the basic-set
//! transform, and the unipotent labels of the symplectic groups.

pub mod basic_set;
pub mod partition;
pub mod root;
pub mod symbol;
pub mod unipotent;

pub use basic_set::{denoncin_basic_set, transform_symbol, BasicSetError};
pub use partition::{partitions_of, Partition, PartitionError};
pub use root::{deg_eps_q, FrobOrbit, PPrimeRoot, RootError};
pub use symbol::{
    ell_part, enumerate_symbols, is_prime, transform_gcd, AdmissibleSymbol, Eps,
    SymbolContext, SymbolError,
};
pub use unipotent::{unipotent_labels, UnipotentError, UnipotentLabel, UnipotentSet};
