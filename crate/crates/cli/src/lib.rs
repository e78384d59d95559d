//! Harness around the exact-arithmetic core: JSON instance formats, a
//! command-line front end, embedded fixtures, brute-force oracles and a
//! synthetic tower generator.

pub mod engine;
pub mod fixtures;
pub mod io;
pub mod oracle;
pub mod plant;
