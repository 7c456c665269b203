//! Exact logarithmic formal calculus and intertwining-map machinery.
//!
//! * [`series`] — sparse truncated `x^n (log x)^k` series, deltas, residues, substitution.
//! * [`symbolic`] — exact bookkeeping of `e^{n l_p(z)}` and `l_p(z)^k`.
//! * [`graded`] — doubly graded generalized modules, contragredients, `Y°`.
//! * [`intertwining`] — logarithmic intertwining operators, P(z)/Q(z)-maps and their verifiers.
//! * [`fusion`] — fusion-rule calculators.
//! * [`fixtures`] — Heisenberg Fock modules, Jordan-block families, fusion tables.

pub mod error;
pub mod scalar;
pub mod series;
pub mod symbolic;
pub mod report;
pub mod graded;
pub mod intertwining;
pub mod fusion;
pub mod fixtures;
pub mod io;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{ExactComplex, NumericComplex, Q};
