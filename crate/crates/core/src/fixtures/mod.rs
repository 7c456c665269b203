//! Concrete modules and operators used by the verifiers and the CLI.

mod heisenberg;
mod jordan;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use heisenberg::{build_fock, heis_intw, partitions, HeisenbergFamily, Partition, MAX_CUTOFF};
pub use jordan::{cyclic_vectors, jordan_module, operator_from_bilinear, random_log_family, trivial_algebra, JordanFamily};

pub use crate::fusion::{bundled_table, BUNDLED_TABLES};

use crate::error::{Error, Result};
use crate::graded::VertexAlgebra;
use crate::intertwining::LogIntwOp;
use crate::scalar::Q;

/// `heis:λ,μ` or `jordan:r,seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureSpec {
    Heis { lambda: Q, mu: Q },
    Jordan { r: u32, seed: u64 },
}

impl FromStr for FixtureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("fixture `{s}`: expected heis:λ,μ or jordan:r,seed"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let (a, b) = args.split_once(',').ok_or_else(bad)?;
        match kind.trim() {
            "heis" => Ok(FixtureSpec::Heis { lambda: a.trim().parse()?, mu: b.trim().parse()? }),
            "jordan" => Ok(FixtureSpec::Jordan {
                r: a.trim().parse().map_err(|_| bad())?,
                seed: b.trim().parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSpec::Heis { lambda, mu } => write!(f, "heis:{lambda},{mu}"),
            FixtureSpec::Jordan { r, seed } => write!(f, "jordan:{r},{seed}"),
        }
    }
}

/// An operator together with the algebra its modules are modules for.
pub struct Fixture {
    pub spec: FixtureSpec,
    pub alg: Arc<VertexAlgebra>,
    pub op: LogIntwOp,
    /// present for Heisenberg fixtures
    pub family: Option<Arc<HeisenbergFamily>>,
}

impl Fixture {
    /// Builds the fixture; `cutoff` is the Fock level cutoff (ignored for Jordan families).
    pub fn load(spec: &FixtureSpec, cutoff: u32) -> Result<Fixture> {
        match spec {
            FixtureSpec::Heis { lambda, mu } => {
                let fam = Arc::new(HeisenbergFamily::new(cutoff)?);
                let op = fam.intw(lambda, mu)?;
                Ok(Fixture { spec: spec.clone(), alg: fam.alg.clone(), op, family: Some(fam) })
            }
            FixtureSpec::Jordan { r, seed } => Ok(Fixture {
                spec: spec.clone(),
                alg: Arc::new(trivial_algebra()),
                op: random_log_family(&JordanFamily::new(*r, *seed))?,
                family: None,
            }),
        }
    }
}
