//! Weyl-invariant building sets for the root arrangements of types A, B and
//! D, and Poincaré polynomials of their wonderful models.
//!
//! The crate is organised bottom-up:
//!
//! - [`qpoly`]: exact polynomials in `q`, truncated series, Stirling numbers
//!   and the `f`, `f̃`, `h` factories.
//! - [`partitions`]: partitions, the admissible-move orders and the posets
//!   of building partitions.
//! - [`arrangements`]: subspaces, building sets, sums and nestedness.
//! - [`oracle`]: brute-force enumeration of nested sets and admissible
//!   monomials, the independent ground truth.
//! - [`series`]: the generating functions for minimal models.
//! - [`formulas`]: closed, inductive and interpolation formulas, plus the
//!   Euler characteristic identities.

pub mod arrangements;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod oracle;
pub mod partitions;
pub mod qpoly;
pub mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use arrangements::{BuildingSet, Subspace};
pub use error::{Error, Result};
pub use partitions::{Form, Partition, PartitionPoset, Sign, SingularPartition};
pub use qpoly::{QPoly, TruncatedSeries};
pub use series::DReading;

/// Arrangement kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    D,
    Boolean,
    Generic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::D => "D",
            Kind::Boolean => "boolean",
            Kind::Generic => "generic",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Kind::A),
            "b" | "c" => Ok(Kind::B),
            "d" => Ok(Kind::D),
            "boolean" | "bool" | "bo" => Ok(Kind::Boolean),
            "generic" => Ok(Kind::Generic),
            _ => Err(Error::Parse(format!("unknown kind '{s}'"))),
        }
    }
}
