//! Mechanical classification of rank-18 log Enriques surface types.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`enumerator`] lists candidate ADE configurations for each canonical
//!    index from the fixed-curve counting constraints.
//! 2. [`labeling`] assigns every curve of a configuration its mark
//!    (`f` fixed, `h` fixed by the square only, `s` stable) under the local
//!    rules for that index and counts the forced fixed points.
//! 3. [`lefschetz`] evaluates the holomorphic and topological Lefschetz
//!    identities in exact cyclotomic arithmetic ([`cyclotomic`]).
//! 4. [`realizability`] searches for label-preserving induced embeddings of
//!    each labeled configuration into the 24-curve host graphs of
//!    [`shioda_inose`].
//!
//! All values are immutable once built. With the `parallel` feature (on by
//! default) the batch entry points fan out over rayon; without it they run
//! sequentially and produce identical output.

pub mod cyclotomic;
pub mod dynkin;
pub mod enumerator;
mod error;
pub mod golden;
pub mod labeling;
pub mod lefschetz;
mod linalg;
mod par;
pub mod realizability;
pub mod shioda_inose;

pub use error::{Error, Result};
pub use par::Execution;

use serde::{Deserialize, Serialize};
use std::fmt;

/// Canonical index of a log Enriques surface, restricted to the values that
/// survive the transcendental-rank bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum CanonicalIndex {
    Two,
    Three,
    Four,
    Six,
}

impl CanonicalIndex {
    pub const ALL: [CanonicalIndex; 4] = [Self::Two, Self::Three, Self::Four, Self::Six];

    pub fn value(self) -> u32 {
        match self {
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
            Self::Six => 6,
        }
    }
}

impl TryFrom<u32> for CanonicalIndex {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        match value {
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            6 => Ok(Self::Six),
            other => Err(Error::UnsupportedIndex(other)),
        }
    }
}

impl From<CanonicalIndex> for u32 {
    fn from(index: CanonicalIndex) -> u32 {
        index.value()
    }
}

impl fmt::Display for CanonicalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Total rank of every configuration this crate classifies.
pub const TARGET_RANK: usize = 18;
