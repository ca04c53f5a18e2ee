//! The bijection between 021-avoiding ascent sequences and Dyck paths.
//!
//! The forward map starts from `UD` and grows the path by one size per entry
//! `u_2, ..., u_n`; the inverse shrinks the path by one size per step,
//! emitting entries from `u_n` down to `u_2`. Both directions pick one of
//! four cases, and case `k` of the inverse undoes case `k` of the forward map.

mod forward;
mod inverse;

pub(crate) use forward::run_forward;
pub use forward::{forward, forward_step, forward_trace, ForwardStepRecord, ForwardTrace};
pub use inverse::{
    classify_inverse_case, inverse, inverse_step, inverse_trace, Emission, InverseStepRecord,
    InverseTrace,
};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::paths::{PathError, StepRef};
use crate::sequences::{Entry, SequenceError};

/// Which of the four cases a step falls in. Forward case `k` and inverse
/// case `k` are mutually inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Forward: `u_i = 0`, insert `UD` at the last peak vertex.
    /// Inverse: the last ascent is long.
    LastPeak,
    /// Forward: `u_i = u_{i-1} != 0`, elevate.
    /// Inverse: short last ascent and elevated.
    Elevate,
    /// Forward: `u_i = a + 1`, append `UD`.
    /// Inverse: short last ascent and ends with `UD`.
    AppendPeak,
    /// Forward: `u_i` in the allowable list, insert at a key downstep.
    /// Inverse: everything else.
    KeyDownstep,
}

impl Case {
    pub fn id(self) -> u8 {
        match self {
            Case::LastPeak => 1,
            Case::Elevate => 2,
            Case::AppendPeak => 3,
            Case::KeyDownstep => 4,
        }
    }
}

impl Serialize for Case {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("sequence is not 021-avoiding (position {position})")]
    Not021Avoiding { position: usize },
    #[error("entry {entry} is not allowed at position {position}")]
    EntryNotAllowed { position: usize, entry: Entry },
    #[error("path of size {path_size} does not match prefix of length {prefix_len}")]
    SizeMismatch { path_size: usize, prefix_len: usize },
    #[error("path is too small for an inverse step")]
    TooSmall,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl BijectionError {
    pub fn is_internal(&self) -> bool {
        matches!(self, BijectionError::InternalInvariant(_))
    }
}

pub(crate) fn internal(what: impl Into<String>) -> BijectionError {
    BijectionError::InternalInvariant(what.into())
}

pub(crate) fn internal_path(context: &str, e: PathError) -> BijectionError {
    BijectionError::InternalInvariant(format!("{context}: {e}"))
}

pub(crate) fn serialize_step_indices<S: Serializer>(
    refs: &[StepRef],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(refs.iter().map(|r| r.index))
}

pub(crate) fn serialize_opt_step_index<S: Serializer>(
    r: &Option<StepRef>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.index),
        None => s.serialize_none(),
    }
}
