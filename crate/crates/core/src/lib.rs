//! A bijection between 021-avoiding ascent sequences and Dyck paths.
//!
//! * [`sequences`]: ascent sequences, 021-avoidance, enumeration, statistics.
//! * [`paths`]: Dyck paths, matching, key downsteps, edit primitives, rendering.
//! * [`bijection`]: the forward map, its inverse, and per-step traces.
//! * [`verify`]: exhaustive sweeps checking counts, round trips, statistics
//!   and structural invariants.
//!
//! ```
//! use ascent_dyck::{forward, inverse, parse_path, parse_sequence};
//!
//! let s = parse_sequence("0,1,0,1,2,2,0,3").unwrap();
//! let p = forward(&s).unwrap();
//! assert_eq!(p.to_string(), "UDUUUDUDUUDDUDDD");
//! assert_eq!(inverse(&parse_path("UDUUUDUDUUDDUDDD").unwrap()).unwrap(), s);
//! ```

pub mod bijection;
pub mod count;
pub mod paths;
pub mod sequences;
pub mod verify;

pub use bijection::{
    classify_inverse_case, forward, forward_step, forward_trace, inverse, inverse_step,
    inverse_trace, BijectionError, Case, Emission, ForwardStepRecord, ForwardTrace,
    InverseStepRecord, InverseTrace,
};
pub use count::{catalan, checked_catalan};
pub use paths::{
    enumerate_dyck_paths, parse_path, path_statistics, DyckPath, PathError, PathStats, Step,
    StepRef,
};
pub use sequences::{
    allowable_next_values, allowable_nonzero_values, contains_pattern_021_bruteforce,
    enumerate_021_avoiding, is_021_avoiding, parse_sequence, sequence_statistics,
    validate_ascent_sequence, AllowableList, AscentSequence, Entry, SequenceError, SequenceStats,
};
pub use verify::{VerifyConfig, VerifyError, VerifyReport};

/// Machine-width count used by the sweeps.
pub type Count = u64;

/// Exact count with no overflow ceiling.
pub type BigCount = num_bigint::BigUint;

/// `catalan` at machine width; exact for `n <= 35`.
pub fn catalan_u64(n: usize) -> Count {
    catalan::<Count>(n)
}

pub fn catalan_big(n: usize) -> BigCount {
    catalan::<BigCount>(n)
}
