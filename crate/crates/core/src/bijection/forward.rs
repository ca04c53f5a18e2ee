use serde::{Serialize, Serializer};

use super::{internal, internal_path, serialize_step_indices, BijectionError, Case};
use crate::paths::{DyckPath, StepRef};
use crate::sequences::{
    allowable_from_parts, first_021_violation, AllowableList, AscentSequence, Entry,
};

/// One forward step: entry `u_i` turned the path of size `i - 1` into the
/// path of size `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardStepRecord {
    pub position: usize,
    pub entry: Entry,
    #[serde(rename = "case")]
    pub case_id: Case,
    /// The allowable list `A_i` (key-downstep case only).
    #[serde(serialize_with = "serialize_allowable")]
    pub allowable: Option<AllowableList>,
    /// 1-based position of the entry in `allowable`.
    pub j: Option<usize>,
    /// Degree of elevation of the path before the step.
    pub e: Option<usize>,
    /// Key downsteps of the path before the step, left to right.
    #[serde(serialize_with = "serialize_step_indices")]
    pub key_downsteps_before: Vec<StepRef>,
    pub path_after: DyckPath,
}

fn serialize_allowable<S: Serializer>(a: &Option<AllowableList>, s: S) -> Result<S::Ok, S::Error> {
    match a {
        Some(a) => s.collect_seq(a.values()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardTrace {
    pub initial: DyckPath,
    pub records: Vec<ForwardStepRecord>,
}

impl ForwardTrace {
    pub fn final_path(&self) -> &DyckPath {
        self.records
            .last()
            .map(|r| &r.path_after)
            .unwrap_or(&self.initial)
    }

    /// The initial path followed by every intermediate path.
    pub fn paths(&self) -> impl Iterator<Item = &DyckPath> {
        std::iter::once(&self.initial).chain(self.records.iter().map(|r| &r.path_after))
    }
}

/// Running summary of the prefix consumed so far.
#[derive(Debug, Clone, Copy)]
struct PrefixState {
    len: usize,
    last: Entry,
    max: Entry,
    ascents: usize,
}

impl PrefixState {
    fn of(prefix: &AscentSequence) -> Self {
        PrefixState {
            len: prefix.len(),
            last: prefix.last(),
            max: prefix.max_entry(),
            ascents: prefix.ascent_count(),
        }
    }

    fn push(&mut self, u: Entry) {
        if self.last < u {
            self.ascents += 1;
        }
        self.last = u;
        self.max = self.max.max(u);
        self.len += 1;
    }
}

#[derive(Debug, Clone)]
struct StepDetail {
    case: Case,
    allowable: Option<AllowableList>,
    j: Option<usize>,
    e: Option<usize>,
    keys: Option<Vec<StepRef>>,
}

/// What an observer sees for each forward step.
pub(crate) struct ForwardObservation<'a> {
    pub position: usize,
    pub entry: Entry,
    pub case: Case,
    pub allowable: Option<&'a AllowableList>,
    pub j: Option<usize>,
    pub e: Option<usize>,
    /// Key downsteps of `before`, computed only in the key-downstep case.
    pub keys: Option<&'a [StepRef]>,
    pub before: &'a DyckPath,
    pub after: &'a DyckPath,
}

fn apply(
    p: &DyckPath,
    state: &PrefixState,
    u: Entry,
) -> Result<(DyckPath, StepDetail), BijectionError> {
    let position = state.len + 1;
    let plain = |case, path| {
        Ok((
            path,
            StepDetail {
                case,
                allowable: None,
                j: None,
                e: None,
                keys: None,
            },
        ))
    };
    if u == 0 {
        let v = p.last_peak_vertex();
        let q = p
            .insert_ud_at_vertex(v)
            .map_err(|e| internal_path("insert at last peak", e))?;
        return plain(Case::LastPeak, q);
    }
    if u == state.last {
        return plain(Case::Elevate, p.elevate());
    }
    if u as usize == state.ascents + 1 {
        return plain(Case::AppendPeak, p.append_peak());
    }

    let allowable = allowable_from_parts(state.last, state.max, state.ascents);
    let j = allowable
        .position(u)
        .ok_or(BijectionError::EntryNotAllowed { position, entry: u })?;
    let keys = p.key_downsteps();
    if keys.len() != allowable.len() {
        return Err(internal(format!(
            "allowable list {allowable} has {} values but path {p} has {} key downsteps",
            allowable.len(),
            keys.len()
        )));
    }
    let e = p
        .degree_of_elevation()
        .ok_or_else(|| internal(format!("key-downstep case reached with pyramid {p}")))?;
    let key = keys[j - 1];
    let partner = p
        .match_of_downstep(key)
        .map_err(|err| internal_path("matching key downstep", err))?;
    let inserted = p
        .insert_ud_at_vertex(key.index - 1)
        .map_err(|err| internal_path("insert at key downstep", err))?;
    // the partner lies left of the insertion point, so its index is unchanged
    let q = inserted
        .transfer_upsteps_from_front(e, partner)
        .map_err(|err| internal_path("transfer from front", err))?;
    Ok((
        q,
        StepDetail {
            case: Case::KeyDownstep,
            allowable: Some(allowable),
            j: Some(j),
            e: Some(e),
            keys: Some(keys),
        },
    ))
}

/// Drives the forward map, reporting every step to `observe`.
pub(crate) fn run_forward<F>(
    seq: &AscentSequence,
    mut observe: F,
) -> Result<DyckPath, BijectionError>
where
    F: FnMut(&ForwardObservation<'_>),
{
    if let Some(position) = first_021_violation(seq.entries()) {
        return Err(BijectionError::Not021Avoiding { position });
    }
    let entries = seq.entries();
    let mut path = DyckPath::unit();
    let mut state = PrefixState {
        len: 1,
        last: entries[0],
        max: entries[0],
        ascents: 0,
    };
    for &u in &entries[1..] {
        let (next, detail) = apply(&path, &state, u)?;
        observe(&ForwardObservation {
            position: state.len + 1,
            entry: u,
            case: detail.case,
            allowable: detail.allowable.as_ref(),
            j: detail.j,
            e: detail.e,
            keys: detail.keys.as_deref(),
            before: &path,
            after: &next,
        });
        path = next;
        state.push(u);
    }
    Ok(path)
}

/// Image of a 021-avoiding ascent sequence.
pub fn forward(seq: &AscentSequence) -> Result<DyckPath, BijectionError> {
    run_forward(seq, |_| {})
}

pub fn forward_trace(seq: &AscentSequence) -> Result<ForwardTrace, BijectionError> {
    let mut records = Vec::with_capacity(seq.len().saturating_sub(1));
    run_forward(seq, |obs| {
        records.push(ForwardStepRecord {
            position: obs.position,
            entry: obs.entry,
            case_id: obs.case,
            allowable: obs.allowable.cloned(),
            j: obs.j,
            e: obs.e,
            key_downsteps_before: match obs.keys {
                Some(k) => k.to_vec(),
                None => obs.before.key_downsteps(),
            },
            path_after: obs.after.clone(),
        })
    })?;
    Ok(ForwardTrace {
        initial: DyckPath::unit(),
        records,
    })
}

/// One forward step from `p = forward(prefix)` with next entry `u`.
pub fn forward_step(
    p: &DyckPath,
    prefix: &AscentSequence,
    u: Entry,
) -> Result<(DyckPath, ForwardStepRecord), BijectionError> {
    let position = prefix.len() + 1;
    if let Some(position) = first_021_violation(prefix.entries()) {
        return Err(BijectionError::Not021Avoiding { position });
    }
    if p.size() != prefix.len() {
        return Err(BijectionError::SizeMismatch {
            path_size: p.size(),
            prefix_len: prefix.len(),
        });
    }
    let extended = prefix
        .pushed(u)
        .map_err(|_| BijectionError::EntryNotAllowed { position, entry: u })?;
    if !extended.is_021_avoiding() {
        return Err(BijectionError::EntryNotAllowed { position, entry: u });
    }
    let state = PrefixState::of(prefix);
    let (q, detail) = apply(p, &state, u)?;
    let key_downsteps_before = detail.keys.unwrap_or_else(|| p.key_downsteps());
    let record = ForwardStepRecord {
        position,
        entry: u,
        case_id: detail.case,
        allowable: detail.allowable,
        j: detail.j,
        e: detail.e,
        key_downsteps_before,
        path_after: q.clone(),
    };
    Ok((q, record))
}
