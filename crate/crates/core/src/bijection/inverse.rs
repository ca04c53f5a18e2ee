use serde::{Serialize, Serializer};

use super::{internal, internal_path, serialize_opt_step_index, BijectionError, Case};
use crate::paths::{DyckPath, StepRef};
use crate::sequences::{AscentSequence, Entry};

/// What an inverse step contributes to the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Emission {
    Value(Entry),
    /// Same as the entry before it; resolved once the unwind finishes.
    RepeatPrevious,
}

impl Serialize for Emission {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Emission::Value(v) => s.serialize_u32(*v),
            Emission::RepeatPrevious => s.serialize_str("repeat"),
        }
    }
}

/// One inverse step: the path of size `size` shrank to `path_after`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseStepRecord {
    pub size: usize,
    #[serde(rename = "case")]
    pub case_id: Case,
    pub emitted: Emission,
    /// Second downstep of the terminal descent (key-downstep case only),
    /// indexed in `path_after`.
    #[serde(serialize_with = "serialize_opt_step_index")]
    pub marked_step: Option<StepRef>,
    /// Rank of the mark among the key downsteps of `path_after`, right to left.
    pub rank_right_to_left: Option<usize>,
    pub path_after: DyckPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTrace {
    pub initial: DyckPath,
    pub records: Vec<InverseStepRecord>,
    pub sequence: AscentSequence,
}

/// Which inverse case applies to a path of size at least 2.
pub fn classify_inverse_case(p: &DyckPath) -> Result<Case, BijectionError> {
    if p.size() < 2 {
        return Err(BijectionError::TooSmall);
    }
    Ok(if p.last_ascent_length() >= 2 {
        Case::LastPeak
    } else if p.is_elevated() {
        Case::Elevate
    } else if p.ends_with_peak() {
        Case::AppendPeak
    } else {
        Case::KeyDownstep
    })
}

pub fn inverse_step(p: &DyckPath) -> Result<InverseStepRecord, BijectionError> {
    let case = classify_inverse_case(p)?;
    let size = p.size();
    let record = |emitted, path_after| InverseStepRecord {
        size,
        case_id: case,
        emitted,
        marked_step: None,
        rank_right_to_left: None,
        path_after,
    };
    match case {
        Case::LastPeak => {
            let q = p
                .delete_last_peak()
                .map_err(|e| internal_path("delete last peak", e))?;
            Ok(record(Emission::Value(0), q))
        }
        Case::Elevate => {
            let q = p.lower().map_err(|e| internal_path("lower", e))?;
            Ok(record(Emission::RepeatPrevious, q))
        }
        Case::AppendPeak => {
            let q = p
                .delete_last_peak()
                .map_err(|e| internal_path("delete last peak", e))?;
            Ok(record(Emission::Value(p.valley_count() as Entry), q))
        }
        Case::KeyDownstep => key_downstep_step(p),
    }
}

fn key_downstep_step(p: &DyckPath) -> Result<InverseStepRecord, BijectionError> {
    let descent = p.terminal_descent();
    if descent.clone().count() < 2 {
        return Err(internal(format!(
            "terminal descent of {p} is too short to mark"
        )));
    }
    // deleting the last peak removes the U and D just before the mark
    let mark = StepRef::down(descent.start() + 1 - 2);
    let shrunk = p
        .delete_last_peak()
        .map_err(|e| internal_path("delete last peak", e))?;
    let partner = shrunk
        .match_of_downstep(mark)
        .map_err(|e| internal_path("matching mark", e))?;
    let preceding = shrunk
        .upsteps_before_in_ascent(partner)
        .map_err(|e| internal_path("ascent of matching upstep", e))?;
    let q = shrunk
        .transfer_upsteps_to_front(preceding, partner)
        .map_err(|e| internal_path("transfer to front", e))?;
    let keys = q.key_downsteps();
    let rank = keys
        .iter()
        .rev()
        .position(|k| *k == mark)
        .map(|i| i + 1)
        .ok_or_else(|| internal(format!("marked step {} is not key in {q}", mark.index)))?;
    let valleys = p.valley_count();
    if rank >= valleys {
        return Err(internal(format!(
            "rank {rank} leaves no positive entry from {valleys} valleys of {p}"
        )));
    }
    Ok(InverseStepRecord {
        size: p.size(),
        case_id: Case::KeyDownstep,
        emitted: Emission::Value((valleys - rank) as Entry),
        marked_step: Some(mark),
        rank_right_to_left: Some(rank),
        path_after: q,
    })
}

fn unwind(
    p: &DyckPath,
    mut keep: impl FnMut(InverseStepRecord) -> DyckPath,
) -> Result<Vec<Emission>, BijectionError> {
    let mut emitted = Vec::with_capacity(p.size());
    let mut current = p.clone();
    while current.size() > 1 {
        let rec = inverse_step(&current)?;
        emitted.push(rec.emitted);
        current = keep(rec);
    }
    Ok(emitted)
}

// Emissions arrive as u_n, ..., u_2; repeat markers copy the entry to their left.
fn resolve(emitted: &[Emission]) -> Result<AscentSequence, BijectionError> {
    let mut entries = Vec::with_capacity(emitted.len() + 1);
    entries.push(0);
    for e in emitted.iter().rev() {
        let v = match e {
            Emission::Value(v) => *v,
            Emission::RepeatPrevious => *entries.last().expect("u_1 present"),
        };
        entries.push(v);
    }
    let seq = AscentSequence::new(entries)
        .map_err(|e| internal(format!("inverse produced an invalid sequence: {e}")))?;
    if !seq.is_021_avoiding() {
        return Err(internal(format!(
            "inverse produced {seq}, which contains 021"
        )));
    }
    Ok(seq)
}

/// Preimage of a Dyck path.
pub fn inverse(p: &DyckPath) -> Result<AscentSequence, BijectionError> {
    let emitted = unwind(p, |rec| rec.path_after)?;
    resolve(&emitted)
}

pub fn inverse_trace(p: &DyckPath) -> Result<InverseTrace, BijectionError> {
    let mut records = Vec::with_capacity(p.size());
    let emitted = unwind(p, |rec| {
        let next = rec.path_after.clone();
        records.push(rec);
        next
    })?;
    let sequence = resolve(&emitted)?;
    Ok(InverseTrace {
        initial: p.clone(),
        records,
        sequence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::parse_path;

    fn p(s: &str) -> DyckPath {
        parse_path(s).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(classify_inverse_case(&p("UUDUUDDD")), Ok(Case::LastPeak));
        assert_eq!(classify_inverse_case(&p("UUDUDD")), Ok(Case::Elevate));
        assert_eq!(classify_inverse_case(&p("UUDUDDUD")), Ok(Case::AppendPeak));
        assert_eq!(
            classify_inverse_case(&p("UDUUDUUUDUDDDD")),
            Ok(Case::KeyDownstep)
        );
        assert_eq!(
            classify_inverse_case(&p("UD")),
            Err(BijectionError::TooSmall)
        );
    }

    #[test]
    fn figure_steps() {
        let r = inverse_step(&p("UDUUDUUUDUDDDD")).unwrap();
        assert_eq!(r.emitted, Emission::Value(1));
        assert_eq!(r.path_after, p("UUDUUDUUDDDD"));
        assert_eq!(r.rank_right_to_left, Some(2));
        assert_eq!(r.marked_step, Some(StepRef::down(10)));

        let r = inverse_step(&p("UUDUDD")).unwrap();
        assert_eq!(r.emitted, Emission::RepeatPrevious);
        assert_eq!(r.path_after, p("UDUD"));

        let r = inverse_step(&p("UUDUDDUD")).unwrap();
        assert_eq!(r.emitted, Emission::Value(2));
        assert_eq!(r.path_after, p("UUDUDD"));

        let r = inverse_step(&p("UUDUUDDD")).unwrap();
        assert_eq!(r.emitted, Emission::Value(0));
        assert_eq!(r.path_after, p("UUDUDD"));
    }

    #[test]
    fn whole_paths() {
        assert_eq!(
            inverse(&p("UDUUUDUDUUDDUDDD")).unwrap().entries(),
            &[0, 1, 0, 1, 2, 2, 0, 3]
        );
        assert_eq!(inverse(&p("UD")).unwrap().entries(), &[0]);
        assert_eq!(inverse(&DyckPath::pyramid(6)).unwrap().entries(), &[0; 6]);
    }

    #[test]
    fn traces() {
        let t = inverse_trace(&p("UUDUUDDD")).unwrap();
        assert_eq!(t.records[0].case_id, Case::LastPeak);
        assert_eq!(t.records[0].emitted, Emission::Value(0));

        let t = inverse_trace(&p("UUDD")).unwrap();
        assert_eq!(t.records.len(), 1);
        // the last ascent of UUDD is long, so this is the zero-entry case
        assert_eq!(t.records[0].case_id, Case::LastPeak);
        assert_eq!(t.records[0].path_after, p("UD"));
        assert_eq!(t.sequence.entries(), &[0, 0]);

        let t = inverse_trace(&p("UDUUDUDD")).unwrap();
        let cases: Vec<_> = t.records.iter().map(|r| (r.case_id, r.emitted)).collect();
        assert_eq!(
            cases,
            vec![
                (Case::KeyDownstep, Emission::Value(1)),
                (Case::LastPeak, Emission::Value(0)),
                (Case::AppendPeak, Emission::Value(1)),
            ]
        );
        assert_eq!(t.sequence.entries(), &[0, 1, 0, 1]);
    }
}
