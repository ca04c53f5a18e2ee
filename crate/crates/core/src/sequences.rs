//! Ascent sequences, 021-avoidance, and the sequence-side statistics.
//!
//! An ascent sequence `(u_1, ..., u_n)` starts with `0` and every later entry
//! is at most one more than the number of ascents seen so far. Positions are
//! reported 1-based throughout.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Entry value of an ascent sequence.
pub type Entry = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty sequence")]
    EmptyInput,
    #[error("first entry must be 0")]
    FirstEntryNonzero,
    #[error("entry at position {position} is {value}, exceeding 1 + #ascents = {bound}")]
    AscentBoundViolated {
        position: usize,
        value: Entry,
        bound: Entry,
    },
    #[error("cannot parse entry at position {position}: {token:?}")]
    BadToken { position: usize, token: String },
    #[error("size must be at least 1")]
    SizeZero,
}

/// A validated ascent sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AscentSequence {
    entries: Vec<Entry>,
}

impl AscentSequence {
    pub fn new(raw: Vec<Entry>) -> Result<Self, SequenceError> {
        validate_ascent_sequence(raw)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Entry> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based `position`.
    pub fn get(&self, position: usize) -> Option<Entry> {
        position
            .checked_sub(1)
            .and_then(|i| self.entries.get(i).copied())
    }

    pub fn last(&self) -> Entry {
        *self.entries.last().expect("ascent sequences are nonempty")
    }

    pub fn max_entry(&self) -> Entry {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn ascent_count(&self) -> usize {
        ascent_count(self)
    }

    pub fn is_021_avoiding(&self) -> bool {
        is_021_avoiding(self)
    }

    /// Returns the sequence extended by `value`, if the result is still an
    /// ascent sequence.
    pub fn pushed(&self, value: Entry) -> Result<Self, SequenceError> {
        let bound = self.ascent_count() as Entry + 1;
        if value > bound {
            return Err(SequenceError::AscentBoundViolated {
                position: self.len() + 1,
                value,
                bound,
            });
        }
        let mut entries = self.entries.clone();
        entries.push(value);
        Ok(AscentSequence { entries })
    }

    /// The prefix `(u_1, ..., u_len)`. Panics if `len` is 0 or too large.
    pub fn prefix(&self, len: usize) -> Self {
        assert!(len >= 1 && len <= self.len(), "prefix length out of range");
        AscentSequence {
            entries: self.entries[..len].to_vec(),
        }
    }

    /// Comma-separated text form, e.g. `0,1,0,1,2,2,0,3`.
    pub fn to_comma_string(&self) -> String {
        let mut out = String::with_capacity(self.entries.len() * 2);
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&e.to_string());
        }
        out
    }
}

impl fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_comma_string())
    }
}

impl<'de> Deserialize<'de> for AscentSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Entry>::deserialize(d)?;
        validate_ascent_sequence(raw).map_err(serde::de::Error::custom)
    }
}

/// Parses comma-separated entries, or a compact digit string such as
/// `01012203` (single-digit entries only).
pub fn parse_sequence(text: &str) -> Result<AscentSequence, SequenceError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(SequenceError::EmptyInput);
    }
    let raw: Vec<Entry> = if text.contains(',') {
        text.split(',')
            .enumerate()
            .map(|(i, tok)| {
                let tok = tok.trim();
                tok.parse::<Entry>().map_err(|_| SequenceError::BadToken {
                    position: i + 1,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10).ok_or_else(|| SequenceError::BadToken {
                    position: i + 1,
                    token: c.to_string(),
                })
            })
            .collect::<Result<_, _>>()?
    };
    validate_ascent_sequence(raw)
}

impl FromStr for AscentSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequence(s)
    }
}

pub fn validate_ascent_sequence(raw: Vec<Entry>) -> Result<AscentSequence, SequenceError> {
    let first = *raw.first().ok_or(SequenceError::EmptyInput)?;
    if first != 0 {
        return Err(SequenceError::FirstEntryNonzero);
    }
    let mut ascents: Entry = 0;
    for i in 1..raw.len() {
        let bound = ascents + 1;
        if raw[i] > bound {
            return Err(SequenceError::AscentBoundViolated {
                position: i + 1,
                value: raw[i],
                bound,
            });
        }
        if raw[i - 1] < raw[i] {
            ascents += 1;
        }
    }
    Ok(AscentSequence { entries: raw })
}

/// True iff the nonzero entries are weakly increasing.
pub fn is_021_avoiding(seq: &AscentSequence) -> bool {
    first_021_violation(seq.entries()).is_none()
}

/// 1-based position of the first nonzero entry smaller than an earlier
/// nonzero entry.
pub fn first_021_violation(entries: &[Entry]) -> Option<usize> {
    let mut max_nonzero = 0;
    for (i, &v) in entries.iter().enumerate() {
        if v != 0 {
            if v < max_nonzero {
                return Some(i + 1);
            }
            max_nonzero = v;
        }
    }
    None
}

/// Exhaustive triple search for positions `i < j < k` with
/// `entries[i] < entries[k] < entries[j]`.
pub fn contains_pattern_021_bruteforce(entries: &[Entry]) -> bool {
    let n = entries.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if entries[i] < entries[k] && entries[k] < entries[j] {
                    return true;
                }
            }
        }
    }
    false
}

pub fn ascent_count(seq: &AscentSequence) -> usize {
    seq.entries().windows(2).filter(|w| w[0] < w[1]).count()
}

pub fn descent_count(seq: &AscentSequence) -> usize {
    seq.entries().windows(2).filter(|w| w[0] > w[1]).count()
}

/// The list of nonzero values that, appended to a 021-avoiding prefix, fall
/// outside the zero / repeat / new-maximum-ascent cases.
///
/// With `m` the maximum entry and `a` the number of ascents, this is
/// `[max(m, 1), a]` after a trailing 0 and `[m + 1, a]` after a nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowableList {
    lo: Entry,
    hi: Entry,
    /// Maximum entry of the prefix the list was built from.
    pub max_entry: Entry,
    /// Number of ascents in that prefix.
    pub ascents: usize,
}

impl AllowableList {
    pub fn len(&self) -> usize {
        if self.lo > self.hi {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> impl Iterator<Item = Entry> + '_ {
        self.lo..=self.hi
    }

    pub fn to_vec(&self) -> Vec<Entry> {
        self.values().collect()
    }

    pub fn contains(&self, value: Entry) -> bool {
        self.lo <= value && value <= self.hi
    }

    /// 1-based position of `value` in the list.
    pub fn position(&self, value: Entry) -> Option<usize> {
        self.contains(value).then(|| (value - self.lo) as usize + 1)
    }

    /// Value at 1-based position `j`.
    pub fn get(&self, j: usize) -> Option<Entry> {
        (j >= 1 && j <= self.len()).then(|| self.lo + (j as Entry - 1))
    }
}

impl fmt::Display for AllowableList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub fn allowable_nonzero_values(prefix: &AscentSequence) -> AllowableList {
    let m = prefix.max_entry();
    let a = prefix.ascent_count();
    allowable_from_parts(prefix.last(), m, a)
}

pub(crate) fn allowable_from_parts(last: Entry, max_entry: Entry, ascents: usize) -> AllowableList {
    let lo = if last == 0 {
        max_entry.max(1)
    } else {
        max_entry + 1
    };
    let hi = ascents as Entry;
    AllowableList {
        lo,
        hi,
        max_entry,
        ascents,
    }
}

/// Every `v` such that `prefix + v` is a 021-avoiding ascent sequence,
/// ascending: `0`, the last entry when it is nonzero, the allowable list,
/// and `a + 1`.
pub fn allowable_next_values(prefix: &AscentSequence) -> Vec<Entry> {
    let a = prefix.ascent_count() as Entry;
    let last = prefix.last();
    let mut out = vec![0];
    if last != 0 {
        out.push(last);
    }
    out.extend(allowable_nonzero_values(prefix).values());
    out.push(a + 1);
    out
}

/// Lexicographic stream of 021-avoiding ascent sequences of a fixed length.
///
/// The allowed next values after any 021-avoiding prefix with maximum `m`
/// and `a` ascents form `{0} ∪ [max(m, 1), a + 1]`, so the lexicographic
/// successor bumps the rightmost bumpable entry and zero-fills the rest.
#[derive(Debug, Clone)]
pub struct AvoidingSequences {
    current: Vec<Entry>,
    fixed: usize,
    // ascents[i] / maxes[i]: ascents and maximum within current[..=i]
    ascents: Vec<Entry>,
    maxes: Vec<Entry>,
    done: bool,
    fresh: bool,
}

impl AvoidingSequences {
    fn starting_from(prefix: Vec<Entry>, n: usize) -> Self {
        let fixed = prefix.len();
        let mut current = prefix;
        current.resize(n, 0);
        let mut it = AvoidingSequences {
            current,
            fixed,
            ascents: vec![0; n],
            maxes: vec![0; n],
            done: false,
            fresh: true,
        };
        it.refresh_from(1);
        it
    }

    fn refresh_from(&mut self, start: usize) {
        for i in start.max(1)..self.current.len() {
            let up = (self.current[i - 1] < self.current[i]) as Entry;
            self.ascents[i] = self.ascents[i - 1] + up;
            self.maxes[i] = self.maxes[i - 1].max(self.current[i]);
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        let lowest = self.fixed.max(1);
        for i in (lowest..n).rev() {
            let m = self.maxes[i - 1];
            let ceiling = self.ascents[i - 1] + 1;
            let v = self.current[i];
            let next = if v == 0 { m.max(1) } else { v + 1 };
            if next <= ceiling {
                self.current[i] = next;
                for x in &mut self.current[i + 1..] {
                    *x = 0;
                }
                self.refresh_from(i);
                return true;
            }
        }
        false
    }
}

impl Iterator for AvoidingSequences {
    type Item = AscentSequence;

    fn next(&mut self) -> Option<AscentSequence> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(AscentSequence {
            entries: self.current.clone(),
        })
    }
}

/// All 021-avoiding ascent sequences of length `n`, lexicographically.
pub fn enumerate_021_avoiding(n: usize) -> Result<AvoidingSequences, SequenceError> {
    if n == 0 {
        return Err(SequenceError::SizeZero);
    }
    Ok(AvoidingSequences::starting_from(vec![0], n))
}

/// All 021-avoiding ascent sequences of length `n` that begin with `prefix`.
/// Yields nothing when `prefix` is longer than `n` or not 021-avoiding.
pub fn enumerate_021_avoiding_with_prefix(prefix: &AscentSequence, n: usize) -> AvoidingSequences {
    let mut it = AvoidingSequences::starting_from(prefix.entries().to_vec(), n.max(prefix.len()));
    if prefix.len() > n || !prefix.is_021_avoiding() {
        it.done = true;
    }
    it
}

/// The five sequence statistics, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceStats {
    pub initial_zeros: usize,
    /// `n - 1` for the all-zero sequence.
    pub terminal_zeros: usize,
    pub ascents: usize,
    pub descents: usize,
    /// Absent iff every entry is 0.
    pub eq_run_before_last_nonzero: Option<usize>,
}

pub fn sequence_statistics(seq: &AscentSequence) -> SequenceStats {
    let e = seq.entries();
    let n = e.len();
    let initial_zeros = e.iter().take_while(|&&v| v == 0).count();
    let last_nonzero = e.iter().rposition(|&v| v != 0);
    let terminal_zeros = match last_nonzero {
        None => n - 1,
        Some(k) => n - 1 - k,
    };
    let eq_run_before_last_nonzero =
        last_nonzero.map(|k| e[..k].iter().rev().take_while(|&&v| v == e[k]).count());
    SequenceStats {
        initial_zeros,
        terminal_zeros,
        ascents: ascent_count(seq),
        descents: descent_count(seq),
        eq_run_before_last_nonzero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[Entry]) -> AscentSequence {
        validate_ascent_sequence(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_ascent_sequence(vec![0, 1, 0, 1, 2, 2, 0, 3]).is_ok());
        assert!(validate_ascent_sequence(vec![0]).is_ok());
        assert_eq!(
            validate_ascent_sequence(vec![0, 2]),
            Err(SequenceError::AscentBoundViolated {
                position: 2,
                value: 2,
                bound: 1
            })
        );
        assert_eq!(
            validate_ascent_sequence(vec![]),
            Err(SequenceError::EmptyInput)
        );
        assert_eq!(
            validate_ascent_sequence(vec![1, 0]),
            Err(SequenceError::FirstEntryNonzero)
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_sequence("01012203").unwrap(),
            seq(&[0, 1, 0, 1, 2, 2, 0, 3])
        );
        assert_eq!(
            parse_sequence("0, 1,0,1,2,2,0,3").unwrap(),
            seq(&[0, 1, 0, 1, 2, 2, 0, 3])
        );
        assert_eq!(parse_sequence("0").unwrap(), seq(&[0]));
        assert!(matches!(
            parse_sequence("0,x"),
            Err(SequenceError::BadToken { position: 2, .. })
        ));
        assert!(matches!(
            parse_sequence("0a"),
            Err(SequenceError::BadToken { position: 2, .. })
        ));
        assert_eq!(parse_sequence("  "), Err(SequenceError::EmptyInput));
        let s = seq(&[0, 1, 0, 1, 2, 2, 0, 3]);
        assert_eq!(s.to_string(), "0,1,0,1,2,2,0,3");
    }

    #[test]
    fn avoidance() {
        assert!(is_021_avoiding(&seq(&[0, 1, 0, 1, 2, 2, 0, 3])));
        assert!(!is_021_avoiding(&seq(&[0, 1, 2, 1])));
        assert!(is_021_avoiding(&seq(&[0, 0, 0, 0])));
        assert_eq!(first_021_violation(&[0, 1, 2, 1]), Some(4));
    }

    #[test]
    fn bruteforce_oracle() {
        assert!(contains_pattern_021_bruteforce(&[0, 2, 1]));
        assert!(!contains_pattern_021_bruteforce(&[0, 1, 0, 1, 2, 2, 0, 3]));
        assert!(!contains_pattern_021_bruteforce(&[0, 1]));
        assert!(contains_pattern_021_bruteforce(&[0, 1, 2, 1]));
    }

    #[test]
    fn ascents() {
        assert_eq!(ascent_count(&seq(&[0, 1, 0, 1, 2, 2, 0, 3])), 4);
        assert_eq!(ascent_count(&seq(&[0])), 0);
        assert_eq!(ascent_count(&seq(&[0, 1, 0, 1])), 2);
    }

    #[test]
    fn allowable_lists() {
        assert_eq!(allowable_nonzero_values(&seq(&[0, 1, 0])).to_vec(), vec![1]);
        assert_eq!(
            allowable_nonzero_values(&seq(&[0, 1, 0, 1, 2, 2, 0])).to_vec(),
            vec![2, 3]
        );
        assert!(allowable_nonzero_values(&seq(&[0, 0])).is_empty());
        let a = allowable_nonzero_values(&seq(&[0, 1, 0, 1, 2, 2, 0]));
        assert_eq!(a.position(3), Some(2));
        assert_eq!(a.get(1), Some(2));
        assert_eq!(a.position(4), None);
        assert_eq!(a.to_string(), "(2,3)");
    }

    #[test]
    fn next_values() {
        assert_eq!(allowable_next_values(&seq(&[0])), vec![0, 1]);
        assert_eq!(
            allowable_next_values(&seq(&[0, 1, 0, 1, 2, 2, 0])),
            vec![0, 2, 3, 4]
        );
        assert_eq!(allowable_next_values(&seq(&[0, 0])), vec![0, 1]);
        // repeating a nonzero last entry is always allowed
        assert_eq!(allowable_next_values(&seq(&[0, 1])), vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_small() {
        let one: Vec<_> = enumerate_021_avoiding(1).unwrap().collect();
        assert_eq!(one, vec![seq(&[0])]);
        let three: Vec<Vec<Entry>> = enumerate_021_avoiding(3)
            .unwrap()
            .map(|s| s.into_entries())
            .collect();
        assert_eq!(
            three,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(enumerate_021_avoiding(8).unwrap().count(), 1430);
        assert!(matches!(
            enumerate_021_avoiding(0),
            Err(SequenceError::SizeZero)
        ));
    }

    #[test]
    fn enumeration_with_prefix() {
        let p = seq(&[0, 1]);
        let got: Vec<_> = enumerate_021_avoiding_with_prefix(&p, 3)
            .map(|s| s.into_entries())
            .collect();
        assert_eq!(got, vec![vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
        assert_eq!(enumerate_021_avoiding_with_prefix(&p, 2).count(), 1);
        assert_eq!(enumerate_021_avoiding_with_prefix(&p, 1).count(), 0);
        assert_eq!(
            enumerate_021_avoiding_with_prefix(&seq(&[0, 1, 2, 1]), 6).count(),
            0
        );
    }

    #[test]
    fn statistics() {
        assert_eq!(
            sequence_statistics(&seq(&[0, 1, 0, 1, 2, 2, 0, 3])),
            SequenceStats {
                initial_zeros: 1,
                terminal_zeros: 0,
                ascents: 4,
                descents: 2,
                eq_run_before_last_nonzero: Some(0)
            }
        );
        assert_eq!(
            sequence_statistics(&seq(&[0, 0, 0, 0])),
            SequenceStats {
                initial_zeros: 4,
                terminal_zeros: 3,
                ascents: 0,
                descents: 0,
                eq_run_before_last_nonzero: None
            }
        );
        assert_eq!(
            sequence_statistics(&seq(&[0, 1, 0, 1, 2, 2, 0])),
            SequenceStats {
                initial_zeros: 1,
                terminal_zeros: 1,
                ascents: 3,
                descents: 2,
                eq_run_before_last_nonzero: Some(1)
            }
        );
    }
}
