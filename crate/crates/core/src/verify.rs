//! Exhaustive sweeps over both families at a fixed size.
//!
//! Every check enumerates all objects of size `n`, optionally split by prefix
//! across rayon workers. Partial results are merged in prefix order, so the
//! failure lists do not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bijection::{classify_inverse_case, forward, forward_trace, inverse, run_forward, Case};
use crate::count::checked_catalan;
use crate::paths::{
    dyck_prefixes, enumerate_dyck_paths, enumerate_dyck_paths_with_prefix, path_statistics,
    DyckPath,
};
use crate::sequences::{
    contains_pattern_021_bruteforce, enumerate_021_avoiding, enumerate_021_avoiding_with_prefix,
    is_021_avoiding, sequence_statistics, validate_ascent_sequence, AscentSequence, Entry,
};
use crate::Count;

pub use crate::count::catalan;

/// Default sweep ceiling.
pub const DEFAULT_CAP: usize = 12;
/// Ceiling with `--extended`.
pub const EXTENDED_CAP: usize = 14;
/// Longest sequences the characterization sweep accepts.
pub const CHARACTERIZATION_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("size {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("size must be at least 1")]
    SizeZero,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub cap: usize,
    /// Run sweeps on the rayon pool.
    pub parallel: bool,
    /// Failures kept per check; the rest are only counted.
    pub max_witnesses: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cap: DEFAULT_CAP,
            parallel: true,
            max_witnesses: 64,
        }
    }
}

impl VerifyConfig {
    pub fn extended() -> Self {
        VerifyConfig {
            cap: EXTENDED_CAP,
            ..Self::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn admit(&self, n: usize) -> Result<(), VerifyError> {
        if n == 0 {
            return Err(VerifyError::SizeZero);
        }
        if n > self.cap {
            return Err(VerifyError::CapExceeded {
                requested: n,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Counts,
    Roundtrip,
    Bijectivity,
    Statistics,
    Invariants,
    Characterization,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Counts,
        CheckKind::Roundtrip,
        CheckKind::Bijectivity,
        CheckKind::Statistics,
        CheckKind::Invariants,
        CheckKind::Characterization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Counts => "counts",
            CheckKind::Roundtrip => "roundtrip",
            CheckKind::Bijectivity => "bijectivity",
            CheckKind::Statistics => "statistics",
            CheckKind::Invariants => "invariants",
            CheckKind::Characterization => "characterization",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed assertion and the input that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: CheckKind,
    pub kind: String,
    pub witness: String,
    pub detail: String,
}

/// The five statistic pairs, in table order.
pub const STATISTIC_NAMES: [&str; 5] = [
    "initial zeros = first descent length",
    "terminal zeros = last ascent length - 1",
    "ascents = valleys",
    "descents = DUU factors",
    "equal run before last nonzero = degree of elevation",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatisticCheck {
    pub name: &'static str,
    /// Sequences whose statistic differs from that of their image.
    pub mismatches: Count,
    /// Whether the value histograms over both families agree.
    pub distributions_match: bool,
}

impl StatisticCheck {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.distributions_match
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub sequences_checked: Count,
    pub paths_checked: Count,
    pub failure_count: Count,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub sequences_checked: Count,
    pub paths_checked: Count,
    pub checks: Vec<CheckOutcome>,
    /// Retained witnesses; `failure_count` includes the ones dropped.
    pub failures: Vec<Failure>,
    pub failure_count: Count,
    pub equidistribution: Vec<StatisticCheck>,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

fn serialize_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Combines reports of different checks over the same `n`.
    pub fn combine(mut self, other: VerifyReport) -> VerifyReport {
        self.n = self.n.max(other.n);
        self.sequences_checked = self.sequences_checked.max(other.sequences_checked);
        self.paths_checked = self.paths_checked.max(other.paths_checked);
        self.checks.extend(other.checks);
        self.failures.extend(other.failures);
        self.failure_count += other.failure_count;
        self.equidistribution.extend(other.equidistribution);
        self.elapsed += other.elapsed;
        self
    }

    /// Human-readable summary table.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verify n={}", self.n);
        let _ = writeln!(
            out,
            "{:<18} {:>10} {:>10} {:>9}  status",
            "check", "sequences", "paths", "failures"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<18} {:>10} {:>10} {:>9}  {}",
                c.check.name(),
                c.sequences_checked,
                c.paths_checked,
                c.failure_count,
                if c.failure_count == 0 { "pass" } else { "FAIL" }
            );
        }
        if !self.equidistribution.is_empty() {
            let _ = writeln!(out, "equidistribution:");
            for s in &self.equidistribution {
                let _ = writeln!(
                    out,
                    "  {:<54} {:>9}  {}",
                    s.name,
                    s.mismatches,
                    if s.passed() { "pass" } else { "FAIL" }
                );
            }
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "failure [{}] {}: {} ({})",
                f.check, f.kind, f.witness, f.detail
            );
        }
        let dropped = self.failure_count - self.failures.len() as Count;
        if dropped > 0 {
            let _ = writeln!(out, "... {dropped} more failures not shown");
        }
        let _ = writeln!(
            out,
            "result: {} ({} sequences, {} paths, {:.3}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.sequences_checked,
            self.paths_checked,
            self.elapsed.as_secs_f64()
        );
        out
    }
}

// Partial result of one sweep chunk; merged in chunk order.
#[derive(Debug, Default)]
struct Tally {
    sequences: Count,
    paths: Count,
    failures: Vec<Failure>,
    failure_count: Count,
    limit: usize,
    stat_mismatches: [Count; 5],
    seq_hist: [BTreeMap<Option<usize>, Count>; 5],
    path_hist: [BTreeMap<Option<usize>, Count>; 5],
    images: Vec<u64>,
}

impl Tally {
    fn new(limit: usize) -> Self {
        Tally {
            limit,
            ..Default::default()
        }
    }

    fn fail(
        &mut self,
        check: CheckKind,
        kind: &str,
        witness: impl fmt::Display,
        detail: impl Into<String>,
    ) {
        self.failure_count += 1;
        if self.failures.len() < self.limit {
            self.failures.push(Failure {
                check,
                kind: kind.to_string(),
                witness: witness.to_string(),
                detail: detail.into(),
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.sequences += other.sequences;
        self.paths += other.paths;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < self.limit {
                self.failures.push(f);
            }
        }
        for i in 0..5 {
            self.stat_mismatches[i] += other.stat_mismatches[i];
            for (k, v) in &other.seq_hist[i] {
                *self.seq_hist[i].entry(*k).or_default() += v;
            }
            for (k, v) in &other.path_hist[i] {
                *self.path_hist[i].entry(*k).or_default() += v;
            }
        }
        self.images.extend(other.images);
        self
    }

    fn into_report(self, n: usize, check: CheckKind, started: Instant) -> VerifyReport {
        VerifyReport {
            n,
            sequences_checked: self.sequences,
            paths_checked: self.paths,
            checks: vec![CheckOutcome {
                check,
                sequences_checked: self.sequences,
                paths_checked: self.paths,
                failure_count: self.failure_count,
            }],
            failures: self.failures,
            failure_count: self.failure_count,
            equidistribution: Vec::new(),
            elapsed: started.elapsed(),
        }
    }
}

const SEQUENCE_SPLIT: usize = 7;
const PATH_SPLIT: usize = 12;

/// Folds `visit` over every 021-avoiding sequence of length `n`.
fn sweep_sequences<F>(n: usize, config: &VerifyConfig, visit: F) -> Tally
where
    F: Fn(&AscentSequence, &mut Tally) + Sync,
{
    let split = n.min(SEQUENCE_SPLIT);
    let prefixes: Vec<AscentSequence> =
        enumerate_021_avoiding(split).expect("split >= 1").collect();
    let chunk = |prefix: &AscentSequence| {
        let mut t = Tally::new(config.max_witnesses);
        for s in enumerate_021_avoiding_with_prefix(prefix, n) {
            t.sequences += 1;
            visit(&s, &mut t);
        }
        t
    };
    let parts: Vec<Tally> = if config.parallel {
        prefixes.par_iter().map(chunk).collect()
    } else {
        prefixes.iter().map(chunk).collect()
    };
    parts
        .into_iter()
        .fold(Tally::new(config.max_witnesses), Tally::merge)
}

/// Folds `visit` over every Dyck path of size `n`.
fn sweep_paths<F>(n: usize, config: &VerifyConfig, visit: F) -> Tally
where
    F: Fn(&DyckPath, &mut Tally) + Sync,
{
    let prefixes = dyck_prefixes(PATH_SPLIT.min(2 * n), n);
    let chunk = |prefix: &Vec<crate::paths::Step>| {
        let mut t = Tally::new(config.max_witnesses);
        for p in enumerate_dyck_paths_with_prefix(prefix, n) {
            t.paths += 1;
            visit(&p, &mut t);
        }
        t
    };
    let parts: Vec<Tally> = if config.parallel {
        prefixes.par_iter().map(chunk).collect()
    } else {
        prefixes.iter().map(chunk).collect()
    };
    parts
        .into_iter()
        .fold(Tally::new(config.max_witnesses), Tally::merge)
}

fn expected_count(n: usize) -> Count {
    checked_catalan::<Count>(n).expect("cap keeps Catalan numbers in range")
}

/// Both enumerations against `catalan(n)`, plus ordering and validity of
/// every enumerated object.
pub fn check_counts(n: usize, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let started = Instant::now();
    let check = CheckKind::Counts;
    let mut t = Tally::new(config.max_witnesses);
    let expected = expected_count(n);

    let mut prev: Option<AscentSequence> = None;
    for s in enumerate_021_avoiding(n).expect("n >= 1") {
        t.sequences += 1;
        if validate_ascent_sequence(s.entries().to_vec()).is_err() || !is_021_avoiding(&s) {
            t.fail(check, "enumerated sequence invalid", &s, "");
        }
        if s.len() != n {
            t.fail(check, "enumerated sequence has wrong length", &s, "");
        }
        if let Some(p) = &prev {
            if p >= &s {
                t.fail(
                    check,
                    "sequence enumeration not increasing",
                    &s,
                    format!("after {p}"),
                );
            }
        }
        prev = Some(s);
    }
    let mut prev: Option<DyckPath> = None;
    for p in enumerate_dyck_paths(n).expect("n >= 1") {
        t.paths += 1;
        if p.size() != n {
            t.fail(check, "enumerated path has wrong size", &p, "");
        }
        if let Some(q) = &prev {
            // Step derives Up < Down, so this is U < D lexicographic order
            if q >= &p {
                t.fail(
                    check,
                    "path enumeration not increasing",
                    &p,
                    format!("after {q}"),
                );
            }
        }
        prev = Some(p);
    }
    if t.sequences != expected {
        t.fail(
            check,
            "sequence count",
            n,
            format!("enumerated {}, catalan {expected}", t.sequences),
        );
    }
    if t.paths != expected {
        t.fail(
            check,
            "path count",
            n,
            format!("enumerated {}, catalan {expected}", t.paths),
        );
    }
    Ok(t.into_report(n, check, started))
}

// First prefix length at which the round trip breaks, with its step record.
fn first_divergence(s: &AscentSequence) -> String {
    for k in 2..=s.len() {
        let prefix = s.prefix(k);
        let back = forward(&prefix).and_then(|p| inverse(&p));
        if back.as_ref() != Ok(&prefix) {
            let record = forward_trace(&prefix)
                .ok()
                .and_then(|t| t.records.last().cloned());
            return format!("first divergent step u_{k}: {record:?}");
        }
    }
    "no divergent prefix".to_string()
}

/// `inverse . forward = id` on sequences and `forward . inverse = id` on paths.
pub fn check_roundtrip(n: usize, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let started = Instant::now();
    let check = CheckKind::Roundtrip;
    let seq_side = sweep_sequences(n, config, |s, t| match forward(s) {
        Err(e) => t.fail(check, "forward failed", s, e.to_string()),
        Ok(p) => match inverse(&p) {
            Err(e) => t.fail(check, "inverse failed", s, format!("image {p}: {e}")),
            Ok(back) if &back != s => t.fail(
                check,
                "inverse(forward(s)) != s",
                s,
                format!("image {p}, back {back}; {}", first_divergence(s)),
            ),
            Ok(_) => {}
        },
    });
    let path_side = sweep_paths(n, config, |p, t| match inverse(p) {
        Err(e) => t.fail(check, "inverse failed", p, e.to_string()),
        Ok(s) => match forward(&s) {
            Err(e) => t.fail(check, "forward failed", p, format!("preimage {s}: {e}")),
            Ok(q) if &q != p => t.fail(
                check,
                "forward(inverse(p)) != p",
                p,
                format!("preimage {s}, image {q}"),
            ),
            Ok(_) => {}
        },
    });
    Ok(seq_side.merge(path_side).into_report(n, check, started))
}

/// The forward image is duplicate-free and equals the set of all paths.
pub fn check_bijectivity(n: usize, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let started = Instant::now();
    let check = CheckKind::Bijectivity;
    let mut t = sweep_sequences(n, config, |s, t| match forward(s) {
        Ok(p) if p.size() == n => t.images.push(p.encode_bits()),
        Ok(p) => t.fail(check, "image has wrong size", s, p.to_string()),
        Err(e) => t.fail(check, "forward failed", s, e.to_string()),
    });
    let mut images = std::mem::take(&mut t.images);
    images.par_sort_unstable();
    for w in images.windows(2) {
        if w[0] == w[1] {
            t.fail(check, "duplicate image", decode_bits(w[0], n), "");
        }
    }
    images.dedup();
    let all = sweep_paths(n, config, |p, t| t.images.push(p.encode_bits()));
    t.paths = all.paths;
    let mut all = all.images;
    all.par_sort_unstable();
    if images != all {
        let missing = all.iter().filter(|c| images.binary_search(c).is_err());
        let mut any = false;
        for &c in missing {
            any = true;
            t.fail(check, "path not in forward image", decode_bits(c, n), "");
        }
        if !any {
            t.fail(check, "image differs from path set", n, "");
        }
    }
    Ok(t.into_report(n, check, started))
}

fn decode_bits(bits: u64, n: usize) -> String {
    (0..2 * n)
        .rev()
        .map(|i| if bits >> i & 1 == 1 { 'U' } else { 'D' })
        .collect()
}

fn sequence_row_values(s: &AscentSequence) -> [Option<usize>; 5] {
    let st = sequence_statistics(s);
    [
        Some(st.initial_zeros),
        Some(st.terminal_zeros),
        Some(st.ascents),
        Some(st.descents),
        st.eq_run_before_last_nonzero,
    ]
}

fn path_row_values(p: &DyckPath) -> [Option<usize>; 5] {
    let st = path_statistics(p);
    [
        Some(st.first_descent_length),
        Some(st.last_ascent_length - 1),
        Some(st.valleys),
        Some(st.duu_count),
        st.degree_of_elevation,
    ]
}

/// The five statistic correspondences, pointwise under the forward map and
/// as distributions over the two independently enumerated families.
pub fn check_statistics(n: usize, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let started = Instant::now();
    let check = CheckKind::Statistics;
    let seq_side = sweep_sequences(n, config, |s, t| {
        let left = sequence_row_values(s);
        for (i, v) in left.iter().enumerate() {
            *t.seq_hist[i].entry(*v).or_default() += 1;
        }
        let p = match forward(s) {
            Ok(p) => p,
            Err(e) => return t.fail(check, "forward failed", s, e.to_string()),
        };
        let right = path_row_values(&p);
        for i in 0..5 {
            if left[i] != right[i] {
                t.stat_mismatches[i] += 1;
                t.fail(
                    check,
                    STATISTIC_NAMES[i],
                    s,
                    format!("image {p}: {:?} vs {:?}", left[i], right[i]),
                );
            }
        }
    });
    let path_side = sweep_paths(n, config, |p, t| {
        for (i, v) in path_row_values(p).iter().enumerate() {
            *t.path_hist[i].entry(*v).or_default() += 1;
        }
    });
    let t = seq_side.merge(path_side);
    let equidistribution = (0..5)
        .map(|i| StatisticCheck {
            name: STATISTIC_NAMES[i],
            mismatches: t.stat_mismatches[i],
            distributions_match: t.seq_hist[i] == t.path_hist[i],
        })
        .collect::<Vec<_>>();
    let mut t = t;
    for s in &equidistribution {
        if !s.distributions_match {
            t.fail(check, "distributions differ", s.name, "");
        }
    }
    let mut report = t.into_report(n, check, started);
    report.equidistribution = equidistribution;
    Ok(report)
}

/// Per-step structural properties of the forward map, and totality of the
/// inverse case split.
pub fn check_invariants(n: usize, config: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let started = Instant::now();
    let check = CheckKind::Invariants;
    let seq_side = sweep_sequences(n, config, |s, t| {
        let mut problems: Vec<String> = Vec::new();
        let result = run_forward(s, |obs| {
            let at = obs.position;
            let long_last = obs.after.last_ascent_length() >= 2;
            if (obs.case == Case::LastPeak) != long_last {
                problems.push(format!(
                    "u_{at}: case {} left last ascent of length {}",
                    obs.case.id(),
                    obs.after.last_ascent_length()
                ));
            }
            if obs.case == Case::KeyDownstep {
                let keys = obs.before.key_downsteps().len();
                let allowed = obs.allowable.map_or(0, |a| a.len());
                if keys != allowed || allowed == 0 {
                    problems.push(format!(
                        "u_{at}: |A| = {allowed} but {keys} key downsteps in {}",
                        obs.before
                    ));
                }
                if obs.before.is_pyramid() {
                    problems.push(format!("u_{at}: key-downstep case on pyramid"));
                }
                if obs.after.is_elevated() || obs.after.ends_with_peak() {
                    problems.push(format!(
                        "u_{at}: result {} is elevated or ends UD",
                        obs.after
                    ));
                }
            }
            match classify_inverse_case(obs.after) {
                Ok(c) if c == obs.case => {}
                other => problems.push(format!(
                    "u_{at}: forward case {} but inverse classifies {} as {:?}",
                    obs.case.id(),
                    obs.after,
                    other.map(Case::id)
                )),
            }
        });
        match result {
            Err(e) => t.fail(check, "forward failed", s, e.to_string()),
            Ok(p) => {
                if s.ascent_count() != p.valley_count() {
                    problems.push(format!(
                        "{} ascents but {} valleys in {p}",
                        s.ascent_count(),
                        p.valley_count()
                    ));
                }
            }
        }
        for pr in problems {
            t.fail(check, "forward step invariant", s, pr);
        }
    });
    let path_side = sweep_paths(n, config, |p, t| {
        if p.size() < 2 {
            return;
        }
        let long = p.last_ascent_length() >= 2;
        let elevated = p.is_elevated();
        let ends_ud = p.ends_with_peak();
        let conditions = [
            long,
            !long && elevated,
            !long && ends_ud,
            !long && !elevated && !ends_ud,
        ];
        if conditions.iter().filter(|c| **c).count() != 1 || (elevated && ends_ud) {
            t.fail(
                check,
                "inverse cases not exclusive",
                p,
                format!("{conditions:?}"),
            );
        }
        let degree = p.degree_of_elevation();
        if !p.is_pyramid() && (degree == Some(0)) == elevated {
            t.fail(
                check,
                "degree of elevation vs elevated",
                p,
                format!("{degree:?}"),
            );
        }
        for k in p.key_downsteps() {
            if !p.terminal_descent().contains(&k.index) {
                t.fail(
                    check,
                    "key downstep off terminal descent",
                    p,
                    k.index.to_string(),
                );
            }
        }
    });
    Ok(seq_side.merge(path_side).into_report(n, check, started))
}

/// Every ascent sequence of length `1..=max_len` with entries at most
/// `max_val`, in lexicographic order within each length.
pub fn ascent_sequences_bounded(max_len: usize, max_val: Entry) -> Vec<Vec<Entry>> {
    fn go(
        cur: &mut Vec<Entry>,
        ascents: Entry,
        max_len: usize,
        max_val: Entry,
        out: &mut Vec<Vec<Entry>>,
    ) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        let last = *cur.last().expect("nonempty");
        for v in 0..=(ascents + 1).min(max_val) {
            cur.push(v);
            go(cur, ascents + (last < v) as Entry, max_len, max_val, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_len >= 1 {
        go(&mut vec![0], 0, max_len, max_val, &mut out);
    }
    out
}

/// `is_021_avoiding` against the brute-force triple oracle on every
/// ascent sequence within the bounds.
pub fn check_characterization(
    max_len: usize,
    max_val: Entry,
    config: &VerifyConfig,
) -> Result<VerifyReport, VerifyError> {
    if max_len == 0 {
        return Err(VerifyError::SizeZero);
    }
    if max_len > CHARACTERIZATION_CAP {
        return Err(VerifyError::CapExceeded {
            requested: max_len,
            cap: CHARACTERIZATION_CAP,
        });
    }
    let started = Instant::now();
    let check = CheckKind::Characterization;
    let all = ascent_sequences_bounded(max_len, max_val);
    let visit = |raw: &Vec<Entry>| {
        let mut t = Tally::new(config.max_witnesses);
        t.sequences += 1;
        match validate_ascent_sequence(raw.clone()) {
            Err(e) => t.fail(
                check,
                "generator produced invalid sequence",
                format!("{raw:?}"),
                e.to_string(),
            ),
            Ok(s) => {
                if is_021_avoiding(&s) == contains_pattern_021_bruteforce(raw) {
                    t.fail(check, "detectors disagree", &s, "");
                }
            }
        }
        t
    };
    let t = if config.parallel {
        all.par_iter()
            .map(visit)
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::new(config.max_witnesses), Tally::merge)
    } else {
        all.iter()
            .map(visit)
            .fold(Tally::new(config.max_witnesses), Tally::merge)
    };
    Ok(t.into_report(max_len, check, started))
}

/// Runs the selected checks at size `n`; characterization uses
/// `min(n, 10)` and entries bounded by the length.
pub fn run_checks(
    n: usize,
    checks: &[CheckKind],
    config: &VerifyConfig,
) -> Result<VerifyReport, VerifyError> {
    config.admit(n)?;
    let mut combined: Option<VerifyReport> = None;
    for &c in checks {
        let r = match c {
            CheckKind::Counts => check_counts(n, config)?,
            CheckKind::Roundtrip => check_roundtrip(n, config)?,
            CheckKind::Bijectivity => check_bijectivity(n, config)?,
            CheckKind::Statistics => check_statistics(n, config)?,
            CheckKind::Invariants => check_invariants(n, config)?,
            CheckKind::Characterization => {
                let len = n.min(10);
                let mut r = check_characterization(len, len as Entry, config)?;
                r.n = n;
                // these are not the size-n families; keep them out of the headline counts
                r.sequences_checked = 0;
                r
            }
        };
        combined = Some(match combined {
            None => r,
            Some(acc) => acc.combine(r),
        });
    }
    Ok(combined.unwrap_or(VerifyReport {
        n,
        sequences_checked: 0,
        paths_checked: 0,
        checks: Vec::new(),
        failures: Vec::new(),
        failure_count: 0,
        equidistribution: Vec::new(),
        elapsed: Duration::ZERO,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan::<u64>(1), 1);
        assert_eq!(catalan::<u64>(7), 429);
        assert_eq!(catalan::<u64>(12), 208012);
    }

    #[test]
    fn counts_small() {
        let r = check_counts(3, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!((r.sequences_checked, r.paths_checked), (5, 5));
    }

    #[test]
    fn roundtrip_eight() {
        let r = check_roundtrip(8, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!((r.sequences_checked, r.paths_checked), (1430, 1430));
    }

    #[test]
    fn bijectivity_trivial() {
        let r = check_bijectivity(1, &cfg()).unwrap();
        assert!(r.passed());
        assert_eq!((r.sequences_checked, r.paths_checked), (1, 1));
    }

    #[test]
    fn statistics_small() {
        for n in 1..=6 {
            let r = check_statistics(n, &cfg()).unwrap();
            assert!(r.passed(), "{}", r.summary());
            assert_eq!(r.equidistribution.len(), 5);
        }
    }

    #[test]
    fn characterization_small() {
        assert!(check_characterization(6, 5, &cfg()).unwrap().passed());
        assert!(check_characterization(3, 2, &cfg()).unwrap().passed());
        // Fishburn numbers 1, 1, 2, 5, 15, 53 for lengths 0..=5
        assert_eq!(ascent_sequences_bounded(5, 9).len(), 1 + 2 + 5 + 15 + 53);
    }

    #[test]
    fn caps() {
        assert_eq!(
            check_counts(13, &cfg()).unwrap_err(),
            VerifyError::CapExceeded {
                requested: 13,
                cap: 12
            }
        );
        assert_eq!(check_counts(0, &cfg()).unwrap_err(), VerifyError::SizeZero);
        assert!(check_characterization(12, 3, &cfg()).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let a = check_invariants(7, &cfg()).unwrap();
        let b = check_invariants(7, &cfg().sequential()).unwrap();
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn combined_run() {
        let r = run_checks(5, &CheckKind::ALL, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.checks.len(), 6);
        assert_eq!(r.sequences_checked, 42);
        assert!(r.summary().contains("result: PASS"));
    }
}
