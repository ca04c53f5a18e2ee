//! Dyck paths and their structural notions.
//!
//! Steps are indexed `1..=2n`; vertices `0..=2n`, vertex `k` being the point
//! reached after `k` steps. The top vertex of the downstep at index `i` is
//! vertex `i - 1`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("unexpected character {found:?} at position {position}")]
    BadCharacter { position: usize, found: char },
    #[error("path does not return to ground level")]
    Unbalanced,
    #[error("path dips below ground level at step {position}")]
    DipsBelowGround { position: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("step {index} is not {expected:?}")]
    WrongKind { index: usize, expected: Step },
    #[error("path is not elevated")]
    NotElevated,
    #[error("path is too small for this operation")]
    TooSmall,
    #[error("need {needed} upsteps, found {available}")]
    NotEnoughUpsteps { needed: usize, available: usize },
    #[error("edit produced an invalid path")]
    ResultInvalid,
    #[error("size must be at least 1")]
    SizeZero,
}

/// A step of a particular path, addressed by its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StepRef {
    pub index: usize,
    pub kind: Step,
}

impl StepRef {
    pub fn up(index: usize) -> Self {
        StepRef {
            index,
            kind: Step::Up,
        }
    }

    pub fn down(index: usize) -> Self {
        StepRef {
            index,
            kind: Step::Down,
        }
    }
}

/// A validated Dyck path of size `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

fn check_steps(steps: &[Step]) -> Result<(), PathError> {
    if steps.is_empty() {
        return Err(PathError::Empty);
    }
    let mut h: isize = 0;
    for (i, s) in steps.iter().enumerate() {
        h += match s {
            Step::Up => 1,
            Step::Down => -1,
        };
        if h < 0 {
            return Err(PathError::DipsBelowGround { position: i + 1 });
        }
    }
    if h != 0 {
        return Err(PathError::Unbalanced);
    }
    Ok(())
}

impl DyckPath {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, PathError> {
        check_steps(&steps)?;
        Ok(DyckPath { steps })
    }

    pub(crate) fn from_trusted(steps: Vec<Step>) -> Self {
        debug_assert!(check_steps(&steps).is_ok());
        DyckPath { steps }
    }

    /// The single-peak path `UD`.
    pub fn unit() -> Self {
        DyckPath {
            steps: vec![Step::Up, Step::Down],
        }
    }

    /// `U^n D^n`.
    pub fn pyramid(n: usize) -> Self {
        let mut steps = vec![Step::Up; n];
        steps.resize(2 * n, Step::Down);
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of upsteps.
    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    /// Number of steps, `2n`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step at 1-based `index`.
    pub fn step(&self, index: usize) -> Option<Step> {
        index
            .checked_sub(1)
            .and_then(|i| self.steps.get(i).copied())
    }

    fn step_ref(&self, r: StepRef) -> Result<usize, PathError> {
        let s = self.step(r.index).ok_or(PathError::IndexOutOfRange {
            index: r.index,
            max: self.len(),
        })?;
        if s != r.kind {
            return Err(PathError::WrongKind {
                index: r.index,
                expected: r.kind,
            });
        }
        Ok(r.index - 1)
    }

    /// `U`/`D` string.
    pub fn to_ud_string(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    /// Parenthesis string, `(` for up and `)` for down.
    pub fn to_paren_string(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Up => '(',
                Step::Down => ')',
            })
            .collect()
    }

    /// Packs the steps into bits, up = 1, starting at the most significant
    /// used bit. Injective among paths of equal size; needs `2n <= 64`.
    pub fn encode_bits(&self) -> u64 {
        assert!(self.steps.len() <= 64, "path too long to pack");
        self.steps
            .iter()
            .fold(0u64, |acc, s| (acc << 1) | (*s == Step::Up) as u64)
    }

    /// Vertex heights `h(0), ..., h(2n)`.
    pub fn heights(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0usize;
        out.push(0);
        for s in &self.steps {
            match s {
                Step::Up => h += 1,
                Step::Down => h -= 1,
            }
            out.push(h);
        }
        out
    }

    pub fn vertex_height(&self, v: usize) -> Result<usize, PathError> {
        if v > self.len() {
            return Err(PathError::IndexOutOfRange {
                index: v,
                max: self.len(),
            });
        }
        let ups = self.steps[..v].iter().filter(|s| **s == Step::Up).count();
        Ok(2 * ups - v)
    }

    pub fn max_height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    // -- runs and factors --

    /// Length of the final maximal run of upsteps.
    pub fn last_ascent_length(&self) -> usize {
        let last_up = self.last_up_index();
        self.steps[..=last_up]
            .iter()
            .rev()
            .take_while(|s| **s == Step::Up)
            .count()
    }

    /// Length of the first maximal run of downsteps.
    pub fn first_descent_length(&self) -> usize {
        self.steps
            .iter()
            .skip_while(|s| **s == Step::Up)
            .take_while(|s| **s == Step::Down)
            .count()
    }

    /// Number of `DU` factors.
    pub fn valley_count(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == Step::Down && w[1] == Step::Up)
            .count()
    }

    /// Number of `DUU` factors.
    pub fn duu_count(&self) -> usize {
        self.steps
            .windows(3)
            .filter(|w| w[0] == Step::Down && w[1] == Step::Up && w[2] == Step::Up)
            .count()
    }

    /// Vertices between the `U` and `D` of each peak, left to right.
    pub fn peak_positions(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::Up && w[1] == Step::Down)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Vertices between the `D` and `U` of each valley, left to right.
    pub fn valley_positions(&self) -> Vec<usize> {
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::Down && w[1] == Step::Up)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Vertex between the last peak's `U` and `D`.
    pub fn last_peak_vertex(&self) -> usize {
        self.last_up_index() + 1
    }

    // 0-based index of the last upstep; always followed by a downstep.
    fn last_up_index(&self) -> usize {
        self.steps
            .iter()
            .rposition(|s| *s == Step::Up)
            .expect("Dyck paths of size >= 1 have an upstep")
    }

    pub fn ends_with_peak(&self) -> bool {
        let n = self.steps.len();
        self.steps[n - 2] == Step::Up
    }

    /// Number of downsteps that end at ground level.
    pub fn return_count(&self) -> usize {
        let mut h = 0usize;
        let mut returns = 0;
        for s in &self.steps {
            match s {
                Step::Up => h += 1,
                Step::Down => {
                    h -= 1;
                    if h == 0 {
                        returns += 1;
                    }
                }
            }
        }
        returns
    }

    pub fn is_elevated(&self) -> bool {
        self.return_count() == 1
    }

    pub fn is_pyramid(&self) -> bool {
        let n = self.size();
        self.steps[..n].iter().all(|s| *s == Step::Up)
    }

    /// Height of the lowest valley vertex; `None` for pyramids.
    pub fn degree_of_elevation(&self) -> Option<usize> {
        let heights = self.heights();
        self.valley_positions()
            .into_iter()
            .map(|v| heights[v])
            .min()
    }

    // -- matching --

    /// `partner[i]` is the 0-based index of the step matched with step `i`.
    pub fn matching(&self) -> Vec<usize> {
        let mut partner = vec![0; self.steps.len()];
        let mut open = Vec::with_capacity(self.size());
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => open.push(i),
                Step::Down => {
                    let u = open.pop().expect("validated path");
                    partner[i] = u;
                    partner[u] = i;
                }
            }
        }
        partner
    }

    pub fn match_of_downstep(&self, d: StepRef) -> Result<StepRef, PathError> {
        if d.kind != Step::Down {
            return Err(PathError::WrongKind {
                index: d.index,
                expected: Step::Down,
            });
        }
        let i = self.step_ref(d)?;
        // walk left until the balance is restored
        let mut depth = 0usize;
        for k in (0..i).rev() {
            match self.steps[k] {
                Step::Down => depth += 1,
                Step::Up if depth == 0 => return Ok(StepRef::up(k + 1)),
                Step::Up => depth -= 1,
            }
        }
        unreachable!("validated path always matches a downstep")
    }

    pub fn match_of_upstep(&self, u: StepRef) -> Result<StepRef, PathError> {
        if u.kind != Step::Up {
            return Err(PathError::WrongKind {
                index: u.index,
                expected: Step::Up,
            });
        }
        let i = self.step_ref(u)?;
        let mut depth = 0usize;
        for k in i + 1..self.steps.len() {
            match self.steps[k] {
                Step::Up => depth += 1,
                Step::Down if depth == 0 => return Ok(StepRef::down(k + 1)),
                Step::Down => depth -= 1,
            }
        }
        unreachable!("validated path always matches an upstep")
    }

    /// The maximal run of downsteps ending the path, as 1-based indices.
    pub fn terminal_descent(&self) -> RangeInclusive<usize> {
        let start = self.last_up_index() + 2;
        start..=self.steps.len()
    }

    /// Downsteps on the terminal descent whose matching upstep is the middle
    /// `U` of a `DUU`, left to right.
    pub fn key_downsteps(&self) -> Vec<StepRef> {
        let len = self.steps.len();
        let first = self.last_up_index() + 1;
        // matching for the terminal descent only: the k-th downstep from the
        // top of the terminal descent matches the k-th unmatched upstep
        // counted back from the last peak
        let mut out = Vec::new();
        let mut open = Vec::with_capacity(self.size());
        for (i, s) in self.steps[..first].iter().enumerate() {
            match s {
                Step::Up => open.push(i),
                Step::Down => {
                    open.pop();
                }
            }
        }
        for d in first..len {
            let u = open.pop().expect("validated path");
            let middle_of_duu = u >= 1
                && self.steps[u - 1] == Step::Down
                && u + 1 < len
                && self.steps[u + 1] == Step::Up;
            if middle_of_duu {
                out.push(StepRef::down(d + 1));
            }
        }
        out
    }

    // -- edits --

    pub fn insert_ud_at_vertex(&self, v: usize) -> Result<DyckPath, PathError> {
        if v > self.len() {
            return Err(PathError::IndexOutOfRange {
                index: v,
                max: self.len(),
            });
        }
        let mut steps = Vec::with_capacity(self.len() + 2);
        steps.extend_from_slice(&self.steps[..v]);
        steps.push(Step::Up);
        steps.push(Step::Down);
        steps.extend_from_slice(&self.steps[v..]);
        Ok(DyckPath::from_trusted(steps))
    }

    pub fn append_peak(&self) -> DyckPath {
        self.insert_ud_at_vertex(self.len())
            .expect("the end vertex is in range")
    }

    /// Prepends `U` and appends `D`.
    pub fn elevate(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(self.len() + 2);
        steps.push(Step::Up);
        steps.extend_from_slice(&self.steps);
        steps.push(Step::Down);
        DyckPath::from_trusted(steps)
    }

    /// Deletes the first and last steps of an elevated path.
    pub fn lower(&self) -> Result<DyckPath, PathError> {
        if self.size() < 2 {
            return Err(PathError::TooSmall);
        }
        if !self.is_elevated() {
            return Err(PathError::NotElevated);
        }
        Ok(DyckPath::from_trusted(
            self.steps[1..self.len() - 1].to_vec(),
        ))
    }

    /// Removes the rightmost `UD` factor.
    pub fn delete_last_peak(&self) -> Result<DyckPath, PathError> {
        if self.size() < 2 {
            return Err(PathError::TooSmall);
        }
        let u = self.last_up_index();
        let mut steps = self.steps.clone();
        steps.drain(u..u + 2);
        Ok(DyckPath::from_trusted(steps))
    }

    /// Removes `k` upsteps from the start of the path and reinserts them
    /// immediately before the referenced upstep (index taken in `self`).
    pub fn transfer_upsteps_from_front(
        &self,
        k: usize,
        to_ascent_of: StepRef,
    ) -> Result<DyckPath, PathError> {
        if to_ascent_of.kind != Step::Up {
            return Err(PathError::WrongKind {
                index: to_ascent_of.index,
                expected: Step::Up,
            });
        }
        let target = self.step_ref(to_ascent_of)?;
        if k == 0 {
            return Ok(self.clone());
        }
        let available = self.steps.iter().take_while(|s| **s == Step::Up).count();
        if available < k {
            return Err(PathError::NotEnoughUpsteps {
                needed: k,
                available,
            });
        }
        if target < k {
            return Err(PathError::ResultInvalid);
        }
        let mut steps = Vec::with_capacity(self.len());
        steps.extend_from_slice(&self.steps[k..target]);
        steps.extend(std::iter::repeat_n(Step::Up, k));
        steps.extend_from_slice(&self.steps[target..]);
        check_steps(&steps).map_err(|_| PathError::ResultInvalid)?;
        Ok(DyckPath { steps })
    }

    /// Removes the `k` upsteps immediately preceding the referenced upstep
    /// (all within its maximal ascent) and prepends `k` upsteps.
    pub fn transfer_upsteps_to_front(
        &self,
        k: usize,
        before_up: StepRef,
    ) -> Result<DyckPath, PathError> {
        if before_up.kind != Step::Up {
            return Err(PathError::WrongKind {
                index: before_up.index,
                expected: Step::Up,
            });
        }
        let target = self.step_ref(before_up)?;
        if k == 0 {
            return Ok(self.clone());
        }
        let available = self.upsteps_before_in_ascent(before_up)?;
        if available < k {
            return Err(PathError::NotEnoughUpsteps {
                needed: k,
                available,
            });
        }
        let mut steps = Vec::with_capacity(self.len());
        steps.extend(std::iter::repeat_n(Step::Up, k));
        steps.extend_from_slice(&self.steps[..target - k]);
        steps.extend_from_slice(&self.steps[target..]);
        check_steps(&steps).map_err(|_| PathError::ResultInvalid)?;
        Ok(DyckPath { steps })
    }

    /// Number of upsteps preceding `u` within its maximal ascent.
    pub fn upsteps_before_in_ascent(&self, u: StepRef) -> Result<usize, PathError> {
        if u.kind != Step::Up {
            return Err(PathError::WrongKind {
                index: u.index,
                expected: Step::Up,
            });
        }
        let i = self.step_ref(u)?;
        Ok(self.steps[..i]
            .iter()
            .rev()
            .take_while(|s| **s == Step::Up)
            .count())
    }

    // -- rendering --

    /// ASCII picture: one row per height level, top row first; `/` for an
    /// upstep rising to the row's height, `\` for a downstep falling from it.
    pub fn render_ascii(&self) -> String {
        let top = self.max_height();
        let mut rows = vec![vec![b' '; self.len()]; top];
        let mut h = 0usize;
        for (i, s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => {
                    h += 1;
                    rows[top - h][i] = b'/';
                }
                Step::Down => {
                    rows[top - h][i] = b'\\';
                    h -= 1;
                }
            }
        }
        let mut out = String::new();
        for row in rows {
            let line = String::from_utf8(row).expect("ascii");
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// The five path statistics, in table order.
    pub fn statistics(&self) -> PathStats {
        path_statistics(self)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Parses a path over `{U, D}` or `{(, )}`.
pub fn parse_path(text: &str) -> Result<DyckPath, PathError> {
    let text = text.trim();
    let steps = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            'U' | '(' => Ok(Step::Up),
            'D' | ')' => Ok(Step::Down),
            found => Err(PathError::BadCharacter {
                position: i + 1,
                found,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    DyckPath::from_steps(steps)
}

impl FromStr for DyckPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_path(s)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_ud_string())
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_path(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathStats {
    pub first_descent_length: usize,
    /// Raw length; the sequence side compares against this minus one.
    pub last_ascent_length: usize,
    pub valleys: usize,
    pub duu_count: usize,
    /// Absent iff the path is a pyramid.
    pub degree_of_elevation: Option<usize>,
}

pub fn path_statistics(p: &DyckPath) -> PathStats {
    PathStats {
        first_descent_length: p.first_descent_length(),
        last_ascent_length: p.last_ascent_length(),
        valleys: p.valley_count(),
        duu_count: p.duu_count(),
        degree_of_elevation: p.degree_of_elevation(),
    }
}

/// Lexicographic stream (`U < D`) of Dyck paths of a fixed size.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    steps: Vec<Step>,
    fixed: usize,
    fresh: bool,
    done: bool,
}

impl DyckPaths {
    // Smallest completion of `prefix`: remaining upsteps first, then downsteps.
    fn starting_from(prefix: &[Step], n: usize) -> Option<Self> {
        let ups = prefix.iter().filter(|s| **s == Step::Up).count();
        let downs = prefix.len() - ups;
        if prefix.len() > 2 * n || ups > n || downs > n {
            return None;
        }
        let mut h: isize = 0;
        for s in prefix {
            h += if *s == Step::Up { 1 } else { -1 };
            if h < 0 {
                return None;
            }
        }
        let mut steps = prefix.to_vec();
        steps.extend(std::iter::repeat_n(Step::Up, n - ups));
        steps.extend(std::iter::repeat_n(Step::Down, n - downs));
        Some(DyckPaths {
            steps,
            fixed: prefix.len(),
            fresh: true,
            done: false,
        })
    }

    fn advance(&mut self) -> bool {
        let len = self.steps.len();
        let n = len / 2;
        // heights before each position
        let mut ups_before = vec![0usize; len + 1];
        for i in 0..len {
            ups_before[i + 1] = ups_before[i] + (self.steps[i] == Step::Up) as usize;
        }
        for i in (self.fixed..len).rev() {
            if self.steps[i] != Step::Up {
                continue;
            }
            let height_before = 2 * ups_before[i] - i;
            if height_before == 0 {
                continue;
            }
            self.steps[i] = Step::Down;
            let ups_left = n - ups_before[i];
            let downs_left = len - i - 1 - ups_left;
            let tail = &mut self.steps[i + 1..];
            tail[..ups_left].fill(Step::Up);
            tail[ups_left..ups_left + downs_left].fill(Step::Down);
            return true;
        }
        false
    }
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(DyckPath::from_trusted(self.steps.clone()))
    }
}

pub fn enumerate_dyck_paths(n: usize) -> Result<DyckPaths, PathError> {
    if n == 0 {
        return Err(PathError::SizeZero);
    }
    Ok(DyckPaths::starting_from(&[], n).expect("empty prefix always extends"))
}

/// Dyck paths of size `n` whose first steps are `prefix`; empty when no such
/// path exists.
pub fn enumerate_dyck_paths_with_prefix(prefix: &[Step], n: usize) -> DyckPaths {
    DyckPaths::starting_from(prefix, n).unwrap_or(DyckPaths {
        steps: Vec::new(),
        fixed: 0,
        fresh: false,
        done: true,
    })
}

/// All step strings of length `len` that can start a Dyck path of size `n`.
pub fn dyck_prefixes(len: usize, n: usize) -> Vec<Vec<Step>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(cur: &mut Vec<Step>, h: usize, len: usize, n: usize, out: &mut Vec<Vec<Step>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let ups = (cur.len() + h) / 2;
        if ups < n {
            cur.push(Step::Up);
            go(cur, h + 1, len, n, out);
            cur.pop();
        }
        if h > 0 {
            cur.push(Step::Down);
            go(cur, h - 1, len, n, out);
            cur.pop();
        }
    }
    go(&mut cur, 0, len.min(2 * n), n, &mut out);
    out
}
