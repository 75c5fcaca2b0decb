use std::fmt;

use crate::graded::GradedSpace;

use super::DynError;

/// A set of disjoint, ascending, nonempty index intervals `[i_k..j_k]` in
/// `{1..N}` (1-based, inclusive).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalPartition {
    space: GradedSpace,
    intervals: Vec<(usize, usize)>,
}

impl IntervalPartition {
    pub fn new(space: &GradedSpace, intervals: Vec<(usize, usize)>) -> Result<Self, DynError> {
        let n = space.dim();
        let mut prev_end = 0;
        for &(a, b) in &intervals {
            if a == 0 || b > n {
                return Err(DynError::BadPartition(format!("interval {a}-{b} outside 1..={n}")));
            }
            if a > b {
                return Err(DynError::BadPartition(format!("interval {a}-{b} is empty")));
            }
            if a <= prev_end {
                return Err(DynError::BadPartition(format!("interval {a}-{b} overlaps or is out of order")));
            }
            prev_end = b;
        }
        Ok(IntervalPartition { space: space.clone(), intervals })
    }

    pub fn empty(space: &GradedSpace) -> Self {
        IntervalPartition { space: space.clone(), intervals: Vec::new() }
    }

    /// The single interval `[1..N]`.
    pub fn full(space: &GradedSpace) -> Self {
        IntervalPartition { space: space.clone(), intervals: vec![(1, space.dim())] }
    }

    /// Parses `"1-2,4-5"`; a bare index `"3"` is the interval `3-3` and the
    /// empty string is the empty partition.
    pub fn parse(space: &GradedSpace, text: &str) -> Result<Self, DynError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(IntervalPartition::empty(space));
        }
        let bad = |s: &str| DynError::BadPartition(format!("cannot parse interval '{s}'"));
        let mut intervals = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (a, b) = match part.split_once('-') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, part),
            };
            let a: usize = a.parse().map_err(|_| bad(part))?;
            let b: usize = b.parse().map_err(|_| bad(part))?;
            intervals.push((a, b));
        }
        IntervalPartition::new(space, intervals)
    }

    /// Every interval partition of `{1..N}`, including those with
    /// single-index intervals.
    pub fn enumerate(space: &GradedSpace) -> Vec<Self> {
        fn rec(start: usize, n: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            if start > n {
                out.push(cur.clone());
                return;
            }
            rec(start + 1, n, cur, out);
            for end in start..=n {
                cur.push((start, end));
                rec(end + 1, n, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        rec(1, space.dim(), &mut Vec::new(), &mut all);
        all.into_iter().map(|intervals| IntervalPartition { space: space.clone(), intervals }).collect()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    /// Index of the interval containing `i`, if any.
    pub fn interval_of(&self, i: usize) -> Option<usize> {
        self.intervals.iter().position(|&(a, b)| a <= i && i <= b)
    }

    /// True when `i ≠ j` lie in a common interval.
    pub fn same_interval(&self, i: usize, j: usize) -> bool {
        i != j && self.interval_of(i).is_some_and(|k| self.interval_of(j) == Some(k))
    }

    /// Ordered pairs `(i, j)`, `i ≠ j`, in a common interval.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.intervals.iter().flat_map(|&(a, b)| (a..=b).flat_map(move |i| (a..=b).filter(move |&j| j != i).map(move |j| (i, j))))
    }
}

impl fmt::Display for IntervalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(","))
    }
}
