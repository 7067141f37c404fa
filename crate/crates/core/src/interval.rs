//! Finite unions of rational intervals with explicit endpoint closure, and
//! the Minkowski sumset machinery used to check continuous colorings.

use std::cmp::Ordering;
use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("empty interval {0}")]
    Empty(String),
    #[error("{t} is not a sum of {m} members of the set")]
    NotInSumset { t: Rational, m: u32 },
    #[error("fold count must be at least 1")]
    ZeroFold,
    #[error("invalid closure code {0:?}")]
    BadClosure(String),
}

/// A nonempty interval. Degenerate point intervals `[a, a]` are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self, IntervalError> {
        let iv = Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        match iv.lo.cmp(&iv.hi) {
            Ordering::Less => Ok(iv),
            Ordering::Equal if lo_closed && hi_closed => Ok(iv),
            _ => Err(IntervalError::Empty(iv.to_string())),
        }
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        Interval::new(lo, hi, true, false)
    }

    /// `[lo, hi]`
    pub fn closed(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        Interval::new(lo, hi, true, true)
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// Parses the two-character closure codes `[)`, `[]`, `()`, `(]`.
    pub fn from_code(lo: Rational, hi: Rational, code: &str) -> Result<Self, IntervalError> {
        let (lc, hc) = match code {
            "[)" => (true, false),
            "[]" => (true, true),
            "()" => (false, false),
            "(]" => (false, true),
            other => return Err(IntervalError::BadClosure(other.to_string())),
        };
        Interval::new(lo, hi, lc, hc)
    }

    pub fn closure_code(&self) -> &'static str {
        match (self.lo_closed, self.hi_closed) {
            (true, false) => "[)",
            (true, true) => "[]",
            (false, false) => "()",
            (false, true) => "(]",
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    /// Pointwise sum `{x + y}`. Each endpoint is closed iff both summands'
    /// corresponding endpoints are.
    pub fn sum(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            lo_closed: self.lo_closed && other.lo_closed,
            hi_closed: self.hi_closed && other.hi_closed,
        }
    }

    /// `{t - x : x in self}`
    fn reflect_from(&self, t: &Rational) -> Interval {
        Interval {
            lo: t - &self.hi,
            hi: t - &self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn scale(&self, factor: &Rational) -> Interval {
        assert!(factor.is_positive(), "scale factor must be positive");
        Interval {
            lo: &self.lo * factor,
            hi: &self.hi * factor,
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    /// A deterministic member: the left endpoint when closed, else the right
    /// endpoint when closed, else the midpoint.
    pub fn representative(&self) -> Rational {
        if self.lo_closed {
            self.lo.clone()
        } else if self.hi_closed {
            self.hi.clone()
        } else {
            self.lo.midpoint(&self.hi)
        }
    }

    pub fn midpoint(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    // Orders left endpoints: a closed endpoint starts before an open one at
    // the same value.
    fn cmp_lo(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then_with(|| other.lo_closed.cmp(&self.lo_closed))
    }

    // Orders right endpoints: a closed endpoint ends after an open one at the
    // same value.
    fn cmp_hi(&self, other: &Interval) -> Ordering {
        self.hi
            .cmp(&other.hi)
            .then_with(|| self.hi_closed.cmp(&other.hi_closed))
    }

    /// True when `next` (starting no earlier than `self`) overlaps or abuts
    /// `self` so that their union is a single interval.
    fn mergeable_with(&self, next: &Interval) -> bool {
        match next.lo.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Greater => false,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sorted, pairwise disjoint, non-mergeable sequence of intervals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn from_interval(iv: Interval) -> Self {
        IntervalSet { intervals: vec![iv] }
    }

    /// Canonical form of an arbitrary union of intervals.
    pub fn normalize(raw: impl IntoIterator<Item = Interval>) -> Self {
        let mut raw: Vec<Interval> = raw.into_iter().collect();
        raw.sort_by(|a, b| a.cmp_lo(b));
        let mut out: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match out.last_mut() {
                Some(cur) if cur.mergeable_with(&iv) => {
                    if iv.cmp_hi(cur) == Ordering::Greater {
                        cur.hi = iv.hi;
                        cur.hi_closed = iv.hi_closed;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // first interval whose right end is not below x
        let idx = self.intervals.partition_point(|iv| {
            if iv.hi_closed {
                iv.hi < *x
            } else {
                iv.hi <= *x
            }
        });
        self.intervals.get(idx).is_some_and(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::normalize(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                if let Some(c) = a.intersect(b) {
                    parts.push(c);
                }
            }
        }
        IntervalSet::normalize(parts)
    }

    pub fn scale(&self, factor: &Rational) -> IntervalSet {
        IntervalSet {
            intervals: self.intervals.iter().map(|iv| iv.scale(factor)).collect(),
        }
    }

    /// Minkowski sum `{x + y : x in self, y in other}`.
    pub fn minkowski_sum(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::with_capacity(self.len() * other.len());
        for a in &self.intervals {
            for b in &other.intervals {
                parts.push(a.sum(b));
            }
        }
        IntervalSet::normalize(parts)
    }

    /// The range of `x1 + ... + xm` with every `xi` in the set.
    pub fn m_fold_sumset(&self, m: u32) -> Result<IntervalSet, IntervalError> {
        if m == 0 {
            return Err(IntervalError::ZeroFold);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.minkowski_sum(self);
        }
        Ok(acc)
    }

    /// Finds `m` members of the set (with repetition) summing exactly to `t`.
    ///
    /// Searches for a multiset of `m` component intervals whose summed range
    /// holds `t`, then fixes values left to right, each at a representative
    /// point that keeps the residual reachable by the remaining intervals.
    pub fn decompose_sum(&self, m: u32, t: &Rational) -> Result<Vec<Rational>, IntervalError> {
        if m == 0 {
            return Err(IntervalError::ZeroFold);
        }
        let not_found = || IntervalError::NotInSumset { t: t.clone(), m };
        let mut choice = Vec::with_capacity(m as usize);
        if !self.choose_intervals(m as usize, 0, None, t, &mut choice) {
            return Err(not_found());
        }
        let picked: Vec<&Interval> = choice.iter().map(|&i| &self.intervals[i]).collect();

        let mut values = Vec::with_capacity(m as usize);
        let mut residual = t.clone();
        for i in 0..picked.len() - 1 {
            let rest = sum_range(&picked[i + 1..]);
            let window = rest.reflect_from(&residual);
            let allowed = picked[i].intersect(&window).ok_or_else(not_found)?;
            let x = allowed.representative();
            residual = &residual - &x;
            values.push(x);
        }
        let last = picked[picked.len() - 1];
        if !last.contains(&residual) {
            return Err(not_found());
        }
        values.push(residual);
        Ok(values)
    }

    // Backtracking over nondecreasing index sequences; `partial` is the summed
    // range of the intervals chosen so far.
    fn choose_intervals(
        &self,
        remaining: usize,
        start: usize,
        partial: Option<Interval>,
        t: &Rational,
        choice: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return partial.is_some_and(|p| p.contains(t));
        }
        for i in start..self.intervals.len() {
            let iv = &self.intervals[i];
            let next = match &partial {
                Some(p) => p.sum(iv),
                None => iv.clone(),
            };
            // the cheapest completion uses `remaining - 1` more copies of the
            // first interval; if even that overshoots, later indices will too
            let extra = remaining - 1;
            let min_rest = (0..extra).fold(next.clone(), |acc, _| acc.sum(&self.intervals[i]));
            if min_rest.lo > *t {
                break;
            }
            let max_rest = (0..extra).fold(next.clone(), |acc, _| {
                acc.sum(self.intervals.last().expect("nonempty"))
            });
            if max_rest.hi < *t {
                continue;
            }
            choice.push(i);
            if self.choose_intervals(remaining - 1, i, Some(next), t, choice) {
                return true;
            }
            choice.pop();
        }
        false
    }
}

fn sum_range(ivs: &[&Interval]) -> Interval {
    let mut it = ivs.iter();
    let first = (*it.next().expect("nonempty slice")).clone();
    it.fold(first, |acc, iv| acc.sum(iv))
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn co(a: i64, b: i64) -> Interval {
        Interval::closed_open(q(a, 1), q(b, 1)).unwrap()
    }

    fn set(ivs: &[Interval]) -> IntervalSet {
        IntervalSet::normalize(ivs.iter().cloned())
    }

    #[test]
    fn rejects_empty_intervals() {
        assert!(Interval::closed_open(q(2, 1), q(2, 1)).is_err());
        assert!(Interval::closed_open(q(3, 1), q(2, 1)).is_err());
        assert!(Interval::new(q(2, 1), q(2, 1), false, true).is_err());
        assert!(Interval::closed(q(2, 1), q(2, 1)).is_ok());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(set(&[co(1, 2), co(2, 3)]), set(&[co(1, 3)]));
        assert_eq!(set(&[co(5, 6), co(1, 2)]).intervals(), &[co(1, 2), co(5, 6)]);
        let open23 = Interval::new(q(2, 1), q(3, 1), false, false).unwrap();
        let closed12 = Interval::closed(q(1, 1), q(2, 1)).unwrap();
        assert_eq!(set(&[closed12, open23]).intervals(), &[co(1, 3)]);
    }

    #[test]
    fn normalize_keeps_genuine_gaps() {
        // [1,2) and (2,3) miss the point 2
        let open23 = Interval::new(q(2, 1), q(3, 1), false, false).unwrap();
        let s = set(&[co(1, 2), open23]);
        assert_eq!(s.len(), 2);
        assert!(!s.contains(&q(2, 1)));
    }

    #[test]
    fn normalize_is_idempotent() {
        let s = set(&[co(4, 9), co(1, 2), co(3, 5), Interval::point(q(2, 1))]);
        assert_eq!(IntervalSet::normalize(s.intervals().iter().cloned()), s);
        assert_eq!(s.intervals(), &[Interval::closed(q(1, 1), q(2, 1)).unwrap(), co(3, 9)]);
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(set(&[co(1, 2)]).minkowski_sum(&set(&[co(1, 2)])), set(&[co(2, 4)]));
        let a = set(&[co(1, 2), co(5, 6)]);
        assert_eq!(a.minkowski_sum(&a).intervals(), &[co(2, 4), co(6, 8), co(10, 12)]);
        let p = IntervalSet::from_interval(Interval::point(q(1, 1)));
        assert_eq!(p.minkowski_sum(&set(&[co(3, 4)])), set(&[co(4, 5)]));
    }

    #[test]
    fn m_fold_examples() {
        assert_eq!(set(&[co(1, 2)]).m_fold_sumset(2).unwrap(), set(&[co(2, 4)]));
        let a = set(&[co(1, 2), co(5, 6)]);
        assert_eq!(
            a.m_fold_sumset(3).unwrap().intervals(),
            &[co(3, 6), co(7, 10), co(11, 14), co(15, 18)]
        );
        assert_eq!(set(&[co(2, 6)]).m_fold_sumset(3).unwrap(), set(&[co(6, 18)]));
        assert_eq!(a.m_fold_sumset(1).unwrap(), a);
        assert!(a.m_fold_sumset(0).is_err());
    }

    #[test]
    fn decompose_examples() {
        let a = set(&[co(1, 2)]);
        let v = a.decompose_sum(2, &q(3, 1)).unwrap();
        assert_eq!(v.iter().cloned().sum::<Rational>(), q(3, 1));
        assert!(v.iter().all(|x| a.contains(x)));
        assert_eq!(v, vec![q(3, 2), q(3, 2)]);

        let p = IntervalSet::from_interval(Interval::point(q(1, 1)));
        assert_eq!(p.decompose_sum(3, &q(3, 1)).unwrap(), vec![q(1, 1); 3]);

        let b = set(&[co(2, 6)]);
        assert_eq!(b.decompose_sum(3, &q(6, 1)).unwrap(), vec![q(2, 1); 3]);
    }

    #[test]
    fn decompose_rejects_non_members() {
        let a = set(&[co(1, 2)]);
        assert!(a.decompose_sum(2, &q(4, 1)).is_err());
        assert!(a.decompose_sum(2, &q(1, 1)).is_err());
        let gap = set(&[co(1, 2), co(5, 6)]);
        assert!(gap.decompose_sum(2, &q(9, 2)).is_err());
        assert!(gap.decompose_sum(2, &q(13, 2)).is_ok());
    }

    #[test]
    fn membership_by_binary_search() {
        let s = set(&[co(1, 2), Interval::point(q(3, 1)), co(5, 6)]);
        assert!(s.contains(&q(1, 1)));
        assert!(!s.contains(&q(2, 1)));
        assert!(s.contains(&q(3, 1)));
        assert!(!s.contains(&q(7, 2)));
        assert!(s.contains(&q(11, 2)));
        assert!(!s.contains(&q(6, 1)));
        assert!(!s.contains(&q(0, 1)));
    }

    #[test]
    fn closure_codes_round_trip() {
        for code in ["[)", "[]", "()", "(]"] {
            let iv = Interval::from_code(q(1, 1), q(2, 1), code).unwrap();
            assert_eq!(iv.closure_code(), code);
        }
        assert!(Interval::from_code(q(1, 1), q(2, 1), "[[").is_err());
    }
}
