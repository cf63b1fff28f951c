//! Three search problems answered by relabeling the text and running a
//! substring range query.
//!
//! * [`PrssIndex`]: occurrences starting in a position range; `lab(i) = i`.
//! * [`IntervalIndex`]: the same, restricted to positions covered by a fixed
//!   interval set; uncovered positions get label 0, which no query range with
//!   `a >= 1` can reach.
//! * [`GapIndex`]: occurrences of `P1`, `d` wildcard bytes, then `P2`. The
//!   label of position `i` is the order, in the reversed text, of the suffix
//!   that starts at the reverse of position `i - d - 1`. Occurrences of `P1`
//!   ending there form a contiguous order interval, so one query for `P2`
//!   over that label interval finds every gapped match.

use crate::error::{Error, Result};
use crate::srr::{CutoffPolicy, SrrIndex};
use crate::suffix::SuffixIndex;
use crate::text::{LabelRange, LabeledString};

fn position_range(a: usize, b: usize, n: usize) -> Result<LabelRange> {
    if a == 0 || a > b || b > n {
        return Err(Error::RangeOutOfBounds {
            a: a as u64,
            b: b as u64,
            bound: n as u64,
        });
    }
    Ok(LabelRange {
        a: a as u64,
        b: b as u64,
    })
}

/// Position-restricted substring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrssIndex {
    pub(crate) inner: SrrIndex,
}

impl PrssIndex {
    pub fn build(text: Vec<u8>) -> Result<Self> {
        Self::build_with(text, CutoffPolicy::Reporting)
    }

    pub fn build_with(text: Vec<u8>, policy: CutoffPolicy) -> Result<Self> {
        let source = LabeledString::positional(text)?;
        Ok(Self {
            inner: SrrIndex::build(source, policy)?,
        })
    }

    pub fn inner(&self) -> &SrrIndex {
        &self.inner
    }

    /// Occurrences of `pattern` starting in `[a, b]`, ascending.
    pub fn query(&self, pattern: &[u8], a: usize, b: usize) -> Result<Vec<usize>> {
        let r = position_range(a, b, self.inner.len())?;
        self.inner.report(pattern, r)
    }

    pub fn count(&self, pattern: &[u8], a: usize, b: usize) -> Result<usize> {
        let r = position_range(a, b, self.inner.len())?;
        self.inner.count(pattern, r)
    }
}

/// A set of closed position intervals, possibly overlapping, in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<(usize, usize)>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<(usize, usize)>) -> Self {
        Self { intervals }
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self
            .intervals
            .iter()
            .find(|&&(s, f)| s == 0 || s > f || f > n)
        {
            Some(&(start, end)) => Err(Error::IntervalOutOfBounds { start, end, len: n }),
            None => Ok(()),
        }
    }

    /// `lab(i) = i` for covered positions and 0 elsewhere, by a
    /// difference-array sweep.
    pub fn labels(&self, n: usize) -> Result<Vec<u64>> {
        self.validate(n)?;
        let mut diff = vec![0i64; n + 2];
        for &(s, f) in &self.intervals {
            diff[s] += 1;
            diff[f + 1] -= 1;
        }
        let mut cover = 0;
        Ok((1..=n)
            .map(|i| {
                cover += diff[i];
                if cover > 0 {
                    i as u64
                } else {
                    0
                }
            })
            .collect())
    }
}

/// Substring search restricted to a position range and an interval set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalIndex {
    pub(crate) intervals: IntervalSet,
    pub(crate) inner: SrrIndex,
}

impl IntervalIndex {
    pub fn build(text: Vec<u8>, intervals: IntervalSet) -> Result<Self> {
        Self::build_with(text, intervals, CutoffPolicy::Reporting)
    }

    pub fn build_with(text: Vec<u8>, intervals: IntervalSet, policy: CutoffPolicy) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        let n = text.len();
        let labels = intervals.labels(n)?;
        let source = LabeledString::new(text, labels, n as u64)?;
        Ok(Self {
            intervals,
            inner: SrrIndex::build(source, policy)?,
        })
    }

    pub fn inner(&self) -> &SrrIndex {
        &self.inner
    }

    pub fn intervals(&self) -> &IntervalSet {
        &self.intervals
    }

    /// Occurrences starting in `[a, b]` (with `a >= 1`) and in some interval.
    pub fn query(&self, pattern: &[u8], a: usize, b: usize) -> Result<Vec<usize>> {
        let r = position_range(a, b, self.inner.len())?;
        self.inner.report(pattern, r)
    }

    pub fn count(&self, pattern: &[u8], a: usize, b: usize) -> Result<usize> {
        let r = position_range(a, b, self.inner.len())?;
        self.inner.count(pattern, r)
    }
}

/// Maps a position reported for `P2` back to the start of the gapped match.
pub fn gap_match_start(inner_position: usize, p1_len: usize, gap: usize) -> usize {
    inner_position - p1_len - gap
}

/// Labels for the gapped-pattern reduction, `reverse` being the suffix index
/// of the reversed text.
pub fn gap_labels(reverse: &SuffixIndex, gap: usize) -> Vec<u64> {
    let n = reverse.len();
    (1..=n)
        .map(|i| {
            if i < gap + 2 {
                return 0;
            }
            let j = n - i + gap + 2;
            assert!(
                (2..=n).contains(&j),
                "reverse position {j} outside [2, {n}]"
            );
            reverse.order_of(j).expect("position checked above") as u64
        })
        .collect()
}

/// What a gapped query did internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapTrace {
    /// Order interval of `P1` reversed in the reversed text; `None` if
    /// `P1` does not occur.
    pub interval: Option<(usize, usize)>,
    /// Positions of `P2` reported by the inner index.
    pub inner_hits: Vec<usize>,
    pub matches: Vec<usize>,
}

/// Gapped pattern search for a gap length fixed at build time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapIndex {
    pub(crate) gap: usize,
    pub(crate) reverse: SuffixIndex,
    pub(crate) inner: SrrIndex,
}

impl GapIndex {
    pub fn build(text: Vec<u8>, gap: usize) -> Result<Self> {
        Self::build_with(text, gap, CutoffPolicy::Reporting)
    }

    pub fn build_with(text: Vec<u8>, gap: usize, policy: CutoffPolicy) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        let n = text.len();
        let reversed: Vec<u8> = text.iter().rev().copied().collect();
        let reverse = SuffixIndex::build(&reversed, 0)?;
        let labels = gap_labels(&reverse, gap);
        let source = LabeledString::new(text, labels, n as u64)?;
        Ok(Self {
            gap,
            reverse,
            inner: SrrIndex::build(source, policy)?,
        })
    }

    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn inner(&self) -> &SrrIndex {
        &self.inner
    }

    pub fn reverse_index(&self) -> &SuffixIndex {
        &self.reverse
    }

    /// Starting positions of `p1`, `gap` arbitrary bytes, then `p2`.
    pub fn query(&self, p1: &[u8], p2: &[u8]) -> Result<Vec<usize>> {
        Ok(self.query_traced(p1, p2)?.matches)
    }

    pub fn query_traced(&self, p1: &[u8], p2: &[u8]) -> Result<GapTrace> {
        let Some(r) = self.label_interval(p1, p2)? else {
            return Ok(GapTrace {
                interval: None,
                inner_hits: Vec::new(),
                matches: Vec::new(),
            });
        };
        let inner_hits = self.inner.report(p2, r)?;
        // the mapping is monotone, so the output stays ascending
        let matches = inner_hits
            .iter()
            .map(|&i| gap_match_start(i, p1.len(), self.gap))
            .collect();
        Ok(GapTrace {
            interval: Some((r.a as usize, r.b as usize)),
            inner_hits,
            matches,
        })
    }

    pub fn count(&self, p1: &[u8], p2: &[u8]) -> Result<usize> {
        match self.label_interval(p1, p2)? {
            Some(r) => self.inner.count(p2, r),
            None => Ok(0),
        }
    }

    fn label_interval(&self, p1: &[u8], p2: &[u8]) -> Result<Option<LabelRange>> {
        if p1.is_empty() || p2.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let p1_rev: Vec<u8> = p1.iter().rev().copied().collect();
        Ok(self.reverse.locus(&p1_rev).map(|l| LabelRange {
            a: l.left as u64,
            b: l.right as u64,
        }))
    }
}
