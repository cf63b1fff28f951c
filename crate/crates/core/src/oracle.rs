//! Brute-force reference answers for every query type.
//!
//! Each function scans the text directly and restates its problem's
//! definition. None of them touch suffix trees, reversed texts or derived
//! labels, so they stay independent of the indexed code paths.

use crate::text::{LabelRange, LabeledString};

fn occurs_at(text: &[u8], i: usize, pattern: &[u8]) -> bool {
    text.get(i..i + pattern.len()) == Some(pattern)
}

/// All 1-based starting positions of `pattern` in `text`.
pub fn occurrences(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    (0..text.len())
        .filter(|&i| occurs_at(text, i, pattern))
        .map(|i| i + 1)
        .collect()
}

pub fn naive_report(s: &LabeledString, pattern: &[u8], range: LabelRange) -> Vec<usize> {
    occurrences(s.text(), pattern)
        .into_iter()
        .filter(|&i| range.contains(s.labels()[i - 1]))
        .collect()
}

pub fn naive_count(s: &LabeledString, pattern: &[u8], range: LabelRange) -> usize {
    naive_report(s, pattern, range).len()
}

pub fn naive_empty(s: &LabeledString, pattern: &[u8], range: LabelRange) -> bool {
    naive_count(s, pattern, range) == 0
}

/// Occurrences starting inside the position range `[a, b]`.
pub fn naive_prss(text: &[u8], pattern: &[u8], a: usize, b: usize) -> Vec<usize> {
    occurrences(text, pattern)
        .into_iter()
        .filter(|&i| a <= i && i <= b)
        .collect()
}

/// Occurrences starting inside `[a, b]` and inside at least one interval.
pub fn naive_interval(
    text: &[u8],
    intervals: &[(usize, usize)],
    pattern: &[u8],
    a: usize,
    b: usize,
) -> Vec<usize> {
    naive_prss(text, pattern, a, b)
        .into_iter()
        .filter(|&i| intervals.iter().any(|&(s, f)| s <= i && i <= f))
        .collect()
}

/// Starting positions of `p1`, followed by exactly `gap` arbitrary bytes,
/// followed by `p2`.
pub fn naive_gap(text: &[u8], gap: usize, p1: &[u8], p2: &[u8]) -> Vec<usize> {
    (0..text.len())
        .filter(|&i| occurs_at(text, i, p1) && occurs_at(text, i + p1.len() + gap, p2))
        .map(|i| i + 1)
        .collect()
}
