//! Labeled strings and label ranges.

use crate::error::{Error, Result};

/// A byte string where every position carries a label in `[0, u]`.
///
/// The label bound `u` is declared, not derived from the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledString {
    text: Vec<u8>,
    labels: Vec<u64>,
    bound: u64,
}

impl LabeledString {
    pub fn new(text: Vec<u8>, labels: Vec<u64>, bound: u64) -> Result<Self> {
        validate(&text, &labels, bound)?;
        if u32::try_from(text.len()).is_err() {
            return Err(Error::TextTooLong(text.len()));
        }
        Ok(Self {
            text,
            labels,
            bound,
        })
    }

    /// Labels every position with itself, `lab(i) = i`, and sets `u = n`.
    pub fn positional(text: Vec<u8>) -> Result<Self> {
        let n = text.len() as u64;
        let labels = (1..=n).collect();
        Self::new(text, labels, n)
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// The declared label bound `u`.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Label of 1-based position `i`.
    pub fn label(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: self.len(),
            });
        }
        Ok(self.labels[i - 1])
    }
}

/// Checks the labeled-string invariants, reporting the first one violated.
pub fn validate(text: &[u8], labels: &[u64], bound: u64) -> Result<()> {
    if text.is_empty() {
        return Err(Error::EmptyText);
    }
    if labels.len() != text.len() {
        return Err(Error::LengthMismatch {
            text: text.len(),
            labels: labels.len(),
        });
    }
    match labels.iter().position(|&l| l > bound) {
        Some(i) => Err(Error::LabelOutOfRange {
            position: i + 1,
            label: labels[i],
            bound,
        }),
        None => Ok(()),
    }
}

/// A closed label range `[a, b]` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelRange {
    pub a: u64,
    pub b: u64,
}

impl LabelRange {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a > b {
            return Err(Error::RangeOutOfBounds { a, b, bound: b });
        }
        Ok(Self { a, b })
    }

    /// Rejects ranges reaching past the label bound `u`.
    pub fn check(&self, bound: u64) -> Result<()> {
        if self.a > self.b || self.b > bound {
            return Err(Error::RangeOutOfBounds {
                a: self.a,
                b: self.b,
                bound,
            });
        }
        Ok(())
    }

    pub fn contains(&self, label: u64) -> bool {
        self.a <= label && label <= self.b
    }
}
