//! Substring range reporting over labeled strings.
//!
//! A labeled string pairs every text position with an integer label. Given a
//! pattern `P` and a label range `[a, b]`, a substring range query reports (or
//! counts, or tests for) the occurrences of `P` whose labels fall in `[a, b]`.
//!
//! The index combines a suffix tree, split at a string-depth cutoff into a
//! *top tree* and *bottom trees*, with two kinds of range structures:
//!
//! * every top-tree node owns a sorted 1D store of the labels below it, so
//!   short patterns are answered by a single 1D range query;
//! * one global 2D store over the points `(order(i), lab(i))` answers the
//!   remaining (long) patterns with a rectangle query.
//!
//! On top of [`SrrIndex`] the [`reductions`] module builds position-restricted
//! substring search, substring search restricted to an interval set, and
//! gapped pattern search. The [`oracle`] module holds brute-force versions of
//! every query for verification.
//!
//! Positions are 1-based in every public interface.
//!
//! ```
//! use substring_range::{CutoffPolicy, LabelRange, LabeledString, PrssIndex, SrrIndex};
//!
//! let s = LabeledString::new(b"banana".to_vec(), vec![5, 1, 4, 2, 3, 6], 6)?;
//! let ix = SrrIndex::build(s, CutoffPolicy::Reporting)?;
//! assert_eq!(ix.report(b"a", LabelRange::new(1, 2)?)?, vec![2, 4]);
//! assert_eq!(ix.count(b"ana", LabelRange::new(0, 6)?)?, 2);
//!
//! let p = PrssIndex::build(b"banana".to_vec())?;
//! assert_eq!(p.query(b"ana", 1, 6)?, vec![2, 4]);
//! # Ok::<(), substring_range::Error>(())
//! ```

pub mod error;
pub mod format;
pub mod oracle;
pub mod range;
pub mod reductions;
pub mod srr;
pub mod suffix;
pub mod text;

pub use error::{Error, Result};
pub use range::{OneDimStore, TwoDimStore};
pub use reductions::{GapIndex, IntervalIndex, IntervalSet, PrssIndex};
pub use srr::{CutoffPolicy, QueryPath, QueryStats, Routing, SrrIndex};
pub use suffix::{Locus, SuffixIndex};
pub use text::{LabelRange, LabeledString};
