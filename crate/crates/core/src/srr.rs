//! The substring range index.
//!
//! Queries find the locus of the pattern, then answer from the locus's own
//! 1D store when the locus is in the top tree, or from the global 2D store
//! restricted to the locus's suffix-order interval otherwise. Bottom loci have
//! `strdepth(parent) > tau`, so the pattern is longer than the cutoff whenever
//! the 2D path is taken.

use crate::error::Result;
use crate::range::{OneDimStore, TwoDimStore};
use crate::suffix::{NodeId, SuffixIndex};
use crate::text::{LabelRange, LabeledString};

pub(crate) const NO_STORE: u32 = u32::MAX;

/// How the top/bottom cutoff `tau` is chosen at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutoffPolicy {
    /// `max(1, ⌈log₂ log₂ (u + 2)⌉)`, used for reporting and emptiness.
    #[default]
    Reporting,
    /// `max(1, ⌈log₂ n / log₂ log₂ (n + 2)⌉)`, a deeper top tree for counting.
    Counting,
    Fixed(usize),
}

impl CutoffPolicy {
    pub fn tau(self, n: usize, bound: u64) -> usize {
        match self {
            CutoffPolicy::Reporting => reporting_cutoff(bound),
            CutoffPolicy::Counting => counting_cutoff(n),
            CutoffPolicy::Fixed(t) => t,
        }
    }
}

/// `max(1, ⌈log₂ log₂ (u + 2)⌉)`, computed exactly in integers: the result is
/// the least `t >= 1` with `u + 2 <= 2^(2^t)`.
pub fn reporting_cutoff(bound: u64) -> usize {
    let x = bound as u128 + 2;
    let mut t = 1;
    while t < 7 && x > 1u128 << (1u32 << t).min(127) {
        t += 1;
    }
    t
}

pub fn counting_cutoff(n: usize) -> usize {
    let n = n.max(1) as f64;
    let v = (n.log2() / (n + 2.0).log2().log2()).ceil();
    (v as usize).max(1)
}

/// Which structure answers a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Routing {
    /// 1D store for top-tree loci, 2D store otherwise.
    #[default]
    Auto,
    /// Always use the 2D store; for checking the two paths against each other.
    Force2D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryPath {
    TopTree1D,
    Bottom2D,
    NoLocus,
}

impl std::fmt::Display for QueryPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QueryPath::TopTree1D => "TopTree1D",
            QueryPath::Bottom2D => "Bottom2D",
            QueryPath::NoLocus => "NoLocus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryStats {
    pub path: QueryPath,
    pub occ: usize,
}

enum Target<'a> {
    None,
    Top(&'a OneDimStore),
    Global(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrrIndex {
    pub(crate) source: LabeledString,
    pub(crate) suffix: SuffixIndex,
    /// per node, index into `top_stores` or `NO_STORE`
    pub(crate) top_slot: Vec<u32>,
    pub(crate) top_stores: Vec<OneDimStore>,
    pub(crate) global: TwoDimStore,
}

impl SrrIndex {
    pub fn build(source: LabeledString, policy: CutoffPolicy) -> Result<Self> {
        let tau = policy.tau(source.len(), source.bound());
        let suffix = SuffixIndex::build(source.text(), tau)?;
        Ok(Self::from_parts(source, suffix))
    }

    pub(crate) fn from_parts(source: LabeledString, suffix: SuffixIndex) -> Self {
        let sa = suffix.suffix_array();
        let labels = source.labels();
        let mut top_slot = vec![NO_STORE; suffix.node_count()];
        let mut top_stores = Vec::new();
        for (v, slot) in top_slot.iter_mut().enumerate() {
            let id = NodeId(v as u32);
            if !suffix.is_top(id) {
                continue;
            }
            let (l, r) = suffix.interval(id);
            let entries = sa[l - 1..r]
                .iter()
                .map(|&p| (labels[p as usize], p + 1))
                .collect();
            *slot = top_stores.len() as u32;
            top_stores.push(OneDimStore::new(entries));
        }
        let points: Vec<(u64, u32)> = sa.iter().map(|&p| (labels[p as usize], p + 1)).collect();
        let global = TwoDimStore::new(&points);
        Self {
            source,
            suffix,
            top_slot,
            top_stores,
            global,
        }
    }

    pub fn source(&self) -> &LabeledString {
        &self.source
    }

    pub fn suffix_index(&self) -> &SuffixIndex {
        &self.suffix
    }

    pub fn global_store(&self) -> &TwoDimStore {
        &self.global
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn bound(&self) -> u64 {
        self.source.bound()
    }

    pub fn tau(&self) -> usize {
        self.suffix.tau()
    }

    pub fn top_store(&self, v: NodeId) -> Option<&OneDimStore> {
        match self.top_slot[v.index()] {
            NO_STORE => None,
            s => Some(&self.top_stores[s as usize]),
        }
    }

    pub fn top_store_count(&self) -> usize {
        self.top_stores.len()
    }

    /// Total 1D store size per tree depth (edges from the root).
    pub fn top_level_sizes(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.suffix.node_count()];
        let mut sizes = Vec::new();
        // preorder: parents come first
        for v in 0..self.suffix.node_count() {
            let id = NodeId(v as u32);
            if let Some(p) = self.suffix.parent(id) {
                depth[v] = depth[p.index()] + 1;
            }
            if let Some(s) = self.top_store(id) {
                if sizes.len() <= depth[v] {
                    sizes.resize(depth[v] + 1, 0);
                }
                sizes[depth[v]] += s.len();
            }
        }
        sizes
    }

    fn target(&self, pattern: &[u8], routing: Routing) -> Target<'_> {
        let Some(locus) = self.suffix.locus(pattern) else {
            return Target::None;
        };
        match (routing, self.top_store(locus.node)) {
            (Routing::Auto, Some(store)) => Target::Top(store),
            _ => Target::Global(locus.left, locus.right),
        }
    }

    /// Occurrences of `pattern` whose labels lie in `range`, ascending by
    /// position (1-based).
    pub fn report(&self, pattern: &[u8], range: LabelRange) -> Result<Vec<usize>> {
        Ok(self.report_routed(pattern, range, Routing::Auto)?.0)
    }

    pub fn report_with_stats(
        &self,
        pattern: &[u8],
        range: LabelRange,
    ) -> Result<(Vec<usize>, QueryStats)> {
        self.report_routed(pattern, range, Routing::Auto)
    }

    pub fn report_routed(
        &self,
        pattern: &[u8],
        range: LabelRange,
        routing: Routing,
    ) -> Result<(Vec<usize>, QueryStats)> {
        range.check(self.bound())?;
        let (mut hits, path): (Vec<usize>, _) = match self.target(pattern, routing) {
            Target::None => (Vec::new(), QueryPath::NoLocus),
            Target::Top(store) => (
                store.report(range).iter().map(|&p| p as usize).collect(),
                QueryPath::TopTree1D,
            ),
            Target::Global(l, r) => (
                self.global
                    .report(l, r, range)
                    .into_iter()
                    .map(|p| p as usize)
                    .collect(),
                QueryPath::Bottom2D,
            ),
        };
        hits.sort_unstable();
        let occ = hits.len();
        Ok((hits, QueryStats { path, occ }))
    }

    /// Number of occurrences of `pattern` whose labels lie in `range`.
    pub fn count(&self, pattern: &[u8], range: LabelRange) -> Result<usize> {
        Ok(self.count_routed(pattern, range, Routing::Auto)?.0)
    }

    pub fn count_routed(
        &self,
        pattern: &[u8],
        range: LabelRange,
        routing: Routing,
    ) -> Result<(usize, QueryPath)> {
        range.check(self.bound())?;
        Ok(match self.target(pattern, routing) {
            Target::None => (0, QueryPath::NoLocus),
            Target::Top(store) => (store.count(range), QueryPath::TopTree1D),
            Target::Global(l, r) => (self.global.count(l, r, range), QueryPath::Bottom2D),
        })
    }

    /// True when no occurrence of `pattern` has a label in `range`.
    pub fn empty(&self, pattern: &[u8], range: LabelRange) -> Result<bool> {
        Ok(self.empty_routed(pattern, range, Routing::Auto)?.0)
    }

    pub fn empty_routed(
        &self,
        pattern: &[u8],
        range: LabelRange,
        routing: Routing,
    ) -> Result<(bool, QueryPath)> {
        range.check(self.bound())?;
        Ok(match self.target(pattern, routing) {
            Target::None => (true, QueryPath::NoLocus),
            Target::Top(store) => (store.is_empty_in(range), QueryPath::TopTree1D),
            Target::Global(l, r) => (self.global.is_empty_in(l, r, range), QueryPath::Bottom2D),
        })
    }

    /// Checks every structural invariant of the assembled index.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        self.suffix.check_structure()?;
        let n = self.len();
        if self.suffix.text() != self.source.text() {
            return Err("suffix index text differs from source".into());
        }
        let labels = self.source.labels();
        if self.top_slot.len() != self.suffix.node_count() {
            return Err("store table size differs from node count".into());
        }
        for v in 0..self.suffix.node_count() {
            let id = NodeId(v as u32);
            let store = self.top_store(id);
            if store.is_some() != self.suffix.is_top(id) {
                return Err(format!("node {v} store presence disagrees with top flag"));
            }
            let Some(store) = store else { continue };
            let (l, r) = self.suffix.interval(id);
            if store.len() != r - l + 1 {
                return Err(format!("store of node {v} has {} labels", store.len()));
            }
            let mut orders = Vec::with_capacity(store.len());
            for (&lab, &pos) in store.labels().iter().zip(store.positions()) {
                let pos = pos as usize;
                if pos == 0 || pos > n || labels[pos - 1] != lab {
                    return Err(format!("store of node {v} holds a foreign entry"));
                }
                orders.push(self.suffix.order_of(pos).map_err(|e| e.to_string())?);
            }
            orders.sort_unstable();
            if orders.iter().copied().ne(l..=r) {
                return Err(format!("store of node {v} does not match its leaves"));
            }
        }
        if let Some((d, s)) = self
            .top_level_sizes()
            .into_iter()
            .enumerate()
            .find(|&(_, s)| s > n)
        {
            return Err(format!("top-tree level {d} stores {s} labels for n = {n}"));
        }
        if self.global.len() != n {
            return Err("2D store does not hold n points".into());
        }
        for x in 1..=n {
            let p = self.suffix.suffix_at(x).map_err(|e| e.to_string())?;
            if self.global.y_at(x) != labels[p - 1] || self.global.ids[x - 1] as usize != p {
                return Err(format!("2D point at x = {x} is wrong"));
            }
        }
        Ok(())
    }
}
