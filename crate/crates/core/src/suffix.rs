//! Compacted suffix tree built from a suffix array and its LCP array.
//!
//! No sentinel is appended to the text. End-of-string compares smaller than
//! every byte, so a suffix that is a proper prefix of another suffix ends in a
//! leaf hanging off an internal node by an empty edge. That keeps exactly one
//! leaf per suffix and suffix orders in `[1, n]`.
//!
//! Nodes are numbered in preorder (root is 0), so each subtree occupies a
//! contiguous id range.

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

/// Identifier of a suffix tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One row of the node table. Offsets and orders are 0-based internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Node {
    pub(crate) parent: u32,
    pub(crate) edge_start: u32,
    pub(crate) edge_end: u32,
    pub(crate) depth: u32,
    pub(crate) lo: u32,
    pub(crate) hi: u32,
    pub(crate) child_start: u32,
    pub(crate) child_len: u32,
    pub(crate) top: bool,
}

/// The locus of a pattern: the shallowest node whose path string has the
/// pattern as a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    pub node: NodeId,
    /// First suffix order below the node (1-based).
    pub left: usize,
    /// Last suffix order below the node (1-based).
    pub right: usize,
    /// Number of pattern bytes matched, i.e. the pattern length.
    pub matched: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixIndex {
    text: Vec<u8>,
    tau: usize,
    sa: Vec<u32>,
    rank: Vec<u32>,
    pub(crate) nodes: Vec<Node>,
    pub(crate) children: Vec<u32>,
    // first byte of each child's edge plus one; 0 marks the empty end-of-string edge
    child_keys: Vec<u16>,
}

impl SuffixIndex {
    /// Builds the suffix tree of `text` and marks the top tree at string-depth
    /// cutoff `tau`.
    pub fn build(text: &[u8], tau: usize) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyText);
        }
        if u32::try_from(text.len()).is_err() {
            return Err(Error::TextTooLong(text.len()));
        }
        let sa = suffix_array(text);
        let lcp = lcp_array(text, &sa);
        let (nodes, children) = TreeBuilder::new(text.len()).run(&sa, &lcp);
        Ok(Self::assemble(text.to_vec(), tau, sa, nodes, children))
    }

    /// Finishes an index from a suffix array and a node table whose edge,
    /// interval and child fields are already filled in.
    pub(crate) fn assemble(
        text: Vec<u8>,
        tau: usize,
        sa: Vec<u32>,
        mut nodes: Vec<Node>,
        children: Vec<u32>,
    ) -> Self {
        let mut rank = vec![0u32; sa.len()];
        for (k, &p) in sa.iter().enumerate() {
            rank[p as usize] = k as u32;
        }
        for v in 0..nodes.len() {
            let p = nodes[v].parent;
            nodes[v].top = p == NIL || nodes[p as usize].depth as usize <= tau;
        }
        let child_keys = children
            .iter()
            .map(|&c| {
                let c = &nodes[c as usize];
                if c.edge_start == c.edge_end {
                    0
                } else {
                    text[c.edge_start as usize] as u16 + 1
                }
            })
            .collect();
        Self {
            text,
            tau,
            sa,
            rank,
            nodes,
            children,
            child_keys,
        }
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Suffix start positions (0-based) in lexicographic order.
    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    /// Starting position (1-based) of the suffix with 1-based order `k`.
    pub fn suffix_at(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.len() {
            return Err(Error::PositionOutOfRange {
                position: k,
                len: self.len(),
            });
        }
        Ok(self.sa[k - 1] as usize + 1)
    }

    /// Lexicographic order (1-based) of the suffix starting at 1-based `i`.
    pub fn order_of(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: self.len(),
            });
        }
        Ok(self.rank[i - 1] as usize + 1)
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.nodes[v.index()].parent {
            NIL => None,
            p => Some(NodeId(p)),
        }
    }

    pub fn children(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let n = &self.nodes[v.index()];
        let s = n.child_start as usize;
        self.children[s..s + n.child_len as usize]
            .iter()
            .map(|&c| NodeId(c))
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.index()].child_len == 0
    }

    pub fn string_depth(&self, v: NodeId) -> usize {
        self.nodes[v.index()].depth as usize
    }

    /// Number of edges between `v` and the root.
    pub fn tree_depth(&self, v: NodeId) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            d += 1;
            cur = p;
        }
        d
    }

    /// 1-based closed interval of suffix orders below `v`.
    pub fn interval(&self, v: NodeId) -> (usize, usize) {
        let n = &self.nodes[v.index()];
        (n.lo as usize + 1, n.hi as usize + 1)
    }

    pub fn is_top(&self, v: NodeId) -> bool {
        self.nodes[v.index()].top
    }

    /// The substring labeling the edge into `v` (empty for the root and for
    /// end-of-string leaves).
    pub fn edge(&self, v: NodeId) -> &[u8] {
        let n = &self.nodes[v.index()];
        &self.text[n.edge_start as usize..n.edge_end as usize]
    }

    fn child_by_byte(&self, v: u32, byte: u8) -> Option<u32> {
        let n = &self.nodes[v as usize];
        let s = n.child_start as usize;
        let keys = &self.child_keys[s..s + n.child_len as usize];
        keys.binary_search(&(byte as u16 + 1))
            .ok()
            .map(|j| self.children[s + j])
    }

    /// Descends from the root along `pattern`. Returns `None` when the
    /// pattern does not occur in the text.
    pub fn locus(&self, pattern: &[u8]) -> Option<Locus> {
        let mut v = 0u32;
        let mut matched = 0;
        while matched < pattern.len() {
            let c = self.child_by_byte(v, pattern[matched])?;
            let node = &self.nodes[c as usize];
            let edge = &self.text[node.edge_start as usize..node.edge_end as usize];
            let take = edge.len().min(pattern.len() - matched);
            if edge[..take] != pattern[matched..matched + take] {
                return None;
            }
            matched += take;
            v = c;
        }
        let node = &self.nodes[v as usize];
        Some(Locus {
            node: NodeId(v),
            left: node.lo as usize + 1,
            right: node.hi as usize + 1,
            matched,
        })
    }

    /// Checks the structural invariants that do not require comparing
    /// suffixes: permutation, intervals, child order and the top flags.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let n = self.len();
        if self.sa.len() != n || self.rank.len() != n {
            return Err("suffix array length differs from text length".into());
        }
        for (k, &p) in self.sa.iter().enumerate() {
            if p as usize >= n || self.rank[p as usize] as usize != k {
                return Err(format!("sa and rank disagree at order {}", k + 1));
            }
        }
        if self.nodes.is_empty() || self.nodes[0].parent != NIL {
            return Err("missing root".into());
        }
        let mut leaves = 0;
        for (v, node) in self.nodes.iter().enumerate() {
            if node.lo > node.hi || node.hi as usize >= n {
                return Err(format!("node {v} has a bad interval"));
            }
            if node.child_len == 0 {
                leaves += 1;
                if node.lo != node.hi {
                    return Err(format!("leaf {v} interval is not a singleton"));
                }
                let start = self.sa[node.lo as usize];
                if node.depth as usize != n - start as usize {
                    return Err(format!("leaf {v} depth does not match its suffix"));
                }
            } else {
                let kids: Vec<_> = self.children(NodeId(v as u32)).collect();
                let mut expect = node.lo;
                let mut prev_key = None;
                for (j, c) in kids.iter().enumerate() {
                    let cn = &self.nodes[c.index()];
                    if cn.parent as usize != v {
                        return Err(format!("child {} of {v} has wrong parent", c.0));
                    }
                    if cn.lo != expect {
                        return Err(format!("children of {v} do not tile its interval"));
                    }
                    expect = cn.hi + 1;
                    let key = self.child_keys[node.child_start as usize + j];
                    if prev_key.is_some_and(|p| p >= key) {
                        return Err(format!("children of {v} are not in byte order"));
                    }
                    prev_key = Some(key);
                    if cn.depth < node.depth || (cn.depth == node.depth && key != 0) {
                        return Err(format!("child {} of {v} is not deeper", c.0));
                    }
                }
                if expect != node.hi + 1 {
                    return Err(format!("children of {v} do not cover its interval"));
                }
                if v != 0 && kids.len() < 2 {
                    return Err(format!("internal node {v} is not branching"));
                }
            }
            let parent_depth = match node.parent {
                NIL => 0,
                p => self.nodes[p as usize].depth,
            };
            if node.edge_end.checked_sub(node.edge_start) != node.depth.checked_sub(parent_depth) {
                return Err(format!("edge length of node {v} disagrees with depths"));
            }
            let expect_top =
                node.parent == NIL || self.nodes[node.parent as usize].depth as usize <= self.tau;
            if node.top != expect_top {
                return Err(format!("top flag of node {v} is wrong"));
            }
        }
        if leaves != n {
            return Err(format!("{leaves} leaves for {n} suffixes"));
        }
        Ok(())
    }
}

/// Prefix-doubling suffix array; end of string sorts before every byte.
pub(crate) fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    let mut rank: Vec<u32> = text.iter().map(|&b| b as u32).collect();
    let mut keyed: Vec<(u64, u32)> = Vec::with_capacity(n);
    let mut next = vec![0u32; n];
    let mut k = 1;
    loop {
        keyed.clear();
        keyed.extend((0..n).map(|i| {
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            (((rank[i] as u64) << 32) | second, i as u32)
        }));
        keyed.sort_unstable();
        let mut r = 0u32;
        for j in 0..n {
            if j > 0 && keyed[j].0 != keyed[j - 1].0 {
                r += 1;
            }
            next[keyed[j].1 as usize] = r;
        }
        std::mem::swap(&mut rank, &mut next);
        if r as usize == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Kasai's algorithm: `lcp[k]` is the longest common prefix of the suffixes
/// at orders `k - 1` and `k`; `lcp[0] = 0`.
pub(crate) fn lcp_array(text: &[u8], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0usize; n];
    for (k, &p) in sa.iter().enumerate() {
        rank[p as usize] = k;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Builds the tree with linked sibling lists, then renumbers in preorder.
struct TreeBuilder {
    depth: Vec<u32>,
    parent: Vec<u32>,
    leaf_order: Vec<u32>,
    first_child: Vec<u32>,
    last_child: Vec<u32>,
    next_sib: Vec<u32>,
    prev_sib: Vec<u32>,
}

impl TreeBuilder {
    fn new(n: usize) -> Self {
        let cap = 2 * n;
        Self {
            depth: Vec::with_capacity(cap),
            parent: Vec::with_capacity(cap),
            leaf_order: Vec::with_capacity(cap),
            first_child: Vec::with_capacity(cap),
            last_child: Vec::with_capacity(cap),
            next_sib: Vec::with_capacity(cap),
            prev_sib: Vec::with_capacity(cap),
        }
    }

    fn push(&mut self, depth: u32, leaf_order: u32) -> u32 {
        let id = self.depth.len() as u32;
        self.depth.push(depth);
        self.parent.push(NIL);
        self.leaf_order.push(leaf_order);
        self.first_child.push(NIL);
        self.last_child.push(NIL);
        self.next_sib.push(NIL);
        self.prev_sib.push(NIL);
        id
    }

    fn is_leaf(&self, v: u32) -> bool {
        self.leaf_order[v as usize] != NIL
    }

    fn append_child(&mut self, p: u32, c: u32) {
        let (pu, cu) = (p as usize, c as usize);
        self.parent[cu] = p;
        self.prev_sib[cu] = self.last_child[pu];
        self.next_sib[cu] = NIL;
        match self.last_child[pu] {
            NIL => self.first_child[pu] = c,
            l => self.next_sib[l as usize] = c,
        }
        self.last_child[pu] = c;
    }

    /// Splices `w` in place of `p`'s last child `c`, making `c` the only child
    /// of `w`.
    fn split_last(&mut self, p: u32, c: u32, w: u32) {
        debug_assert_eq!(self.last_child[p as usize], c);
        let prev = self.prev_sib[c as usize];
        match prev {
            NIL => self.first_child[p as usize] = w,
            s => self.next_sib[s as usize] = w,
        }
        self.prev_sib[w as usize] = prev;
        self.last_child[p as usize] = w;
        self.parent[w as usize] = p;
        self.first_child[w as usize] = NIL;
        self.last_child[w as usize] = NIL;
        self.append_child(w, c);
    }

    fn run(mut self, sa: &[u32], lcp: &[u32]) -> (Vec<Node>, Vec<u32>) {
        let n = sa.len();
        let root = self.push(0, NIL);
        let mut stack = vec![root];
        for k in 0..n {
            let h = lcp[k];
            let mut last = NIL;
            loop {
                let top = *stack.last().expect("root stays on the stack");
                let d = self.depth[top as usize];
                if d > h || (d == h && self.is_leaf(top)) {
                    last = stack.pop().expect("nonempty");
                } else {
                    break;
                }
            }
            let top = *stack.last().expect("root stays on the stack");
            if self.depth[top as usize] < h {
                let w = self.push(h, NIL);
                self.split_last(top, last, w);
                stack.push(w);
            }
            let leaf = self.push(n as u32 - sa[k], k as u32);
            let parent = *stack.last().expect("nonempty");
            self.append_child(parent, leaf);
            stack.push(leaf);
        }
        self.finish(sa)
    }

    fn finish(self, sa: &[u32]) -> (Vec<Node>, Vec<u32>) {
        let count = self.depth.len();
        // preorder numbering
        let mut order = Vec::with_capacity(count);
        let mut new_id = vec![NIL; count];
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            new_id[v as usize] = order.len() as u32;
            order.push(v);
            let mut kids = Vec::new();
            let mut c = self.first_child[v as usize];
            while c != NIL {
                kids.push(c);
                c = self.next_sib[c as usize];
            }
            stack.extend(kids.into_iter().rev());
        }

        let mut nodes = Vec::with_capacity(count);
        let mut children = Vec::with_capacity(count.saturating_sub(1));
        for &old in &order {
            let o = old as usize;
            let child_start = children.len() as u32;
            let mut c = self.first_child[o];
            while c != NIL {
                children.push(new_id[c as usize]);
                c = self.next_sib[c as usize];
            }
            let parent = match self.parent[o] {
                NIL => NIL,
                p => new_id[p as usize],
            };
            nodes.push(Node {
                parent,
                edge_start: 0,
                edge_end: 0,
                depth: self.depth[o],
                lo: self.leaf_order[o],
                hi: self.leaf_order[o],
                child_start,
                child_len: children.len() as u32 - child_start,
                top: false,
            });
        }
        // children have larger preorder ids than their parents
        for v in (0..count).rev() {
            if nodes[v].child_len > 0 {
                let s = nodes[v].child_start as usize;
                let e = s + nodes[v].child_len as usize;
                nodes[v].lo = nodes[children[s] as usize].lo;
                nodes[v].hi = nodes[children[e - 1] as usize].hi;
            }
        }
        for v in 1..count {
            let pd = nodes[nodes[v].parent as usize].depth;
            let start = sa[nodes[v].lo as usize];
            nodes[v].edge_start = start + pd;
            nodes[v].edge_end = start + nodes[v].depth;
        }
        (nodes, children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(text: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    fn one_based(sa: &[u32]) -> Vec<usize> {
        sa.iter().map(|&p| p as usize + 1).collect()
    }

    #[test]
    fn banana_suffix_array() {
        let idx = SuffixIndex::build(b"banana", 2).unwrap();
        assert_eq!(one_based(idx.suffix_array()), vec![6, 4, 2, 1, 5, 3]);
        assert_eq!(one_based(&naive_sa(b"banana")), vec![6, 4, 2, 1, 5, 3]);
        assert_eq!(idx.order_of(6), Ok(1));
        assert_eq!(idx.order_of(1), Ok(4));
        assert!(idx.order_of(0).is_err());
        assert!(idx.order_of(7).is_err());
        idx.check_structure().unwrap();
    }

    #[test]
    fn single_byte() {
        let idx = SuffixIndex::build(b"a", 0).unwrap();
        assert_eq!(one_based(idx.suffix_array()), vec![1]);
        assert_eq!(idx.interval(NodeId::ROOT), (1, 1));
        let leaves = (0..idx.node_count())
            .filter(|&v| idx.is_leaf(NodeId(v as u32)))
            .count();
        assert_eq!(leaves, 1);
        assert_eq!(idx.order_of(1), Ok(1));
        idx.check_structure().unwrap();
    }

    #[test]
    fn unary_text() {
        let idx = SuffixIndex::build(b"aaa", 1).unwrap();
        assert_eq!(one_based(idx.suffix_array()), vec![3, 2, 1]);
        idx.check_structure().unwrap();
        // "a" < "aa" < "aaa": each shorter suffix hangs off an empty edge
        let l = idx.locus(b"aa").unwrap();
        assert_eq!((l.left, l.right), (2, 3));
    }

    #[test]
    fn empty_text_rejected() {
        assert_eq!(SuffixIndex::build(b"", 1), Err(Error::EmptyText));
    }

    #[test]
    fn banana_locus() {
        let idx = SuffixIndex::build(b"banana", 2).unwrap();
        let l = idx.locus(b"an").unwrap();
        assert_eq!((l.left, l.right), (2, 3));
        let root = idx.locus(b"").unwrap();
        assert_eq!(root.node, NodeId::ROOT);
        assert_eq!((root.left, root.right), (1, 6));
        assert_eq!(idx.locus(b"nx"), None);
        assert_eq!(idx.locus(b"bananas"), None);
        let l = idx.locus(b"banana").unwrap();
        assert_eq!((l.left, l.right), (4, 4));
    }

    #[test]
    fn banana_top_flags() {
        let idx = SuffixIndex::build(b"banana", 2).unwrap();
        // "a" (depth 1) is top; "ana" (depth 3) is a child of "a" so top too;
        // "anana" sits below "ana" (depth 3 > 2) so it is bottom.
        let a = idx.locus(b"a").unwrap().node;
        let ana = idx.locus(b"ana").unwrap().node;
        let anana = idx.locus(b"anan").unwrap().node;
        assert!(idx.is_top(a));
        assert!(idx.is_top(ana));
        assert!(!idx.is_top(anana));
        assert_eq!(idx.string_depth(ana), 3);
        assert_eq!(idx.string_depth(anana), 5);
    }

    #[test]
    fn suffixes_reconstruct_from_edges() {
        let text = b"mississippi";
        let idx = SuffixIndex::build(text, 1).unwrap();
        for v in 0..idx.node_count() {
            let v = NodeId(v as u32);
            if !idx.is_leaf(v) {
                continue;
            }
            let mut parts = Vec::new();
            let mut cur = v;
            while let Some(p) = idx.parent(cur) {
                parts.push(idx.edge(cur).to_vec());
                cur = p;
            }
            let spelled: Vec<u8> = parts.into_iter().rev().flatten().collect();
            let (k, _) = idx.interval(v);
            let start = idx.suffix_at(k).unwrap();
            assert_eq!(&spelled[..], &text[start - 1..]);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_naive_suffix_sort(text in proptest::collection::vec(0u8..4, 1..200)) {
                let idx = SuffixIndex::build(&text, 2).unwrap();
                prop_assert_eq!(idx.suffix_array(), &naive_sa(&text)[..]);
                prop_assert_eq!(idx.check_structure(), Ok(()));
            }

            #[test]
            fn locus_interval_is_occurrence_set(
                text in proptest::collection::vec(0u8..3, 1..120),
                start in 0usize..120,
                len in 0usize..8,
            ) {
                let idx = SuffixIndex::build(&text, 1).unwrap();
                let s = start % text.len();
                let e = (s + len).min(text.len());
                let pat = &text[s..e];
                let l = idx.locus(pat).unwrap();
                let mut got: Vec<usize> = (l.left..=l.right)
                    .map(|k| idx.suffix_at(k).unwrap())
                    .collect();
                got.sort_unstable();
                let want: Vec<usize> = (0..text.len())
                    .filter(|&i| text[i..].starts_with(pat))
                    .map(|i| i + 1)
                    .collect();
                prop_assert_eq!(got, want);
                prop_assert_eq!(l.matched, pat.len());
                if let Some(p) = idx.parent(l.node) {
                    prop_assert!(idx.string_depth(p) < pat.len());
                }
                prop_assert!(idx.string_depth(l.node) >= pat.len());
            }

            #[test]
            fn bottom_nodes_sit_below_cutoff(
                text in proptest::collection::vec(0u8..4, 1..150),
                tau in 0usize..6,
            ) {
                let idx = SuffixIndex::build(&text, tau).unwrap();
                for v in 0..idx.node_count() {
                    let v = NodeId(v as u32);
                    if !idx.is_top(v) {
                        let p = idx.parent(v).unwrap();
                        prop_assert!(idx.string_depth(p) > tau);
                    }
                }
            }
        }
    }
}
