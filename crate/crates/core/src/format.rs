//! Versioned little-endian index files.
//!
//! ```text
//! header   "SRR1" | version: u32 | n: u64 | u: u64 | tau: u64
//! sections (each prefixed by its byte length as u64)
//!   1 text bytes
//!   2 labels            n × u64
//!   3 suffix array      n × u32 (0-based starts)
//!   4 node table        count: u64, rows of 8 × u32 + top flag u8,
//!                       then child list (count: u64, ids u32)
//!   5 top-store table   slot per node (count: u64, u32), then stores
//!                       (count: u64; each len: u64, labels u64, positions u32)
//!   6 2D structure      alphabet, levels (zeros u32, words u64), bottom x, ids
//!   7 index kind        kind: u8, then kind-specific payload
//! ```
//!
//! Loading re-checks every structural invariant, so a file that loads is safe
//! to query.

use std::path::Path;

use crate::error::{Error, Result};
use crate::range::{OneDimStore, RankBits, TwoDimStore};
use crate::reductions::{gap_labels, GapIndex, IntervalIndex, IntervalSet, PrssIndex};
use crate::srr::{SrrIndex, NO_STORE};
use crate::suffix::{Node, SuffixIndex};
use crate::text::LabeledString;

pub const MAGIC: [u8; 4] = *b"SRR1";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Srr,
    Prss,
    Interval,
    Gap,
}

impl IndexKind {
    fn tag(self) -> u8 {
        match self {
            IndexKind::Srr => 0,
            IndexKind::Prss => 1,
            IndexKind::Interval => 2,
            IndexKind::Gap => 3,
        }
    }
}

impl std::fmt::Display for IndexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IndexKind::Srr => "srr",
            IndexKind::Prss => "prss",
            IndexKind::Interval => "interval",
            IndexKind::Gap => "gap",
        })
    }
}

/// Any index that can be written to or read from an index file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyIndex {
    Srr(SrrIndex),
    Prss(PrssIndex),
    Interval(IntervalIndex),
    Gap(GapIndex),
}

impl AnyIndex {
    pub fn kind(&self) -> IndexKind {
        match self {
            AnyIndex::Srr(_) => IndexKind::Srr,
            AnyIndex::Prss(_) => IndexKind::Prss,
            AnyIndex::Interval(_) => IndexKind::Interval,
            AnyIndex::Gap(_) => IndexKind::Gap,
        }
    }

    /// The underlying substring range index.
    pub fn srr(&self) -> &SrrIndex {
        match self {
            AnyIndex::Srr(ix) => ix,
            AnyIndex::Prss(ix) => &ix.inner,
            AnyIndex::Interval(ix) => &ix.inner,
            AnyIndex::Gap(ix) => &ix.inner,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let ix = self.srr();
        let mut w = Writer::default();
        w.bytes(&MAGIC);
        w.u32(VERSION);
        w.u64(ix.len() as u64);
        w.u64(ix.bound());
        w.u64(ix.tau() as u64);
        w.section(|s| s.bytes(ix.source.text()));
        w.section(|s| ix.source.labels().iter().for_each(|&l| s.u64(l)));
        w.section(|s| write_sa(s, &ix.suffix));
        w.section(|s| write_nodes(s, &ix.suffix));
        w.section(|s| write_top_stores(s, ix));
        w.section(|s| write_global(s, &ix.global));
        w.section(|s| {
            s.u8(self.kind().tag());
            match self {
                AnyIndex::Srr(_) | AnyIndex::Prss(_) => {}
                AnyIndex::Interval(ix) => {
                    s.u64(ix.intervals.len() as u64);
                    for &(a, b) in ix.intervals.intervals() {
                        s.u64(a as u64);
                        s.u64(b as u64);
                    }
                }
                AnyIndex::Gap(ix) => {
                    s.u64(ix.gap as u64);
                    s.section(|t| write_sa(t, &ix.reverse));
                    s.section(|t| write_nodes(t, &ix.reverse));
                }
            }
        });
        w.buf
    }

    pub fn from_bytes(data: &[u8]) -> Result<Self> {
        let mut r = Reader::new(data);
        if r.take(4)? != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let n = r.len()?;
        let bound = r.u64()?;
        let tau = r.len()?;

        let text = r.section()?.rest().to_vec();
        if text.len() != n {
            return Err(Error::Format("text length disagrees with header".into()));
        }
        let labels = r.section()?.finish(|s| s.u64_vec(n))?;
        let source = LabeledString::new(text, labels, bound)?;
        let sa = r.section()?.finish(|s| s.u32_vec(n))?;
        let (nodes, children) = r.section()?.finish(|s| read_nodes(s, n))?;
        let suffix = suffix_from_parts(source.text().to_vec(), tau, sa, nodes, children)?;
        let (top_slot, top_stores) = r
            .section()?
            .finish(|s| read_top_stores(s, suffix.node_count()))?;
        let global = r.section()?.finish(read_global)?;
        global.validate().map_err(Error::Format)?;
        let inner = SrrIndex {
            source,
            suffix,
            top_slot,
            top_stores,
            global,
        };
        inner.check_invariants().map_err(Error::Format)?;

        let mut kind = r.section()?;
        let index = match kind.u8()? {
            0 => AnyIndex::Srr(inner),
            1 => {
                let want: Vec<u64> = (1..=n as u64).collect();
                if inner.source.labels() != want || bound != n as u64 {
                    return Err(Error::Format(
                        "prss index is not positionally labeled".into(),
                    ));
                }
                AnyIndex::Prss(PrssIndex { inner })
            }
            2 => {
                let count = kind.len()?;
                let mut pairs = Vec::with_capacity(count.min(kind.remaining() / 16));
                for _ in 0..count {
                    pairs.push((kind.len()?, kind.len()?));
                }
                let intervals = IntervalSet::new(pairs);
                if intervals.labels(n)? != inner.source.labels() || bound != n as u64 {
                    return Err(Error::Format(
                        "interval labels disagree with intervals".into(),
                    ));
                }
                AnyIndex::Interval(IntervalIndex { intervals, inner })
            }
            3 => {
                let gap = kind.len()?;
                let rsa = kind.section()?.finish(|s| s.u32_vec(n))?;
                let (rnodes, rchildren) = kind.section()?.finish(|s| read_nodes(s, n))?;
                let rtext: Vec<u8> = inner.source.text().iter().rev().copied().collect();
                let reverse = suffix_from_parts(rtext, 0, rsa, rnodes, rchildren)?;
                if gap_labels(&reverse, gap) != inner.source.labels() || bound != n as u64 {
                    return Err(Error::Format(
                        "gap labels disagree with the reverse index".into(),
                    ));
                }
                AnyIndex::Gap(GapIndex {
                    gap,
                    reverse,
                    inner,
                })
            }
            t => return Err(Error::Format(format!("unknown index kind {t}"))),
        };
        kind.end()?;
        r.end()?;
        Ok(index)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

fn suffix_from_parts(
    text: Vec<u8>,
    tau: usize,
    sa: Vec<u32>,
    nodes: Vec<Node>,
    children: Vec<u32>,
) -> Result<SuffixIndex> {
    let n = text.len();
    let count = nodes.len();
    let mut seen = vec![false; n];
    for &p in &sa {
        match seen.get_mut(p as usize) {
            Some(s) if !*s => *s = true,
            _ => return Err(Error::Format("suffix array is not a permutation".into())),
        }
    }
    if children.iter().any(|&c| c as usize >= count) {
        return Err(Error::Format("child id out of range".into()));
    }
    for node in &nodes {
        let kids_ok = (node.child_start as u64 + node.child_len as u64) <= children.len() as u64;
        let parent_ok = node.parent == u32::MAX || (node.parent as usize) < count;
        let edge_ok = node.edge_start <= node.edge_end
            && (node.edge_end as usize) <= n
            && (node.edge_start as usize) <= n;
        let span_ok = node.lo <= node.hi && (node.hi as usize) < n;
        if !(kids_ok && parent_ok && edge_ok && span_ok) {
            return Err(Error::Format("node table row out of range".into()));
        }
    }
    let idx = SuffixIndex::assemble(text, tau, sa, nodes, children);
    idx.check_structure().map_err(Error::Format)?;
    Ok(idx)
}

fn write_sa(w: &mut Writer, idx: &SuffixIndex) {
    idx.suffix_array().iter().for_each(|&p| w.u32(p));
}

fn write_nodes(w: &mut Writer, idx: &SuffixIndex) {
    w.u64(idx.nodes.len() as u64);
    for v in &idx.nodes {
        for x in [
            v.parent,
            v.edge_start,
            v.edge_end,
            v.depth,
            v.lo,
            v.hi,
            v.child_start,
            v.child_len,
        ] {
            w.u32(x);
        }
        w.u8(v.top as u8);
    }
    w.u64(idx.children.len() as u64);
    idx.children.iter().for_each(|&c| w.u32(c));
}

fn read_nodes(r: &mut Reader<'_>, n: usize) -> Result<(Vec<Node>, Vec<u32>)> {
    let count = r.len()?;
    if count > 2 * n + 1 {
        return Err(Error::Format("too many nodes".into()));
    }
    let mut nodes = Vec::with_capacity(count);
    for _ in 0..count {
        let mut f = [0u32; 8];
        for x in &mut f {
            *x = r.u32()?;
        }
        let top = match r.u8()? {
            0 => false,
            1 => true,
            _ => return Err(Error::Format("bad top flag".into())),
        };
        nodes.push(Node {
            parent: f[0],
            edge_start: f[1],
            edge_end: f[2],
            depth: f[3],
            lo: f[4],
            hi: f[5],
            child_start: f[6],
            child_len: f[7],
            top,
        });
    }
    let kids = r.len()?;
    if kids != count.saturating_sub(1) {
        return Err(Error::Format(
            "child list length disagrees with node count".into(),
        ));
    }
    let children = r.u32_vec(kids)?;
    Ok((nodes, children))
}

fn write_top_stores(w: &mut Writer, ix: &SrrIndex) {
    w.u64(ix.top_slot.len() as u64);
    ix.top_slot.iter().for_each(|&s| w.u32(s));
    w.u64(ix.top_stores.len() as u64);
    for store in &ix.top_stores {
        w.u64(store.len() as u64);
        store.labels().iter().for_each(|&l| w.u64(l));
        store.positions().iter().for_each(|&p| w.u32(p));
    }
}

fn read_top_stores(r: &mut Reader<'_>, nodes: usize) -> Result<(Vec<u32>, Vec<OneDimStore>)> {
    if r.len()? != nodes {
        return Err(Error::Format(
            "store slot table size disagrees with node count".into(),
        ));
    }
    let slots = r.u32_vec(nodes)?;
    let count = r.len()?;
    // slots must number the stores 0, 1, 2, ... in node order
    let mut next = 0u32;
    for &s in &slots {
        if s != NO_STORE {
            if s != next {
                return Err(Error::Format("store slots out of sequence".into()));
            }
            next += 1;
        }
    }
    if next as usize != count {
        return Err(Error::Format(
            "store count disagrees with slot table".into(),
        ));
    }
    let mut stores = Vec::with_capacity(count);
    for _ in 0..count {
        let len = r.len()?;
        let labels = r.u64_vec(len)?;
        let positions = r.u32_vec(len)?;
        let store = OneDimStore::from_sorted_parts(labels, positions)
            .ok_or_else(|| Error::Format("1D store is not sorted".into()))?;
        stores.push(store);
    }
    Ok((slots, stores))
}

fn write_global(w: &mut Writer, g: &TwoDimStore) {
    w.u64(g.alphabet.len() as u64);
    g.alphabet.iter().for_each(|&a| w.u64(a));
    w.u64(g.levels.len() as u64);
    for (bits, &z) in g.levels.iter().zip(&g.zeros) {
        w.u32(z);
        w.u64(bits.len as u64);
        w.u64(bits.words.len() as u64);
        bits.words.iter().for_each(|&x| w.u64(x));
    }
    w.u64(g.bottom_x.len() as u64);
    g.bottom_x.iter().for_each(|&x| w.u32(x));
    w.u64(g.ids.len() as u64);
    g.ids.iter().for_each(|&x| w.u32(x));
}

fn read_global(r: &mut Reader<'_>) -> Result<TwoDimStore> {
    let a = r.len()?;
    let alphabet = r.u64_vec(a)?;
    let levels_len = r.len()?;
    if levels_len > 64 {
        return Err(Error::Format("too many wavelet levels".into()));
    }
    let mut levels = Vec::with_capacity(levels_len);
    let mut zeros = Vec::with_capacity(levels_len);
    for _ in 0..levels_len {
        zeros.push(r.u32()?);
        let len = r.len()?;
        let words = r.len()?;
        levels.push(RankBits::from_words(r.u64_vec(words)?, len));
    }
    let bl = r.len()?;
    let bottom_x = r.u32_vec(bl)?;
    let il = r.len()?;
    let ids = r.u32_vec(il)?;
    Ok(TwoDimStore {
        alphabet,
        levels,
        zeros,
        bottom_x,
        ids,
    })
}

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn bytes(&mut self, b: &[u8]) {
        self.buf.extend_from_slice(b);
    }
    fn u8(&mut self, x: u8) {
        self.buf.push(x);
    }
    fn u32(&mut self, x: u32) {
        self.bytes(&x.to_le_bytes());
    }
    fn u64(&mut self, x: u64) {
        self.bytes(&x.to_le_bytes());
    }
    fn section(&mut self, f: impl FnOnce(&mut Writer)) {
        let mut inner = Writer::default();
        f(&mut inner);
        self.u64(inner.buf.len() as u64);
        self.bytes(&inner.buf);
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn remaining(&self) -> usize {
        self.data.len() - self.pos
    }

    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if k > self.remaining() {
            return Err(Error::Format("unexpected end of data".into()));
        }
        let s = &self.data[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    fn rest(&mut self) -> &'a [u8] {
        let s = &self.data[self.pos..];
        self.pos = self.data.len();
        s
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    /// A u64 that must fit in memory as a count or position.
    fn len(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("length overflows".into()))
    }

    fn u32_vec(&mut self, k: usize) -> Result<Vec<u32>> {
        let raw = self.take(k.checked_mul(4).ok_or_else(overflow)?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect())
    }

    fn u64_vec(&mut self, k: usize) -> Result<Vec<u64>> {
        let raw = self.take(k.checked_mul(8).ok_or_else(overflow)?)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect())
    }

    fn section(&mut self) -> Result<Reader<'a>> {
        let len = self.len()?;
        Ok(Reader::new(self.take(len)?))
    }

    fn finish<T>(mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let v = f(&mut self)?;
        self.end()?;
        Ok(v)
    }

    fn end(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Format("trailing bytes".into()));
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::Format("length overflows".into())
}
