//! Static 1D and 2D range structures over labels.
//!
//! [`OneDimStore`] is a sorted array searched by binary search.
//! [`TwoDimStore`] is a wavelet matrix over rank-reduced labels laid out in
//! x-order, answering rectangle counts in `O(log σ)` and reports in
//! `O(log σ + occ log σ)` plus a final sort of the hits.

use crate::text::LabelRange;

/// Sorted multiset of labels, each carrying the position it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OneDimStore {
    labels: Vec<u64>,
    positions: Vec<u32>,
}

impl OneDimStore {
    /// Builds from `(label, position)` pairs in any order.
    pub fn new(mut entries: Vec<(u64, u32)>) -> Self {
        entries.sort_unstable();
        let (labels, positions) = entries.into_iter().unzip();
        Self { labels, positions }
    }

    pub(crate) fn from_sorted_parts(labels: Vec<u64>, positions: Vec<u32>) -> Option<Self> {
        if labels.len() != positions.len() || labels.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        Some(Self { labels, positions })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    fn span(&self, r: LabelRange) -> std::ops::Range<usize> {
        let lo = self.labels.partition_point(|&l| l < r.a);
        let hi = self.labels.partition_point(|&l| l <= r.b);
        lo..hi.max(lo)
    }

    /// Positions whose label lies in `r`, in ascending label order.
    pub fn report(&self, r: LabelRange) -> &[u32] {
        &self.positions[self.span(r)]
    }

    pub fn count(&self, r: LabelRange) -> usize {
        self.span(r).len()
    }

    pub fn is_empty_in(&self, r: LabelRange) -> bool {
        let lo = self.labels.partition_point(|&l| l < r.a);
        self.labels.get(lo).is_none_or(|&l| l > r.b)
    }
}

/// Plain bit vector with a per-word rank directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RankBits {
    pub(crate) words: Vec<u64>,
    pub(crate) len: usize,
    // ones before word i
    ranks: Vec<u32>,
}

impl RankBits {
    fn from_bits(bits: impl Iterator<Item = bool>, len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, b) in bits.enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words, len)
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        let mut ranks = Vec::with_capacity(words.len() + 1);
        let mut acc = 0u32;
        for w in &words {
            ranks.push(acc);
            acc += w.count_ones();
        }
        ranks.push(acc);
        Self { words, len, ranks }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Ones in `[0, i)`.
    fn rank1(&self, i: usize) -> usize {
        let (w, b) = (i / 64, i % 64);
        let base = self.ranks[w] as usize;
        if b == 0 {
            base
        } else {
            base + (self.words[w] & ((1u64 << b) - 1)).count_ones() as usize
        }
    }

    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

/// Static points `(x, y)` with `x` ranging over `1..=n` exactly once, each
/// carrying a payload id. Built from the y values listed in x order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDimStore {
    /// distinct labels ascending; symbol = index into this
    pub(crate) alphabet: Vec<u64>,
    pub(crate) levels: Vec<RankBits>,
    pub(crate) zeros: Vec<u32>,
    /// 0-based x of each slot of the bottom level
    pub(crate) bottom_x: Vec<u32>,
    /// payload by 0-based x
    pub(crate) ids: Vec<u32>,
}

impl TwoDimStore {
    /// `points[x - 1] = (y, id)`.
    pub fn new(points: &[(u64, u32)]) -> Self {
        let mut alphabet: Vec<u64> = points.iter().map(|p| p.0).collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        let width = bit_width(alphabet.len());
        let mut cur: Vec<(u32, u32)> = points
            .iter()
            .enumerate()
            .map(|(x, p)| {
                let sym = alphabet.binary_search(&p.0).expect("label in alphabet") as u32;
                (sym, x as u32)
            })
            .collect();
        let n = points.len();
        let mut levels = Vec::with_capacity(width);
        let mut zeros = Vec::with_capacity(width);
        for lvl in 0..width {
            let shift = width - 1 - lvl;
            let bits = RankBits::from_bits(cur.iter().map(|&(s, _)| s >> shift & 1 == 1), n);
            let (mut z, o): (Vec<_>, Vec<_>) = cur.iter().partition(|&&(s, _)| s >> shift & 1 == 0);
            zeros.push(z.len() as u32);
            z.extend(o);
            cur = z;
            levels.push(bits);
        }
        Self {
            alphabet,
            levels,
            zeros,
            bottom_x: cur.into_iter().map(|(_, x)| x).collect(),
            ids: points.iter().map(|p| p.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Label value of the point at 1-based `x`.
    pub fn y_at(&self, x: usize) -> u64 {
        let mut i = x - 1;
        let mut sym = 0usize;
        for (lvl, bits) in self.levels.iter().enumerate() {
            let bit = bits.get(i);
            sym = sym << 1 | bit as usize;
            i = if bit {
                self.zeros[lvl] as usize + bits.rank1(i)
            } else {
                bits.rank0(i)
            };
        }
        self.alphabet[sym]
    }

    /// Shape checks for a store read from disk; `Ok` means queries cannot
    /// index out of bounds.
    pub(crate) fn validate(&self) -> Result<(), String> {
        let n = self.ids.len();
        if self.alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return Err("2D alphabet is not strictly increasing".into());
        }
        if n > 0 && self.alphabet.is_empty() {
            return Err("2D alphabet is empty".into());
        }
        let width = bit_width(self.alphabet.len());
        if self.levels.len() != width || self.zeros.len() != width {
            return Err("2D level count does not match the alphabet".into());
        }
        for (bits, &z) in self.levels.iter().zip(&self.zeros) {
            if bits.len != n || bits.words.len() != n.div_ceil(64) {
                return Err("2D level has the wrong length".into());
            }
            if !n.is_multiple_of(64) && bits.words.last().is_some_and(|w| w >> (n % 64) != 0) {
                return Err("2D level has stray bits".into());
            }
            if bits.rank0(n) != z as usize {
                return Err("2D zero count disagrees with its level".into());
            }
        }
        let mut seen = vec![false; n];
        if self.bottom_x.len() != n {
            return Err("2D bottom permutation has the wrong length".into());
        }
        for &x in &self.bottom_x {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err("2D bottom level is not a permutation".into()),
            }
        }
        for x in 0..n {
            let mut i = x;
            let mut sym = 0usize;
            for (lvl, bits) in self.levels.iter().enumerate() {
                let bit = bits.get(i);
                sym = sym << 1 | bit as usize;
                i = if bit {
                    self.zeros[lvl] as usize + bits.rank1(i)
                } else {
                    bits.rank0(i)
                };
            }
            if sym >= self.alphabet.len() || self.bottom_x[i] as usize != x {
                return Err(format!("2D point {} decodes inconsistently", x + 1));
            }
        }
        Ok(())
    }

    /// Symbol range `[lo, hi)` covering labels in `r`.
    fn symbols(&self, r: LabelRange) -> (usize, usize) {
        let lo = self.alphabet.partition_point(|&l| l < r.a);
        let hi = self.alphabet.partition_point(|&l| l <= r.b);
        (lo, hi.max(lo))
    }

    /// Points with symbol `< sym` in slots `[s, e)` of the top level.
    fn count_below(&self, mut s: usize, mut e: usize, sym: usize) -> usize {
        let width = self.levels.len();
        if sym >= 1 << width {
            return e - s;
        }
        let mut acc = 0;
        for (lvl, bits) in self.levels.iter().enumerate() {
            let bit = sym >> (width - 1 - lvl) & 1 == 1;
            let (s0, e0) = (bits.rank0(s), bits.rank0(e));
            if bit {
                acc += e0 - s0;
                let z = self.zeros[lvl] as usize;
                s = z + (s - s0);
                e = z + (e - e0);
            } else {
                s = s0;
                e = e0;
            }
        }
        acc
    }

    fn check_x(&self, x1: usize, x2: usize) -> bool {
        x1 >= 1 && x1 <= x2 && x2 <= self.len()
    }

    /// Points with `x` in `[x1, x2]` (1-based) and label in `r`.
    pub fn count(&self, x1: usize, x2: usize, r: LabelRange) -> usize {
        if !self.check_x(x1, x2) {
            return 0;
        }
        let (lo, hi) = self.symbols(r);
        if lo == hi {
            return 0;
        }
        let (s, e) = (x1 - 1, x2);
        self.count_below(s, e, hi) - self.count_below(s, e, lo)
    }

    pub fn is_empty_in(&self, x1: usize, x2: usize, r: LabelRange) -> bool {
        self.count(x1, x2, r) == 0
    }

    /// Payload ids of the matching points, in ascending `x` order.
    pub fn report(&self, x1: usize, x2: usize, r: LabelRange) -> Vec<u32> {
        let mut xs = self.report_x(x1, x2, r);
        xs.sort_unstable();
        xs.into_iter().map(|x| self.ids[x as usize]).collect()
    }

    /// 0-based x coordinates of the matching points, unordered.
    fn report_x(&self, x1: usize, x2: usize, r: LabelRange) -> Vec<u32> {
        let mut out = Vec::new();
        if !self.check_x(x1, x2) {
            return out;
        }
        let (lo, hi) = self.symbols(r);
        if lo == hi {
            return out;
        }
        let width = self.levels.len();
        if width == 0 {
            out.extend((x1 - 1..x2).map(|x| x as u32));
            return out;
        }
        // (level, slot range, symbol prefix range [plo, phi))
        let mut stack = vec![(0usize, x1 - 1, x2, 0usize, 1usize << width)];
        while let Some((lvl, s, e, plo, phi)) = stack.pop() {
            if s == e || phi <= lo || plo >= hi {
                continue;
            }
            if lvl == width {
                out.extend_from_slice(&self.bottom_x[s..e]);
                continue;
            }
            let bits = &self.levels[lvl];
            let mid = plo + (phi - plo) / 2;
            let (s0, e0) = (bits.rank0(s), bits.rank0(e));
            let z = self.zeros[lvl] as usize;
            stack.push((lvl + 1, z + (s - s0), z + (e - e0), mid, phi));
            stack.push((lvl + 1, s0, e0, plo, mid));
        }
        out
    }
}

fn bit_width(symbols: usize) -> usize {
    if symbols <= 1 {
        0
    } else {
        (usize::BITS - (symbols - 1).leading_zeros()) as usize
    }
}
