//! Suffix-array machinery behind the greedy and optimal parsers.
//!
//! [`SuffixIndex`] holds the inverse suffix array and a range-minimum tree
//! over the LCP array, which together answer "which suffixes share at least
//! `L` letters with suffix `p`" as a contiguous rank interval. [`PrefixScan`]
//! sweeps positions left to right, inserting each position into a
//! range-maximum tree keyed by rank; the maximum inserted position inside
//! a rank interval is then the rightmost earlier occurrence.

const EMPTY: u32 = u32::MAX;

/// Suffix array of `s` where every letter is at most `upper` (SA-IS).
pub(crate) fn suffix_array(s: &[u32], upper: u32) -> Vec<u32> {
    assert!(s.len() < EMPTY as usize, "text too long for 32-bit indices");
    sa_is(s, upper as usize)
}

fn sa_is(s: &[u32], upper: usize) -> Vec<u32> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }

    // ls[i]: suffix i is S-type. The last suffix is L-type.
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }

    // sum_l[c]: start of bucket c; sum_s[c]: start of the S part of bucket c.
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if ls[i] {
            sum_l[s[i] as usize + 1] += 1;
        } else {
            sum_s[s[i] as usize] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        sum_l[c + 1] += sum_s[c];
    }

    let mut sa = vec![EMPTY; n];
    let mut buf = vec![0usize; upper + 2];
    let mut induce = |lms: &[u32], sa: &mut [u32]| {
        sa.fill(EMPTY);
        buf.copy_from_slice(&sum_s);
        for &d in lms {
            let d = d as usize;
            if d == n {
                continue;
            }
            let c = s[d] as usize;
            sa[buf[c]] = d as u32;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c]] = (n - 1) as u32;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c]] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![EMPTY; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    let m = lms.len();

    induce(&lms, &mut sa);

    if m > 0 {
        let mut sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| lms_map[v as usize] != EMPTY)
            .collect();
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        let lms_end = |p: usize| -> usize {
            let k = lms_map[p] as usize + 1;
            if k < m {
                lms[k] as usize
            } else {
                n
            }
        };
        for i in 1..m {
            let mut l = sorted_lms[i - 1] as usize;
            let mut r = sorted_lms[i] as usize;
            let end_l = lms_end(l);
            let end_r = lms_end(r);
            let mut same = end_l - l == end_r - r;
            if same {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                // The substring running to the end of the text carries the
                // virtual sentinel and is unequal to every other one.
                if l == n || r == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i] as usize] as usize] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper as usize);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r as usize];
        }
        induce(&sorted_lms, &mut sa);
    }
    sa
}

/// Kasai's algorithm: `lcp[r]` is the common prefix length of the suffixes
/// ranked `r - 1` and `r`; `lcp[0] = 0`.
pub(crate) fn lcp_array(s: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Range-minimum tree over the LCP array with boundary searches.
#[derive(Debug, Clone)]
struct MinTree {
    size: usize,
    tree: Vec<u32>,
}

impl MinTree {
    fn new(values: &[u32]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        // Padding leaves hold 0 so they terminate rightward searches.
        let mut tree = vec![0u32; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for i in (1..size).rev() {
            tree[i] = tree[2 * i].min(tree[2 * i + 1]);
        }
        Self { size, tree }
    }

    /// Minimum over the inclusive range `lo..=hi`.
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let mut l = lo + self.size;
        let mut r = hi + self.size + 1;
        let mut best = u32::MAX;
        while l < r {
            if l & 1 == 1 {
                best = best.min(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.min(self.tree[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        best
    }

    /// Largest index `i <= at` whose value is below `bound`.
    fn last_below(&self, at: usize, bound: u32) -> Option<usize> {
        self.last_below_in(1, 0, self.size - 1, at, bound)
    }

    fn last_below_in(&self, node: usize, lo: usize, hi: usize, at: usize, bound: u32) -> Option<usize> {
        if lo > at || self.tree[node] >= bound {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.last_below_in(2 * node + 1, mid + 1, hi, at, bound)
            .or_else(|| self.last_below_in(2 * node, lo, mid, at, bound))
    }

    /// Smallest index `i >= at` whose value is below `bound`.
    fn first_below(&self, at: usize, bound: u32) -> Option<usize> {
        if at >= self.size {
            return None;
        }
        self.first_below_in(1, 0, self.size - 1, at, bound)
    }

    fn first_below_in(&self, node: usize, lo: usize, hi: usize, at: usize, bound: u32) -> Option<usize> {
        if hi < at || self.tree[node] >= bound {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.first_below_in(2 * node, lo, mid, at, bound)
            .or_else(|| self.first_below_in(2 * node + 1, mid + 1, hi, at, bound))
    }
}

/// Range-maximum tree over ranks; a leaf holds `position + 1`, or 0 when
/// that rank's position has not been inserted.
#[derive(Debug, Clone)]
struct MaxTree {
    size: usize,
    tree: Vec<u32>,
}

impl MaxTree {
    fn new(len: usize) -> Self {
        let size = len.next_power_of_two().max(1);
        Self {
            size,
            tree: vec![0; 2 * size],
        }
    }

    fn set(&mut self, rank: usize, position: usize) {
        let mut i = rank + self.size;
        let value = position as u32 + 1;
        self.tree[i] = value;
        while i > 1 {
            i >>= 1;
            let v = self.tree[2 * i].max(self.tree[2 * i + 1]);
            if self.tree[i] == v {
                break;
            }
            self.tree[i] = v;
        }
    }

    fn max(&self, lo: usize, hi: usize) -> Option<usize> {
        let mut l = lo + self.size;
        let mut r = hi + self.size + 1;
        let mut best = 0;
        while l < r {
            if l & 1 == 1 {
                best = best.max(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.max(self.tree[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        (best > 0).then(|| best as usize - 1)
    }

    /// Largest occupied rank strictly below `rank`.
    fn occupied_before(&self, rank: usize) -> Option<usize> {
        if rank == 0 {
            return None;
        }
        self.occupied_before_in(1, 0, self.size - 1, rank - 1)
    }

    fn occupied_before_in(&self, node: usize, lo: usize, hi: usize, at: usize) -> Option<usize> {
        if lo > at || self.tree[node] == 0 {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.occupied_before_in(2 * node + 1, mid + 1, hi, at)
            .or_else(|| self.occupied_before_in(2 * node, lo, mid, at))
    }

    /// Smallest occupied rank strictly above `rank`.
    fn occupied_after(&self, rank: usize) -> Option<usize> {
        if rank + 1 >= self.size {
            return None;
        }
        self.occupied_after_in(1, 0, self.size - 1, rank + 1)
    }

    fn occupied_after_in(&self, node: usize, lo: usize, hi: usize, at: usize) -> Option<usize> {
        if hi < at || self.tree[node] == 0 {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.occupied_after_in(2 * node, lo, mid, at)
            .or_else(|| self.occupied_after_in(2 * node + 1, mid + 1, hi, at))
    }
}

/// Suffix ranks and LCP range-minimum structure for one text.
#[derive(Debug, Clone)]
pub struct SuffixIndex {
    rank: Vec<u32>,
    lcp: MinTree,
}

impl SuffixIndex {
    pub fn new(letters: &[u32]) -> Self {
        let upper = letters.iter().copied().max().unwrap_or(0);
        let sa = suffix_array(letters, upper);
        let mut rank = vec![0u32; letters.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = lcp_array(letters, &sa, &rank);
        drop(sa);
        Self {
            lcp: MinTree::new(&lcp),
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, position: usize) -> usize {
        self.rank[position] as usize
    }

    /// LCP of two distinct ranks.
    fn lcp_ranks(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        debug_assert!(a != b);
        self.lcp.min(a + 1, b) as usize
    }

    /// Length of the longest common prefix of the suffixes at `i` and `j`.
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.len() - i;
        }
        self.lcp_ranks(self.rank(i), self.rank(j))
    }

    /// Inclusive rank interval of suffixes sharing at least `min_len`
    /// letters with the suffix of rank `rank`.
    fn interval(&self, rank: usize, min_len: usize) -> (usize, usize) {
        if min_len == 0 {
            return (0, self.len() - 1);
        }
        let bound = u32::try_from(min_len).unwrap_or(u32::MAX);
        let lo = if rank == 0 {
            0
        } else {
            self.lcp.last_below(rank, bound).unwrap_or(0)
        };
        let hi = match self.lcp.first_below(rank + 1, bound) {
            Some(i) => (i - 1).min(self.len() - 1),
            None => self.len() - 1,
        };
        (lo, hi)
    }

    pub fn scan(&self) -> PrefixScan<'_> {
        PrefixScan {
            index: self,
            seen: MaxTree::new(self.len()),
            cursor: 0,
        }
    }
}

/// For lengths `from..=upto`, the rightmost earlier source is `source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceStep {
    pub upto: usize,
    pub source: usize,
}

/// Left-to-right sweep answering earlier-occurrence queries.
///
/// Queries at position `p` consider only sources `j < p`; positions must
/// be queried in non-decreasing order.
#[derive(Debug, Clone)]
pub struct PrefixScan<'a> {
    index: &'a SuffixIndex,
    seen: MaxTree,
    cursor: usize,
}

impl PrefixScan<'_> {
    fn advance_to(&mut self, p: usize) {
        assert!(p >= self.cursor, "PrefixScan queried out of order");
        for j in self.cursor..p {
            self.seen.set(self.index.rank(j), j);
        }
        self.cursor = p;
    }

    /// Longest `L` such that the `L` letters at `p` occur starting at some
    /// `j < p` (the occurrence may overlap `p`).
    pub fn longest_previous(&mut self, p: usize) -> usize {
        self.advance_to(p);
        let r = self.index.rank(p);
        let left = self
            .seen
            .occupied_before(r)
            .map_or(0, |q| self.index.lcp_ranks(q, r));
        let right = self
            .seen
            .occupied_after(r)
            .map_or(0, |q| self.index.lcp_ranks(r, q));
        left.max(right)
    }

    /// Rightmost `j < p` where the `len` letters at `p` also occur.
    pub fn rightmost_source(&mut self, p: usize, len: usize) -> Option<usize> {
        self.advance_to(p);
        if p == 0 {
            return None;
        }
        let (lo, hi) = self.index.interval(self.index.rank(p), len);
        self.seen.max(lo, hi)
    }

    /// Rightmost sources for every length in `1..=max_len`, as a staircase
    /// of steps with increasing `upto` and decreasing `source`.
    pub fn source_steps(&mut self, p: usize, max_len: usize) -> Vec<SourceStep> {
        let mut steps = Vec::new();
        let mut len = 1;
        while len <= max_len {
            let Some(source) = self.rightmost_source(p, len) else {
                break;
            };
            let reach = self.index.lcp(source, p);
            debug_assert!(reach >= len);
            steps.push(SourceStep {
                upto: reach.min(max_len),
                source,
            });
            len = reach + 1;
        }
        steps
    }
}
