//! Finite ordered sets: representation, parsing, ranks, width, order-autonomy
//! and the other structural primitives the rest of the library consumes.

use crate::{Error, Result};

/// A finite ordered set on elements 0..n−1, stored as a dense strict-order
/// matrix. The relation is kept transitively closed and irreflexive at all
/// times; antisymmetry follows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers())
    }
}

/// Outcome of a subset predicate together with a failure witness.
#[derive(Debug, Clone)]
pub struct SubsetPredicateReport {
    pub subset: Vec<usize>,
    pub verdict: bool,
    pub witness: Option<usize>,
}

impl Poset {
    /// Builds a poset from a list of `a < b` pairs; the transitive closure is
    /// applied. Fails if the closure would put any element below itself.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n > 64 {
            return Err(Error::ParamOutOfRange(format!("{n} elements exceeds the supported 64")));
        }
        let mut lt = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::IndexOutOfRange(b));
            }
            lt[a * n + b] = true;
        }
        // Floyd-Warshall closure
        for k in 0..n {
            for i in 0..n {
                if lt[i * n + k] {
                    for j in 0..n {
                        if lt[k * n + j] {
                            lt[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if lt[i * n + i] {
                return Err(Error::CycleDetected);
            }
        }
        Ok(Poset { n, lt, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Poset {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.n + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    /// Bitmask of elements strictly above `a`.
    pub fn up_mask(&self, a: usize) -> u64 {
        let mut m = 0u64;
        for b in 0..self.n {
            if self.lt(a, b) {
                m |= 1 << b;
            }
        }
        m
    }

    /// Bitmask of elements strictly below `a`.
    pub fn down_mask(&self, a: usize) -> u64 {
        let mut m = 0u64;
        for b in 0..self.n {
            if self.lt(b, a) {
                m |= 1 << b;
            }
        }
        m
    }

    /// Cover pairs (a, b): a < b with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Rank of every element: rank 0 are the minimal elements, rank k the
    /// elements minimal after removing all ranks below k.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.n];
        let mut remaining: Vec<usize> = (0..self.n).collect();
        let mut level = 0;
        while !remaining.is_empty() {
            let minimal: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&x| !remaining.iter().any(|&y| self.lt(y, x)))
                .collect();
            for &x in &minimal {
                rank[x] = level;
            }
            remaining.retain(|x| rank[*x] == usize::MAX);
            level += 1;
        }
        rank
    }

    pub fn height(&self) -> usize {
        self.ranks().into_iter().max().unwrap_or(0)
    }

    /// Elements of each rank level, in increasing rank order.
    pub fn rank_levels(&self) -> Vec<Vec<usize>> {
        let ranks = self.ranks();
        let h = ranks.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); if self.n == 0 { 0 } else { h + 1 }];
        for (x, &r) in ranks.iter().enumerate() {
            levels[r].push(x);
        }
        levels
    }

    /// Maximum antichain size, via minimum chain cover (Dilworth duality):
    /// width = n − maximum matching in the bipartite comparability graph.
    pub fn width(&self) -> usize {
        let n = self.n;
        let mut match_r: Vec<Option<usize>> = vec![None; n];
        let mut match_l: Vec<Option<usize>> = vec![None; n];
        fn augment(
            p: &Poset,
            u: usize,
            seen: &mut [bool],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
        ) -> bool {
            for v in 0..p.n {
                if p.lt(u, v) && !seen[v] {
                    seen[v] = true;
                    if match_r[v].is_none()
                        || augment(p, match_r[v].unwrap(), seen, match_l, match_r)
                    {
                        match_l[u] = Some(v);
                        match_r[v] = Some(u);
                        return true;
                    }
                }
            }
            false
        }
        let mut matching = 0;
        for u in 0..n {
            let mut seen = vec![false; n];
            if augment(self, u, &mut seen, &mut match_l, &mut match_r) {
                matching += 1;
            }
        }
        n - matching
    }

    /// Brute-force maximum antichain over all subsets; test oracle for width.
    pub fn width_bruteforce(&self) -> usize {
        assert!(self.n <= 20, "oracle restricted to small posets");
        let mut best = 0;
        for mask in 0u32..(1 << self.n) {
            if (mask.count_ones() as usize) <= best {
                continue;
            }
            let elems: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
            if self.is_antichain(&elems) {
                best = elems.len();
            }
        }
        best
    }

    pub fn rank_height_width(&self) -> (Vec<usize>, usize, usize) {
        let ranks = self.ranks();
        let height = ranks.iter().copied().max().unwrap_or(0);
        (ranks, height, self.width())
    }

    pub fn is_antichain(&self, a: &[usize]) -> bool {
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                if self.comparable(x, y) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_chain(&self, a: &[usize]) -> bool {
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                if !self.comparable(x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// A set A is order-autonomous when every outside element comparable to
    /// some member is comparable the same way to all members.
    pub fn is_order_autonomous(&self, a: &[usize]) -> Result<SubsetPredicateReport> {
        if a.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &x in a {
            if x >= self.n {
                return Err(Error::IndexOutOfRange(x));
            }
        }
        let inside: u64 = a.iter().map(|&x| 1u64 << x).sum();
        for z in 0..self.n {
            if inside >> z & 1 == 1 {
                continue;
            }
            let below_some = a.iter().any(|&x| self.lt(z, x));
            let below_all = a.iter().all(|&x| self.lt(z, x));
            let above_some = a.iter().any(|&x| self.lt(x, z));
            let above_all = a.iter().all(|&x| self.lt(x, z));
            if (below_some && !below_all) || (above_some && !above_all) {
                return Ok(SubsetPredicateReport {
                    subset: a.to_vec(),
                    verdict: false,
                    witness: Some(z),
                });
            }
        }
        Ok(SubsetPredicateReport { subset: a.to_vec(), verdict: true, witness: None })
    }

    /// Partitions `frame_block` (an antichain) into its maximal subsets that
    /// are order-autonomous antichains within the sub-poset induced on
    /// `ambient`. Two members land in one cell exactly when their strict
    /// up-sets and down-sets inside `ambient` coincide. Cells are sorted by
    /// least element, which doubles as the cell representative.
    pub fn maximal_autonomous_antichain_partition(
        &self,
        ambient: &[usize],
        frame_block: &[usize],
    ) -> Result<Vec<Vec<usize>>> {
        if !self.is_antichain(frame_block) {
            return Err(Error::NotAntichain(frame_block.to_vec()));
        }
        let amb: u64 = ambient.iter().map(|&x| 1u64 << x).sum();
        let mut cells: Vec<(u64, u64, Vec<usize>)> = Vec::new();
        let mut sorted = frame_block.to_vec();
        sorted.sort_unstable();
        for &x in &sorted {
            let up = self.up_mask(x) & amb;
            let down = self.down_mask(x) & amb;
            match cells.iter_mut().find(|(u, d, _)| *u == up && *d == down) {
                Some((_, _, cell)) => cell.push(x),
                None => cells.push((up, down, vec![x])),
            }
        }
        Ok(cells.into_iter().map(|(_, _, c)| c).collect())
    }

    /// True when no bipartition P = A ∪ B with A < B exists. Equivalent to
    /// connectivity of the incomparability graph (or n ≤ 1).
    pub fn is_coconnected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..self.n {
                if !seen[y] && !self.comparable(x, y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Test oracle: direct search over all bipartitions for A < B.
    pub fn is_coconnected_bruteforce(&self) -> bool {
        assert!(self.n <= 16);
        for mask in 1u32..(1 << self.n) - 1 {
            let a: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 0).collect();
            if a.iter().all(|&x| b.iter().all(|&y| self.lt(x, y))) {
                return false;
            }
        }
        true
    }

    pub fn dual(&self) -> Poset {
        let mut lt = vec![false; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                lt[a * self.n + b] = self.lt(b, a);
            }
        }
        Poset { n: self.n, lt, labels: self.labels.clone() }
    }

    /// Sub-poset induced on `subset`; second component maps new indices back
    /// to the original elements.
    pub fn induced(&self, subset: &[usize]) -> (Poset, Vec<usize>) {
        let m = subset.len();
        let mut lt = vec![false; m * m];
        for (i, &x) in subset.iter().enumerate() {
            for (j, &y) in subset.iter().enumerate() {
                lt[i * m + j] = self.lt(x, y);
            }
        }
        let labels = self.labels.as_ref().map(|l| subset.iter().map(|&x| l[x].clone()).collect());
        (Poset { n: m, lt, labels }, subset.to_vec())
    }

    /// Disjoint union (no cross comparabilities).
    pub fn disjoint_union(parts: &[Poset]) -> Poset {
        let index = Poset::from_covers(parts.len(), &[]).unwrap();
        lexicographic_sum(&index, parts).unwrap()
    }
}

/// Replaces every element t of `index` by the poset `pieces[t]`: elements of
/// distinct pieces compare as their indices do, elements of one piece as in
/// the piece.
pub fn lexicographic_sum(index: &Poset, pieces: &[Poset]) -> Result<Poset> {
    if pieces.len() != index.size() {
        return Err(Error::ParamOutOfRange(format!(
            "{} pieces for an index of size {}",
            pieces.len(),
            index.size()
        )));
    }
    let total: usize = pieces.iter().map(|p| p.size()).sum();
    let mut offset = vec![0usize; pieces.len()];
    let mut acc = 0;
    for (t, piece) in pieces.iter().enumerate() {
        offset[t] = acc;
        acc += piece.size();
    }
    let mut pairs = Vec::new();
    for (t, piece) in pieces.iter().enumerate() {
        for a in 0..piece.size() {
            for b in 0..piece.size() {
                if piece.lt(a, b) {
                    pairs.push((offset[t] + a, offset[t] + b));
                }
            }
        }
        for u in 0..index.size() {
            if index.lt(t, u) {
                for a in 0..piece.size() {
                    for b in 0..pieces[u].size() {
                        pairs.push((offset[t] + a, offset[u] + b));
                    }
                }
            }
        }
    }
    Poset::from_covers(total, &pairs)
}

/// Parses the poset text format; any `frame:` section is returned alongside.
pub fn parse_poset_with_frame(text: &str) -> Result<(Poset, Option<Vec<Vec<usize>>>)> {
    let mut n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut frame: Option<Vec<Vec<usize>>> = None;
    #[derive(PartialEq)]
    enum Section {
        Header,
        Covers,
        Frame,
    }
    let mut section = Section::Header;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| Error::Parse { line: lineno + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match section {
            Section::Header => {
                let rest = line
                    .strip_prefix("elements:")
                    .ok_or_else(|| err("expected `elements: <n>`"))?;
                n = Some(
                    rest.trim().parse::<usize>().map_err(|_| err("invalid element count"))?,
                );
                section = Section::Covers;
            }
            Section::Covers if line == "covers:" => {}
            Section::Covers if line == "frame:" => {
                frame = Some(Vec::new());
                section = Section::Frame;
            }
            Section::Covers => {
                let mut it = line.split_whitespace();
                let a = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected `<i> <j>`"))?;
                let b = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected `<i> <j>`"))?;
                if it.next().is_some() {
                    return Err(err("trailing tokens after cover pair"));
                }
                pairs.push((a, b));
            }
            Section::Frame => {
                let cell: std::result::Result<Vec<usize>, _> =
                    line.split_whitespace().map(|t| t.parse::<usize>()).collect();
                let cell = cell.map_err(|_| err("invalid frame cell"))?;
                frame.as_mut().unwrap().push(cell);
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing `elements:` header".into() })?;
    let poset = Poset::from_covers(n, &pairs)?;
    Ok((poset, frame))
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    parse_poset_with_frame(text).map(|(p, _)| p)
}

/// Serializes a poset (and optionally a frame) in the text format.
pub fn to_poset_text(p: &Poset, frame: Option<&[Vec<usize>]>) -> String {
    let mut out = format!("elements: {}\ncovers:\n", p.size());
    for (a, b) in p.covers() {
        out.push_str(&format!("{a} {b}\n"));
    }
    if let Some(cells) = frame {
        out.push_str("frame:\n");
        for cell in cells {
            let words: Vec<String> = cell.iter().map(|x| x.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
    }
    out
}
