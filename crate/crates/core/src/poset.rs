//! Finite posets: order matrices, cover relations, ideals, antichains, ranks,
//! convexity and width.
//!
//! A [`Poset`] stores the full order relation as a dense bit matrix (both the
//! "up" rows `{y : x <= y}` and the "down" rows `{y : y <= x}`), plus the
//! derived list of cover pairs. Elements are plain indices `0..n`; labels are
//! cosmetic. Values are immutable after construction, so they can be shared
//! freely across threads.

use crate::set::ElemSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("edge list contains a cycle")]
    CycleDetected,
    #[error("element {index} out of range 0..{size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("poset is not ranked: conflicting ranks at element {element}")]
    NotRanked { element: usize },
    #[error("set is not an antichain: {lo} < {hi}")]
    NotAntichain { lo: usize, hi: usize },
    #[error("lower set is not dominated by upper set")]
    NotDominated,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("label list has wrong length")]
    BadLabels,
}

/// Direction for generated sets: downward closure (order ideal) or upward
/// closure (order filter).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

#[derive(Clone)]
pub struct Poset {
    n: usize,
    stride: usize,
    /// Row x = { y : x <= y }.
    up: Vec<u64>,
    /// Row x = { y : y <= x }.
    down: Vec<u64>,
    /// All pairs (x, y) with x covered by y, sorted.
    covers: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of the
    /// given edges (`u < v` for each `(u, v)`). The edges need not be cover
    /// pairs; covers are derived. Cyclic input is rejected.
    pub fn from_cover_edges(n: usize, edges: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let stride = n.div_ceil(64).max(1);
        for &(u, v) in edges {
            for e in [u, v] {
                if e >= n {
                    return Err(PosetError::ElementOutOfRange { index: e, size: n });
                }
            }
            if u == v {
                return Err(PosetError::CycleDetected);
            }
        }

        // Kahn topological sort over the raw edges.
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in edges {
            succ[u].push(v);
            indeg[v] += 1;
        }
        let mut topo: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let v = topo[head];
            head += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    topo.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(PosetError::CycleDetected);
        }

        // Closure in reverse topological order: up[v] = {v} ∪ ⋃ up[w].
        let mut up = vec![0u64; n * stride];
        for &v in topo.iter().rev() {
            up[v * stride + v / 64] |= 1 << (v % 64);
            for i in 0..succ[v].len() {
                let w = succ[v][i];
                for k in 0..stride {
                    let bits = up[w * stride + k];
                    up[v * stride + k] |= bits;
                }
            }
        }

        Ok(Self::from_closure(n, stride, up))
    }

    /// Builds from a complete reflexive-transitive `up` matrix; covers are
    /// derived. Internal constructors use this when the closure is already
    /// known. The matrix is trusted to be a partial order.
    pub(crate) fn from_closure(n: usize, stride: usize, up: Vec<u64>) -> Poset {
        let down = transpose(n, stride, &up);
        let covers = derive_covers(n, stride, &up, &down);
        Poset {
            n,
            stride,
            up,
            down,
            covers,
            labels: None,
        }
    }

    /// Internal fast constructor for generators that know both the closure and
    /// the cover list.
    pub(crate) fn from_parts(n: usize, up: Vec<u64>, covers: Vec<(usize, usize)>) -> Poset {
        let stride = n.div_ceil(64).max(1);
        debug_assert_eq!(up.len(), n * stride);
        let down = transpose(n, stride, &up);
        let mut covers = covers;
        covers.sort_unstable();
        // Deriving covers is cubic; only cross-check small instances.
        debug_assert!(n > 512 || derive_covers(n, stride, &up, &down) == covers);
        Poset {
            n,
            stride,
            up,
            down,
            covers,
            labels: None,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// x <= y.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x * self.stride + y / 64] >> (y % 64) & 1 == 1
    }

    /// x < y.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// All cover pairs (x, y) with x ≺ y, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), PosetError> {
        if labels.len() != self.n {
            return Err(PosetError::BadLabels);
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub(crate) fn up_blocks(&self, x: usize) -> &[u64] {
        &self.up[x * self.stride..(x + 1) * self.stride]
    }

    pub(crate) fn down_blocks(&self, x: usize) -> &[u64] {
        &self.down[x * self.stride..(x + 1) * self.stride]
    }

    /// The principal filter ↑x as a set.
    pub fn up_set(&self, x: usize) -> ElemSet {
        ElemSet::from_blocks(self.n, self.up_blocks(x).to_vec())
    }

    /// The principal ideal ↓x as a set.
    pub fn down_set(&self, x: usize) -> ElemSet {
        ElemSet::from_blocks(self.n, self.down_blocks(x).to_vec())
    }

    /// Validates element indices coming from an external source and packs
    /// them into a set.
    pub fn set_from(&self, indices: &[usize]) -> Result<ElemSet, PosetError> {
        let mut s = ElemSet::empty(self.n);
        for &i in indices {
            if i >= self.n {
                return Err(PosetError::ElementOutOfRange {
                    index: i,
                    size: self.n,
                });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// ↓S or ↑S. Idempotent; the result always contains S.
    pub fn generated_set(&self, s: &ElemSet, dir: Direction) -> ElemSet {
        assert_eq!(s.domain(), self.n, "set from a different poset");
        let mut out = ElemSet::empty(self.n);
        for x in 0..self.n {
            let row = match dir {
                Direction::Down => self.up_blocks(x),
                Direction::Up => self.down_blocks(x),
            };
            // x ∈ ↓S iff ↑x meets S (and dually).
            if row.iter().zip(s.blocks()).any(|(a, b)| a & b != 0) {
                out.insert(x);
            }
        }
        out
    }

    /// True iff s <= x <= s' with s, s' ∈ S forces x ∈ S.
    pub fn is_convex(&self, s: &ElemSet) -> bool {
        assert_eq!(s.domain(), self.n);
        for x in 0..self.n {
            if s.contains(x) {
                continue;
            }
            let below = self
                .down_blocks(x)
                .iter()
                .zip(s.blocks())
                .any(|(a, b)| a & b != 0);
            if !below {
                continue;
            }
            let above = self
                .up_blocks(x)
                .iter()
                .zip(s.blocks())
                .any(|(a, b)| a & b != 0);
            if above {
                return false;
            }
        }
        true
    }

    pub fn minimals(&self) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for x in 0..self.n {
            if self
                .down_blocks(x)
                .iter()
                .map(|b| b.count_ones())
                .sum::<u32>()
                == 1
            {
                out.insert(x);
            }
        }
        out
    }

    pub fn maximals(&self) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for x in 0..self.n {
            if self
                .up_blocks(x)
                .iter()
                .map(|b| b.count_ones())
                .sum::<u32>()
                == 1
            {
                out.insert(x);
            }
        }
        out
    }

    /// Domination flags for nonempty subsets A, B:
    ///
    /// * `le`: A ⊆ ↓B and B ⊆ ↑A (written A ≤ B);
    /// * `not_ge`: B ⊄ ↓a for every a ∈ A, and A ⊄ ↑b for every b ∈ B
    ///   (written A ≱ B — not the negation of B ≤ A).
    pub fn antichain_relations(&self, a: &ElemSet, b: &ElemSet) -> RelationFlags {
        assert!(
            !a.is_empty() && !b.is_empty(),
            "antichain_relations needs nonempty sets"
        );
        assert_eq!(a.domain(), self.n);
        assert_eq!(b.domain(), self.n);
        let mut le = true;
        let mut not_ge = true;
        for x in a.iter() {
            if !self
                .up_blocks(x)
                .iter()
                .zip(b.blocks())
                .any(|(r, s)| r & s != 0)
            {
                le = false;
            }
            // B ⊆ ↓x would mean every b is <= x.
            if b.blocks()
                .iter()
                .zip(self.down_blocks(x))
                .all(|(s, r)| s & !r == 0)
            {
                not_ge = false;
            }
        }
        for y in b.iter() {
            if !self
                .down_blocks(y)
                .iter()
                .zip(a.blocks())
                .any(|(r, s)| r & s != 0)
            {
                le = false;
            }
            if a.blocks()
                .iter()
                .zip(self.up_blocks(y))
                .all(|(s, r)| s & !r == 0)
            {
                not_ge = false;
            }
        }
        RelationFlags { le, not_ge }
    }

    /// The convex hull [A, B] = {x : a <= x <= b for some a ∈ A, b ∈ B}.
    /// Requires A ≤ B.
    pub fn convex_span(&self, lower: &ElemSet, upper: &ElemSet) -> Result<ConvexSpan, PosetError> {
        if lower.is_empty() || upper.is_empty() {
            return Err(PosetError::EmptySet);
        }
        if !self.antichain_relations(lower, upper).le {
            return Err(PosetError::NotDominated);
        }
        let mut elements = ElemSet::empty(self.n);
        for x in 0..self.n {
            let hit_a = self
                .down_blocks(x)
                .iter()
                .zip(lower.blocks())
                .any(|(r, s)| r & s != 0);
            if !hit_a {
                continue;
            }
            let hit_b = self
                .up_blocks(x)
                .iter()
                .zip(upper.blocks())
                .any(|(r, s)| r & s != 0);
            if hit_b {
                elements.insert(x);
            }
        }
        Ok(ConvexSpan {
            lower: lower.clone(),
            upper: upper.clone(),
            elements,
        })
    }

    /// Validates that the given elements are pairwise incomparable.
    pub fn antichain_of(&self, members: &ElemSet) -> Result<Antichain, PosetError> {
        assert_eq!(members.domain(), self.n);
        for x in members.iter() {
            for y in self.up_set(x).intersection(members).iter() {
                if y != x {
                    return Err(PosetError::NotAntichain { lo: x, hi: y });
                }
            }
        }
        Ok(Antichain {
            members: members.clone(),
        })
    }

    /// Rank function and levels, if the poset is ranked (every minimal element
    /// at rank 0, every cover step raising rank by exactly 1).
    pub fn rank_profile(&self) -> Result<RankProfile, PosetError> {
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.covers {
            upper[u].push(v);
        }
        // |↓x| strictly increases along <, so sorting by it gives a linear
        // extension.
        let downsize: Vec<usize> = (0..self.n)
            .map(|x| {
                self.down_blocks(x)
                    .iter()
                    .map(|b| b.count_ones() as usize)
                    .sum()
            })
            .collect();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (downsize[x], x));

        let mut rank = vec![usize::MAX; self.n];
        for x in self.minimals().iter() {
            rank[x] = 0;
        }
        for &x in &order {
            debug_assert_ne!(rank[x], usize::MAX);
            for &v in &upper[x] {
                let proposed = rank[x] + 1;
                if rank[v] == usize::MAX {
                    rank[v] = proposed;
                } else if rank[v] != proposed {
                    return Err(PosetError::NotRanked { element: v });
                }
            }
        }
        let height = rank.iter().copied().max().unwrap_or(0);
        let mut levels = vec![ElemSet::empty(self.n); if self.n == 0 { 0 } else { height + 1 }];
        for x in 0..self.n {
            levels[rank[x]].insert(x);
        }
        let level_sizes = levels.iter().map(|l| l.len()).collect();
        Ok(RankProfile {
            rank,
            levels,
            level_sizes,
        })
    }

    /// Maximum antichain size. Exhaustive search with comparability pruning up
    /// to 24 elements; minimum chain cover via bipartite matching above that.
    pub fn width(&self) -> usize {
        self.width_of(&ElemSet::full(self.n))
    }

    /// Width of the subposet induced by `s`.
    pub fn width_of(&self, s: &ElemSet) -> usize {
        assert_eq!(s.domain(), self.n);
        let elems: Vec<usize> = s.iter().collect();
        if elems.is_empty() {
            return 0;
        }
        if elems.len() <= 24 {
            self.width_exhaustive(&elems)
        } else {
            self.width_matching(&elems)
        }
    }

    fn width_exhaustive(&self, elems: &[usize]) -> usize {
        let m = elems.len();
        // compat[i] = positions j > i with elems[j] incomparable to elems[i].
        let mut compat = vec![0u32; m];
        for i in 0..m {
            for j in (i + 1)..m {
                if !self.comparable(elems[i], elems[j]) {
                    compat[i] |= 1 << j;
                }
            }
        }
        fn rec(compat: &[u32], cand: u32, chosen: usize, best: &mut usize) {
            if chosen + cand.count_ones() as usize <= *best {
                return;
            }
            if cand == 0 {
                *best = (*best).max(chosen);
                return;
            }
            let i = cand.trailing_zeros() as usize;
            // Include position i.
            rec(compat, cand & compat[i] & !(1 << i), chosen + 1, best);
            // Exclude position i.
            rec(compat, cand & !(1 << i), chosen, best);
        }
        let mut best = 0;
        let all = if m == 32 { !0u32 } else { (1u32 << m) - 1 };
        rec(&compat, all, 0, &mut best);
        best
    }

    /// Dilworth route: width = |S| − maximum matching of the strict
    /// comparability bipartite graph.
    fn width_matching(&self, elems: &[usize]) -> usize {
        let m = elems.len();
        let adj: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).filter(|&j| self.lt(elems[i], elems[j])).collect())
            .collect();
        let mut matched: Vec<Option<usize>> = vec![None; m];
        let mut matching = 0;
        for u in 0..m {
            let mut used = vec![false; m];
            if try_augment(u, &adj, &mut matched, &mut used) {
                matching += 1;
            }
        }
        m - matching
    }

    /// Order-reversed poset. `dual(dual(p))` equals `p`.
    pub fn dual(&self) -> Poset {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(x, y)| (y, x)).collect();
        covers.sort_unstable();
        Poset {
            n: self.n,
            stride: self.stride,
            up: self.down.clone(),
            down: self.up.clone(),
            covers,
            labels: self.labels.clone(),
        }
    }

    /// The lexicographically smallest linear extension (repeatedly pick the
    /// smallest-index minimal element).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut remaining: Vec<usize> = (0..self.n)
            .map(|x| {
                self.down_blocks(x)
                    .iter()
                    .map(|b| b.count_ones() as usize)
                    .sum::<usize>()
                    - 1
            })
            .collect();
        let mut placed = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let next = (0..self.n)
                .find(|&x| !placed[x] && remaining[x] == 0)
                .expect("order matrix is acyclic");
            placed[next] = true;
            out.push(next);
            for y in 0..self.n {
                if !placed[y] && self.lt(next, y) {
                    remaining[y] -= 1;
                }
            }
        }
        out
    }

    /// Every downset, exactly once, ordered lexicographically by characteristic
    /// vector along the fixed linear extension. The empty set comes first and
    /// the full set last.
    pub fn enumerate_ideals(&self) -> Vec<ElemSet> {
        let ext = self.linear_extension();
        let mut out = Vec::new();
        let mut current = ElemSet::empty(self.n);
        self.ideals_rec(&ext, 0, &mut current, &mut out);
        out
    }

    fn ideals_rec(&self, ext: &[usize], pos: usize, current: &mut ElemSet, out: &mut Vec<ElemSet>) {
        if pos == ext.len() {
            out.push(current.clone());
            return;
        }
        let e = ext[pos];
        // Bit 0 first: exclude e.
        self.ideals_rec(ext, pos + 1, current, out);
        // Include e if all strict predecessors are already in.
        let ok = self
            .down_blocks(e)
            .iter()
            .zip(current.blocks())
            .enumerate()
            .all(|(w, (d, c))| {
                let strict = d & !(if e / 64 == w { 1 << (e % 64) } else { 0 });
                strict & !c == 0
            });
        if ok {
            current.insert(e);
            self.ideals_rec(ext, pos + 1, current, out);
            current.remove(e);
        }
    }
}

fn transpose(n: usize, stride: usize, rows: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; n * stride];
    for x in 0..n {
        for y in 0..n {
            if rows[x * stride + y / 64] >> (y % 64) & 1 == 1 {
                out[y * stride + x / 64] |= 1 << (x % 64);
            }
        }
    }
    out
}

fn derive_covers(n: usize, stride: usize, up: &[u64], down: &[u64]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for x in 0..n {
        let row = &up[x * stride..(x + 1) * stride];
        for y in 0..n {
            if y == x || row[y / 64] >> (y % 64) & 1 == 0 {
                continue;
            }
            // y covers x iff the interval [x, y] is exactly {x, y}.
            let between: u32 = row
                .iter()
                .zip(&down[y * stride..(y + 1) * stride])
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if between == 2 {
                covers.push((x, y));
            }
        }
    }
    covers.sort_unstable();
    covers
}

fn try_augment(
    u: usize,
    adj: &[Vec<usize>],
    matched: &mut [Option<usize>],
    used: &mut [bool],
) -> bool {
    for &v in &adj[u] {
        if used[v] {
            continue;
        }
        used[v] = true;
        if matched[v].is_none() || try_augment(matched[v].unwrap(), adj, matched, used) {
            matched[v] = Some(u);
            return true;
        }
    }
    false
}

/// Result of [`Poset::antichain_relations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationFlags {
    pub le: bool,
    pub not_ge: bool,
}

/// A validated antichain (pairwise incomparable members).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain {
    members: ElemSet,
}

impl Antichain {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

/// The convex hull [A, B] of two dominating subsets.
///
/// When A and B are antichains with A ≤ B the minimal elements of the hull
/// are exactly A and the maximal ones exactly B; general subsets are allowed
/// because interval endpoints on the Birkhoff side need not be antichains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSpan {
    pub(crate) lower: ElemSet,
    pub(crate) upper: ElemSet,
    pub(crate) elements: ElemSet,
}

impl ConvexSpan {
    pub fn lower(&self) -> &ElemSet {
        &self.lower
    }

    pub fn upper(&self) -> &ElemSet {
        &self.upper
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Rank function data for a ranked poset.
#[derive(Debug, Clone)]
pub struct RankProfile {
    pub rank: Vec<usize>,
    pub levels: Vec<ElemSet>,
    pub level_sizes: Vec<usize>,
}

impl RankProfile {
    /// Rank of the poset (maximum rank value).
    pub fn height(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }
}

/// The n-element chain 0 < 1 < ... < n-1.
pub fn chain_poset(n: usize) -> Poset {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_cover_edges(n, &edges).expect("chain edges are acyclic")
}

/// The n-element antichain.
pub fn antichain_poset(n: usize) -> Poset {
    Poset::from_cover_edges(n, &[]).expect("no edges")
}
