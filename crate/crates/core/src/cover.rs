//! Minimum interval covers of convex spans.
//!
//! An instance is a convex span [A, B] plus the complete list of candidate
//! intervals [a, b] with a ∈ A, b ∈ B and a ≤ b. The exact solver is a
//! deterministic branch-and-bound set cover; the greedy solver seeds it with
//! an incumbent. `icp_check` applies the solver to the slab between two rank
//! levels to decide the (j, k) interval covering property.

use crate::poset::{ConvexSpan, Poset, PosetError};
use crate::set::ElemSet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("element {element} of the span lies in no candidate interval")]
    Infeasible { element: usize },
    #[error("level {level} out of range (poset has levels 0..={max})")]
    BadLevel { level: usize, max: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// The interval [a, b] = {x : a <= x <= b}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn elements(&self, p: &Poset) -> ElemSet {
        p.up_set(self.a).intersection(&p.down_set(self.b))
    }

    pub fn contains(&self, p: &Poset, x: usize) -> bool {
        p.le(self.a, x) && p.le(x, self.b)
    }
}

/// A span together with every candidate interval, each valid (a, b) pair
/// exactly once, sorted by (a, b).
#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub span: ConvexSpan,
    pub candidates: Vec<Interval>,
}

/// All intervals [a, b] with a in the span's lower set, b in its upper set
/// and a ≤ b.
pub fn candidate_intervals(p: &Poset, span: &ConvexSpan) -> CoverInstance {
    let mut candidates = Vec::new();
    for a in span.lower().iter() {
        for b in span.upper().iter() {
            if p.le(a, b) {
                candidates.push(Interval { a, b });
            }
        }
    }
    candidates.sort_unstable();
    CoverInstance {
        span: span.clone(),
        candidates,
    }
}

/// A family of intervals covering a span.
#[derive(Debug, Clone)]
pub struct IntervalCover {
    pub span: ConvexSpan,
    pub intervals: Vec<Interval>,
    /// True when the size is a proven minimum.
    pub optimal: bool,
}

impl IntervalCover {
    pub fn size(&self) -> usize {
        self.intervals.len()
    }

    pub fn union(&self, p: &Poset) -> ElemSet {
        let mut u = ElemSet::empty(p.size());
        for iv in &self.intervals {
            u.union_with(&iv.elements(p));
        }
        u
    }

    /// The union of the intervals contains every span element.
    pub fn is_valid(&self, p: &Poset) -> bool {
        self.span.elements().is_subset_of(&self.union(p))
    }
}

/// Solver output in the wire schema used by the CLI.
#[derive(Debug, Serialize)]
pub struct CoverJson {
    pub rho: usize,
    pub optimal: bool,
    pub intervals: Vec<Interval>,
    pub span_size: usize,
}

impl From<&IntervalCover> for CoverJson {
    fn from(c: &IntervalCover) -> Self {
        CoverJson {
            rho: c.size(),
            optimal: c.optimal,
            intervals: c.intervals.clone(),
            span_size: c.span.len(),
        }
    }
}

/// Span elements reindexed to 0..s with per-candidate coverage masks.
struct Compiled {
    positions: Vec<usize>,
    masks: Vec<ElemSet>,
    /// For each position, candidate ids containing it, ascending.
    containing: Vec<Vec<u32>>,
    /// Positions of lower / upper antichain elements.
    lower_pos: ElemSet,
    upper_pos: ElemSet,
}

fn compile(p: &Poset, inst: &CoverInstance) -> Result<Compiled, CoverError> {
    let positions: Vec<usize> = inst.span.elements().iter().collect();
    let s = positions.len();
    let pos_of = |x: usize| positions.binary_search(&x).expect("span element");
    let mut masks = Vec::with_capacity(inst.candidates.len());
    for iv in &inst.candidates {
        let mut m = ElemSet::empty(s);
        for (i, &x) in positions.iter().enumerate() {
            if iv.contains(p, x) {
                m.insert(i);
            }
        }
        masks.push(m);
    }
    let mut containing = vec![Vec::new(); s];
    for (c, m) in masks.iter().enumerate() {
        for i in m.iter() {
            containing[i].push(c as u32);
        }
    }
    if let Some(i) = (0..s).find(|&i| containing[i].is_empty()) {
        return Err(CoverError::Infeasible {
            element: positions[i],
        });
    }
    let mut lower_pos = ElemSet::empty(s);
    for a in inst.span.lower().iter() {
        lower_pos.insert(pos_of(a));
    }
    let mut upper_pos = ElemSet::empty(s);
    for b in inst.span.upper().iter() {
        upper_pos.insert(pos_of(b));
    }
    Ok(Compiled {
        positions,
        masks,
        containing,
        lower_pos,
        upper_pos,
    })
}

/// Greedy cover: repeatedly take the candidate covering the most uncovered
/// elements (ties by candidate order). Valid but not necessarily minimum.
pub fn greedy_cover(p: &Poset, inst: &CoverInstance) -> Result<IntervalCover, CoverError> {
    let compiled = compile(p, inst)?;
    let chosen = greedy_ids(&compiled);
    Ok(IntervalCover {
        span: inst.span.clone(),
        intervals: chosen
            .iter()
            .map(|&c| inst.candidates[c as usize])
            .collect(),
        optimal: false,
    })
}

fn greedy_ids(c: &Compiled) -> Vec<u32> {
    let s = c.positions.len();
    let mut covered = ElemSet::empty(s);
    let mut chosen = Vec::new();
    while covered.len() < s {
        let mut best: Option<(usize, u32)> = None;
        for (id, m) in c.masks.iter().enumerate() {
            let gain = m.difference(&covered).len();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, id as u32));
            }
        }
        let (_, id) = best.expect("feasible instance");
        covered.union_with(&c.masks[id as usize]);
        chosen.push(id);
    }
    chosen.sort_unstable();
    chosen
}

/// Lower bound for the uncovered part: pairwise "privately witnessed"
/// elements (their candidate sets are disjoint, so each needs its own
/// interval), never less than the uncovered lower/upper antichain counts.
fn lower_bound(c: &Compiled, covered: &ElemSet) -> usize {
    let s = c.positions.len();
    let mut order: Vec<usize> = (0..s).filter(|&i| !covered.contains(i)).collect();
    order.sort_by_key(|&i| (c.containing[i].len(), i));
    let mut used = ElemSet::empty(c.masks.len());
    let mut witnesses = 0;
    for i in order {
        if c.containing[i]
            .iter()
            .all(|&id| !used.contains(id as usize))
        {
            witnesses += 1;
            for &id in &c.containing[i] {
                used.insert(id as usize);
            }
        }
    }
    let lower_left = c.lower_pos.difference(covered).len();
    let upper_left = c.upper_pos.difference(covered).len();
    witnesses.max(lower_left).max(upper_left)
}

/// Exact minimum cover by branch and bound. Deterministic for a fixed
/// instance: candidates are explored in sorted order and the incumbent is
/// replaced only by strictly smaller covers. With a node `budget` the best
/// incumbent is returned with `optimal: false` once the budget is exhausted.
pub fn exact_min_cover(
    p: &Poset,
    inst: &CoverInstance,
    budget: Option<u64>,
) -> Result<IntervalCover, CoverError> {
    let compiled = compile(p, inst)?;
    let s = compiled.positions.len();

    let mut best = greedy_ids(&compiled);
    let mut nodes: u64 = 0;
    let mut exhausted = false;

    struct Search<'a> {
        c: &'a Compiled,
        best: &'a mut Vec<u32>,
        nodes: &'a mut u64,
        budget: Option<u64>,
        exhausted: &'a mut bool,
    }

    fn rec(st: &mut Search<'_>, chosen: &mut Vec<u32>, covered: &ElemSet, span_size: usize) {
        *st.nodes += 1;
        if let Some(b) = st.budget {
            if *st.nodes > b {
                *st.exhausted = true;
                return;
            }
        }
        if covered.len() == span_size {
            if chosen.len() < st.best.len() {
                *st.best = chosen.clone();
                st.best.sort_unstable();
            }
            return;
        }
        if chosen.len() + lower_bound(st.c, covered) >= st.best.len() {
            return;
        }
        // Branch on the uncovered element with the fewest candidates.
        let pick = (0..span_size)
            .filter(|&i| !covered.contains(i))
            .min_by_key(|&i| (st.c.containing[i].len(), i))
            .expect("uncovered element exists");
        for &id in &st.c.containing[pick] {
            if chosen.contains(&id) {
                continue;
            }
            chosen.push(id);
            let next = covered.union(&st.c.masks[id as usize]);
            rec(st, chosen, &next, span_size);
            chosen.pop();
            if *st.exhausted {
                return;
            }
        }
    }

    let mut st = Search {
        c: &compiled,
        best: &mut best,
        nodes: &mut nodes,
        budget,
        exhausted: &mut exhausted,
    };
    rec(&mut st, &mut Vec::new(), &ElemSet::empty(s), s);

    Ok(IntervalCover {
        span: inst.span.clone(),
        intervals: best.iter().map(|&c| inst.candidates[c as usize]).collect(),
        optimal: !exhausted,
    })
}

/// Report of an interval covering property check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IcpReport {
    pub holds: bool,
    pub rho: usize,
    pub bound: usize,
    pub pair: (usize, usize),
}

/// The slab of all elements with rank in j..=k, as a span between its own
/// minimal and maximal elements. Intervals inside the slab extend to such
/// endpoints, so covering this span is equivalent to covering the slab.
pub fn level_slab_span(p: &Poset, j: usize, k: usize) -> Result<ConvexSpan, CoverError> {
    let profile = p.rank_profile()?;
    let max = profile.height();
    for level in [j, k] {
        if level > max {
            return Err(CoverError::BadLevel { level, max });
        }
    }
    assert!(j <= k, "level pair must be ordered");
    let mut slab = ElemSet::empty(p.size());
    for level in j..=k {
        slab.union_with(&profile.levels[level]);
    }
    let mut lower = ElemSet::empty(p.size());
    let mut upper = ElemSet::empty(p.size());
    for x in slab.iter() {
        if p.down_set(x).intersection(&slab).len() == 1 {
            lower.insert(x);
        }
        if p.up_set(x).intersection(&slab).len() == 1 {
            upper.insert(x);
        }
    }
    let span = p.convex_span(&lower, &upper)?;
    debug_assert_eq!(span.elements(), &slab);
    Ok(span)
}

/// Checks ρ(slab(j, k)) = max(r_j, r_k): the (j, k) interval covering
/// property, or the strong version (all pairs) when `strong` is set. The
/// reported pair is the one with the worst deficit ρ − bound.
pub fn icp_check(p: &Poset, j: usize, k: usize, strong: bool) -> Result<IcpReport, CoverError> {
    let profile = p.rank_profile()?;
    let max = profile.height();
    let pairs: Vec<(usize, usize)> = if strong {
        (0..=max)
            .flat_map(|a| (a..=max).map(move |b| (a, b)))
            .collect()
    } else {
        for level in [j, k] {
            if level > max {
                return Err(CoverError::BadLevel { level, max });
            }
        }
        vec![(j.min(k), j.max(k))]
    };
    let mut worst: Option<IcpReport> = None;
    for (a, b) in pairs {
        let span = level_slab_span(p, a, b)?;
        let inst = candidate_intervals(p, &span);
        let cover = exact_min_cover(p, &inst, None)?;
        let bound = profile.level_sizes[a].max(profile.level_sizes[b]);
        let report = IcpReport {
            holds: cover.size() == bound,
            rho: cover.size(),
            bound,
            pair: (a, b),
        };
        let deficit = report.rho as i64 - report.bound as i64;
        if worst.is_none_or(|w| deficit > w.rho as i64 - w.bound as i64) {
            worst = Some(report);
        }
    }
    Ok(worst.expect("at least one level pair"))
}
