//! Constructive interval covers.
//!
//! The centerpiece is a surjection builder: given antichains A ≤ B of a poset
//! with |A| <= |B|, it produces an onto map f: B → A such that every order
//! ideal X meeting A but not containing B has some b ∈ B − X with f(b) ∈ X.
//! Such a map transfers through Birkhoff duality into a cover of the convex
//! hull [𝒜, ℬ̄] by |B| intervals, which yields minimum covers of
//! atoms-to-coatoms spans of distributive lattices. Two further constructions
//! handle level pairs directly: an explicit cover when one level has two
//! elements, and a thinned-grid cover of at most |A|·|B| − min(|A|,|B|) (+1
//! when |A| = |B| is odd) intervals in general.

use crate::birkhoff::{birkhoff_maps, BirkhoffMaps, DistributiveLattice};
use crate::cover::{Interval, IntervalCover};
use crate::poset::{ConvexSpan, Poset};
use crate::set::ElemSet;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("input set is not an antichain")]
    NotAntichain,
    #[error("lower set is not dominated by upper set")]
    NotDominated,
    #[error("|A| must not exceed |B|")]
    SizeOrder,
    #[error("map is not a valid surjection witness")]
    SurjectionInvalid,
    #[error("lattice too small (needs at least 3 elements)")]
    TooSmall,
    #[error("level indices invalid: need distinct levels j < k within rank range")]
    NotLevels,
    #[error("level pair does not match the construction (sizes {a}, {b})")]
    LevelSizeMismatch { a: usize, b: usize },
    #[error("internal consistency error: {0}")]
    Internal(&'static str),
}

/// A map f: B → A stored as (b, f(b)) pairs sorted by b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Surjection {
    pairs: Vec<(usize, usize)>,
}

impl Surjection {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Surjection { pairs }
    }

    pub fn get(&self, b: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&b, |&(x, _)| x)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Defined exactly on `domain`, lands in and covers all of `image`.
    pub fn is_onto(&self, domain: &ElemSet, image: &ElemSet) -> bool {
        if self.pairs.len() != domain.len() {
            return false;
        }
        let mut hit = ElemSet::empty(image.domain());
        for &(b, a) in &self.pairs {
            if !domain.contains(b) || !image.contains(a) {
                return false;
            }
            hit.insert(a);
        }
        hit == *image
    }
}

/// One component of the reduced comparability graph.
#[derive(Debug, Clone, Serialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Construction log: peeled isolated elements, deleted relations, the final
/// star forest and its chosen (a_i, b_i) pairs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BuildTrace {
    pub peeled: Vec<usize>,
    pub deleted_edges: Vec<(usize, usize)>,
    pub stars: Vec<Star>,
    pub chosen: Vec<(usize, usize)>,
}

/// Builds the surjection witness for antichains A ≤ B with |A| <= |B|.
///
/// The construction restricts to A ∪ B, recursively peels elements of A ∩ B
/// (which are exactly the isolated points), deletes the middle relation of
/// any 4-element path until every component is a star, picks one minimal and
/// one maximal element per star, maps star maxima cyclically to the next
/// star's minimum, and completes the map deterministically: leftover elements
/// of B are matched to not-yet-hit elements of A in index order, any
/// remainder going to the smallest element of A.
pub fn build_surjection(p: &Poset, a: &ElemSet, b: &ElemSet) -> Result<Surjection, ConstructError> {
    build_surjection_traced(p, a, b).map(|(f, _)| f)
}

pub fn build_surjection_traced(
    p: &Poset,
    a: &ElemSet,
    b: &ElemSet,
) -> Result<(Surjection, BuildTrace), ConstructError> {
    if a.is_empty() || b.is_empty() {
        return Err(ConstructError::NotAntichain);
    }
    for s in [a, b] {
        if p.antichain_of(s).is_err() {
            return Err(ConstructError::NotAntichain);
        }
    }
    if !p.antichain_relations(a, b).le {
        return Err(ConstructError::NotDominated);
    }
    if a.len() > b.len() {
        return Err(ConstructError::SizeOrder);
    }
    let mut trace = BuildTrace::default();
    let map = build_rec(p, a.clone(), b.clone(), &mut trace);
    Ok((Surjection::from_pairs(map.into_iter().collect()), trace))
}

fn build_rec(p: &Poset, a: ElemSet, b: ElemSet, trace: &mut BuildTrace) -> BTreeMap<usize, usize> {
    if a.len() == 1 {
        let target = a.first().unwrap();
        return b.iter().map(|x| (x, target)).collect();
    }

    // Isolated points of the subposet A ∪ B are exactly A ∩ B.
    if let Some(c) = a.intersection(&b).first() {
        trace.peeled.push(c);
        let mut a2 = a.clone();
        a2.remove(c);
        let mut b2 = b.clone();
        b2.remove(c);
        let inner = build_rec(p, a2.clone(), b2, trace);
        let chosen_a = a2.first().expect("|A| >= 2");
        let b0 = inner
            .iter()
            .find(|&(_, &v)| v == chosen_a)
            .map(|(&k, _)| k)
            .expect("inner map is onto");
        let mut g = inner;
        g.insert(b0, c);
        g.insert(c, chosen_a);
        return g;
    }

    star_phase(p, &a, &b, trace)
}

fn star_phase(
    p: &Poset,
    a: &ElemSet,
    b: &ElemSet,
    trace: &mut BuildTrace,
) -> BTreeMap<usize, usize> {
    // Comparability graph of the bipartite length-one poset on A ∪ B.
    let mut nbr: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            if p.lt(x, y) {
                nbr.entry(x).or_default().push(y);
                nbr.entry(y).or_default().push(x);
            }
        }
    }

    // Delete the middle relation of any path a ≺ b ≻ c ≺ d until every
    // component is a star. Scanning in index order keeps this deterministic.
    loop {
        let mut hit: Option<(usize, usize)> = None;
        'scan: for y in b.iter() {
            let degree_y = nbr.get(&y).map_or(0, |v| v.len());
            if degree_y < 2 {
                continue;
            }
            for &x in nbr.get(&y).into_iter().flatten() {
                if nbr[&x].len() >= 2 {
                    hit = Some((x, y));
                    break 'scan;
                }
            }
        }
        match hit {
            Some((x, y)) => {
                nbr.get_mut(&x).unwrap().retain(|&z| z != y);
                nbr.get_mut(&y).unwrap().retain(|&z| z != x);
                trace.deleted_edges.push((x, y));
            }
            None => break,
        }
    }

    // Collect the star components, ordered by their smallest member.
    let mut seen = ElemSet::empty(p.size());
    let mut stars: Vec<Star> = Vec::new();
    for root in a.union(b).iter() {
        if seen.contains(root) {
            continue;
        }
        let mut component = vec![root];
        seen.insert(root);
        let mut queue = vec![root];
        while let Some(v) = queue.pop() {
            for &w in nbr.get(&v).into_iter().flatten() {
                if !seen.contains(w) {
                    seen.insert(w);
                    component.push(w);
                    queue.push(w);
                }
            }
        }
        component.sort_unstable();
        debug_assert!(component.len() >= 2, "no isolated elements at star phase");
        let center = *component
            .iter()
            .find(|&&v| nbr[&v].len() >= 2)
            // Two-element stars: call the upper end the center.
            .unwrap_or_else(|| component.iter().find(|&&v| b.contains(v)).unwrap());
        let leaves: Vec<usize> = component.iter().copied().filter(|&v| v != center).collect();
        stars.push(Star { center, leaves });
    }

    // One minimal and one maximal element per star.
    let chosen: Vec<(usize, usize)> = stars
        .iter()
        .map(|s| {
            if b.contains(s.center) {
                (s.leaves[0], s.center)
            } else {
                (s.center, s.leaves[0])
            }
        })
        .collect();

    let count = chosen.len();
    let mut map = BTreeMap::new();
    for (i, &(_, b_i)) in chosen.iter().enumerate() {
        map.insert(b_i, chosen[(i + 1) % count].0);
    }

    // Complete to a surjection: unhit elements of A take the remaining
    // elements of B in index order; any leftovers map to min A.
    let hit = ElemSet::from_indices(p.size(), chosen.iter().map(|&(a_i, _)| a_i));
    let assigned = ElemSet::from_indices(p.size(), chosen.iter().map(|&(_, b_i)| b_i));
    let mut unhit = a.difference(&hit).iter().collect::<Vec<_>>().into_iter();
    let fallback = a.first().unwrap();
    for y in b.difference(&assigned).iter() {
        map.insert(y, unhit.next().unwrap_or(fallback));
    }

    trace.stars = stars;
    trace.chosen = chosen;
    map
}

/// Checks the surjection property exhaustively over all order ideals of `p`:
/// every ideal X with A ∩ X nonempty and B ⊄ X must have some b ∈ B − X with
/// f(b) ∈ X. Returns false when f is not even an onto map B → A.
pub fn verify_surjection(p: &Poset, a: &ElemSet, b: &ElemSet, f: &Surjection) -> bool {
    verify_surjection_over(&p.enumerate_ideals(), a, b, f)
}

/// Same check against a precomputed ideal list (reused across many pairs).
pub fn verify_surjection_over(
    ideals: &[ElemSet],
    a: &ElemSet,
    b: &ElemSet,
    f: &Surjection,
) -> bool {
    if !f.is_onto(b, a) {
        return false;
    }
    'ideal: for x in ideals {
        if a.is_disjoint(x) || b.is_subset_of(x) {
            continue;
        }
        for bb in b.difference(x).iter() {
            if x.contains(f.get(bb).unwrap()) {
                continue 'ideal;
            }
        }
        return false;
    }
    true
}

/// Transfers a verified surjection into the ideal lattice: the intervals
/// [bold(f(b)), bar(b)] for b ∈ B union to exactly the convex hull
/// [𝒜, ℬ̄]. Requires A ≱ B (so the hull is defined) and a valid witness.
pub fn cover_from_surjection(
    source: &Poset,
    d: &DistributiveLattice,
    maps: &BirkhoffMaps,
    a: &ElemSet,
    b: &ElemSet,
    f: &Surjection,
) -> Result<IntervalCover, ConstructError> {
    if !source.antichain_relations(a, b).not_ge {
        return Err(ConstructError::SurjectionInvalid);
    }
    if !verify_surjection(source, a, b, f) {
        return Err(ConstructError::SurjectionInvalid);
    }
    let bold_set = ElemSet::from_indices(d.len(), a.iter().map(|x| maps.bold(x)));
    let bar_set = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
    let span = d
        .poset()
        .convex_span(&bold_set, &bar_set)
        .map_err(|_| ConstructError::Internal("hull of bold/bar images undefined"))?;
    let intervals: Vec<Interval> = b
        .iter()
        .map(|bb| Interval {
            a: maps.bold(f.get(bb).unwrap()),
            b: maps.bar(bb),
        })
        .collect();
    let cover = IntervalCover {
        span,
        intervals,
        optimal: true,
    };
    if cover.union(d.poset()) != *cover.span.elements() {
        return Err(ConstructError::Internal(
            "surjection cover does not match its hull",
        ));
    }
    Ok(cover)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AtomsCoatomsTrace {
    pub dualized: bool,
    /// Set when one side is a single element and the cover is immediate.
    pub trivial: bool,
    pub surjection: Option<(Surjection, BuildTrace)>,
}

/// Covers D − {0, 1} by max(#atoms, #coatoms) intervals with atom lower ends
/// and coatom upper ends. Always minimum: the larger side is a lower bound.
pub fn atoms_coatoms_cover(d: &DistributiveLattice) -> Result<IntervalCover, ConstructError> {
    atoms_coatoms_cover_traced(d).map(|(c, _)| c)
}

pub fn atoms_coatoms_cover_traced(
    d: &DistributiveLattice,
) -> Result<(IntervalCover, AtomsCoatomsTrace), ConstructError> {
    if d.len() < 3 {
        return Err(ConstructError::TooSmall);
    }
    let atoms = d.atoms();
    let coatoms = d.coatoms();
    if atoms.len() > coatoms.len() {
        let dual = d.dual();
        let (cover, mut trace) = atoms_coatoms_inner(&dual)?;
        trace.dualized = true;
        let cover = reflect_cover(d, &cover)?;
        return Ok((cover, trace));
    }
    atoms_coatoms_inner(d)
}

fn atoms_coatoms_inner(
    d: &DistributiveLattice,
) -> Result<(IntervalCover, AtomsCoatomsTrace), ConstructError> {
    let atoms = d.atoms();
    let coatoms = d.coatoms();
    let atom_set = ElemSet::from_indices(d.len(), atoms.iter().copied());
    let coatom_set = ElemSet::from_indices(d.len(), coatoms.iter().copied());
    let span = d
        .poset()
        .convex_span(&atom_set, &coatom_set)
        .map_err(|_| ConstructError::Internal("atoms do not dominate coatoms"))?;

    if atoms.len() == 1 {
        // Everything strictly between the bounds sits above the unique atom.
        let a = atoms[0];
        let intervals: Vec<Interval> = coatoms.iter().map(|&c| Interval { a, b: c }).collect();
        let cover = IntervalCover {
            span,
            intervals,
            optimal: true,
        };
        if cover.union(d.poset()) != *cover.span.elements() {
            return Err(ConstructError::Internal("single-atom cover left a gap"));
        }
        return Ok((
            cover,
            AtomsCoatomsTrace {
                trivial: true,
                ..Default::default()
            },
        ));
    }

    let (source, maps) = birkhoff_maps(d);
    let lower = source.minimals();
    let upper = source.maximals();
    let (f, build) = build_surjection_traced(&source, &lower, &upper)?;
    let cover = cover_from_surjection(&source, d, &maps, &lower, &upper, &f)?;
    if cover.span.elements() != span.elements() {
        return Err(ConstructError::Internal(
            "surjection span is not the open interval",
        ));
    }
    let trace = AtomsCoatomsTrace {
        dualized: false,
        trivial: false,
        surjection: Some((f, build)),
    };
    Ok((cover, trace))
}

/// Rebuilds a cover computed in the dual back in the original lattice.
fn reflect_cover(
    d: &DistributiveLattice,
    cover: &IntervalCover,
) -> Result<IntervalCover, ConstructError> {
    let lower = cover.span.upper().clone();
    let upper = cover.span.lower().clone();
    let span = d
        .poset()
        .convex_span(&lower, &upper)
        .map_err(|_| ConstructError::Internal("reflected span undefined"))?;
    let mut intervals: Vec<Interval> = cover
        .intervals
        .iter()
        .map(|iv| Interval { a: iv.b, b: iv.a })
        .collect();
    intervals.sort_unstable();
    let reflected = IntervalCover {
        span,
        intervals,
        optimal: cover.optimal,
    };
    if reflected.union(d.poset()) != *reflected.span.elements() {
        return Err(ConstructError::Internal(
            "reflected cover does not match its hull",
        ));
    }
    Ok(reflected)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TwoLevelTrace {
    pub dualized: bool,
    /// The two-element level, (first, second) by index.
    pub pivot_pair: (usize, usize),
    /// Number of upper elements above the chosen pivot when the split
    /// assignment applies.
    pub split: Option<usize>,
    /// Index of the covering family in the complete-bipartite case.
    pub family: Option<usize>,
}

/// Covers the hull of two distinct lattice levels A ≤ B with max(|A|, |B|)
/// intervals when min(|A|, |B|) = 2.
pub fn two_level_cover(
    d: &DistributiveLattice,
    j: usize,
    k: usize,
) -> Result<IntervalCover, ConstructError> {
    two_level_cover_traced(d, j, k).map(|(c, _)| c)
}

pub fn two_level_cover_traced(
    d: &DistributiveLattice,
    j: usize,
    k: usize,
) -> Result<(IntervalCover, TwoLevelTrace), ConstructError> {
    let profile = d.levels();
    let height = profile.height();
    if j >= k || k > height {
        return Err(ConstructError::NotLevels);
    }
    let a = &profile.levels[j];
    let b = &profile.levels[k];
    if a.len().min(b.len()) != 2 {
        return Err(ConstructError::LevelSizeMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if !d.poset().antichain_relations(a, b).le {
        return Err(ConstructError::NotDominated);
    }
    if a.len() == 2 {
        two_level_inner(d, a, b)
    } else {
        let dual = d.dual();
        let (cover, mut trace) = two_level_inner(&dual, b, a)?;
        trace.dualized = true;
        let cover = reflect_cover(d, &cover)?;
        Ok((cover, trace))
    }
}

fn two_level_inner(
    d: &DistributiveLattice,
    a: &ElemSet,
    b: &ElemSet,
) -> Result<(IntervalCover, TwoLevelTrace), ConstructError> {
    let p = d.poset();
    let span = p
        .convex_span(a, b)
        .map_err(|_| ConstructError::NotDominated)?;
    let two: Vec<usize> = a.iter().collect();
    let (x, y) = (two[0], two[1]);
    let bs: Vec<usize> = b.iter().collect();
    let n = bs.len();
    let mut trace = TwoLevelTrace {
        pivot_pair: (x, y),
        ..Default::default()
    };

    // Split assignment: if some upper element misses the pivot, put the
    // pivot under its dominated block and the other element under the rest.
    for (pivot, other) in [(x, y), (y, x)] {
        let above = bs.iter().filter(|&&v| p.lt(pivot, v)).count();
        if above < n {
            let intervals: Vec<Interval> = bs
                .iter()
                .map(|&v| Interval {
                    a: if p.lt(pivot, v) { pivot } else { other },
                    b: v,
                })
                .collect();
            let cover = finish_two_level(span.clone(), intervals, p)?;
            trace.split = Some(above);
            return Ok((cover, trace));
        }
    }

    // Complete bipartite case: one of the n families
    //   F_w = {[y, b_w]} ∪ {[x, b_i] : i ≠ w}
    // must cover.
    for w in 0..n {
        let intervals: Vec<Interval> = bs
            .iter()
            .enumerate()
            .map(|(i, &v)| Interval {
                a: if i == w { y } else { x },
                b: v,
            })
            .collect();
        let mut union = ElemSet::empty(p.size());
        for iv in &intervals {
            union.union_with(&iv.elements(p));
        }
        if span.elements().is_subset_of(&union) {
            let cover = finish_two_level(span.clone(), intervals, p)?;
            trace.family = Some(w);
            return Ok((cover, trace));
        }
    }
    Err(ConstructError::Internal(
        "no two-level family covers the hull",
    ))
}

fn finish_two_level(
    span: ConvexSpan,
    mut intervals: Vec<Interval>,
    p: &Poset,
) -> Result<IntervalCover, ConstructError> {
    intervals.sort_unstable();
    let cover = IntervalCover {
        span,
        intervals,
        optimal: true,
    };
    if cover.union(p) != *cover.span.elements() {
        return Err(ConstructError::Internal("two-level cover left a gap"));
    }
    Ok(cover)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ThinnedGridTrace {
    pub dualized: bool,
    pub s: usize,
    pub t: usize,
    /// Which rotation of the thinned grid covered, when one did.
    pub family: Option<usize>,
    /// Set when no rotation covered and the full grid was thinned by
    /// removing redundant intervals instead.
    pub fallback_removed: Option<usize>,
}

/// Covers the hull of two distinct lattice levels (both larger than one
/// element) by a thinned grid: all candidate intervals minus a rotated
/// diagonal of s of them. Some rotation always covers, giving at most
/// |A|·|B| − min(|A|, |B|) intervals (one more when |A| = |B| is odd).
pub fn thinned_grid_cover(
    d: &DistributiveLattice,
    j: usize,
    k: usize,
) -> Result<IntervalCover, ConstructError> {
    thinned_grid_cover_traced(d, j, k).map(|(c, _)| c)
}

pub fn thinned_grid_cover_traced(
    d: &DistributiveLattice,
    j: usize,
    k: usize,
) -> Result<(IntervalCover, ThinnedGridTrace), ConstructError> {
    let profile = d.levels();
    let height = profile.height();
    if j >= k || k > height {
        return Err(ConstructError::NotLevels);
    }
    let a = &profile.levels[j];
    let b = &profile.levels[k];
    if a.len() < 2 || b.len() < 2 {
        return Err(ConstructError::LevelSizeMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if !d.poset().antichain_relations(a, b).le {
        return Err(ConstructError::NotDominated);
    }
    if a.len() <= b.len() {
        thinned_grid_inner(d, a, b)
    } else {
        let dual = d.dual();
        let (cover, mut trace) = thinned_grid_inner(&dual, b, a)?;
        trace.dualized = true;
        let cover = reflect_cover(d, &cover)?;
        Ok((cover, trace))
    }
}

fn thinned_grid_inner(
    d: &DistributiveLattice,
    a: &ElemSet,
    b: &ElemSet,
) -> Result<(IntervalCover, ThinnedGridTrace), ConstructError> {
    let p = d.poset();
    let span = p
        .convex_span(a, b)
        .map_err(|_| ConstructError::NotDominated)?;
    let lows: Vec<usize> = a.iter().collect();
    let highs: Vec<usize> = b.iter().collect();
    let (m, n) = (lows.len(), highs.len());
    let (s, t) = if m < n { (m, m + 1) } else { (m & !1, m & !1) };
    debug_assert!(s >= 2 || m < n);
    let bound = m * n - s;

    let masks: Vec<Vec<Option<ElemSet>>> = lows
        .iter()
        .map(|&x| {
            highs
                .iter()
                .map(|&y| p.lt(x, y).then(|| Interval { a: x, b: y }.elements(p)))
                .collect()
        })
        .collect();
    let finish = |cells: Vec<(usize, usize)>, trace: ThinnedGridTrace| {
        let mut intervals: Vec<Interval> = cells
            .iter()
            .map(|&(i, jj)| Interval {
                a: lows[i],
                b: highs[jj],
            })
            .collect();
        intervals.sort_unstable();
        debug_assert!(intervals.len() <= bound);
        let cover = IntervalCover {
            span: span.clone(),
            intervals,
            optimal: false,
        };
        (cover, trace)
    };

    // Primary route: remove a rotated diagonal of s cells.
    for w in 0..t {
        let removed = |i: usize, jj: usize| i < s && jj == (i + w) % t;
        let mut union = ElemSet::empty(p.size());
        let mut cells = Vec::new();
        for (i, row) in masks.iter().enumerate() {
            for (jj, cell) in row.iter().enumerate() {
                if let Some(mask) = cell {
                    if !removed(i, jj) {
                        union.union_with(mask);
                        cells.push((i, jj));
                    }
                }
            }
        }
        if span.elements().is_subset_of(&union) {
            let trace = ThinnedGridTrace {
                dualized: false,
                s,
                t,
                family: Some(w),
                ..Default::default()
            };
            return Ok(finish(cells, trace));
        }
    }

    // Every rotation can fail when a level element lies under a single
    // partner: its only interval is removed at each shift. Fall back to the
    // full grid and drop redundant intervals until the bound is met (missing
    // cells already count toward the discount).
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for (i, row) in masks.iter().enumerate() {
        for (jj, cell) in row.iter().enumerate() {
            if cell.is_some() {
                cells.push((i, jj));
            }
        }
    }
    let mut removed = 0;
    while cells.len() > bound {
        let redundant = (0..cells.len()).rev().find(|&drop| {
            let mut union = ElemSet::empty(p.size());
            for (k, &(i, jj)) in cells.iter().enumerate() {
                if k != drop {
                    union.union_with(masks[i][jj].as_ref().unwrap());
                }
            }
            span.elements().is_subset_of(&union)
        });
        match redundant {
            Some(drop) => {
                cells.remove(drop);
                removed += 1;
            }
            None => return Err(ConstructError::Internal("thinned grid bound unreachable")),
        }
    }
    let trace = ThinnedGridTrace {
        dualized: false,
        s,
        t,
        family: None,
        fallback_removed: Some(removed),
    };
    Ok(finish(cells, trace))
}
