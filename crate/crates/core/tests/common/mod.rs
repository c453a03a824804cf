//! Shared test helpers: independent brute-force oracles and instance
//! enumeration. These deliberately avoid the library's solver internals so
//! they can act as ground truth.

use latcover::cover::CoverInstance;
use latcover::poset::Poset;
use latcover::set::ElemSet;
use latcover::Surjection;

/// Minimum cover size by exhaustive subset enumeration over the candidate
/// list (at most 20 candidates). None when no subset covers.
pub fn brute_force_min_cover(p: &Poset, inst: &CoverInstance) -> Option<usize> {
    let candidates = &inst.candidates;
    assert!(candidates.len() <= 20, "oracle limited to 20 candidates");
    let span = inst.span.elements();
    let masks: Vec<ElemSet> = candidates.iter().map(|iv| iv.elements(p)).collect();
    let mut best: Option<usize> = None;
    for pick in 0u32..1 << candidates.len() {
        let size = pick.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut union = ElemSet::empty(p.size());
        for (i, mask) in masks.iter().enumerate() {
            if pick >> i & 1 == 1 {
                union.union_with(mask);
            }
        }
        if span.is_subset_of(&union) {
            best = Some(size);
        }
    }
    best
}

/// Every map from `b` onto `a`, as surjection values.
pub fn all_onto_maps(b: &ElemSet, a: &ElemSet) -> Vec<Surjection> {
    let bs: Vec<usize> = b.iter().collect();
    let az: Vec<usize> = a.iter().collect();
    let mut out = Vec::new();
    let total = az
        .len()
        .checked_pow(bs.len() as u32)
        .expect("map space fits");
    for code in 0..total {
        let mut c = code;
        let mut pairs = Vec::with_capacity(bs.len());
        let mut hit = vec![false; az.len()];
        for &bb in &bs {
            let idx = c % az.len();
            c /= az.len();
            hit[idx] = true;
            pairs.push((bb, az[idx]));
        }
        if hit.iter().all(|&h| h) {
            out.push(Surjection::from_pairs(pairs));
        }
    }
    out
}

/// All nonempty antichains of a small poset.
pub fn all_antichains(p: &Poset) -> Vec<ElemSet> {
    let n = p.size();
    assert!(n <= 16);
    (1u64..1 << n)
        .map(|bits| ElemSet::from_indices(n, (0..n).filter(|&i| bits >> i & 1 == 1)))
        .filter(|s| p.antichain_of(s).is_ok())
        .collect()
}

/// Antichain pairs A ≤ B with |A| <= |B|.
pub fn dominated_antichain_pairs(p: &Poset) -> Vec<(ElemSet, ElemSet)> {
    let antichains = all_antichains(p);
    let mut out = Vec::new();
    for a in &antichains {
        for b in &antichains {
            if a.len() <= b.len() && p.antichain_relations(a, b).le {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Exact minimum cover size of the hull of two subsets, solved by the
/// library's solver (proven optimal).
pub fn exact_rho(p: &Poset, lower: &ElemSet, upper: &ElemSet) -> usize {
    let span = p.convex_span(lower, upper).expect("dominating pair");
    let inst = latcover::cover::candidate_intervals(p, &span);
    let cover = latcover::cover::exact_min_cover(p, &inst, None).expect("feasible");
    assert!(cover.optimal);
    cover.size()
}
