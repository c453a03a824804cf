//! Exhaustive verification of structural facts over the small poset corpus.

mod common;

use common::{all_onto_maps, dominated_antichain_pairs, exact_rho};
use latcover::birkhoff::{bold_bar, ideals_lattice};
use latcover::families::all_posets;
use latcover::poset::Poset;
use latcover::set::ElemSet;
use latcover::verify_surjection;

fn all_nonempty_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (1u64..1 << n).map(move |bits| ElemSet::from_indices(n, (0..n).filter(|&i| bits >> i & 1 == 1)))
}

/// A ≱ B in P holds exactly when the bold image of A is dominated by the
/// bar image of B inside the ideal lattice — both directions, for arbitrary
/// subsets, over every poset with at most 4 elements.
#[test]
fn not_ge_equivales_dominated_images_exhaustively() {
    for n in 1..=4 {
        for p in all_posets(n).unwrap() {
            let (d, maps) = ideals_lattice(&p);
            for a in all_nonempty_subsets(p.size()) {
                for b in all_nonempty_subsets(p.size()) {
                    let not_ge = p.antichain_relations(&a, &b).not_ge;
                    let (bold, bar) = bold_bar(&maps, &a);
                    let _ = bar;
                    let bold_set = ElemSet::from_indices(d.len(), bold);
                    let bar_set = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
                    let dominated = d.poset().antichain_relations(&bold_set, &bar_set).le;
                    assert_eq!(not_ge, dominated, "mismatch on {p:?} A={a:?} B={b:?}");
                }
            }
        }
    }
}

/// For antichain pairs with |A| <= |B| and A ≱ B, some onto map B → A passes
/// the ideal check exactly when the hull of the images is coverable by |B|
/// intervals.
#[test]
fn witness_existence_matches_minimum_cover() {
    for n in 1..=5 {
        for p in all_posets(n).unwrap() {
            let ideals = p.enumerate_ideals();
            for (a, b) in dominated_antichain_pairs(&p) {
                if !p.antichain_relations(&a, &b).not_ge {
                    continue;
                }
                let witness_exists = all_onto_maps(&b, &a)
                    .iter()
                    .any(|f| latcover::construct::verify_surjection_over(&ideals, &a, &b, f));

                let (d, maps) = ideals_lattice(&p);
                let bold_set = ElemSet::from_indices(d.len(), a.iter().map(|x| maps.bold(x)));
                let bar_set = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
                let rho = exact_rho(d.poset(), &bold_set, &bar_set);
                assert!(rho >= b.len());
                assert_eq!(
                    witness_exists,
                    rho == b.len(),
                    "equivalence failed on {p:?} A={a:?} B={b:?} (rho={rho})"
                );
            }
        }
    }
}

/// The built surjection verifies for every dominated antichain pair of every
/// poset with at most 5 elements (6 runs in the acceptance suite).
#[test]
fn built_surjections_always_verify_small() {
    for n in 1..=5 {
        for p in all_posets(n).unwrap() {
            let ideals = p.enumerate_ideals();
            for (a, b) in dominated_antichain_pairs(&p) {
                let f = latcover::build_surjection(&p, &a, &b).unwrap();
                assert!(
                    latcover::construct::verify_surjection_over(&ideals, &a, &b, &f),
                    "witness failed on {p:?} A={a:?} B={b:?}"
                );
            }
        }
    }
}

/// No distributive lattice O(P), |P| <= 6, admits the forbidden two-flag
/// configuration on a level of size >= 2: an element of a level with two
/// strictly-between elements reaching two distinct members of another level,
/// each incomparable to everything else in both levels.
#[test]
fn private_middles_force_singleton_levels() {
    for n in 1..=6 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            let lp = d.poset();
            let profile = d.levels();
            let count = profile.levels.len();
            for li in 0..count {
                if profile.level_sizes[li] < 2 {
                    continue;
                }
                for ui in 0..count {
                    if ui == li {
                        continue;
                    }
                    let lower = &profile.levels[li];
                    let upper = &profile.levels[ui];
                    let both = lower.union(upper);
                    // reach[a] = distinct b ∈ upper reachable through a
                    // strictly-between element comparable only to {a, b}
                    // within the two levels.
                    let mut reach: std::collections::BTreeMap<usize, ElemSet> =
                        std::collections::BTreeMap::new();
                    for x in 0..lp.size() {
                        let mut comparable = lp.up_set(x);
                        comparable.union_with(&lp.down_set(x));
                        comparable.intersect_with(&both);
                        comparable.remove(x);
                        if comparable.len() != 2 {
                            continue;
                        }
                        let pair: Vec<usize> = comparable.iter().collect();
                        for (a, b) in [(pair[0], pair[1]), (pair[1], pair[0])] {
                            if lower.contains(a) && upper.contains(b) && lp.lt(a, x) && lp.lt(x, b)
                            {
                                reach
                                    .entry(a)
                                    .or_insert_with(|| ElemSet::empty(lp.size()))
                                    .insert(b);
                            }
                        }
                    }
                    for (a, bs) in reach {
                        assert!(
                            bs.len() < 2,
                            "forbidden configuration at {p:?}: level {li} element {a} reaches {bs:?} in level {ui}"
                        );
                    }
                }
            }
        }
    }
}

/// The ideal lattice of any poset with at most 6 elements has exactly |P|
/// join-irreducibles and |P| meet-irreducibles.
#[test]
fn irreducible_counts_match_source_exhaustively() {
    use latcover::birkhoff::IrreducibleKind;
    for n in 1..=6 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            assert_eq!(d.irreducibles(IrreducibleKind::Join).len(), n);
            assert_eq!(d.irreducibles(IrreducibleKind::Meet).len(), n);
        }
    }
}

/// Join-irreducible reconstruction round-trips through the ideal lattice,
/// checked by canonical form over every poset with at most 5 elements.
#[test]
fn reconstruction_round_trips_up_to_isomorphism() {
    use latcover::birkhoff::reconstruct_poset;
    use latcover::families::canonical_key;
    for n in 1..=5 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            let q = reconstruct_poset(&d);
            assert_eq!(
                canonical_key(&q),
                canonical_key(&p),
                "round trip failed on {p:?}"
            );
        }
    }
}

/// A one-element upper antichain transfers to a single interval.
#[test]
fn singleton_upper_gives_single_interval() {
    use latcover::construct::cover_from_surjection;
    use latcover::Surjection;
    let p = Poset::from_cover_edges(2, &[(0, 1)]).unwrap();
    let (d, maps) = ideals_lattice(&p);
    let a = ElemSet::singleton(2, 0);
    let b = ElemSet::singleton(2, 1);
    let f = Surjection::from_pairs(vec![(1, 0)]);
    let cover = cover_from_surjection(&p, &d, &maps, &a, &b, &f).unwrap();
    assert_eq!(cover.size(), 1);
    assert!(cover.is_valid(d.poset()));
}

/// Deterministic surjection example: star components are traversed
/// cyclically and completion is by index.
#[test]
fn surjection_on_fence_is_deterministic() {
    // Fence a1(0) < b2(2) > b1(1) < a2(3): antichains A = {a1, b1}? No —
    // use A = minimals, B = maximals.
    let p = Poset::from_cover_edges(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
    let a = p.minimals();
    let b = p.maximals();
    let f = latcover::build_surjection(&p, &a, &b).unwrap();
    assert!(verify_surjection(&p, &a, &b, &f));
    let again = latcover::build_surjection(&p, &a, &b).unwrap();
    assert_eq!(f, again);
}
