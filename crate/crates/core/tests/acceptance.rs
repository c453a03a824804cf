//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Everything here is exact integer computation; no tolerances.

mod common;

use common::{all_onto_maps, brute_force_min_cover, dominated_antichain_pairs, exact_rho};
use latcover::birkhoff::{ideals_lattice, verify_distributive, DistributivityMode};
use latcover::build_surjection;
use latcover::campaign::{check_daykin_frankl, Mode};
use latcover::construct::{
    atoms_coatoms_cover, thinned_grid_cover_traced, two_level_cover, verify_surjection_over,
    ConstructError,
};
use latcover::cover::{candidate_intervals, exact_min_cover, level_slab_span};
use latcover::families::{
    all_posets, gen_boolean, gen_frankl, gen_glued, gen_random_poset, gen_worst_case,
};
use latcover::gk::{boolean_level_cover, gk_decomposition, phi};
use latcover::poset::Poset;
use latcover::set::ElemSet;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn minimal_elements_of(p: &Poset, s: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(p.size());
    for x in s.iter() {
        if s.iter().all(|y| y == x || !p.lt(y, x)) {
            out.insert(x);
        }
    }
    out
}

fn maximal_elements_of(p: &Poset, s: &ElemSet) -> ElemSet {
    let mut out = ElemSet::empty(p.size());
    for x in s.iter() {
        if s.iter().all(|y| y == x || !p.lt(x, y)) {
            out.insert(x);
        }
    }
    out
}

/// 1. Glued pair of rank-3 subset lattices: the seam levels need exactly 4
/// intervals.
#[test]
fn a01_glued_seam_needs_four_intervals() {
    let g = gen_glued(3, 3).unwrap();
    let p = g.lattice.poset();
    let span = level_slab_span(p, g.lower_rank, g.upper_rank).unwrap();
    let cover = exact_min_cover(p, &candidate_intervals(p, &span), None).unwrap();
    assert!(cover.optimal);
    assert_eq!(cover.size(), 4);
    println!("acceptance 01 PASS: glued(3,3) seam rho = 4");
}

/// 2. Every glued lattice with 2 <= n, m <= 5 verifies distributive and its
/// seam needs exactly n + m − 2 intervals.
#[test]
fn a02_glued_family_distributive_and_tight() {
    for n in 2..=5 {
        for m in 2..=5 {
            let g = gen_glued(n, m).unwrap();
            assert!(matches!(g.lattice.mode(), DistributivityMode::Exhaustive));
            let p = g.lattice.poset();
            let span = level_slab_span(p, g.lower_rank, g.upper_rank).unwrap();
            let cover = exact_min_cover(p, &candidate_intervals(p, &span), None).unwrap();
            assert!(cover.optimal);
            assert_eq!(cover.size(), n + m - 2, "glued({n},{m})");
        }
    }
    println!("acceptance 02 PASS: glued(n,m) distributive with seam rho = n+m-2 for n,m in 2..=5");
}

/// 3. Singleton-versus-superset antichain pairs need exactly r·s intervals.
#[test]
fn a03_frankl_instances_need_rs_intervals() {
    for (r, s) in [(2, 2), (2, 3), (3, 3)] {
        let inst = gen_frankl(r, s).unwrap();
        let p = inst.lattice.poset();
        assert_eq!(
            exact_rho(p, &inst.lower, &inst.upper),
            r * s,
            "frankl({r},{s})"
        );
    }
    println!("acceptance 03 PASS: frankl rho = r*s for (2,2), (2,3), (3,3)");
}

/// 4. The worst-case lattice construction is a lattice, is not distributive,
/// and its atom/coatom span needs all r·s intervals.
#[test]
fn a04_worst_case_lattices() {
    for r in 2..=4 {
        for s in 2..=4 {
            let inst = gen_worst_case(r, s).unwrap();
            assert_eq!(
                verify_distributive(&inst.poset),
                Ok(false),
                "worst_case({r},{s})"
            );
            let atoms = inst.poset.set_from(&inst.atoms).unwrap();
            let coatoms = inst.poset.set_from(&inst.coatoms).unwrap();
            assert_eq!(
                exact_rho(&inst.poset, &atoms, &coatoms),
                r * s,
                "worst_case({r},{s})"
            );
        }
    }
    println!(
        "acceptance 04 PASS: worst-case lattices fail distributivity with rho = r*s, r,s <= 4"
    );
}

/// 5. Strong interval covering property of subset lattices via the explicit
/// chain construction, cross-checked against the exact solver for n <= 4.
#[test]
fn a05_subset_lattice_strong_icp() {
    for n in 1..=8 {
        for j in 0..=n {
            for k in j..=n {
                let cover = boolean_level_cover(n, j, k).unwrap();
                let expect = binomial(n, j).max(binomial(n, k));
                assert_eq!(cover.size(), expect, "cover size at n={n} j={j} k={k}");
                assert!(
                    cover.covers_exactly(),
                    "union mismatch at n={n} j={j} k={k}"
                );
            }
        }
    }
    for n in 1..=4 {
        let d = gen_boolean(n).unwrap();
        let p = d.poset();
        for j in 0..=n {
            for k in j..=n {
                let span = level_slab_span(p, j, k).unwrap();
                let cover = exact_min_cover(p, &candidate_intervals(p, &span), None).unwrap();
                assert!(cover.optimal);
                assert_eq!(cover.size(), binomial(n, j).max(binomial(n, k)));
            }
        }
    }
    println!("acceptance 05 PASS: strong interval covering property for n <= 8, solver-confirmed for n <= 4");
}

/// 6. The symmetric chain decomposition partitions every subset lattice up
/// to n = 12 into nested symmetric chains, one per middle-level element.
#[test]
fn a06_symmetric_chain_decomposition() {
    for n in 1..=12 {
        let scd = gk_decomposition(n).unwrap();
        assert_eq!(
            scd.chains().len(),
            binomial(n, n / 2),
            "chain count at n={n}"
        );
        let mut seen = vec![false; 1 << n];
        for chain in scd.chains() {
            assert!(chain.is_symmetric());
            for e in chain.elements() {
                assert!(!seen[e.bits() as usize], "duplicate subset at n={n}");
                seen[e.bits() as usize] = true;
            }
            if chain.len() < n + 1 {
                let d = phi(chain).unwrap();
                assert!(d.min().is_subset_of(&chain.min()));
                assert_eq!(d.min().len() + 1, chain.min().len());
                assert!(chain.max().is_subset_of(&d.max()));
                assert_eq!(d.max().len(), chain.max().len() + 1);
                // The enclosing chain is itself a chain of the decomposition.
                assert_eq!(latcover::gk::chain_of(&d.min()), d);
            }
        }
        assert!(seen.iter().all(|&s| s), "partition incomplete at n={n}");
    }
    println!("acceptance 06 PASS: symmetric chain decompositions partition and nest for n <= 12");
}

/// 7. Atom/coatom covers over every ideal lattice of a poset with at most 6
/// elements; exact minimality solver-confirmed up to 5.
#[test]
fn a07_atoms_coatoms_exhaustive() {
    let mut lattices = 0;
    for n in 1..=6 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            if d.len() < 3 {
                assert_eq!(
                    atoms_coatoms_cover(&d).unwrap_err(),
                    ConstructError::TooSmall
                );
                continue;
            }
            let cover = atoms_coatoms_cover(&d).unwrap();
            let expect = d.atoms().len().max(d.coatoms().len());
            assert_eq!(cover.size(), expect, "size mismatch on {p:?}");
            let mut open = ElemSet::full(d.len());
            open.remove(d.bottom());
            open.remove(d.top());
            assert_eq!(cover.union(d.poset()), open, "union mismatch on {p:?}");
            if n <= 5 {
                let atoms = ElemSet::from_indices(d.len(), d.atoms());
                let coatoms = ElemSet::from_indices(d.len(), d.coatoms());
                assert_eq!(exact_rho(d.poset(), &atoms, &coatoms), expect);
            }
            lattices += 1;
        }
    }
    println!(
        "acceptance 07 PASS: atom/coatom covers minimal on {lattices} ideal lattices (|P| <= 6)"
    );
}

/// 8. The surjection builder succeeds and verifies on every dominated
/// antichain pair of every poset with at most 6 elements.
#[test]
fn a08_surjections_exhaustive() {
    let mut pairs = 0;
    for n in 1..=6 {
        for p in all_posets(n).unwrap() {
            let ideals = p.enumerate_ideals();
            for (a, b) in dominated_antichain_pairs(&p) {
                let f = build_surjection(&p, &a, &b).unwrap();
                assert!(
                    verify_surjection_over(&ideals, &a, &b, &f),
                    "witness failed on {p:?} A={a:?} B={b:?}"
                );
                pairs += 1;
            }
        }
    }
    println!("acceptance 08 PASS: built witnesses verify on {pairs} antichain pairs (|P| <= 6)");
}

/// 9. The two 4-element counterexamples behave as published: no onto map
/// verifies on either; on the fence the image hull still splits into |B| = 2
/// intervals, while on the disjoint chains it does not.
#[test]
fn a09_four_element_counterexamples() {
    // Two disjoint 2-chains a1(0) < b2(1), b1(2) < a2(3).
    let p = Poset::from_cover_edges(4, &[(0, 1), (2, 3)]).unwrap();
    let a = ElemSet::from_indices(4, [0, 3]);
    let b = ElemSet::from_indices(4, [1, 2]);
    assert!(p.antichain_relations(&a, &b).not_ge);
    let ideals = p.enumerate_ideals();
    for f in all_onto_maps(&b, &a) {
        assert!(!verify_surjection_over(&ideals, &a, &b, &f));
    }
    let (d, maps) = ideals_lattice(&p);
    let bold = ElemSet::from_indices(d.len(), a.iter().map(|x| maps.bold(x)));
    let bar = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
    assert!(exact_rho(d.poset(), &bold, &bar) > 2);

    // Fence a1(0) < b2(2) > b1(1) < a2(3): B is not an antichain; the hull
    // of the images is two intervals even though no witness exists.
    let p = Poset::from_cover_edges(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
    let a = ElemSet::from_indices(4, [0, 3]);
    let b = ElemSet::from_indices(4, [1, 2]);
    let ideals = p.enumerate_ideals();
    for f in all_onto_maps(&b, &a) {
        assert!(!verify_surjection_over(&ideals, &a, &b, &f));
    }
    let (d, maps) = ideals_lattice(&p);
    let bold = ElemSet::from_indices(d.len(), a.iter().map(|x| maps.bold(x)));
    let bar = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
    assert_eq!(exact_rho(d.poset(), &bold, &bar), 2);
    println!("acceptance 09 PASS: counterexample posets reproduce (no witness; hull splits only on the fence)");
}

/// 10. Two-element-level covers: over every ideal lattice of a poset with at
/// most 7 elements and every level pair with min size exactly 2, the
/// construction returns a valid cover of max(|A|, |B|) intervals.
#[test]
fn a10_two_level_covers_exhaustive() {
    let mut instances = 0;
    for n in 1..=7 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            let profile = d.levels();
            let height = profile.height();
            for j in 0..height {
                for k in (j + 1)..=height {
                    let (sa, sb) = (profile.level_sizes[j], profile.level_sizes[k]);
                    if sa.min(sb) != 2 {
                        continue;
                    }
                    let cover = two_level_cover(&d, j, k).unwrap();
                    assert_eq!(cover.size(), sa.max(sb), "size on {p:?} levels ({j},{k})");
                    assert!(cover.is_valid(d.poset()), "gap on {p:?} levels ({j},{k})");
                    assert_eq!(
                        cover.union(d.poset()),
                        *cover.span.elements(),
                        "overshoot on {p:?} levels ({j},{k})"
                    );
                    instances += 1;
                }
            }
        }
    }
    println!(
        "acceptance 10 PASS: two-element-level covers exact on {instances} level pairs (|P| <= 7)"
    );
}

/// 11. Thinned-grid covers: same corpus, every level pair with both sizes
/// above 1 is covered within |A|·|B| − min (+1 when |A| = |B| is odd).
#[test]
fn a11_thinned_grid_covers_exhaustive() {
    let mut instances = 0;
    for n in 1..=7 {
        for p in all_posets(n).unwrap() {
            let (d, _) = ideals_lattice(&p);
            let profile = d.levels();
            let height = profile.height();
            for j in 0..height {
                for k in (j + 1)..=height {
                    let (sa, sb) = (profile.level_sizes[j], profile.level_sizes[k]);
                    if sa <= 1 || sb <= 1 {
                        continue;
                    }
                    let (cover, _) = thinned_grid_cover_traced(&d, j, k).unwrap();
                    let (lo, hi) = (sa.min(sb), sa.max(sb));
                    let mut bound = lo * hi - lo;
                    if sa == sb && sa % 2 == 1 {
                        bound += 1;
                    }
                    assert!(
                        cover.size() <= bound,
                        "bound exceeded on {p:?} levels ({j},{k}): {} > {bound}",
                        cover.size()
                    );
                    assert!(cover.is_valid(d.poset()), "gap on {p:?} levels ({j},{k})");
                    instances += 1;
                }
            }
        }
    }
    println!("acceptance 11 PASS: thinned-grid covers within bound on {instances} level pairs (|P| <= 7)");
}

/// 12. Domination-image equivalence on 1000 seeded random posets: A ≱ B in P
/// holds exactly when the bold image of A sits below the bar image of B in
/// the ideal lattice; and dominating antichains without extremes force A ≱ B.
#[test]
fn a12_random_poset_duality_suite() {
    let mut checked = 0;
    for i in 0..1000u64 {
        let n = 2 + (i % 9) as usize; // 2..=10
        let density = 0.15 + 0.08 * (i % 10) as f64;
        let p = gen_random_poset(n, density, 7_000 + i).unwrap();
        let pick = |seed: u64| {
            let mut s = ElemSet::empty(n);
            let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
            for x in 0..n {
                state = state
                    .wrapping_mul(6_364_136_223_846_793_005)
                    .wrapping_add(1);
                if state >> 33 & 1 == 1 {
                    s.insert(x);
                }
            }
            if s.is_empty() {
                s.insert((seed % n as u64) as usize);
            }
            s
        };
        let a = minimal_elements_of(&p, &pick(i * 2 + 1));
        let b = maximal_elements_of(&p, &pick(i * 2 + 2));
        let flags = p.antichain_relations(&a, &b);

        let (d, maps) = ideals_lattice(&p);
        let bold = ElemSet::from_indices(d.len(), a.iter().map(|x| maps.bold(x)));
        let bar = ElemSet::from_indices(d.len(), b.iter().map(|x| maps.bar(x)));
        let dominated = d.poset().antichain_relations(&bold, &bar).le;
        assert_eq!(
            flags.not_ge, dominated,
            "equivalence failed at instance {i}"
        );

        if a.len() >= 2 && b.len() >= 2 && flags.le {
            assert!(
                flags.not_ge,
                "extreme-free domination failed at instance {i}"
            );
        }
        checked += 1;
    }
    assert_eq!(checked, 1000);
    println!("acceptance 12 PASS: duality equivalence on 1000 random posets (n <= 10)");
}

/// 13. Width/size audit of every convex subset of the rank-4 subset lattice:
/// no ratio drops below 6/16, and the full lattice attains it.
#[test]
fn a13_width_ratio_exhaustive_rank_four() {
    let report = check_daykin_frankl(4, Mode::Exhaustive, 0, 0).unwrap();
    assert!(
        !report.has_violations(),
        "violations: {:?}",
        report.violations
    );
    // The minimum ratio equals 6/16 (= 3/8, which smaller convex subsets can
    // also attain).
    let (w, s) = (
        report.params["min_ratio_width"],
        report.params["min_ratio_size"],
    );
    assert_eq!(w * 16, s * 6, "minimum ratio {w}/{s} differs from 6/16");
    println!(
        "acceptance 13 PASS: width ratio >= 6/16 over {} convex subsets of the rank-4 subset lattice",
        report.instances_checked
    );
}

/// 14. Solver/oracle equivalence on 200 seeded random instances with at most
/// 12 candidate intervals.
#[test]
fn a14_solver_matches_oracle() {
    let mut accepted = 0;
    let mut attempt = 0u64;
    while accepted < 200 {
        attempt += 1;
        assert!(attempt < 40_000, "instance generation starved");
        let n = 4 + (attempt % 6) as usize; // 4..=9
        let density = 0.15 + 0.07 * (attempt % 9) as f64;
        let p = gen_random_poset(n, density, 90_000 + attempt).unwrap();
        // Reuse another random poset's extremes as pseudo-random subsets.
        let seed = gen_random_poset(n, 0.5, 700_000 + attempt).unwrap();
        let a = minimal_elements_of(&p, &seed.minimals());
        let b = maximal_elements_of(&p, &seed.maximals());
        if a.is_empty() || b.is_empty() || !p.antichain_relations(&a, &b).le {
            continue;
        }
        let Ok(span) = p.convex_span(&a, &b) else {
            continue;
        };
        let inst = candidate_intervals(&p, &span);
        if inst.candidates.is_empty() || inst.candidates.len() > 12 {
            continue;
        }
        match (
            exact_min_cover(&p, &inst, None),
            brute_force_min_cover(&p, &inst),
        ) {
            (Ok(cover), Some(oracle)) => {
                assert!(cover.optimal);
                assert_eq!(
                    cover.size(),
                    oracle,
                    "solver/oracle split at attempt {attempt}"
                );
                assert!(cover.is_valid(&p));
            }
            (Err(_), None) => {}
            (got, oracle) => {
                panic!("feasibility disagreement at attempt {attempt}: {got:?} vs {oracle:?}")
            }
        }
        accepted += 1;
    }
    println!("acceptance 14 PASS: exact solver matches brute-force oracle on {accepted} instances");
}
