//! Generators for the structures exercised throughout the crate: subset
//! lattices, chain products, glued lattices, adversarial cover instances,
//! random posets, and the corpus of all posets up to isomorphism.

use crate::birkhoff::{
    distributivity_report, DistributiveLattice, DistributivityMode, LatticeError,
};
use crate::poset::{Poset, PosetError};
use crate::rng::SplitMix64;
use crate::set::ElemSet;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{what} exceeds supported size ({limit})")]
    SizeLimit { what: &'static str, limit: usize },
    #[error("parameter too small: {0}")]
    ParamTooSmall(&'static str),
    #[error("internal construction error: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Subset lattices grow as 2^n; dense order matrices cap the exponent.
const MAX_BOOLEAN: usize = 14;
const MAX_PRODUCT: usize = 4096;
const MAX_GLUED: usize = 12;
const MAX_EXACT_POSETS: usize = 7;
const MAX_RANDOM: usize = 40;

/// Verify generated lattices outright below this size; construction
/// guarantees distributivity either way.
const VERIFY_LIMIT: usize = 256;

fn generator_mode(poset: &Poset) -> Result<DistributivityMode, FamilyError> {
    if poset.size() <= VERIFY_LIMIT {
        let report = distributivity_report(poset)?;
        if !report.distributive {
            return Err(FamilyError::Internal(
                "generated lattice failed distributivity",
            ));
        }
        Ok(DistributivityMode::Exhaustive)
    } else {
        Ok(DistributivityMode::ByConstruction)
    }
}

/// The lattice of subsets of an n-element set; element index = subset mask.
pub fn gen_boolean(n: usize) -> Result<DistributiveLattice, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ParamTooSmall("boolean lattice needs n >= 1"));
    }
    if n > MAX_BOOLEAN {
        return Err(FamilyError::SizeLimit {
            what: "boolean lattice exponent",
            limit: MAX_BOOLEAN,
        });
    }
    let count = 1usize << n;
    let stride = count.div_ceil(64).max(1);
    let mut up = vec![0u64; count * stride];
    let full = count - 1;
    for u in 0..count {
        let mut v = u;
        loop {
            up[u * stride + v / 64] |= 1 << (v % 64);
            if v == full {
                break;
            }
            v = (v + 1) | u;
        }
    }
    let mut covers = Vec::with_capacity(n * count / 2);
    for u in 0..count {
        for b in 0..n {
            if u >> b & 1 == 0 {
                covers.push((u, u | 1 << b));
            }
        }
    }
    let poset = Poset::from_parts(count, up, covers);
    let mode = generator_mode(&poset)?;
    Ok(DistributiveLattice::assemble(poset, 0, full, mode)?)
}

/// Product of chains of the given lengths (each entry = number of elements),
/// ordered componentwise. Ranked by coordinate sum.
pub fn gen_chain_product(lengths: &[usize]) -> Result<DistributiveLattice, FamilyError> {
    if lengths.contains(&0) {
        return Err(FamilyError::ParamTooSmall("chain lengths must be >= 1"));
    }
    let count = lengths.iter().try_fold(1usize, |acc, &l| {
        acc.checked_mul(l).filter(|&c| c <= MAX_PRODUCT)
    });
    let Some(count) = count else {
        return Err(FamilyError::SizeLimit {
            what: "chain product",
            limit: MAX_PRODUCT,
        });
    };
    let k = lengths.len();
    let mut strides = vec![1usize; k];
    for i in 1..k {
        strides[i] = strides[i - 1] * lengths[i - 1];
    }
    let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| x / strides[i] % lengths[i]).collect() };

    let wstride = count.div_ceil(64).max(1);
    let mut up = vec![0u64; count * wstride];
    let mut covers = Vec::new();
    for x in 0..count {
        let dx = digits(x);
        // Odometer over all y with componentwise y >= x.
        let mut dy = dx.clone();
        loop {
            let y: usize = (0..k).map(|i| dy[i] * strides[i]).sum();
            up[x * wstride + y / 64] |= 1 << (y % 64);
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                dy[i] += 1;
                if dy[i] < lengths[i] {
                    break;
                }
                dy[i] = dx[i];
                i += 1;
            }
            if i == k {
                break;
            }
        }
        for i in 0..k {
            if dx[i] + 1 < lengths[i] {
                covers.push((x, x + strides[i]));
            }
        }
    }
    let poset = Poset::from_parts(count, up, covers);
    let mode = generator_mode(&poset)?;
    Ok(DistributiveLattice::assemble(poset, 0, count - 1, mode)?)
}

/// Adversarial two-antichain instance inside a subset lattice: `lower` holds
/// the r singletons {x_i}, `upper` the s sets X ∪ {y_j}. Every mixed pair
/// {x_i, y_j} lies in exactly one candidate interval, so exactly r·s
/// intervals are needed.
#[derive(Clone)]
pub struct FranklInstance {
    pub lattice: DistributiveLattice,
    pub lower: ElemSet,
    pub upper: ElemSet,
    pub r: usize,
    pub s: usize,
}

pub fn gen_frankl(r: usize, s: usize) -> Result<FranklInstance, FamilyError> {
    if r == 0 || s == 0 {
        return Err(FamilyError::ParamTooSmall(
            "both antichain sizes must be >= 1",
        ));
    }
    let n = r + s;
    if n > MAX_BOOLEAN {
        return Err(FamilyError::SizeLimit {
            what: "ground set",
            limit: MAX_BOOLEAN,
        });
    }
    let lattice = gen_boolean(n)?;
    let count = 1usize << n;
    let x_mask = (1usize << r) - 1;
    let lower = ElemSet::from_indices(count, (0..r).map(|i| 1 << i));
    let upper = ElemSet::from_indices(count, (0..s).map(|j| x_mask | 1 << (r + j)));
    Ok(FranklInstance {
        lattice,
        lower,
        upper,
        r,
        s,
    })
}

/// A lattice (never distributive for r, s >= 2) whose atom/coatom span needs
/// the full r·s intervals: atoms a_i, coatoms c_j, a middle element x below
/// every coatom and above every atom, and for each (i, j) a private middle
/// element inside [a_i, c_j] only.
#[derive(Clone)]
pub struct WorstCaseInstance {
    pub poset: Poset,
    pub atoms: Vec<usize>,
    pub coatoms: Vec<usize>,
    pub r: usize,
    pub s: usize,
}

impl WorstCaseInstance {
    pub fn middle(&self, i: usize, j: usize) -> usize {
        self.r + 2 + i * self.s + j
    }
}

pub fn gen_worst_case(r: usize, s: usize) -> Result<WorstCaseInstance, FamilyError> {
    if r < 2 || s < 2 {
        return Err(FamilyError::ParamTooSmall("needs r, s >= 2"));
    }
    let bottom = 0;
    let atom = |i: usize| 1 + i;
    let x = r + 1;
    let middle = |i: usize, j: usize| r + 2 + i * s + j;
    let coatom = |j: usize| r + 2 + r * s + j;
    let top = r + 2 + r * s + s;
    let total = top + 1;

    let mut edges = Vec::new();
    for i in 0..r {
        edges.push((bottom, atom(i)));
        edges.push((atom(i), x));
        for j in 0..s {
            edges.push((atom(i), middle(i, j)));
        }
    }
    for j in 0..s {
        edges.push((x, coatom(j)));
        edges.push((coatom(j), top));
        for i in 0..r {
            edges.push((middle(i, j), coatom(j)));
        }
    }
    let mut poset = Poset::from_cover_edges(total, &edges)?;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..r).map(|i| format!("a{}", i + 1)));
    labels.push("x".to_string());
    for i in 0..r {
        for j in 0..s {
            labels.push(format!("x{},{}", i + 1, j + 1));
        }
    }
    labels.extend((0..s).map(|j| format!("c{}", j + 1)));
    labels.push("1".to_string());
    poset.set_labels(labels)?;
    Ok(WorstCaseInstance {
        poset,
        atoms: (0..r).map(atom).collect(),
        coatoms: (0..s).map(coatom).collect(),
        r,
        s,
    })
}

/// Two subset lattices glued along an edge: a coatom–top edge of the first is
/// identified with the bottom–atom edge of the second. The two consecutive
/// levels at the seam have sizes n and m.
#[derive(Clone)]
pub struct GluedInstance {
    pub lattice: DistributiveLattice,
    pub lower_rank: usize,
    pub upper_rank: usize,
    pub n: usize,
    pub m: usize,
}

pub fn gen_glued(n: usize, m: usize) -> Result<GluedInstance, FamilyError> {
    if n < 2 || m < 2 {
        return Err(FamilyError::ParamTooSmall("glued lattices need n, m >= 2"));
    }
    if n + m > MAX_GLUED {
        return Err(FamilyError::SizeLimit {
            what: "glued exponents n+m",
            limit: MAX_GLUED,
        });
    }
    let first = 1usize << n;
    let top1 = first - 1;
    // Glue along the edge from this coatom up to the top of the first cube;
    // by symmetry the choice of coatom and atom is immaterial.
    let seam_coatom = top1 ^ (1 << (n - 1));
    let total = first + (1usize << m) - 2;
    // Second-cube subsets: bottom -> seam coatom, the designated atom {0} ->
    // old top, everything else appended after the first cube.
    let map2 = |v: usize| -> usize {
        match v {
            0 => seam_coatom,
            1 => top1,
            _ => first + v - 2,
        }
    };
    let mut edges = Vec::new();
    for u in 0..first {
        for b in 0..n {
            if u >> b & 1 == 0 {
                edges.push((u, u | 1 << b));
            }
        }
    }
    for v in 0..1usize << m {
        for b in 0..m {
            if v >> b & 1 == 0 {
                edges.push((map2(v), map2(v | 1 << b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let poset = Poset::from_cover_edges(total, &edges)?;
    let lattice = DistributiveLattice::from_poset(poset)
        .map_err(|_| FamilyError::Internal("glued construction is not distributive"))?;
    let profile = lattice.levels();
    if profile.level_sizes.get(n - 1) != Some(&n) || profile.level_sizes.get(n) != Some(&m) {
        return Err(FamilyError::Internal(
            "glued construction has wrong seam levels",
        ));
    }
    Ok(GluedInstance {
        lattice,
        lower_rank: n - 1,
        upper_rank: n,
        n,
        m,
    })
}

/// Uniform random poset: each pair i < j becomes an edge with the given
/// probability, then the order is the closure. Deterministic for a fixed
/// seed; density 0 gives an antichain and density 1 a chain.
pub fn gen_random_poset(n: usize, density: f64, seed: u64) -> Result<Poset, FamilyError> {
    if n > MAX_RANDOM {
        return Err(FamilyError::SizeLimit {
            what: "random poset size",
            limit: MAX_RANDOM,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.chance(density) {
                edges.push((i, j));
            }
        }
    }
    Ok(Poset::from_cover_edges(n, &edges)?)
}

/// Canonical label of a poset with at most 8 elements: the minimum, over all
/// relabelings, of the order matrix packed into a word. Equal keys mean
/// isomorphic posets. Relabelings only permute elements with identical local
/// invariants, which prunes the factorial search.
pub fn canonical_key(p: &Poset) -> u64 {
    let n = p.size();
    assert!(n <= 8, "canonical keys support at most 8 elements");
    let mut lower_covers = vec![0usize; n];
    let mut upper_covers = vec![0usize; n];
    for &(u, v) in p.covers() {
        upper_covers[u] += 1;
        lower_covers[v] += 1;
    }
    let invariant = |x: usize| {
        (
            p.down_set(x).len(),
            p.up_set(x).len(),
            lower_covers[x],
            upper_covers[x],
        )
    };
    let mut classes: BTreeMap<(usize, usize, usize, usize), Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        classes.entry(invariant(x)).or_default().push(x);
    }
    let groups: Vec<Vec<usize>> = classes.into_values().collect();

    let mut arrangement = Vec::with_capacity(n);
    let mut best = u64::MAX;
    fn rec(
        p: &Poset,
        groups: &[Vec<usize>],
        gi: usize,
        remaining: &mut Vec<usize>,
        arrangement: &mut Vec<usize>,
        best: &mut u64,
    ) {
        if remaining.is_empty() {
            if gi + 1 < groups.len() {
                let mut next: Vec<usize> = groups[gi + 1].clone();
                rec(p, groups, gi + 1, &mut next, arrangement, best);
            } else {
                let n = p.size();
                let mut key = 0u64;
                for (i, &x) in arrangement.iter().enumerate() {
                    for (j, &y) in arrangement.iter().enumerate() {
                        if p.le(x, y) {
                            key |= 1 << (i as u32 * n as u32 + j as u32);
                        }
                    }
                }
                *best = (*best).min(key);
            }
            return;
        }
        for idx in 0..remaining.len() {
            let x = remaining.remove(idx);
            arrangement.push(x);
            rec(p, groups, gi, remaining, arrangement, best);
            arrangement.pop();
            remaining.insert(idx, x);
        }
    }
    if n == 0 {
        return 0;
    }
    let mut first: Vec<usize> = groups[0].clone();
    rec(p, &groups, 0, &mut first, &mut arrangement, &mut best);
    best
}

/// All posets with exactly `n` elements, one representative per isomorphism
/// class, ordered by canonical key. Built by extending every smaller poset
/// with a new maximal element over each of its order ideals.
pub fn all_posets(n: usize) -> Result<Vec<Poset>, FamilyError> {
    if n == 0 || n > MAX_EXACT_POSETS {
        return Err(FamilyError::SizeLimit {
            what: "exact poset size",
            limit: MAX_EXACT_POSETS,
        });
    }
    let mut reps: Vec<Poset> = vec![Poset::from_cover_edges(1, &[]).expect("singleton")];
    for _ in 2..=n {
        let mut next: BTreeMap<u64, Poset> = BTreeMap::new();
        for q in &reps {
            for ideal in q.enumerate_ideals() {
                let candidate = extend_with_maximal(q, &ideal);
                let key = canonical_key(&candidate);
                next.entry(key).or_insert(candidate);
            }
        }
        reps = next.into_values().collect();
    }
    Ok(reps)
}

/// Adds one new maximal element whose strict down-set is the given ideal.
fn extend_with_maximal(q: &Poset, ideal: &ElemSet) -> Poset {
    let old = q.size();
    let n = old + 1;
    let stride = n.div_ceil(64).max(1);
    let mut up = vec![0u64; n * stride];
    for x in 0..old {
        for y in q.up_set(x).iter() {
            up[x * stride + y / 64] |= 1 << (y % 64);
        }
        if ideal.contains(x) {
            up[x * stride + old / 64] |= 1 << (old % 64);
        }
    }
    up[old * stride + old / 64] |= 1 << (old % 64);
    let mut covers: Vec<(usize, usize)> = q.covers().to_vec();
    for y in ideal.iter() {
        if q.up_set(y).intersection(ideal).len() == 1 {
            covers.push((y, old));
        }
    }
    Poset::from_parts(n, up, covers)
}
