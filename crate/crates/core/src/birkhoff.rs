//! Birkhoff duality for finite distributive lattices.
//!
//! A finite distributive lattice is, up to isomorphism, the lattice of order
//! ideals of its poset of join-irreducible elements. This module builds
//! `O(P)` from a poset, validates candidate lattices (all joins/meets exist,
//! distributive law holds), extracts join/meet irreducibles, and realizes the
//! two embeddings of a poset into its ideal lattice: `bold(a) = ↓a` (a
//! join-irreducible) and `bar(a) = P − ↑a` (a meet-irreducible).

use crate::poset::{Poset, RankProfile};
use crate::rng::SplitMix64;
use crate::set::ElemSet;
use std::collections::HashMap;
use thiserror::Error;

/// Largest candidate lattice accepted by the quadratic join/meet scan.
const MAX_LATTICE: usize = 1024;
/// Exhaustive distributivity checking up to this size; sampling beyond.
const EXHAUSTIVE_TRIPLES: usize = 256;
const SAMPLED_TRIPLES: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a lattice: elements {x} and {y} lack a {missing}")]
    NotALattice {
        x: usize,
        y: usize,
        missing: &'static str,
    },
    #[error("lattice is not distributive")]
    NotDistributive {
        witness: Option<(usize, usize, usize)>,
    },
    #[error("{what} exceeds supported size ({limit})")]
    SizeLimit { what: &'static str, limit: usize },
}

/// How distributivity was established for a lattice value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributivityMode {
    /// Every triple checked.
    Exhaustive,
    /// Deterministically sampled triples only (large lattices).
    Sampled { triples: u64 },
    /// Holds structurally (ideal lattices, chain products, subset lattices).
    ByConstruction,
}

#[derive(Debug, Clone, Copy)]
pub struct DistributivityReport {
    pub distributive: bool,
    pub mode: DistributivityMode,
    pub witness: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleKind {
    Join,
    Meet,
}

/// A verified finite distributive lattice.
///
/// Joins and meets are evaluated on the join-irreducible representation:
/// each element is the set of join-irreducibles below it, joins are unions
/// and meets intersections of those sets. At most 64 join-irreducibles are
/// supported, which covers every structure this crate generates.
#[derive(Clone)]
pub struct DistributiveLattice {
    poset: Poset,
    bottom: usize,
    top: usize,
    /// Join-irreducible elements, in a fixed order.
    ji: Vec<usize>,
    /// Element -> set of join-irreducibles below it (bit t ⇔ ji[t] ≤ x).
    ideal_of: Vec<u64>,
    index: HashMap<u64, usize>,
    /// Explicit join/meet tables when the lattice came through the generic
    /// validation gate.
    tables: Option<(Vec<u32>, Vec<u32>)>,
    mode: DistributivityMode,
}

/// The two embeddings of a source poset into a distributive lattice.
#[derive(Debug, Clone)]
pub struct BirkhoffMaps {
    bold: Vec<usize>,
    bar: Vec<usize>,
}

impl BirkhoffMaps {
    /// Lattice element `↓a` for source element `a`.
    pub fn bold(&self, a: usize) -> usize {
        self.bold[a]
    }

    /// Lattice element `P − ↑a` for source element `a`.
    pub fn bar(&self, a: usize) -> usize {
        self.bar[a]
    }

    pub fn source_size(&self) -> usize {
        self.bold.len()
    }
}

/// Images of a source subset under both maps, in ascending source order.
pub fn bold_bar(maps: &BirkhoffMaps, subset: &ElemSet) -> (Vec<usize>, Vec<usize>) {
    let bold = subset.iter().map(|a| maps.bold(a)).collect();
    let bar = subset.iter().map(|a| maps.bar(a)).collect();
    (bold, bar)
}

impl DistributiveLattice {
    /// Validation gate for arbitrary candidate posets: checks that every pair
    /// has a join and a meet and that the distributive law holds, then builds
    /// the join-irreducible representation.
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let n = poset.size();
        if n == 0 {
            return Err(LatticeError::NotALattice {
                x: 0,
                y: 0,
                missing: "bottom",
            });
        }
        if n > MAX_LATTICE {
            return Err(LatticeError::SizeLimit {
                what: "lattice",
                limit: MAX_LATTICE,
            });
        }
        let (join, meet) = join_meet_tables(&poset)?;
        let report = check_distributivity(n, &join, &meet);
        if !report.distributive {
            return Err(LatticeError::NotDistributive {
                witness: report.witness,
            });
        }
        let bottom = poset.minimals().first().expect("nonempty lattice");
        let top = poset.maximals().first().expect("nonempty lattice");
        let mut lat = Self::assemble(poset, bottom, top, report.mode)?;
        lat.tables = Some((join, meet));
        if n <= EXHAUSTIVE_TRIPLES {
            // The mask representation must agree with the table route.
            for x in 0..n {
                for y in 0..n {
                    debug_assert_eq!(
                        lat.join(x, y),
                        lat.tables.as_ref().unwrap().0[x * n + y] as usize
                    );
                }
            }
        }
        Ok(lat)
    }

    /// Shared tail of all constructors: find join-irreducibles, build the
    /// element <-> irreducible-set index.
    pub(crate) fn assemble(
        poset: Poset,
        bottom: usize,
        top: usize,
        mode: DistributivityMode,
    ) -> Result<Self, LatticeError> {
        let n = poset.size();
        let ji = irreducible_elements(&poset, IrreducibleKind::Join);
        if ji.len() > 64 {
            return Err(LatticeError::SizeLimit {
                what: "join-irreducibles",
                limit: 64,
            });
        }
        let mut ideal_of = vec![0u64; n];
        for (t, &j) in ji.iter().enumerate() {
            for x in 0..n {
                if poset.le(j, x) {
                    ideal_of[x] |= 1 << t;
                }
            }
        }
        let mut index = HashMap::with_capacity(n);
        for x in 0..n {
            if index.insert(ideal_of[x], x).is_some() {
                // Two elements over the same irreducible set: not distributive
                // (can only slip past a sampled check).
                return Err(LatticeError::NotDistributive { witness: None });
            }
        }
        Ok(DistributiveLattice {
            poset,
            bottom,
            top,
            ji,
            ideal_of,
            index,
            tables: None,
            mode,
        })
    }

    pub(crate) fn with_known_irreducibles(
        poset: Poset,
        bottom: usize,
        top: usize,
        ji: Vec<usize>,
        ideal_of: Vec<u64>,
        mode: DistributivityMode,
    ) -> Self {
        let n = poset.size();
        let mut index = HashMap::with_capacity(n);
        for x in 0..n {
            let prev = index.insert(ideal_of[x], x);
            debug_assert!(prev.is_none());
        }
        DistributiveLattice {
            poset,
            bottom,
            top,
            ji,
            ideal_of,
            index,
            tables: None,
            mode,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.size()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.poset.le(x, y)
    }

    pub fn mode(&self) -> DistributivityMode {
        self.mode
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        if let Some((join, _)) = &self.tables {
            return join[x * self.len() + y] as usize;
        }
        self.index[&(self.ideal_of[x] | self.ideal_of[y])]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        if let Some((_, meet)) = &self.tables {
            return meet[x * self.len() + y] as usize;
        }
        self.index[&(self.ideal_of[x] & self.ideal_of[y])]
    }

    /// Join-irreducibles (one lower cover) or meet-irreducibles (one upper
    /// cover), ascending.
    pub fn irreducibles(&self, kind: IrreducibleKind) -> Vec<usize> {
        irreducible_elements(&self.poset, kind)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset
            .covers()
            .iter()
            .filter(|&&(u, _)| u == self.bottom)
            .map(|&(_, v)| v)
            .collect()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset
            .covers()
            .iter()
            .filter(|&&(_, v)| v == self.top)
            .map(|&(u, _)| u)
            .collect()
    }

    /// Rank levels. Finite distributive lattices are always graded.
    pub fn levels(&self) -> RankProfile {
        self.poset
            .rank_profile()
            .expect("distributive lattices are graded")
    }

    /// Order-reversed lattice (joins and meets swap).
    pub fn dual(&self) -> Self {
        let n = self.len();
        let poset = self.poset.dual();
        let mi = irreducible_elements(&self.poset, IrreducibleKind::Meet);
        debug_assert_eq!(mi.len(), self.ji.len());
        let mut ideal_of = vec![0u64; n];
        for (t, &m) in mi.iter().enumerate() {
            for x in 0..n {
                if self.poset.le(x, m) {
                    ideal_of[x] |= 1 << t;
                }
            }
        }
        let mut index = HashMap::with_capacity(n);
        for x in 0..n {
            let prev = index.insert(ideal_of[x], x);
            debug_assert!(prev.is_none());
        }
        DistributiveLattice {
            poset,
            bottom: self.top,
            top: self.bottom,
            ji: mi,
            ideal_of,
            index,
            tables: self.tables.as_ref().map(|(j, m)| (m.clone(), j.clone())),
            mode: self.mode,
        }
    }

    pub(crate) fn ji_mask(&self, x: usize) -> u64 {
        self.ideal_of[x]
    }

    pub(crate) fn element_with_mask(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

fn irreducible_elements(p: &Poset, kind: IrreducibleKind) -> Vec<usize> {
    let mut count = vec![0usize; p.size()];
    for &(u, v) in p.covers() {
        match kind {
            IrreducibleKind::Join => count[v] += 1,
            IrreducibleKind::Meet => count[u] += 1,
        }
    }
    (0..p.size()).filter(|&x| count[x] == 1).collect()
}

/// All pairwise joins and meets of a candidate order, or which pair fails.
fn join_meet_tables(p: &Poset) -> Result<(Vec<u32>, Vec<u32>), LatticeError> {
    let n = p.size();
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for x in 0..n {
        for y in x..n {
            let j = bound_of(p, x, y, true).ok_or(LatticeError::NotALattice {
                x,
                y,
                missing: "join",
            })?;
            let m = bound_of(p, x, y, false).ok_or(LatticeError::NotALattice {
                x,
                y,
                missing: "meet",
            })?;
            join[x * n + y] = j as u32;
            join[y * n + x] = j as u32;
            meet[x * n + y] = m as u32;
            meet[y * n + x] = m as u32;
        }
    }
    Ok((join, meet))
}

/// Least upper bound (or greatest lower bound) of {x, y}, if unique.
fn bound_of(p: &Poset, x: usize, y: usize, upper: bool) -> Option<usize> {
    if upper {
        if p.le(x, y) {
            return Some(y);
        }
        if p.le(y, x) {
            return Some(x);
        }
    } else {
        if p.le(x, y) {
            return Some(x);
        }
        if p.le(y, x) {
            return Some(y);
        }
    }
    let (rx, ry) = if upper {
        (p.up_blocks(x), p.up_blocks(y))
    } else {
        (p.down_blocks(x), p.down_blocks(y))
    };
    let common: Vec<u64> = rx.iter().zip(ry).map(|(a, b)| a & b).collect();
    // The bound, if it exists, is the unique member of `common` whose own
    // up-set (down-set) contains all of `common`.
    for (w, &blk) in common.iter().enumerate() {
        let mut bits = blk;
        while bits != 0 {
            let u = w * 64 + bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let ru = if upper {
                p.up_blocks(u)
            } else {
                p.down_blocks(u)
            };
            if common.iter().zip(ru).all(|(c, r)| c & !r == 0) {
                return Some(u);
            }
        }
    }
    None
}

fn check_distributivity(n: usize, join: &[u32], meet: &[u32]) -> DistributivityReport {
    let check = |x: usize, y: usize, z: usize| -> bool {
        let lhs = meet[x * n + join[y * n + z] as usize];
        let rhs = join[meet[x * n + y] as usize * n + meet[x * n + z] as usize];
        lhs == rhs
    };
    if n <= EXHAUSTIVE_TRIPLES {
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    if !check(x, y, z) {
                        return DistributivityReport {
                            distributive: false,
                            mode: DistributivityMode::Exhaustive,
                            witness: Some((x, y, z)),
                        };
                    }
                }
            }
        }
        DistributivityReport {
            distributive: true,
            mode: DistributivityMode::Exhaustive,
            witness: None,
        }
    } else {
        let mut rng = SplitMix64::new(0xd157);
        for _ in 0..SAMPLED_TRIPLES {
            let x = rng.next_below(n);
            let y = rng.next_below(n);
            let z = rng.next_below(n);
            if !check(x, y, z) {
                return DistributivityReport {
                    distributive: false,
                    mode: DistributivityMode::Sampled {
                        triples: SAMPLED_TRIPLES,
                    },
                    witness: Some((x, y, z)),
                };
            }
        }
        DistributivityReport {
            distributive: true,
            mode: DistributivityMode::Sampled {
                triples: SAMPLED_TRIPLES,
            },
            witness: None,
        }
    }
}

/// True iff the candidate order is a distributive lattice; `NotALattice` when
/// some pair has no join or meet. Exhaustive over all triples for lattices of
/// at most 256 elements, deterministically sampled above that (see
/// [`distributivity_report`] for the mode).
pub fn verify_distributive(p: &Poset) -> Result<bool, LatticeError> {
    distributivity_report(p).map(|r| r.distributive)
}

/// Like [`verify_distributive`] but exposes the check mode and a violating
/// triple when one is found.
pub fn distributivity_report(p: &Poset) -> Result<DistributivityReport, LatticeError> {
    if p.size() > MAX_LATTICE {
        return Err(LatticeError::SizeLimit {
            what: "lattice",
            limit: MAX_LATTICE,
        });
    }
    if p.is_empty() {
        return Err(LatticeError::NotALattice {
            x: 0,
            y: 0,
            missing: "bottom",
        });
    }
    let (join, meet) = join_meet_tables(p)?;
    Ok(check_distributivity(p.size(), &join, &meet))
}

/// The lattice of order ideals of `p`, with elements numbered by the
/// deterministic ideal enumeration order of [`Poset::enumerate_ideals`], plus
/// the `bold`/`bar` maps of the source elements.
///
/// The source poset must have at most 64 elements.
pub fn ideals_lattice(p: &Poset) -> (DistributiveLattice, BirkhoffMaps) {
    assert!(
        p.size() <= 64,
        "source poset too large for ideal lattice construction"
    );
    let ideals = p.enumerate_ideals();
    let count = ideals.len();
    assert!(count <= MAX_LATTICE * 16, "ideal lattice too large");
    let stride = count.div_ceil(64).max(1);

    let masks: Vec<u64> = ideals.iter().map(low64).collect();
    let mut up = vec![0u64; count * stride];
    for i in 0..count {
        for j in 0..count {
            if masks[i] & !masks[j] == 0 {
                up[i * stride + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut covers = Vec::new();
    let sizes: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    for i in 0..count {
        for j in 0..count {
            if sizes[j] == sizes[i] + 1 && masks[i] & !masks[j] == 0 {
                covers.push((i, j));
            }
        }
    }
    let poset = Poset::from_parts(count, up, covers);

    let mut index_by_mask = HashMap::with_capacity(count);
    for (i, &m) in masks.iter().enumerate() {
        index_by_mask.insert(m, i);
    }
    let bottom = index_by_mask[&0];
    let full = if p.size() == 0 {
        0
    } else {
        low64(&ElemSet::full(p.size()))
    };
    let top = index_by_mask[&full];
    debug_assert_eq!(bottom, 0);
    debug_assert_eq!(top, count - 1);

    let mut bold = Vec::with_capacity(p.size());
    let mut bar = Vec::with_capacity(p.size());
    for a in 0..p.size() {
        bold.push(index_by_mask[&low64(&p.down_set(a))]);
        bar.push(index_by_mask[&low64(&p.up_set(a).complement())]);
    }

    // Join-irreducibles of O(P) are the principal ideals, ordered by source
    // element, so each ideal doubles as its own irreducible set.
    let ji: Vec<usize> = bold.clone();
    let lattice = DistributiveLattice::with_known_irreducibles(
        poset,
        bottom,
        top,
        ji,
        masks,
        DistributivityMode::ByConstruction,
    );
    (lattice, BirkhoffMaps { bold, bar })
}

fn low64(s: &ElemSet) -> u64 {
    s.blocks().first().copied().unwrap_or(0)
}

/// The poset of join-irreducibles with its induced order, together with the
/// maps embedding it back into `d`. `ideals_lattice` of the result is
/// isomorphic to `d`.
pub fn birkhoff_maps(d: &DistributiveLattice) -> (Poset, BirkhoffMaps) {
    let js = d.irreducibles(IrreducibleKind::Join);
    let m = js.len();
    let stride = m.div_ceil(64).max(1);
    let mut up = vec![0u64; m * stride];
    for i in 0..m {
        for j in 0..m {
            if d.le(js[i], js[j]) {
                up[i * stride + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let source = Poset::from_closure(m, stride, up);

    let mut bar = Vec::with_capacity(m);
    for &jt in &js {
        // Largest element not above the irreducible: the union of the
        // irreducible sets of all such elements is again one of them.
        let mut mask = 0u64;
        for x in 0..d.len() {
            if !d.le(jt, x) {
                mask |= d.ji_mask(x);
            }
        }
        let b = d.element_with_mask(mask).expect("complement ideal exists");
        debug_assert!(!d.le(jt, b));
        bar.push(b);
    }
    (source, BirkhoffMaps { bold: js, bar })
}

/// The join-irreducible poset alone.
pub fn reconstruct_poset(d: &DistributiveLattice) -> Poset {
    birkhoff_maps(d).0
}
