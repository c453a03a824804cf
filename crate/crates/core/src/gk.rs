//! Greene–Kleitman symmetric chain decomposition of the subset lattice.
//!
//! Subsets of an n-element ground set are machine words; positions are
//! 0-indexed internally and 1-indexed in formatted output. The bracket
//! pairing of a word determines its symmetric chain, the chain-shrinking map
//! `phi` nests shorter chains inside longer ones, and `psi` produces the
//! lower endpoints of an explicit minimum interval cover of the slab between
//! two levels.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GkError {
    #[error("ground set size {n} exceeds limit {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("chain has maximum length; no pair to remove")]
    MaxChain,
    #[error("psi precondition violated: need j <= |Y| and j + |Y| <= n")]
    PreconditionViolated,
}

/// Enumeration limit: decompositions and covers enumerate whole levels.
const MAX_ENUM: usize = 20;
/// Word capacity.
const MAX_BITS: usize = 60;

/// A subset of {0, .., n-1} packed into a word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSubset {
    n: usize,
    bits: u64,
}

impl BitSubset {
    pub fn new(n: usize, bits: u64) -> Self {
        assert!(n <= MAX_BITS, "ground set too large for a word");
        assert_eq!(bits >> n, 0, "bits outside the ground set");
        BitSubset { n, bits }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn from_positions(n: usize, positions: &[usize]) -> Self {
        let mut bits = 0;
        for &p in positions {
            assert!(p < n);
            bits |= 1 << p;
        }
        Self::new(n, bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, p: usize) -> bool {
        p < self.n && self.bits >> p & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Self {
        Self::new(self.n, !self.bits & ((1 << self.n) - 1))
    }

    /// Characteristic word a_1 a_2 ... a_n, leftmost character = position 0.
    pub fn word(&self) -> String {
        (0..self.n)
            .map(|p| if self.contains(p) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// Bracket pairing of a word: scanning left to right, every 1 pairs with the
/// rightmost unpaired 0 to its left; leftovers are the unpaired zeros and
/// ones. Unpaired ones always precede unpaired zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkPairing {
    /// (j, i) with j < i, position j holding 0 and position i holding 1.
    pub pairs: Vec<(usize, usize)>,
    pub unpaired_zeros: Vec<usize>,
    pub unpaired_ones: Vec<usize>,
}

pub fn pair_positions(a: &BitSubset) -> GkPairing {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    let mut unpaired_ones = Vec::new();
    for p in 0..a.n() {
        if a.contains(p) {
            match stack.pop() {
                Some(j) => pairs.push((j, p)),
                None => unpaired_ones.push(p),
            }
        } else {
            stack.push(p);
        }
    }
    pairs.sort_unstable();
    GkPairing {
        pairs,
        unpaired_zeros: stack,
        unpaired_ones,
    }
}

/// A saturated chain c_0 ⊂ c_1 ⊂ ... ⊂ c_m with |c_0| + |c_m| = n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymChain {
    elements: Vec<BitSubset>,
}

impl SymChain {
    pub fn elements(&self) -> &[BitSubset] {
        &self.elements
    }

    pub fn min(&self) -> BitSubset {
        self.elements[0]
    }

    pub fn max(&self) -> BitSubset {
        *self.elements.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Element of the given cardinality, if the chain passes through it.
    pub fn at_size(&self, size: usize) -> Option<BitSubset> {
        let lo = self.min().len();
        if size < lo || size > self.max().len() {
            return None;
        }
        Some(self.elements[size - lo])
    }

    /// Consecutive elements differ by one added position and the end sizes
    /// sum to n.
    pub fn is_symmetric(&self) -> bool {
        let n = self.min().n();
        for w in self.elements.windows(2) {
            let (x, y) = (w[0], w[1]);
            if !(x.is_subset_of(&y) && y.len() == x.len() + 1) {
                return false;
            }
        }
        self.min().len() + self.max().len() == n
    }
}

/// The symmetric chain through `a`: all unpaired ones stripped (right to
/// left) below it, all unpaired zeros flipped on (left to right) above it.
/// Every element of the chain shares the pairing of `a`.
pub fn chain_of(a: &BitSubset) -> SymChain {
    let pairing = pair_positions(a);
    let mut base = a.bits();
    for &p in &pairing.unpaired_ones {
        base &= !(1 << p);
    }
    // Unpaired ones all precede unpaired zeros, so turning prefixes of this
    // list on, in order, walks the chain bottom to top.
    let mut free = pairing.unpaired_ones.clone();
    free.extend(&pairing.unpaired_zeros);
    let mut elements = Vec::with_capacity(free.len() + 1);
    let mut bits = base;
    elements.push(BitSubset::new(a.n(), bits));
    for &p in &free {
        bits |= 1 << p;
        elements.push(BitSubset::new(a.n(), bits));
    }
    SymChain { elements }
}

/// A symmetric chain decomposition of the subsets of {0, .., n-1}.
#[derive(Debug, Clone)]
pub struct Scd {
    n: usize,
    chains: Vec<SymChain>,
}

impl Scd {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chains(&self) -> &[SymChain] {
        &self.chains
    }
}

/// The Greene–Kleitman decomposition: one chain per distinct pairing,
/// ordered by the chain minimum. Requires 1 <= n <= 20.
pub fn gk_decomposition(n: usize) -> Result<Scd, GkError> {
    if n == 0 || n > MAX_ENUM {
        return Err(GkError::SizeLimit { n, limit: MAX_ENUM });
    }
    let mut chains = Vec::new();
    for bits in 0..1u64 << n {
        let a = BitSubset::new(n, bits);
        // Chain minima are exactly the words with no unpaired ones.
        if pair_positions(&a).unpaired_ones.is_empty() && chain_of(&a).min() == a {
            chains.push(chain_of(&a));
        }
    }
    chains.sort_by_key(|c| c.min().bits());
    Ok(Scd { n, chains })
}

/// Removes the rightmost pair (j, i) of the chain: the minimum loses i, the
/// maximum gains j. The result strictly nests around the input:
/// min φ(C) ≺ min C ≤ max C ≺ max φ(C).
pub fn phi(c: &SymChain) -> Result<SymChain, GkError> {
    let min = c.min();
    let pairing = pair_positions(&min);
    let &(_, i) = pairing
        .pairs
        .iter()
        .max_by_key(|&&(_, i)| i)
        .ok_or(GkError::MaxChain)?;
    let shrunk = BitSubset::new(min.n(), min.bits() & !(1 << i));
    Ok(chain_of(&shrunk))
}

/// `psi(y, j)`: the size-j element of y's chain if the chain reaches level j,
/// else the minimum after iterating `phi` down to level j. The result is a
/// j-subset contained in y or in the chain minimum, so [psi(y), y] is always
/// an interval.
pub fn psi(y: &BitSubset, j: usize) -> Result<BitSubset, GkError> {
    let k = y.len();
    if j > k || j + k > y.n() {
        return Err(GkError::PreconditionViolated);
    }
    let chain = chain_of(y);
    psi_from_chain(&chain, j)
}

fn psi_from_chain(chain: &SymChain, j: usize) -> Result<BitSubset, GkError> {
    if let Some(x) = chain.at_size(j) {
        return Ok(x);
    }
    let mut min = chain.min();
    while min.len() > j {
        let pairing = pair_positions(&min);
        let &(_, i) = pairing
            .pairs
            .iter()
            .max_by_key(|&&(_, i)| i)
            .ok_or(GkError::MaxChain)?;
        min = BitSubset::new(min.n(), min.bits() & !(1 << i));
    }
    Ok(min)
}

/// An interval cover of the slab of subsets with cardinality in j..=k.
#[derive(Debug, Clone)]
pub struct BitCover {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub intervals: Vec<(BitSubset, BitSubset)>,
}

impl BitCover {
    pub fn size(&self) -> usize {
        self.intervals.len()
    }

    /// The intervals lie inside the slab and every slab element is covered.
    pub fn covers_exactly(&self) -> bool {
        if !self
            .intervals
            .iter()
            .all(|(lo, hi)| lo.is_subset_of(hi) && lo.len() >= self.j && hi.len() <= self.k)
        {
            return false;
        }
        for bits in 0..1u64 << self.n {
            let z = BitSubset::new(self.n, bits);
            let size = z.len();
            if size < self.j || size > self.k {
                continue;
            }
            if !self
                .intervals
                .iter()
                .any(|(lo, hi)| lo.is_subset_of(&z) && z.is_subset_of(hi))
            {
                return false;
            }
        }
        true
    }
}

/// Explicit minimum cover of the slab between levels j and k of the subset
/// lattice: the intervals [psi(Y), Y] over the larger of the two levels. For
/// j + k > n the construction runs on complements and is reflected back. The
/// size is always max(C(n, j), C(n, k)).
pub fn boolean_level_cover(n: usize, j: usize, k: usize) -> Result<BitCover, GkError> {
    if n > MAX_ENUM {
        return Err(GkError::SizeLimit { n, limit: MAX_ENUM });
    }
    assert!(j <= k && k <= n, "level pair out of order");
    let mut intervals = if j + k <= n {
        level_cover_direct(n, j, k)?
    } else {
        level_cover_direct(n, n - k, n - j)?
            .into_iter()
            .map(|(lo, hi)| (hi.complement(), lo.complement()))
            .collect()
    };
    intervals.sort_unstable_by_key(|&(lo, hi)| (lo.bits(), hi.bits()));
    Ok(BitCover { n, j, k, intervals })
}

/// The j + k <= n case: one interval per k-subset. Chain walks are memoized
/// by chain minimum since a whole level reuses them.
fn level_cover_direct(
    n: usize,
    j: usize,
    k: usize,
) -> Result<Vec<(BitSubset, BitSubset)>, GkError> {
    let mut memo: HashMap<u64, BitSubset> = HashMap::new();
    let mut intervals = Vec::new();
    for bits in 0..1u64 << n {
        if bits.count_ones() as usize != k {
            continue;
        }
        let y = BitSubset::new(n, bits);
        let chain = chain_of(&y);
        let lo = match memo.get(&chain.min().bits()) {
            Some(&lo) => lo,
            None => {
                let lo = psi_from_chain(&chain, j)?;
                memo.insert(chain.min().bits(), lo);
                lo
            }
        };
        intervals.push((lo, y));
    }
    Ok(intervals)
}
