//! Interval covers of convex subsets in finite posets and distributive
//! lattices.
//!
//! The crate provides:
//!
//! * [`poset`] — finite posets with ideals, antichains, ranks, convex hulls
//!   and width;
//! * [`birkhoff`] — ideal lattices, distributivity validation, join/meet
//!   irreducibles and the `bold`/`bar` embeddings;
//! * [`cover`] — exact and greedy minimum interval covers plus interval
//!   covering property checks;
//! * [`gk`] — the Greene–Kleitman symmetric chain decomposition of the subset
//!   lattice and the explicit minimum covers it yields;
//! * [`construct`] — constructive covers: surjection witnesses, atom/coatom
//!   covers, two-element-level covers, and thinned-grid covers for general
//!   level pairs;
//! * [`families`] — generators for the structures used throughout (subset
//!   lattices, chain products, glued lattices, adversarial instances, random
//!   and exhaustive poset corpora);
//! * [`campaign`] — search harnesses that audit open questions over those
//!   corpora and emit reproducible reports;
//! * [`io`] — the `.poset` text format.

pub mod birkhoff;
pub mod campaign;
pub mod construct;
pub mod cover;
pub mod families;
pub mod gk;
pub mod io;
pub mod poset;
mod rng;
pub mod set;

pub use birkhoff::{
    birkhoff_maps, bold_bar, ideals_lattice, reconstruct_poset, verify_distributive, BirkhoffMaps,
    DistributiveLattice, DistributivityMode, IrreducibleKind, LatticeError,
};
pub use campaign::{
    check_daykin_frankl, search_level_covers, CampaignError, CampaignReport, LevelProblem, Mode,
    Violation,
};
pub use construct::{
    atoms_coatoms_cover, build_surjection, cover_from_surjection, thinned_grid_cover,
    two_level_cover, verify_surjection, ConstructError, Surjection,
};
pub use cover::{
    candidate_intervals, exact_min_cover, greedy_cover, icp_check, level_slab_span, CoverError,
    CoverInstance, CoverJson, IcpReport, Interval, IntervalCover,
};
pub use families::{
    all_posets, canonical_key, gen_boolean, gen_chain_product, gen_frankl, gen_glued,
    gen_random_poset, gen_worst_case, FamilyError, FranklInstance, GluedInstance,
    WorstCaseInstance,
};
pub use gk::{
    boolean_level_cover, chain_of, gk_decomposition, pair_positions, phi, psi, BitCover, BitSubset,
    GkError, GkPairing, Scd, SymChain,
};
pub use io::{parse_poset, write_poset, ParseError};
pub use poset::{
    antichain_poset, chain_poset, Antichain, ConvexSpan, Direction, Poset, PosetError, RankProfile,
    RelationFlags,
};
pub use set::ElemSet;
