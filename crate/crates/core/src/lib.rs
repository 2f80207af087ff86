//! Exact computation and verification of chromatic spectra for
//! sigma-hypergraphs.
//!
//! A sigma-hypergraph `H(n, r, q | sigma)` has `n` vertex classes of `q`
//! vertices each; an `r`-subset of the vertices is an edge exactly when the
//! multiset of its nonzero class-intersection sizes equals the partition
//! `sigma` of `r`. A colouring is admissible under bounds `(alpha, beta)`
//! when every edge sees at least `alpha` and at most `beta` distinct
//! colours; `(2, r-1)` forbids monochromatic and rainbow edges, `(2, r)`
//! only monochromatic ones. The spectrum of an instance is the set of `k`
//! for which a colouring using exactly `k` colours exists.
//!
//! Everything here is exact: search verdicts are three-valued (`Yes` with a
//! checked witness, `No` only after exhausting a symmetry-reduced search
//! space, `Unknown` when a node budget runs out), and every fast decision
//! procedure has an independent brute-force counterpart used as an oracle
//! in the test suite.
//!
//! Module map:
//!
//! * [`partition`] - integer partitions, their statistics, instance
//!   parameter validation.
//! * [`hypergraph`] - instances, colourings, explicit edge enumeration and
//!   the edge-scan checker.
//! * [`profile`] - the class-profile checker: monochromatic-edge detection
//!   and exact distinct-colour ranges without edge enumeration.
//! * [`spectrum`] - per-k decision search and whole-spectrum computation.
//! * [`constructions`] - closed-form colouring schemes with self-checked
//!   validity.
//! * [`recolour`] - colour-count preserving/shifting rewrites and the
//!   greedy spectrum walk.
//! * [`verifier`] - claim prediction from instance shape and confrontation
//!   of claims with search results.

pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod partition;
pub mod profile;
pub mod recolour;
pub mod spectrum;
pub mod verifier;

pub use constructions::SchemeId;
pub use error::Error;
pub use hypergraph::{
    check_explicit, edge_count, edge_profile, enumerate_edges, ColourBounds, Colouring, Edge,
    ProfileCheck, SigmaInstance, Verdict, VerdictStatus, VertexRef,
};
pub use partition::{
    partitions_of, validate_instance, Partition, ValidationIssue, ValidationReport,
};
pub use profile::{
    build_profile, check_fast, distinct_colour_range, has_monochromatic_edge, ClassProfile,
    DistinctRange, MonoWitness,
};
pub use recolour::{
    collapse_class, merge_private_colours, private_colours, spectrum_walk, Direction,
    TerminalReason, WalkRule, WalkStep, WalkTrace,
};
pub use spectrum::{
    compute_spectrum, decide_k, monochromatic_zone, KStatus, KVerdict, SpectrumReport,
};
pub use verifier::{
    predict_claims, verify_instance, Claim, ClaimKind, ClaimResult, ClaimStatus, KInterval, KSet,
    Precondition, VerificationReport,
};

/// Version tag carried by every JSON document the tools emit.
pub const SCHEMA: &str = "sigma-spectra/1";

/// Default node budget for a single per-k decision search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
