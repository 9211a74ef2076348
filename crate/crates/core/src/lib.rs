//! Constructive oriented coloring of Halin graphs.
//!
//! Every oriented Halin graph — a plane tree with at least three leaves plus
//! an oriented cycle through the leaves in embedding order — admits an
//! oriented coloring with at most 8 colors. This crate builds such colorings
//! explicitly: colors `0..=6` are the vertices of the Paley tournament on
//! seven elements, and the constructions spend the extra color `7` on at
//! most one vertex. An exact brute-force oriented-chromatic-number oracle
//! cross-validates the constructions at desk scale.
//!
//! Module map:
//! - [`graph`]: oriented graphs, colorings, the validity checker.
//! - [`tournament`]: the target tournament and its affine automorphisms.
//! - [`halin`]: instances, fans, generators, JSON and DOT serialization.
//! - [`fan_coloring`]: the recursive fan colorer and fan composition.
//! - [`colorer`]: the case dispatch producing the 8-color coloring.
//! - [`oracle`]: exact oriented chromatic number by exhaustive search.

pub mod colorer;
pub mod fan_coloring;
pub mod graph;
pub mod halin;
pub mod oracle;
pub mod tournament;

pub use colorer::{color_halin, CaseTag, HalinColoring};
pub use fan_coloring::{color_fan, compose_fans, CompositionResult, FanColoring};
pub use graph::{
    is_homomorphism, verify_oriented_coloring, Coloring, GraphError, OrientedGraph, Verdict,
    Violation,
};
pub use halin::{
    enumerate_halin, fan_from_cycle_arc_removal, fan_from_cycle_vertex_removal, fan_split,
    from_json, generate_random_halin, to_dot, to_json, Fan, FanSplit, GenProfile, HalinError,
    OrientedHalin, PlaneTree,
};
pub use oracle::{exists_k_coloring, oriented_chromatic_number, ChromaticOutcome};
pub use tournament::{t7, t7_arc, AffineMap, TournamentError};
