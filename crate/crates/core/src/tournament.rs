//! The Paley tournament on seven vertices and its affine symmetries.
//!
//! `T7` has vertex set `{0..6}` with an arc `(i, j)` exactly when `j - i` is
//! a nonzero quadratic residue mod 7, i.e. in `{1, 2, 4}`. The maps
//! `x -> a*x + b (mod 7)` with `a` a residue are automorphisms, and negation
//! turns a homomorphism into one of the arc-reversed graph. Those two facts
//! drive every coloring construction in this crate.

use thiserror::Error;

use crate::graph::{Coloring, OrientedGraph};

/// The nonzero quadratic residues mod 7.
pub const RESIDUES: [u8; 3] = [1, 2, 4];
/// The nonzero non-residues mod 7.
pub const NON_RESIDUES: [u8; 3] = [3, 5, 6];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("multiplier {0} is not a quadratic residue mod 7")]
    InvalidMultiplier(u8),
    #[error("offset {0} is not a residue class mod 7")]
    InvalidOffset(u8),
    #[error("vertex {vertex} carries the extra color 7, outside the tournament")]
    ExtraColor { vertex: usize },
}

/// The tournament itself: 7 vertices, 21 arcs, every vertex with in- and
/// out-degree 3.
pub fn t7() -> OrientedGraph {
    let arcs = (0..7u8).flat_map(|i| RESIDUES.iter().map(move |&d| (i as usize, ((i + d) % 7) as usize)));
    OrientedGraph::new(7, arcs).expect("the residue construction is loop-free and antisymmetric")
}

/// Arc membership without materializing the graph.
pub fn t7_arc(i: u8, j: u8) -> bool {
    debug_assert!(i < 7 && j < 7);
    matches!((7 + j - i) % 7, 1 | 2 | 4)
}

pub fn is_residue(x: u8) -> bool {
    RESIDUES.contains(&x)
}

/// Multiplicative inverse mod 7 for nonzero residues classes.
pub fn mul_inverse(a: u8) -> Option<u8> {
    match a % 7 {
        1 => Some(1),
        2 => Some(4),
        3 => Some(5),
        4 => Some(2),
        5 => Some(3),
        6 => Some(6),
        _ => None,
    }
}

/// The multiplier in `{1, 2, 4}` that maps a nonzero color into `{1, 3}`.
///
/// `{1, 2, 4}` and `{3, 5, 6}` are the two orbits of nonzero colors under
/// multiplication by residues, so one of 1, 2, 4 always lands the color on
/// the orbit representative 1 or 3.
pub fn normalizing_multiplier(x: u8) -> Option<u8> {
    match x % 7 {
        1 | 3 => Some(1),
        2 | 6 => Some(4),
        4 | 5 => Some(2),
        _ => None,
    }
}

// ============================================================================
// Affine maps
// ============================================================================

/// An automorphism `x -> scale * x + offset (mod 7)` of the tournament,
/// with `scale` restricted to the residues `{1, 2, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMap {
    scale: u8,
    offset: u8,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap { scale: 1, offset: 0 };

    pub fn new(scale: u8, offset: u8) -> Result<Self, TournamentError> {
        if !is_residue(scale) {
            return Err(TournamentError::InvalidMultiplier(scale));
        }
        if offset > 6 {
            return Err(TournamentError::InvalidOffset(offset));
        }
        Ok(Self { scale, offset })
    }

    pub fn scale(&self) -> u8 {
        self.scale
    }

    pub fn offset(&self) -> u8 {
        self.offset
    }

    pub fn apply(&self, x: u8) -> u8 {
        debug_assert!(x < 7);
        (self.scale * x + self.offset) % 7
    }

    /// `self` applied after `inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale: (self.scale * inner.scale) % 7,
            offset: (self.scale * inner.offset + self.offset) % 7,
        }
    }

    /// All 21 affine automorphisms.
    pub fn all() -> impl Iterator<Item = AffineMap> {
        RESIDUES
            .into_iter()
            .flat_map(|scale| (0..7).map(move |offset| AffineMap { scale, offset }))
    }
}

impl std::fmt::Display for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.scale, self.offset) {
            (1, 0) => write!(f, "x"),
            (1, b) => write!(f, "x+{b}"),
            (a, 0) => write!(f, "{a}x"),
            (a, b) => write!(f, "{a}x+{b}"),
        }
    }
}

// ============================================================================
// Coloring transforms
// ============================================================================

fn require_tournament_colors(c: &Coloring) -> Result<(), TournamentError> {
    for (vertex, &color) in c.as_slice().iter().enumerate() {
        if color > 6 {
            return Err(TournamentError::ExtraColor { vertex });
        }
    }
    Ok(())
}

/// Applies an affine automorphism pointwise. Preserves the homomorphism
/// property of any coloring into the tournament.
pub fn compose_coloring_with_affine(
    c: &Coloring,
    map: &AffineMap,
) -> Result<Coloring, TournamentError> {
    require_tournament_colors(c)?;
    let colors = c.as_slice().iter().map(|&x| map.apply(x)).collect();
    Ok(Coloring::new(colors).expect("affine images stay below 7"))
}

/// Pointwise `x -> -x (mod 7)`. If `c` is a homomorphism of `g` into the
/// tournament, the result is one of the arc-reversed graph.
pub fn negate_coloring(c: &Coloring) -> Result<Coloring, TournamentError> {
    require_tournament_colors(c)?;
    let colors = c.as_slice().iter().map(|&x| (7 - x) % 7).collect();
    Ok(Coloring::new(colors).expect("negation stays below 7"))
}

/// Convenience used by the composition machinery.
pub(crate) fn negate_color(x: u8) -> u8 {
    (7 - x) % 7
}
