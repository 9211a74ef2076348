//! Oriented graphs, colorings, and the oriented-coloring validity checker.
//!
//! An oriented graph is a loop-free digraph with at most one arc between any
//! two vertices. A coloring is a valid oriented coloring when (1) the two
//! ends of every arc get distinct colors and (2) no ordered pair of colors is
//! realized by arcs in both directions. Every other module's postconditions
//! bottom out in [`verify_oriented_coloring`].

use std::collections::HashSet;

use thiserror::Error;

/// Largest color any coloring may use. Colors `0..=6` are the vertices of
/// the target tournament; `7` is the single extra color the constructions
/// may spend.
pub const MAX_COLOR: u8 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop arc at vertex {vertex}")]
    LoopArc { vertex: usize },
    #[error("duplicate arc ({u}, {v})")]
    DuplicateArc { u: usize, v: usize },
    #[error("opposite arcs between {u} and {v}")]
    OppositeArcs { u: usize, v: usize },
    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringSizeMismatch { expected: usize, got: usize },
    #[error("color {color} at vertex {vertex} exceeds the maximum color {MAX_COLOR}")]
    ColorOutOfRange { vertex: usize, color: u8 },
    #[error("map covers {got} vertices, domain graph has {expected}")]
    MapSizeMismatch { expected: usize, got: usize },
}

// ============================================================================
// OrientedGraph
// ============================================================================

/// A loop-free digraph with no pair of opposite arcs.
///
/// Vertices are dense integers `0..n`. The arc list is kept sorted
/// lexicographically so iteration (and therefore every reported witness) is
/// deterministic; a hash set gives O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    arc_set: HashSet<(usize, usize)>,
    out_neighbors: Vec<Vec<usize>>,
    in_neighbors: Vec<Vec<usize>>,
}

impl OrientedGraph {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut arc_set = HashSet::new();
        let mut sorted = Vec::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopArc { vertex: u });
            }
            if arc_set.contains(&(v, u)) {
                return Err(GraphError::OppositeArcs { u, v });
            }
            if !arc_set.insert((u, v)) {
                return Err(GraphError::DuplicateArc { u, v });
            }
            sorted.push((u, v));
        }
        sorted.sort_unstable();

        let mut out_neighbors = vec![Vec::new(); n];
        let mut in_neighbors = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            out_neighbors[u].push(v);
            in_neighbors[v].push(u);
        }
        Ok(Self {
            n,
            arcs: sorted,
            arc_set,
            out_neighbors,
            in_neighbors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_set.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_neighbors[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_neighbors[v]
    }

    /// In-degree plus out-degree.
    pub fn degree(&self, v: usize) -> usize {
        self.out_neighbors[v].len() + self.in_neighbors[v].len()
    }

    /// The graph with every arc reversed. An involution.
    pub fn reversed(&self) -> OrientedGraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (v, u));
        OrientedGraph::new(self.n, arcs).expect("reversal preserves the invariants")
    }
}

// ============================================================================
// Coloring
// ============================================================================

/// A total map from vertices to colors in `0..=MAX_COLOR`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Result<Self, GraphError> {
        for (vertex, &color) in colors.iter().enumerate() {
            if color > MAX_COLOR {
                return Err(GraphError::ColorOutOfRange { vertex, color });
            }
        }
        Ok(Self { colors })
    }

    pub fn uniform(n: usize, color: u8) -> Self {
        assert!(color <= MAX_COLOR);
        Self {
            colors: vec![color; n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: u8) {
        assert!(color <= MAX_COLOR, "color {color} out of range");
        self.colors[v] = color;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen = [false; MAX_COLOR as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// How many vertices carry the given color.
    pub fn count_of(&self, color: u8) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }
}

// ============================================================================
// Verification
// ============================================================================

/// Why a coloring is not a valid oriented coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An arc whose two ends carry the same color.
    AdjacentSameColor { arc: (usize, usize), color: u8 },
    /// Two arcs realizing the same ordered color pair in opposite
    /// directions: `first` is colored `(a, b)` and `second` is colored
    /// `(b, a)`.
    OpposingColorPair {
        first: (usize, usize),
        second: (usize, usize),
        colors: (u8, u8),
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AdjacentSameColor { arc, color } => {
                write!(f, "arc ({}, {}) joins two vertices of color {}", arc.0, arc.1, color)
            }
            Violation::OpposingColorPair { first, second, colors } => write!(
                f,
                "arc ({}, {}) is colored ({}, {}) while arc ({}, {}) is colored ({}, {})",
                first.0, first.1, colors.0, colors.1, second.0, second.1, colors.1, colors.0
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks both oriented-coloring conditions, reporting the first violation
/// found while scanning arcs in lexicographic order.
///
/// Condition (2) is checked by indexing arcs by their ordered color pair, so
/// a verification pass is linear in the number of arcs.
pub fn verify_oriented_coloring(
    g: &OrientedGraph,
    c: &Coloring,
) -> Result<Verdict, GraphError> {
    if c.len() != g.vertex_count() {
        return Err(GraphError::ColoringSizeMismatch {
            expected: g.vertex_count(),
            got: c.len(),
        });
    }
    const K: usize = MAX_COLOR as usize + 1;
    let mut first_arc: [[Option<(usize, usize)>; K]; K] = [[None; K]; K];
    for &(u, v) in g.arcs() {
        let (a, b) = (c.get(u), c.get(v));
        if a == b {
            return Ok(Verdict::Invalid(Violation::AdjacentSameColor {
                arc: (u, v),
                color: a,
            }));
        }
        if let Some(other) = first_arc[b as usize][a as usize] {
            return Ok(Verdict::Invalid(Violation::OpposingColorPair {
                first: other,
                second: (u, v),
                colors: (b, a),
            }));
        }
        if first_arc[a as usize][b as usize].is_none() {
            first_arc[a as usize][b as usize] = Some((u, v));
        }
    }
    Ok(Verdict::Valid)
}

/// True iff `map` sends every arc of `g` onto an arc of `h`.
pub fn is_homomorphism(
    g: &OrientedGraph,
    h: &OrientedGraph,
    map: &[usize],
) -> Result<bool, GraphError> {
    if map.len() != g.vertex_count() {
        return Err(GraphError::MapSizeMismatch {
            expected: g.vertex_count(),
            got: map.len(),
        });
    }
    for (vertex, &image) in map.iter().enumerate() {
        if image >= h.vertex_count() {
            let _ = vertex;
            return Err(GraphError::VertexOutOfRange {
                vertex: image,
                n: h.vertex_count(),
            });
        }
    }
    Ok(g.arcs().iter().all(|&(u, v)| h.has_arc(map[u], map[v])))
}
