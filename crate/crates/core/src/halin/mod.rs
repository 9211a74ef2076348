//! Oriented Halin graphs: a plane tree plus an oriented exterior cycle.
//!
//! The planar embedding is carried entirely by the ordered child lists; the
//! exterior cycle is the depth-first leaf order, never stored independently.
//! Tree-edge and cycle-edge orientations are per-edge flags on top of that
//! structure, so a structurally valid value can only violate on leaf count
//! or root degree.

mod dot;
mod fan;
mod generate;
mod json;

pub use dot::to_dot;
pub(crate) use fan::fan_after_removals;
pub use fan::{fan_from_cycle_arc_removal, fan_from_cycle_vertex_removal, fan_split, Fan, FanSplit};
pub use generate::{enumerate_halin, generate_random_halin, GenProfile};
pub use json::{from_json, to_json};

use thiserror::Error;

use crate::graph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HalinError {
    #[error("node {node} appears {count} times as a child")]
    MalformedChildLists { node: usize, count: usize },
    #[error("tree is not connected at the root: reached {reached} of {n} nodes")]
    NotATree { reached: usize, n: usize },
    #[error("interior tree has {leaves} leaves; a Halin graph needs at least 3")]
    TooFewLeaves { leaves: usize },
    #[error("the tree root has {children} children, so it would sit off the cycle")]
    RootNotInterior { children: usize },
    #[error("orientation flags cover {got} entries, expected {expected}")]
    OrientationSizeMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} is not an interior vertex")]
    NotInterior { vertex: usize },
    #[error("vertex {vertex} is not an exterior (leaf) vertex")]
    NotExterior { vertex: usize },
    #[error("cycle position {index} is out of range for {cycle_len} exterior vertices")]
    CycleIndexOutOfRange { index: usize, cycle_len: usize },
    #[error("removing the requested vertices disconnects the remaining tree")]
    DisconnectedRemoval,
    #[error("leaf {leaf} does not start a child block of the fan root; the cut is not realizable in this embedding")]
    CutNotRealizable { leaf: usize },
    #[error("fan leaves are not consecutive on the exterior cycle at {leaf}")]
    LeafPathBroken { leaf: usize },
    #[error("fan structure invalid: {0}")]
    MalformedFan(String),
    #[error("vertex {vertex} is not a lowest-level interior vertex with a father")]
    NotLowestInterior { vertex: usize },
    #[error("cycle arc {index} does not flank the sons of {vertex}")]
    GapDoesNotFlankSons { index: usize, vertex: usize },
    #[error("a random instance needs at least 3 leaves, got {0}")]
    TooFewLeavesRequested(usize),
    #[error("branch profile allows at most {max_children} children, need at least {needed}")]
    ProfileTooNarrow { max_children: usize, needed: usize },
    #[error("document error: {0}")]
    Document(String),
}

// ============================================================================
// PlaneTree
// ============================================================================

/// A rooted tree with an ordered child list per node. Node ids are dense
/// `0..n`; the embedding is the child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    root: usize,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl PlaneTree {
    pub fn new(root: usize, children: Vec<Vec<usize>>) -> Result<Self, HalinError> {
        let n = children.len();
        if root >= n {
            return Err(HalinError::NotATree { reached: 0, n });
        }
        let mut parent = vec![None; n];
        let mut seen = vec![0usize; n];
        for (p, kids) in children.iter().enumerate() {
            for &k in kids {
                if k >= n {
                    return Err(HalinError::MalformedChildLists { node: k, count: 0 });
                }
                seen[k] += 1;
                if seen[k] > 1 || k == root {
                    return Err(HalinError::MalformedChildLists { node: k, count: seen[k] });
                }
                parent[k] = Some(p);
            }
        }
        // Reachability from the root guarantees acyclicity given unique parents.
        let mut reached = 0usize;
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            reached += 1;
            for &k in &children[v] {
                if !visited[k] {
                    visited[k] = true;
                    stack.push(k);
                }
            }
        }
        if reached != n {
            return Err(HalinError::NotATree { reached, n });
        }
        Ok(Self { root, children, parent })
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children_of(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Leaves in depth-first, child-order sequence: the planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(self.root, &mut out);
        out
    }

    fn collect_leaves(&self, v: usize, out: &mut Vec<usize>) {
        if self.children[v].is_empty() {
            out.push(v);
            return;
        }
        for &k in &self.children[v] {
            self.collect_leaves(k, out);
        }
    }

    /// Interior vertices (nodes with children) in depth-first preorder.
    pub fn interior_preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if !self.children[v].is_empty() {
                out.push(v);
                for &k in self.children[v].iter().rev() {
                    stack.push(k);
                }
            }
        }
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.node_count()];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for &k in &self.children[v] {
                depth[k] = depth[v] + 1;
                stack.push(k);
            }
        }
        depth
    }
}

// ============================================================================
// OrientedHalin
// ============================================================================

/// An oriented Halin graph: the interior plane tree, one direction flag per
/// tree edge, and one per exterior-cycle edge.
///
/// `edge_down[v]` (for non-root `v`) is true when the tree arc runs from the
/// parent of `v` to `v`. `cycle_forward[i]` is true when the cycle arc runs
/// from the `i`-th leaf to the `i+1`-st in planar order (indices mod the
/// number of leaves, so the last entry closes the cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedHalin {
    tree: PlaneTree,
    edge_down: Vec<bool>,
    cycle_forward: Vec<bool>,
    leaf_order: Vec<usize>,
    leaf_pos: Vec<Option<usize>>,
}

impl OrientedHalin {
    pub fn new(
        tree: PlaneTree,
        edge_down: Vec<bool>,
        cycle_forward: Vec<bool>,
    ) -> Result<Self, HalinError> {
        let n = tree.node_count();
        if edge_down.len() != n {
            return Err(HalinError::OrientationSizeMismatch { expected: n, got: edge_down.len() });
        }
        let leaf_order = tree.leaves();
        let m = leaf_order.len();
        if m < 3 {
            return Err(HalinError::TooFewLeaves { leaves: m });
        }
        if tree.children_of(tree.root()).len() < 2 {
            return Err(HalinError::RootNotInterior {
                children: tree.children_of(tree.root()).len(),
            });
        }
        if cycle_forward.len() != m {
            return Err(HalinError::OrientationSizeMismatch { expected: m, got: cycle_forward.len() });
        }
        let mut leaf_pos = vec![None; n];
        for (i, &leaf) in leaf_order.iter().enumerate() {
            leaf_pos[leaf] = Some(i);
        }
        Ok(Self { tree, edge_down, cycle_forward, leaf_order, leaf_pos })
    }

    /// Re-checks the construction invariants.
    pub fn validate(&self) -> Result<(), HalinError> {
        Self::new(
            self.tree.clone(),
            self.edge_down.clone(),
            self.cycle_forward.clone(),
        )
        .map(|_| ())
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.node_count()
    }

    /// Exterior vertices in planar cycle order.
    pub fn leaf_order(&self) -> &[usize] {
        &self.leaf_order
    }

    pub fn exterior_count(&self) -> usize {
        self.leaf_order.len()
    }

    pub fn is_exterior(&self, v: usize) -> bool {
        self.leaf_pos[v].is_some()
    }

    pub fn leaf_position(&self, v: usize) -> Option<usize> {
        self.leaf_pos[v]
    }

    /// Direction flag of the tree edge above `v`: true means parent-to-child.
    pub fn edge_down(&self, v: usize) -> bool {
        debug_assert!(self.tree.parent_of(v).is_some());
        self.edge_down[v]
    }

    pub fn cycle_directions(&self) -> &[bool] {
        &self.cycle_forward
    }

    /// The `i`-th exterior arc as an ordered pair.
    pub fn cycle_arc(&self, i: usize) -> (usize, usize) {
        let m = self.exterior_count();
        let a = self.leaf_order[i % m];
        let b = self.leaf_order[(i + 1) % m];
        if self.cycle_forward[i % m] {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The tree arc above `v` as an ordered pair.
    pub fn tree_arc(&self, v: usize) -> (usize, usize) {
        let p = self.tree.parent_of(v).expect("root has no tree arc");
        if self.edge_down[v] {
            (p, v)
        } else {
            (v, p)
        }
    }

    /// The combined digraph: all tree arcs plus all cycle arcs.
    pub fn to_graph(&self) -> OrientedGraph {
        let mut arcs = Vec::with_capacity(self.vertex_count() - 1 + self.exterior_count());
        for v in 0..self.vertex_count() {
            if self.tree.parent_of(v).is_some() {
                arcs.push(self.tree_arc(v));
            }
        }
        for i in 0..self.exterior_count() {
            arcs.push(self.cycle_arc(i));
        }
        OrientedGraph::new(self.vertex_count(), arcs)
            .expect("a validated instance yields an oriented graph")
    }

    /// The same digraph under the reflected embedding: every child list is
    /// reversed, so the planar leaf order reverses while all arcs stay put.
    pub fn mirrored(&self) -> OrientedHalin {
        let mut children = self.tree.children.clone();
        for kids in &mut children {
            kids.reverse();
        }
        let tree = PlaneTree::new(self.tree.root, children).expect("mirror preserves the tree");
        let m = self.exterior_count();
        let cycle_forward: Vec<bool> = (0..m)
            .map(|i| !self.cycle_forward[(2 * m - 2 - i) % m])
            .collect();
        OrientedHalin::new(tree, self.edge_down.clone(), cycle_forward)
            .expect("mirror preserves the invariants")
    }

    /// Position arithmetic along the exterior cycle.
    pub fn cycle_next(&self, pos: usize) -> usize {
        (pos + 1) % self.exterior_count()
    }

    pub fn cycle_prev(&self, pos: usize) -> usize {
        (pos + self.exterior_count() - 1) % self.exterior_count()
    }

    /// The deepest interior vertex, ties broken by preorder. `None` when the
    /// tree root is the only interior vertex. With two or more interior
    /// vertices the deepest one has positive depth, so it is never the root.
    pub fn lowest_interior(&self) -> Option<usize> {
        let depths = self.tree.depths();
        let mut best: Option<usize> = None;
        for v in self.tree.interior_preorder() {
            if best.is_none_or(|b| depths[v] > depths[b]) {
                best = Some(v);
            }
        }
        best.filter(|&v| v != self.tree.root())
    }

    /// Number of interior vertices.
    pub fn interior_count(&self) -> usize {
        self.vertex_count() - self.exterior_count()
    }
}

/// Convenience constructor: a star tree with `m` leaves, all arcs downward
/// and the cycle uniformly forward. Mostly for tests and docs.
pub fn star_halin(m: usize) -> OrientedHalin {
    let mut children = vec![(1..=m).collect::<Vec<_>>()];
    children.extend(std::iter::repeat_with(Vec::new).take(m));
    let tree = PlaneTree::new(0, children).unwrap();
    OrientedHalin::new(tree, vec![true; m + 1], vec![true; m]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_oriented_coloring, Coloring};

    pub(crate) fn k4() -> OrientedHalin {
        star_halin(3)
    }

    #[test]
    fn k4_shape_is_valid() {
        let h = k4();
        assert_eq!(h.exterior_count(), 3);
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.leaf_order(), &[1, 2, 3]);
        let g = h.to_graph();
        assert_eq!(g.arc_count(), 6);
        h.validate().unwrap();
    }

    #[test]
    fn two_leaf_tree_is_rejected() {
        let tree = PlaneTree::new(0, vec![vec![1, 2], vec![], vec![]]).unwrap();
        // Pretend one of the children is an interior chain: root(leaf, chain(leaf)).
        let tree2 = PlaneTree::new(0, vec![vec![1, 2], vec![], vec![3], vec![]]).unwrap();
        assert_eq!(
            OrientedHalin::new(tree2, vec![true; 4], vec![true; 2]).unwrap_err(),
            HalinError::TooFewLeaves { leaves: 2 }
        );
        let _ = tree;
    }

    #[test]
    fn root_with_one_child_is_rejected() {
        let tree = PlaneTree::new(0, vec![vec![1], vec![2, 3, 4], vec![], vec![], vec![]]).unwrap();
        assert_eq!(
            OrientedHalin::new(tree, vec![true; 5], vec![true; 3]).unwrap_err(),
            HalinError::RootNotInterior { children: 1 }
        );
    }

    #[test]
    fn combined_graph_rejects_opposite_arcs_upstream() {
        // The representation cannot even express both (u,v) and (v,u); the
        // OrientedGraph constructor is the backstop for documents.
        let g = crate::graph::OrientedGraph::new(2, [(0, 1), (1, 0)]);
        assert!(g.is_err());
    }

    #[test]
    fn tree_edge_plus_cycle_count_matches_total() {
        let h = k4();
        let g = h.to_graph();
        assert_eq!(
            g.arc_count(),
            (h.vertex_count() - 1) + h.exterior_count()
        );
    }

    #[test]
    fn mirror_reverses_leaf_order_and_keeps_arcs() {
        let mut children = vec![vec![1, 2], vec![3, 4], vec![5, 6, 7]];
        children.extend(std::iter::repeat_with(Vec::new).take(5));
        let tree = PlaneTree::new(0, children).unwrap();
        let h = OrientedHalin::new(
            tree,
            vec![true, false, true, true, false, true, true, false],
            vec![true, false, true, true, false],
        )
        .unwrap();
        let m = h.mirrored();
        let mut rev = h.leaf_order().to_vec();
        rev.reverse();
        assert_eq!(m.leaf_order(), &rev[..]);
        assert_eq!(m.to_graph(), h.to_graph());
        assert_eq!(m.mirrored(), h);
    }

    #[test]
    fn small_cycle_coloring_by_hand_verifies() {
        // Sanity for the verifier over an actual Halin digraph.
        let h = k4();
        let g = h.to_graph();
        let c = Coloring::new(vec![0, 3, 4, 5]).unwrap();
        assert!(verify_oriented_coloring(&g, &c).unwrap().is_valid());
    }

    #[test]
    fn lowest_interior_prefers_depth_then_preorder() {
        // root(0) -> [1, 2]; 1 -> leaves 3,4 ; 2 -> leaves 5,6
        let mut children = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
        children.extend(std::iter::repeat_with(Vec::new).take(4));
        let tree = PlaneTree::new(0, children).unwrap();
        let h = OrientedHalin::new(tree, vec![true; 7], vec![true; 4]).unwrap();
        assert_eq!(h.lowest_interior(), Some(1));
        assert_eq!(h.interior_count(), 3);
    }
}
