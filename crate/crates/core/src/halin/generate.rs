//! Instance supply: seeded random instances and exhaustive enumeration.
//!
//! Both exclude degree-2 interior vertices (root with at least three
//! children, every other interior node with at least two), the strict Halin
//! shape. The validator and the colorer accept the laxer form.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{HalinError, OrientedHalin, PlaneTree};

/// Shape parameters for the random generator.
#[derive(Debug, Clone)]
pub struct GenProfile {
    /// Upper bound on the number of children per interior node.
    pub max_children: usize,
}

impl Default for GenProfile {
    fn default() -> Self {
        Self { max_children: 5 }
    }
}

/// A random oriented Halin graph with exactly `leaf_count` exterior
/// vertices. Every edge direction is a fair coin flip; the same seed always
/// reproduces the same instance.
pub fn generate_random_halin(
    leaf_count: usize,
    profile: &GenProfile,
    seed: u64,
) -> Result<OrientedHalin, HalinError> {
    if leaf_count < 3 {
        return Err(HalinError::TooFewLeavesRequested(leaf_count));
    }
    if profile.max_children < 3 {
        return Err(HalinError::ProfileTooNarrow {
            max_children: profile.max_children,
            needed: 3,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    grow(&mut rng, profile, &mut children, 0, leaf_count, true);
    let tree = PlaneTree::new(0, children)?;
    let n = tree.node_count();
    let mut edge_down = vec![true; n];
    for flag in edge_down.iter_mut().take(n).skip(1) {
        *flag = rng.random_bool(0.5);
    }
    let cycle_forward = (0..leaf_count).map(|_| rng.random_bool(0.5)).collect();
    OrientedHalin::new(tree, edge_down, cycle_forward)
}

fn grow(
    rng: &mut ChaCha8Rng,
    profile: &GenProfile,
    children: &mut Vec<Vec<usize>>,
    node: usize,
    leaves_needed: usize,
    is_root: bool,
) {
    if leaves_needed == 1 && !is_root {
        return; // a leaf
    }
    let lo = if is_root { 3 } else { 2 };
    let hi = leaves_needed.min(profile.max_children).max(lo);
    debug_assert!(lo <= hi && hi <= leaves_needed);
    let k = rng.random_range(lo..=hi);
    let mut parts = vec![1usize; k];
    for _ in 0..(leaves_needed - k) {
        let i = rng.random_range(0..k);
        parts[i] += 1;
    }
    for part in parts {
        let id = children.len();
        children.push(Vec::new());
        children[node].push(id);
        grow(rng, profile, children, id, part, false);
    }
}

// ============================================================================
// Exhaustive enumeration
// ============================================================================

#[derive(Debug, Clone)]
enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=(total - parts + 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian(options: &[Vec<Shape>]) -> Vec<Vec<Shape>> {
    let mut out: Vec<Vec<Shape>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn subtree_shapes(leaves: usize) -> Vec<Shape> {
    if leaves == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for k in 2..=leaves {
        for comp in compositions(leaves, k) {
            let options: Vec<Vec<Shape>> = comp.iter().map(|&l| subtree_shapes(l)).collect();
            for combo in cartesian(&options) {
                out.push(Shape::Node(combo));
            }
        }
    }
    out
}

fn root_shapes(leaves: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for k in 3..=leaves {
        for comp in compositions(leaves, k) {
            let options: Vec<Vec<Shape>> = comp.iter().map(|&l| subtree_shapes(l)).collect();
            for combo in cartesian(&options) {
                out.push(Shape::Node(combo));
            }
        }
    }
    out
}

fn materialize(shape: &Shape) -> PlaneTree {
    fn place(shape: &Shape, children: &mut Vec<Vec<usize>>) -> usize {
        let id = children.len();
        children.push(Vec::new());
        if let Shape::Node(kids) = shape {
            for kid in kids {
                let cid = place(kid, children);
                children[id].push(cid);
            }
        }
        id
    }
    let mut children = Vec::new();
    place(shape, &mut children);
    PlaneTree::new(0, children).expect("materialized shapes are trees")
}

/// All strict plane-tree shapes with between 3 and `max_leaves` leaves, in a
/// fixed deterministic order. Rotations of the root's children are distinct
/// shapes and are deliberately kept: orientations break the symmetry anyway,
/// so the enumeration over-counts unlabeled shapes but never misses one.
pub fn enumerate_halin_trees(max_leaves: usize) -> Vec<PlaneTree> {
    (3..=max_leaves)
        .flat_map(root_shapes)
        .map(|shape| materialize(&shape))
        .collect()
}

/// Every oriented Halin instance over every enumerated tree shape with at
/// most `max_leaves` leaves: each tree edge and each cycle edge takes both
/// directions.
pub fn enumerate_halin(max_leaves: usize) -> impl Iterator<Item = OrientedHalin> {
    enumerate_halin_trees(max_leaves).into_iter().flat_map(|tree| {
        let n = tree.node_count();
        let m = tree.leaves().len();
        let bits = (n - 1 + m) as u32;
        (0u64..(1u64 << bits)).map(move |mask| {
            let mut edge_down = vec![true; n];
            for (v, flag) in edge_down.iter_mut().enumerate().skip(1) {
                *flag = (mask >> (v - 1)) & 1 == 1;
            }
            let cycle_forward = (0..m).map(|i| (mask >> (n - 1 + i)) & 1 == 1).collect();
            OrientedHalin::new(tree.clone(), edge_down, cycle_forward)
                .expect("enumerated instances satisfy the invariants")
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_leaves_is_always_the_star() {
        let h = generate_random_halin(3, &GenProfile::default(), 1).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.exterior_count(), 3);
        h.validate().unwrap();
    }

    #[test]
    fn generator_hits_the_requested_leaf_count() {
        for (leaves, seed) in [(10usize, 7u64), (17, 3), (30, 99)] {
            let h = generate_random_halin(leaves, &GenProfile::default(), seed).unwrap();
            assert_eq!(h.exterior_count(), leaves);
            h.validate().unwrap();
            // Strict shape: no degree-2 interior vertices.
            let tree = h.tree();
            for v in tree.interior_preorder() {
                let min = if v == tree.root() { 3 } else { 2 };
                assert!(tree.children_of(v).len() >= min);
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_random_halin(12, &GenProfile::default(), 42).unwrap();
        let b = generate_random_halin(12, &GenProfile::default(), 42).unwrap();
        assert_eq!(a, b);
        let c = generate_random_halin(12, &GenProfile::default(), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generator_rejects_bad_arguments() {
        assert!(generate_random_halin(2, &GenProfile::default(), 0).is_err());
        assert!(generate_random_halin(5, &GenProfile { max_children: 2 }, 0).is_err());
    }

    #[test]
    fn star3_yields_exactly_64_orientations() {
        let instances: Vec<_> = enumerate_halin(3).collect();
        assert_eq!(instances.len(), 64);
        for h in &instances {
            h.validate().unwrap();
        }
        // All orientation patterns are distinct.
        for i in 0..instances.len() {
            for j in (i + 1)..instances.len() {
                assert_ne!(instances[i], instances[j]);
            }
        }
    }

    /// Independent shape oracle: enumerate all balanced-parenthesis strings,
    /// parse them as plane trees, and filter by the strictness rules.
    fn brute_force_shapes(max_leaves: usize) -> Vec<String> {
        fn parse(s: &[u8]) -> Option<Vec<Vec<usize>>> {
            // "(...)" with one pair per node, children nested.
            let mut children: Vec<Vec<usize>> = Vec::new();
            let mut stack: Vec<usize> = Vec::new();
            for &b in s {
                match b {
                    b'(' => {
                        let id = children.len();
                        children.push(Vec::new());
                        if let Some(&p) = stack.last() {
                            children[p].push(id);
                        } else if id != 0 {
                            return None; // forest, not a tree
                        }
                        stack.push(id);
                    }
                    b')' => {
                        stack.pop()?;
                    }
                    _ => return None,
                }
            }
            if stack.is_empty() && !children.is_empty() {
                Some(children)
            } else {
                None
            }
        }
        fn canon(children: &[Vec<usize>], v: usize, out: &mut String) {
            out.push('(');
            for &k in &children[v] {
                canon(children, k, out);
            }
            out.push(')');
        }
        let max_nodes = 2 * max_leaves - 1;
        let mut found = Vec::new();
        for nodes in 1..=max_nodes {
            let len = 2 * nodes;
            // Enumerate all bit strings; keep balanced ones.
            for mask in 0..(1u64 << len) {
                let s: Vec<u8> = (0..len)
                    .map(|i| if (mask >> i) & 1 == 1 { b'(' } else { b')' })
                    .collect();
                let Some(children) = parse(&s) else { continue };
                if children.len() != nodes {
                    continue;
                }
                let leaves = children.iter().filter(|c| c.is_empty()).count();
                if leaves < 3 || leaves > max_leaves {
                    continue;
                }
                if children[0].len() < 3 {
                    continue;
                }
                if (1..children.len()).any(|v| children[v].len() == 1) {
                    continue;
                }
                let mut c = String::new();
                canon(&children, 0, &mut c);
                found.push(c);
            }
        }
        found.sort();
        found.dedup();
        found
    }

    #[test]
    fn shape_enumeration_matches_brute_force() {
        for max_leaves in 3..=5 {
            let mut mine: Vec<String> = enumerate_halin_trees(max_leaves)
                .iter()
                .map(|tree| {
                    fn canon(tree: &PlaneTree, v: usize, out: &mut String) {
                        out.push('(');
                        for &k in tree.children_of(v) {
                            canon(tree, k, out);
                        }
                        out.push(')');
                    }
                    let mut s = String::new();
                    canon(tree, tree.root(), &mut s);
                    s
                })
                .collect();
            mine.sort();
            mine.dedup();
            assert_eq!(mine, brute_force_shapes(max_leaves));
        }
    }

    #[test]
    fn enumerated_instances_decompose_into_tree_plus_cycle() {
        for h in enumerate_halin(4) {
            let g = h.to_graph();
            // Tree edges plus one cycle arc per exterior vertex.
            assert_eq!(
                g.arc_count(),
                (h.vertex_count() - 1) + h.exterior_count()
            );
            // Dropping the cycle arcs leaves the spanning interior tree:
            // connected and acyclic.
            let cycle_arcs: std::collections::HashSet<(usize, usize)> =
                (0..h.exterior_count()).map(|i| h.cycle_arc(i)).collect();
            let tree_arcs: Vec<(usize, usize)> = g
                .arcs()
                .iter()
                .copied()
                .filter(|arc| !cycle_arcs.contains(arc))
                .collect();
            assert_eq!(tree_arcs.len(), h.vertex_count() - 1);
            let mut adjacency = vec![Vec::new(); h.vertex_count()];
            for &(u, v) in &tree_arcs {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            let mut seen = vec![false; h.vertex_count()];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut reached = 0;
            while let Some(v) = stack.pop() {
                reached += 1;
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            assert_eq!(reached, h.vertex_count());
        }
    }

    #[test]
    fn four_leaf_shapes_are_the_star_and_the_cherry_rotations() {
        let shapes = enumerate_halin_trees(4);
        // star(3), then the 4-leaf shapes.
        let four: Vec<&PlaneTree> = shapes.iter().filter(|t| t.leaves().len() == 4).collect();
        assert_eq!(four.len(), 4);
        assert_eq!(four.iter().filter(|t| t.node_count() == 5).count(), 1); // star(4)
        assert_eq!(four.iter().filter(|t| t.node_count() == 6).count(), 3); // cherry in 3 rotations
    }
}
