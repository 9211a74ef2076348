//! Fans: rooted oriented plane trees whose leaves form an oriented path.
//!
//! Deleting one exterior arc (or one exterior vertex) from a Halin graph and
//! re-rooting the interior tree at a suitable interior vertex yields a fan.
//! The recursive colorer peels fans at the root's last son, so the
//! type keeps the ordered child lists, the per-edge arc directions, and the
//! leaf path explicitly. Vertex ids inside a fan are the ids of the
//! originating Halin graph.
//!
//! Re-rooting preserves the embedding: the child order of a node reached
//! from neighbor `u` is its cyclic neighbor order started just after `u`.
//! A fan read against the cycle direction is built as the mirror image
//! (every child list reversed), which reverses the planar leaf order.

use std::collections::BTreeMap;
use std::collections::HashSet;

use super::{HalinError, OrientedHalin};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    root: usize,
    children: BTreeMap<usize, Vec<usize>>,
    parent: BTreeMap<usize, usize>,
    edge_down: BTreeMap<usize, bool>,
    leaves: Vec<usize>,
    path_forward: Vec<bool>,
}

impl Fan {
    /// Builds and validates a fan.
    ///
    /// `children` maps each node to its ordered child list (leaf entries may
    /// be omitted); `edge_down[v]` is true when the tree arc runs from the
    /// fan parent of `v` to `v`; `path_forward[j]` is true when the arc
    /// between the `j`-th and `j+1`-st leaf runs forward along the path.
    pub fn new(
        root: usize,
        children: BTreeMap<usize, Vec<usize>>,
        edge_down: BTreeMap<usize, bool>,
        path_forward: Vec<bool>,
    ) -> Result<Self, HalinError> {
        let mut parent = BTreeMap::new();
        let mut members = HashSet::new();
        let mut leaves = Vec::new();
        let mut stack = vec![root];
        members.insert(root);
        while let Some(v) = stack.pop() {
            for &k in children.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if !members.insert(k) {
                    return Err(HalinError::MalformedFan(format!(
                        "node {k} reached twice"
                    )));
                }
                parent.insert(k, v);
                stack.push(k);
            }
        }
        // DFS above is preorder but pops reorder leaf discovery; recompute
        // leaves recursively in child order for the planar sequence.
        fn collect(
            v: usize,
            children: &BTreeMap<usize, Vec<usize>>,
            leaves: &mut Vec<usize>,
        ) {
            let kids = children.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            if kids.is_empty() {
                leaves.push(v);
                return;
            }
            for &k in kids {
                collect(k, children, leaves);
            }
        }
        collect(root, &children, &mut leaves);

        for (&k, kids) in &children {
            if !members.contains(&k) && !kids.is_empty() {
                return Err(HalinError::MalformedFan(format!(
                    "child list for unreachable node {k}"
                )));
            }
        }
        if children.get(&root).is_none_or(Vec::is_empty) {
            return Err(HalinError::MalformedFan(
                "fan root has no children".to_string(),
            ));
        }
        for &v in &members {
            if v != root && !edge_down.contains_key(&v) {
                return Err(HalinError::MalformedFan(format!(
                    "missing arc direction for node {v}"
                )));
            }
        }
        if edge_down.keys().any(|v| !members.contains(v) || *v == root) {
            return Err(HalinError::MalformedFan(
                "arc direction for a non-member or the root".to_string(),
            ));
        }
        if path_forward.len() + 1 != leaves.len() {
            return Err(HalinError::MalformedFan(format!(
                "{} leaves need {} path arcs, got {}",
                leaves.len(),
                leaves.len() - 1,
                path_forward.len()
            )));
        }
        let mut normalized = children;
        for &leaf in &leaves {
            normalized.entry(leaf).or_default();
        }
        Ok(Self {
            root,
            children: normalized,
            parent,
            edge_down,
            leaves,
            path_forward,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn first_leaf(&self) -> usize {
        self.leaves[0]
    }

    pub fn last_leaf(&self) -> usize {
        *self.leaves.last().unwrap()
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn path_directions(&self) -> &[bool] {
        &self.path_forward
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.children.contains_key(&v)
    }

    /// All member vertices in increasing id order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.children.keys().copied()
    }

    pub fn children_of(&self, v: usize) -> &[usize] {
        self.children.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// Direction of the tree arc above `v`: true means fan-parent to `v`.
    pub fn edge_down_of(&self, v: usize) -> bool {
        self.edge_down[&v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children_of(v).is_empty()
    }

    /// Every arc of the fan: tree arcs in preorder, then path arcs in order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.node_count() - 1 + self.path_forward.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for &k in self.children_of(v).iter().rev() {
                stack.push(k);
            }
            if let Some(&p) = self.parent.get(&v) {
                out.push(if self.edge_down[&v] { (p, v) } else { (v, p) });
            }
        }
        for (j, &fwd) in self.path_forward.iter().enumerate() {
            let (a, b) = (self.leaves[j], self.leaves[j + 1]);
            out.push(if fwd { (a, b) } else { (b, a) });
        }
        out
    }

    /// The mirror image: reversed child lists, reversed leaf path.
    pub fn mirrored(&self) -> Fan {
        let children = self
            .children
            .iter()
            .map(|(&v, kids)| {
                let mut rev = kids.clone();
                rev.reverse();
                (v, rev)
            })
            .collect();
        let path_forward = self.path_forward.iter().rev().map(|&f| !f).collect();
        Fan::new(self.root, children, self.edge_down.clone(), path_forward)
            .expect("mirror preserves fan structure")
    }

    // ------------------------------------------------------------------
    // Peel operations used by the recursive colorer
    // ------------------------------------------------------------------

    pub(crate) fn root_sons(&self) -> &[usize] {
        self.children_of(self.root)
    }

    /// Removes the last son of the root, which must be a leaf (and therefore
    /// the last leaf of the path).
    pub(crate) fn without_last_leaf_son(&self) -> Fan {
        let &z = self.root_sons().last().expect("root has sons");
        debug_assert!(self.is_leaf(z));
        debug_assert_eq!(self.last_leaf(), z);
        let mut children = self.children.clone();
        children.get_mut(&self.root).unwrap().pop();
        children.remove(&z);
        let mut edge_down = self.edge_down.clone();
        edge_down.remove(&z);
        let mut leaves_path = self.path_forward.clone();
        leaves_path.pop();
        Fan::new(self.root, children, edge_down, leaves_path)
            .expect("peeling the last leaf son preserves fan structure")
    }

    /// Splits off the subtree of the last son, which must be interior.
    ///
    /// Returns the remainder, the subtree fan, whether the arc between the
    /// two roots runs remainder-root to subtree-root, and whether the arc
    /// between the remainder's last leaf and the subtree's first leaf runs
    /// in that direction.
    pub(crate) fn split_last_son(&self) -> (Fan, Fan, bool, bool) {
        let &z = self.root_sons().last().expect("root has sons");
        debug_assert!(!self.is_leaf(z));
        // Subtree membership.
        let mut sub = HashSet::new();
        let mut stack = vec![z];
        while let Some(v) = stack.pop() {
            sub.insert(v);
            stack.extend(self.children_of(v));
        }
        let t = self.leaves.iter().filter(|l| sub.contains(l)).count();
        let m = self.leaves.len();
        debug_assert!(t >= 1 && t < m);
        debug_assert!(self.leaves[m - t..].iter().all(|l| sub.contains(l)));

        let sub_children: BTreeMap<usize, Vec<usize>> = self
            .children
            .iter()
            .filter(|(v, _)| sub.contains(v))
            .map(|(&v, kids)| (v, kids.clone()))
            .collect();
        let sub_down: BTreeMap<usize, bool> = self
            .edge_down
            .iter()
            .filter(|(v, _)| sub.contains(v) && **v != z)
            .map(|(&v, &d)| (v, d))
            .collect();
        let f2 = Fan::new(z, sub_children, sub_down, self.path_forward[m - t..].to_vec())
            .expect("subtree of an interior son is a fan");

        let mut rest_children: BTreeMap<usize, Vec<usize>> = self
            .children
            .iter()
            .filter(|(v, _)| !sub.contains(v))
            .map(|(&v, kids)| (v, kids.clone()))
            .collect();
        rest_children.get_mut(&self.root).unwrap().pop();
        let rest_down: BTreeMap<usize, bool> = self
            .edge_down
            .iter()
            .filter(|(v, _)| !sub.contains(v))
            .map(|(&v, &d)| (v, d))
            .collect();
        let f1 = Fan::new(
            self.root,
            rest_children,
            rest_down,
            self.path_forward[..m - t - 1].to_vec(),
        )
        .expect("remainder after splitting the last son is a fan");

        let s1_forward = self.edge_down[&z];
        let s2_forward = self.path_forward[m - t - 1];
        (f1, f2, s1_forward, s2_forward)
    }

    /// Drops the root, which must have exactly one (interior) son. Returns
    /// the new fan and whether the dropped arc pointed root-to-son.
    pub(crate) fn descend_to_single_child(&self) -> (Fan, bool) {
        let sons = self.root_sons();
        debug_assert_eq!(sons.len(), 1);
        let s = sons[0];
        debug_assert!(!self.is_leaf(s));
        let arc_down = self.edge_down[&s];
        let mut children = self.children.clone();
        children.remove(&self.root);
        let mut edge_down = self.edge_down.clone();
        edge_down.remove(&s);
        let fan = Fan::new(s, children, edge_down, self.path_forward.clone())
            .expect("descending past a single-son root preserves fan structure");
        (fan, arc_down)
    }
}

// ============================================================================
// Extraction from a Halin graph
// ============================================================================

/// Cyclic neighbor order of `v` in the embedding: the parent edge precedes
/// the first child.
fn rotation(h: &OrientedHalin, v: usize) -> Vec<usize> {
    let tree = h.tree();
    let mut rot = Vec::with_capacity(tree.children_of(v).len() + 1);
    if let Some(p) = tree.parent_of(v) {
        rot.push(p);
    }
    rot.extend_from_slice(tree.children_of(v));
    rot
}

/// Direction of the tree edge `{u, w}` read as "u to w", where `u` is the
/// fan parent of `w`.
fn down_between(h: &OrientedHalin, u: usize, w: usize) -> bool {
    if h.tree().parent_of(w) == Some(u) {
        h.edge_down(w)
    } else {
        debug_assert_eq!(h.tree().parent_of(u), Some(w));
        !h.edge_down(u)
    }
}

/// Core builder: re-roots the tree at `fan_root`, drops `removed` vertices,
/// and reads the leaf path forward along the cycle starting at `first_leaf`.
pub(crate) fn fan_after_removals(
    h: &OrientedHalin,
    fan_root: usize,
    removed: &[usize],
    first_leaf: usize,
) -> Result<Fan, HalinError> {
    if h.is_exterior(fan_root) {
        return Err(HalinError::NotInterior { vertex: fan_root });
    }
    let removed_set: HashSet<usize> = removed.iter().copied().collect();
    if removed_set.contains(&fan_root) {
        return Err(HalinError::NotInterior { vertex: fan_root });
    }
    if !h.is_exterior(first_leaf) || removed_set.contains(&first_leaf) {
        return Err(HalinError::NotExterior { vertex: first_leaf });
    }

    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut edge_down: BTreeMap<usize, bool> = BTreeMap::new();
    let mut stack: Vec<(usize, Option<usize>)> = vec![(fan_root, None)];
    while let Some((v, from)) = stack.pop() {
        let rot = rotation(h, v);
        let order: Vec<usize> = match from {
            None => rot.into_iter().filter(|w| !removed_set.contains(w)).collect(),
            Some(u) => {
                let i = rot
                    .iter()
                    .position(|&w| w == u)
                    .expect("fan parent is a tree neighbor");
                rot[i + 1..]
                    .iter()
                    .chain(rot[..i].iter())
                    .copied()
                    .filter(|w| !removed_set.contains(w))
                    .collect()
            }
        };
        for &w in &order {
            edge_down.insert(w, down_between(h, v, w));
            stack.push((w, Some(v)));
        }
        children.insert(v, order);
    }
    if children.len() != h.vertex_count() - removed_set.len() {
        return Err(HalinError::DisconnectedRemoval);
    }

    // Rotate the root's children so the leaf sequence starts at first_leaf.
    let root_kids = children[&fan_root].clone();
    let mut block_first = Vec::with_capacity(root_kids.len());
    for &kid in &root_kids {
        block_first.push(first_leaf_under(kid, &children));
    }
    let mut leaf_block = None;
    for (i, &kid) in root_kids.iter().enumerate() {
        if subtree_contains(kid, first_leaf, &children) {
            leaf_block = Some(i);
            break;
        }
    }
    let block = leaf_block.ok_or(HalinError::CutNotRealizable { leaf: first_leaf })?;
    if block_first[block] != first_leaf {
        return Err(HalinError::CutNotRealizable { leaf: first_leaf });
    }
    let rotated: Vec<usize> = root_kids[block..]
        .iter()
        .chain(root_kids[..block].iter())
        .copied()
        .collect();
    children.insert(fan_root, rotated);

    // Leaf path flags: consecutive fan leaves must be consecutive on the
    // cycle (removed leaves only ever flank the two ends of the path).
    let mut leaves = Vec::new();
    collect_leaves(fan_root, &children, &mut leaves);
    let m = h.exterior_count();
    let mut path_forward = Vec::with_capacity(leaves.len().saturating_sub(1));
    for j in 0..leaves.len().saturating_sub(1) {
        let pa = h.leaf_position(leaves[j]).expect("fan leaves are exterior");
        let pb = h.leaf_position(leaves[j + 1]).expect("fan leaves are exterior");
        if (pa + 1) % m != pb {
            return Err(HalinError::LeafPathBroken { leaf: leaves[j + 1] });
        }
        path_forward.push(h.cycle_directions()[pa]);
    }
    Fan::new(fan_root, children, edge_down, path_forward)
}

fn collect_leaves(v: usize, children: &BTreeMap<usize, Vec<usize>>, out: &mut Vec<usize>) {
    let kids = children.get(&v).map(Vec::as_slice).unwrap_or(&[]);
    if kids.is_empty() {
        out.push(v);
        return;
    }
    for &k in kids {
        collect_leaves(k, children, out);
    }
}

fn first_leaf_under(v: usize, children: &BTreeMap<usize, Vec<usize>>) -> usize {
    let mut cur = v;
    loop {
        match children.get(&cur).and_then(|kids| kids.first()) {
            Some(&k) => cur = k,
            None => return cur,
        }
    }
}

fn subtree_contains(v: usize, target: usize, children: &BTreeMap<usize, Vec<usize>>) -> bool {
    if v == target {
        return true;
    }
    children
        .get(&v)
        .map(Vec::as_slice)
        .unwrap_or(&[])
        .iter()
        .any(|&k| subtree_contains(k, target, children))
}

/// The fan left by deleting the cycle arc at position `gap`, re-rooted at
/// the interior vertex `root`. The leaf path starts at the head of the
/// deleted arc and runs around the cycle to its tail.
pub fn fan_from_cycle_arc_removal(
    h: &OrientedHalin,
    root: usize,
    gap: usize,
) -> Result<Fan, HalinError> {
    let m = h.exterior_count();
    if gap >= m {
        return Err(HalinError::CycleIndexOutOfRange { index: gap, cycle_len: m });
    }
    let b = h.leaf_order()[(gap + 1) % m];
    let forward_fan = fan_after_removals(h, root, &[], b)?;
    if h.cycle_directions()[gap] {
        Ok(forward_fan)
    } else {
        Ok(forward_fan.mirrored())
    }
}

/// The fan left by deleting one exterior vertex together with its two cycle
/// arcs, re-rooted at `root`. The leaf path runs from the deleted vertex's
/// cycle successor around to its predecessor.
pub fn fan_from_cycle_vertex_removal(
    h: &OrientedHalin,
    root: usize,
    removed: usize,
) -> Result<Fan, HalinError> {
    let pos = h
        .leaf_position(removed)
        .ok_or(HalinError::NotExterior { vertex: removed })?;
    let first = h.leaf_order()[h.cycle_next(pos)];
    fan_after_removals(h, root, &[removed], first)
}

/// The two fans of the split at a lowest-level interior vertex.
#[derive(Debug, Clone)]
pub struct FanSplit {
    /// The star of `r` and its cycle sons.
    pub inner: Fan,
    /// Everything else, re-rooted at the father of `r`.
    pub outer: Fan,
    /// The tree arc between the two roots, in its original direction.
    pub root_arc: (usize, usize),
    /// True when `root_arc` runs from `inner`'s root to `outer`'s root.
    pub root_arc_forward: bool,
    /// The cycle arc joining `inner`'s last leaf to `outer`'s first leaf.
    pub link_arc: (usize, usize),
    /// True when `link_arc` runs from `inner`'s last leaf to `outer`'s
    /// first leaf.
    pub link_arc_forward: bool,
}

/// Splits a Halin graph at a lowest-level interior vertex `r` by removing
/// the cycle arc at `gap`, which must flank the run of `r`'s sons: the gap
/// just before the first son, or the gap just after the last son. In the
/// latter case both fans come back mirrored, so composition always joins
/// `inner`'s last leaf to `outer`'s first leaf.
pub fn fan_split(h: &OrientedHalin, r: usize, gap: usize) -> Result<FanSplit, HalinError> {
    let tree = h.tree();
    let sons = tree.children_of(r).to_vec();
    if sons.is_empty() || sons.iter().any(|&s| !h.is_exterior(s)) {
        return Err(HalinError::NotLowestInterior { vertex: r });
    }
    let Some(p) = tree.parent_of(r) else {
        return Err(HalinError::NotLowestInterior { vertex: r });
    };
    let m = h.exterior_count();
    if gap >= m {
        return Err(HalinError::CycleIndexOutOfRange { index: gap, cycle_len: m });
    }
    let k = sons.len();
    let p0 = h.leaf_position(sons[0]).expect("sons are exterior");
    debug_assert!((0..k).all(|j| h.leaf_position(sons[j]) == Some((p0 + j) % m)));
    let left_gap = (p0 + m - 1) % m;
    let right_gap = (p0 + k - 1) % m;
    if gap != left_gap && gap != right_gap {
        return Err(HalinError::GapDoesNotFlankSons { index: gap, vertex: r });
    }

    let inner_children: BTreeMap<usize, Vec<usize>> =
        std::iter::once((r, sons.clone())).collect();
    let inner_down: BTreeMap<usize, bool> =
        sons.iter().map(|&s| (s, h.edge_down(s))).collect();
    let inner_path: Vec<bool> = (0..k - 1)
        .map(|j| h.cycle_directions()[(p0 + j) % m])
        .collect();
    let inner = Fan::new(r, inner_children, inner_down, inner_path)?;

    let mut removed = vec![r];
    removed.extend_from_slice(&sons);
    let outer_first = h.leaf_order()[(p0 + k) % m];
    let outer = fan_after_removals(h, p, &removed, outer_first)?;
    debug_assert_eq!(outer.last_leaf(), h.leaf_order()[left_gap]);

    let root_arc = h.tree_arc(r);
    let root_arc_forward = !h.edge_down(r);
    if gap == left_gap {
        Ok(FanSplit {
            inner,
            outer,
            root_arc,
            root_arc_forward,
            link_arc: h.cycle_arc(right_gap),
            link_arc_forward: h.cycle_directions()[right_gap],
        })
    } else {
        Ok(FanSplit {
            inner: inner.mirrored(),
            outer: outer.mirrored(),
            root_arc,
            root_arc_forward,
            link_arc: h.cycle_arc(left_gap),
            link_arc_forward: !h.cycle_directions()[left_gap],
        })
    }
}
