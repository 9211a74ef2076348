//! Strict JSON serialization of oriented Halin instances.
//!
//! Schema: `{"tree": <nested nodes>, "root": id, "tree_arcs": [[from, to]...],
//! "cycle_arcs": [[from, to]...]}`. Tree arcs list every tree edge once, in
//! its arc direction; cycle arcs are listed in cyclic leaf order starting at
//! the first planar leaf. Unknown fields, non-dense ids, missing or repeated
//! edges all reject the document.

use serde::{Deserialize, Serialize};

use super::{HalinError, OrientedHalin, PlaneTree};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeNodeDoc {
    id: usize,
    children: Vec<TreeNodeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HalinDoc {
    tree: TreeNodeDoc,
    root: usize,
    tree_arcs: Vec<[usize; 2]>,
    cycle_arcs: Vec<[usize; 2]>,
}

fn tree_doc(tree: &PlaneTree, v: usize) -> TreeNodeDoc {
    TreeNodeDoc {
        id: v,
        children: tree
            .children_of(v)
            .iter()
            .map(|&k| tree_doc(tree, k))
            .collect(),
    }
}

pub fn to_json(h: &OrientedHalin) -> String {
    let tree = h.tree();
    let mut tree_arcs = Vec::with_capacity(h.vertex_count() - 1);
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        for &k in tree.children_of(v).iter().rev() {
            stack.push(k);
        }
        if tree.parent_of(v).is_some() {
            let (a, b) = h.tree_arc(v);
            tree_arcs.push([a, b]);
        }
    }
    let cycle_arcs = (0..h.exterior_count())
        .map(|i| {
            let (a, b) = h.cycle_arc(i);
            [a, b]
        })
        .collect();
    let doc = HalinDoc {
        tree: tree_doc(tree, tree.root()),
        root: tree.root(),
        tree_arcs,
        cycle_arcs,
    };
    serde_json::to_string(&doc).expect("instances serialize")
}

pub fn from_json(text: &str) -> Result<OrientedHalin, HalinError> {
    let doc: HalinDoc =
        serde_json::from_str(text).map_err(|e| HalinError::Document(e.to_string()))?;

    // Collect the nested nodes; ids must be exactly 0..n.
    let mut flat: Vec<(usize, Vec<usize>)> = Vec::new();
    fn walk(node: &TreeNodeDoc, flat: &mut Vec<(usize, Vec<usize>)>) {
        flat.push((node.id, node.children.iter().map(|c| c.id).collect()));
        for child in &node.children {
            walk(child, flat);
        }
    }
    walk(&doc.tree, &mut flat);
    let n = flat.len();
    let mut children: Vec<Option<Vec<usize>>> = vec![None; n];
    for (id, kids) in flat {
        if id >= n {
            return Err(HalinError::Document(format!(
                "node id {id} is not dense in 0..{n}"
            )));
        }
        if children[id].is_some() {
            return Err(HalinError::Document(format!("node id {id} repeats")));
        }
        if kids.iter().any(|&k| k >= n) {
            return Err(HalinError::Document(format!(
                "child id out of range under node {id}"
            )));
        }
        children[id] = Some(kids);
    }
    let children: Vec<Vec<usize>> = children.into_iter().map(Option::unwrap).collect();
    if doc.root != doc.tree.id {
        return Err(HalinError::Document(format!(
            "root field {} disagrees with the tree root {}",
            doc.root, doc.tree.id
        )));
    }
    let tree = PlaneTree::new(doc.root, children)?;

    // Tree-arc directions.
    let mut edge_down: Vec<Option<bool>> = vec![None; n];
    for [a, b] in &doc.tree_arcs {
        let (&a, &b) = (a, b);
        if a >= n || b >= n {
            return Err(HalinError::Document(format!(
                "tree arc ({a}, {b}) out of range"
            )));
        }
        let (child, down) = if tree.parent_of(b) == Some(a) {
            (b, true)
        } else if tree.parent_of(a) == Some(b) {
            (a, false)
        } else {
            return Err(HalinError::Document(format!(
                "({a}, {b}) is not a tree edge"
            )));
        };
        if edge_down[child].is_some() {
            return Err(HalinError::Document(format!(
                "tree edge at node {child} listed twice (duplicate or opposite arcs)"
            )));
        }
        edge_down[child] = Some(down);
    }
    let mut down_flags = vec![true; n];
    for v in 0..n {
        if v == doc.root {
            continue;
        }
        match edge_down[v] {
            Some(d) => down_flags[v] = d,
            None => {
                return Err(HalinError::Document(format!(
                    "missing tree arc for node {v}"
                )))
            }
        }
    }

    // Cycle arcs, positionally strict against the planar leaf order.
    let leaves = tree.leaves();
    let m = leaves.len();
    if doc.cycle_arcs.len() != m {
        return Err(HalinError::Document(format!(
            "expected {m} cycle arcs, got {}",
            doc.cycle_arcs.len()
        )));
    }
    let mut cycle_forward = vec![true; m];
    for (i, [a, b]) in doc.cycle_arcs.iter().enumerate() {
        let (u, v) = (leaves[i], leaves[(i + 1) % m]);
        cycle_forward[i] = if (*a, *b) == (u, v) {
            true
        } else if (*a, *b) == (v, u) {
            false
        } else {
            return Err(HalinError::Document(format!(
                "cycle arc {i} should join leaves {u} and {v}, got ({a}, {b})"
            )));
        };
    }
    OrientedHalin::new(tree, down_flags, cycle_forward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halin::{enumerate_halin, star_halin};

    #[test]
    fn k4_round_trips() {
        let h = star_halin(3);
        let text = to_json(&h);
        let back = from_json(&text).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn round_trip_over_all_small_instances() {
        for h in enumerate_halin(4) {
            let text = to_json(&h);
            assert_eq!(from_json(&text).unwrap(), h, "round trip failed for {text}");
        }
    }

    #[test]
    fn round_trip_over_generated_instances() {
        use crate::halin::{generate_random_halin, GenProfile};
        for seed in 0..40u64 {
            let leaves = 3 + (seed as usize % 25);
            let h = generate_random_halin(leaves, &GenProfile::default(), seed).unwrap();
            assert_eq!(from_json(&to_json(&h)).unwrap(), h);
        }
    }

    #[test]
    fn two_leaf_document_is_rejected() {
        let text = r#"{"tree":{"id":0,"children":[{"id":1,"children":[]},{"id":2,"children":[]}]},"root":0,"tree_arcs":[[0,1],[0,2]],"cycle_arcs":[[1,2],[2,1]]}"#;
        assert_eq!(
            from_json(text).unwrap_err(),
            HalinError::TooFewLeaves { leaves: 2 }
        );
    }

    #[test]
    fn unknown_field_is_rejected() {
        let h = star_halin(3);
        let text = to_json(&h).replace("\"root\":0", "\"root\":0,\"extra\":1");
        assert!(matches!(from_json(&text), Err(HalinError::Document(_))));
    }

    #[test]
    fn opposite_tree_arc_listing_is_rejected() {
        // K4 with the edge 0-1 listed in both directions and edge 0-3 absent.
        let text = r#"{"tree":{"id":0,"children":[{"id":1,"children":[]},{"id":2,"children":[]},{"id":3,"children":[]}]},"root":0,"tree_arcs":[[0,1],[1,0],[0,2]],"cycle_arcs":[[1,2],[2,3],[3,1]]}"#;
        let err = from_json(text).unwrap_err();
        assert!(matches!(err, HalinError::Document(msg) if msg.contains("listed twice")));
    }

    #[test]
    fn misplaced_cycle_arc_is_rejected() {
        let text = r#"{"tree":{"id":0,"children":[{"id":1,"children":[]},{"id":2,"children":[]},{"id":3,"children":[]}]},"root":0,"tree_arcs":[[0,1],[0,2],[0,3]],"cycle_arcs":[[1,2],[3,1],[2,3]]}"#;
        assert!(matches!(from_json(text), Err(HalinError::Document(_))));
    }
}
