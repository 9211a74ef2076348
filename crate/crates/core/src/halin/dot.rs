//! Graphviz export. Tree arcs are plain, exterior-cycle arcs bold.

use crate::graph::Coloring;

use super::OrientedHalin;

pub fn to_dot(h: &OrientedHalin, coloring: Option<&Coloring>) -> String {
    if let Some(c) = coloring {
        assert_eq!(c.len(), h.vertex_count(), "coloring must cover every vertex");
    }
    let mut out = String::from("digraph halin {\n  node [shape=circle];\n");
    for v in 0..h.vertex_count() {
        match coloring {
            Some(c) => out.push_str(&format!("  v{v} [label=\"{v}\\nc{}\"];\n", c.get(v))),
            None => out.push_str(&format!("  v{v} [label=\"{v}\"];\n")),
        }
    }
    let tree = h.tree();
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        for &k in tree.children_of(v).iter().rev() {
            stack.push(k);
        }
        if tree.parent_of(v).is_some() {
            let (a, b) = h.tree_arc(v);
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
    }
    for i in 0..h.exterior_count() {
        let (a, b) = h.cycle_arc(i);
        out.push_str(&format!("  v{a} -> v{b} [style=bold];\n"));
    }
    out.push_str("}\n");
    out
}
