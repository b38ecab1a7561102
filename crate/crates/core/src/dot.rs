use std::fmt::Write;

use crate::tree::IncreasingTree;
use crate::Label;

/// Graphviz source for a tree, edges pointing from parent to child. Vertices
/// and edges are listed by ascending label; the marked vertex, if any, is
/// drawn as a filled red box.
pub fn render_dot(tree: &IncreasingTree, mark: Option<Label>) -> String {
    let mut out = String::from("digraph tree {\n    node [shape=circle];\n");
    for &v in tree.labels() {
        if Some(v) == mark {
            writeln!(
                out,
                "    {v} [label=\"{v}\", shape=box, style=filled, color=red, fillcolor=red];"
            )
            .unwrap();
        } else {
            writeln!(out, "    {v} [label=\"{v}\"];").unwrap();
        }
    }
    for &v in tree.labels() {
        for c in tree.children(v) {
            writeln!(out, "    {v} -> {c};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
