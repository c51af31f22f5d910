//! Graphviz DOT output.

use std::fmt::Write;

use crate::bigraph::{BipartiteMultigraph, Part};
use crate::checker::{EdgeColoring, PathFactor};

/// Colors 1 to 6, in order.
pub const PALETTE: [&str; 6] = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628"];

/// X-vertices as circles in one rank, Y-vertices as squares in another.
/// Colored edges are labeled and drawn in the palette color; factor edges
/// are drawn thicker. Parallel edges stay separate.
pub fn to_dot(g: &BipartiteMultigraph, coloring: Option<&EdgeColoring>, factor: Option<&PathFactor>) -> String {
    let on_factor = factor.map(PathFactor::edge_set).unwrap_or_default();
    let mut out = String::from("graph G {\n  rankdir=TB;\n");
    for (part, shape) in [(Part::X, "circle"), (Part::Y, "square")] {
        out.push_str("  { rank=same;");
        for v in g.vertices().filter(|v| v.part == part) {
            write!(out, " {v} [shape={shape}];").unwrap();
        }
        out.push_str(" }\n");
    }
    for e in g.edge_ids() {
        let (x, y) = g.endpoints(e);
        let mut attrs = Vec::new();
        if let Some(c) = coloring.and_then(|c| c.color(e)).filter(|c| (1..=6).contains(c)) {
            attrs.push(format!("label=\"{c}\""));
            attrs.push(format!("color=\"{}\"", PALETTE[c as usize - 1]));
        }
        if on_factor.contains(&e) {
            attrs.push("penwidth=3".into());
        }
        if attrs.is_empty() {
            writeln!(out, "  {x} -- {y};").unwrap();
        } else {
            writeln!(out, "  {x} -- {y} [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
