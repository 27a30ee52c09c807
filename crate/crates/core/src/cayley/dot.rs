use std::fmt::Write as _;

use super::ball::CayleyBall;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering of a ball; the root is drawn as a double circle and
/// edges carry generator names.
pub fn export_dot(ball: &CayleyBall) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph ball {{");
    let _ = writeln!(out, "  // radius {}, {} vertices, {} edges", ball.radius, ball.len(), ball.edges.len());
    for (v, label) in ball.labels.iter().enumerate() {
        let shape = if v == 0 { ", shape=doublecircle" } else { "" };
        let _ = writeln!(
            out,
            "  n{v} [label=\"{}\", dist={}{shape}];",
            escape(label),
            ball.distances[v]
        );
    }
    for e in &ball.edges {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"];",
            e.source,
            e.target,
            escape(&ball.marking[e.label])
        );
    }
    out.push_str("}\n");
    out
}
