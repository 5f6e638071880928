//! Graphviz DOT rendering of nets. Output is fully sorted so identical
//! inputs always produce identical bytes.

use crate::ocn::Ocn;

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state (accepting states doubled), one edge per transition
/// labelled `symbol, effect`, and an arrow from an invisible marker into
/// each initial state.
pub fn export_dot(ocn: &Ocn) -> String {
    let mut out = String::new();
    out.push_str("digraph ocn {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");

    let mut states: Vec<&str> = ocn.states().iter().map(String::as_str).collect();
    states.sort_unstable();
    for state in &states {
        let shape = if ocn.is_accepting(state) {
            " [shape=doublecircle]"
        } else {
            ""
        };
        out.push_str(&format!("  {}{};\n", quote(state), shape));
    }

    let mut initials: Vec<&str> = ocn.initials().collect();
    initials.sort_unstable();
    for (i, state) in initials.iter().enumerate() {
        out.push_str(&format!(
            "  \"__start{i}\" [shape=none, label=\"\", width=0, height=0];\n"
        ));
        out.push_str(&format!("  \"__start{i}\" -> {};\n", quote(state)));
    }

    let mut edges: Vec<(&str, &str, i64, &str)> = ocn
        .transitions()
        .iter()
        .map(|t| {
            (
                t.source.as_str(),
                t.symbol.as_str(),
                t.effect,
                t.target.as_str(),
            )
        })
        .collect();
    edges.sort_unstable();
    for (src, sym, effect, dst) in edges {
        out.push_str(&format!(
            "  {} -> {} [label=\"{}, {}\"];\n",
            quote(src),
            quote(dst),
            sym.replace('\\', "\\\\").replace('"', "\\\""),
            effect
        ));
    }
    out.push_str("}\n");
    out
}
