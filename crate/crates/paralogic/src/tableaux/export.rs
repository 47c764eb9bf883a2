//! Tableau export: JSON for machine consumption, DOT for rendering.

use super::{BranchStatus, Tableau};
use serde_json::{json, Value};

/// JSON view of the tableau: node array plus summary data. Node `added`
/// formulas are rendered in concrete syntax with the label prefix.
pub fn tableau_to_json(tableau: &Tableau) -> Value {
    let nodes: Vec<Value> = tableau
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let status = n.status.as_ref().map(|s| match s {
                BranchStatus::Open => json!({ "kind": "open" }),
                BranchStatus::StronglyClosed => json!({ "kind": "strongly-closed" }),
                BranchStatus::WeaklyClosed(options) => json!({
                    "kind": "weakly-closed",
                    "options": options.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                }),
            });
            json!({
                "id": i,
                "parent": n.parent,
                "rule": n.rule,
                "added": n.added.iter().map(|sp| sp.to_string()).collect::<Vec<_>>(),
                "status": status,
                "blocked": n
                    .blocked
                    .iter()
                    .map(|b| json!({ "individual": b.individual, "blocker": b.blocker }))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();

    let mut open = 0usize;
    let mut strong = 0usize;
    let mut weak = 0usize;
    for leaf in tableau.leaves() {
        match tableau.status(leaf) {
            BranchStatus::Open => open += 1,
            BranchStatus::StronglyClosed => strong += 1,
            BranchStatus::WeaklyClosed(_) => weak += 1,
        }
    }

    json!({
        "mode": tableau.mode().to_string(),
        "fresh_individuals": tableau.fresh_individuals(),
        "nodes": nodes,
        "summary": {
            "node_count": tableau.nodes().len(),
            "open_leaves": open,
            "strongly_closed_leaves": strong,
            "weakly_closed_leaves": weak,
        },
    })
}

/// Graphviz rendering of the proof tree. Leaf shading encodes the status;
/// blocking pairs appear on the leaf that recorded them.
pub fn tableau_to_dot(tableau: &Tableau) -> String {
    let mut out = String::from("digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, n) in tableau.nodes().iter().enumerate() {
        let mut lines: Vec<String> = n.added.iter().map(|sp| sp.to_string()).collect();
        if lines.is_empty() {
            lines.push("(root)".to_string());
        }
        let mut attrs = String::new();
        match &n.status {
            Some(BranchStatus::StronglyClosed) => {
                lines.push("* strong".to_string());
                attrs.push_str(", style=filled, fillcolor=\"#f4cccc\"");
            }
            Some(BranchStatus::WeaklyClosed(options)) => {
                let opts = options.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ");
                lines.push(format!("~ weak: {opts}"));
                attrs.push_str(", style=filled, fillcolor=\"#fff2cc\"");
            }
            Some(BranchStatus::Open) => {
                lines.push("o open".to_string());
                attrs.push_str(", style=filled, fillcolor=\"#d9ead3\"");
            }
            None => {}
        }
        for b in &n.blocked {
            lines.push(format!("{} blocked by {}", b.individual, b.blocker));
        }
        let label = escape(&lines.join("\\n"));
        out.push_str(&format!("  n{i} [label=\"{label}\"{attrs}];\n"));
    }
    for (i, n) in tableau.nodes().iter().enumerate() {
        for &c in &n.children {
            let rule = tableau.nodes()[c].rule.unwrap_or("");
            out.push_str(&format!("  n{i} -> n{c} [label=\"{}\"];\n", escape(rule)));
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}
