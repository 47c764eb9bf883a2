//! Argumentation-framework export: JSON and DOT.

use super::{ArgumentationFramework, Conclusion};
use serde_json::{json, Value};

/// JSON view: arguments with structured conclusions, the attack relation,
/// and the stable extensions (as argument indices).
pub fn af_to_json(af: &ArgumentationFramework) -> Value {
    let arguments: Vec<Value> = af
        .arguments()
        .iter()
        .enumerate()
        .map(|(i, arg)| {
            let conclusion = match &arg.conclusion {
                Conclusion::Supports(label, prop) => json!({
                    "kind": "supports",
                    "label": label.to_string(),
                    "proposition": prop.to_string(),
                }),
                Conclusion::Conflict(a) => json!({
                    "kind": "conflict",
                    "assertion": a.to_string(),
                }),
            };
            json!({
                "id": i,
                "assumptions": arg.assumptions.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "conclusion": conclusion,
            })
        })
        .collect();

    json!({
        "arguments": arguments,
        "attacks": af.attacks().iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "stable_extensions": af
            .stable_extensions()
            .iter()
            .map(|e| e.iter().copied().collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Graphviz rendering: one node per argument, one edge per attack.
pub fn af_to_dot(af: &ArgumentationFramework) -> String {
    let mut out =
        String::from("digraph argumentation {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, arg) in af.arguments().iter().enumerate() {
        let label = escape(&format!("A{i}: {arg}"));
        out.push_str(&format!("  a{i} [label=\"{label}\"];\n"));
    }
    for (i, j) in af.attacks() {
        out.push_str(&format!("  a{i} -> a{j};\n"));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('"', "\\\"")
}
