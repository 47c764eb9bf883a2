//! Entailment decisions over conflict-tolerant models.
//!
//! Plain entailment holds when the goal is true in *every* model; it is
//! monotone and decided by an unconditionally closing tableau. The
//! non-monotonic strengthening quantifies only over the conflict-minimal
//! models and is decided through argumentation: the goal is entailed when
//! every stable extension of the saturated framework contains a supporting
//! argument. Plain entailment implies the conflict-minimal one, so a strong
//! tableau proof short-circuits the framework construction.

use crate::argumentation::export::af_to_json;
use crate::argumentation::{complete_af, ArgumentationFramework, Conclusion};
use crate::syntax::{KnowledgeBase, Proposition};
use crate::tableaux::export::tableau_to_json;
use crate::tableaux::{prove, GoalLabel, ProofResult, Tableau};
use crate::{Error, Limits, Result, SubsumptionMode};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt;

/// Outcome of a conflict-minimal entailment check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// True in every model: the refutation tableau closed strongly.
    EntailedMonotone,
    /// True in every conflict-minimal model, witnessed per stable extension.
    EntailedConflictMinimal,
    /// Some stable extension leaves the goal unsupported.
    NotEntailed,
}

impl Verdict {
    pub fn is_entailed(self) -> bool {
        !matches!(self, Verdict::NotEntailed)
    }

    fn slug(self) -> &'static str {
        match self {
            Verdict::EntailedMonotone => "entailed-monotone",
            Verdict::EntailedConflictMinimal => "entailed-conflict-minimal",
            Verdict::NotEntailed => "not-entailed",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EntailedMonotone => write!(f, "entailed (monotone)"),
            Verdict::EntailedConflictMinimal => write!(f, "entailed (conflict-minimal)"),
            Verdict::NotEntailed => write!(f, "not entailed"),
        }
    }
}

/// A decided query with its full evidence.
#[derive(Debug, Clone)]
pub struct Decision {
    pub goal_label: GoalLabel,
    pub goal: Proposition,
    pub mode: SubsumptionMode,
    pub verdict: Verdict,
    /// The strongly closed refutation tableau (monotone case only).
    pub tableau: Option<Tableau>,
    /// The saturated framework (conflict-minimal and refuted cases).
    pub framework: Option<ArgumentationFramework>,
    pub stable_extensions: Vec<BTreeSet<usize>>,
    /// One supporting argument per stable extension, parallel to
    /// `stable_extensions` (conflict-minimal case only).
    pub witnesses: Vec<usize>,
    /// A stable extension without a supporting argument.
    pub counterexample: Option<BTreeSet<usize>>,
}

/// Does the goal hold in every model? Monotone and assumption-free.
pub fn decide_lp(
    kb: &KnowledgeBase,
    goal_label: GoalLabel,
    goal: &Proposition,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<bool> {
    Ok(matches!(prove(kb, goal_label, goal, mode, limits)?, ProofResult::Proved { .. }))
}

/// Does the goal hold in every conflict-minimal model?
pub fn decide_lpm(
    kb: &KnowledgeBase,
    goal_label: GoalLabel,
    goal: &Proposition,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<Decision> {
    if let ProofResult::Proved { tableau } = prove(kb, goal_label, goal, mode, limits)? {
        return Ok(Decision {
            goal_label,
            goal: goal.clone(),
            mode,
            verdict: Verdict::EntailedMonotone,
            tableau: Some(tableau),
            framework: None,
            stable_extensions: vec![],
            witnesses: vec![],
            counterexample: None,
        });
    }

    let af = complete_af(kb, goal_label, goal, mode, limits)?;
    let extensions = af.stable_extensions();
    if extensions.is_empty() {
        return Err(Error::NoStableExtensions);
    }

    let supports = |i: &usize| {
        matches!(
            &af.arguments()[*i].conclusion,
            Conclusion::Supports(l, p) if *l == goal_label && p == goal
        )
    };
    let mut witnesses = Vec::with_capacity(extensions.len());
    let mut counterexample = None;
    for e in &extensions {
        match e.iter().find(|i| supports(i)) {
            Some(&w) => witnesses.push(w),
            None => {
                counterexample = Some(e.clone());
                break;
            }
        }
    }

    let verdict = if counterexample.is_none() {
        Verdict::EntailedConflictMinimal
    } else {
        Verdict::NotEntailed
    };
    Ok(Decision {
        goal_label,
        goal: goal.clone(),
        mode,
        verdict,
        tableau: None,
        framework: Some(af),
        stable_extensions: extensions,
        witnesses: if verdict == Verdict::EntailedConflictMinimal { witnesses } else { vec![] },
        counterexample,
    })
}

impl Decision {
    /// Machine-readable report.
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "query": self.goal.to_string(),
            "goal_label": self.goal_label.to_string(),
            "mode": self.mode.to_string(),
            "verdict": self.verdict.slug(),
            "entailed": self.verdict.is_entailed(),
        });
        let obj = out.as_object_mut().expect("report is an object");
        if let Some(t) = &self.tableau {
            obj.insert("tableau".to_string(), tableau_to_json(t));
        }
        if let Some(af) = &self.framework {
            obj.insert("af".to_string(), af_to_json(af));
            obj.insert(
                "stable_extensions".to_string(),
                json!(self
                    .stable_extensions
                    .iter()
                    .map(|e| e.iter().copied().collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
        }
        if self.verdict == Verdict::EntailedConflictMinimal {
            let witnesses: Vec<Value> = self
                .stable_extensions
                .iter()
                .zip(&self.witnesses)
                .map(|(e, w)| {
                    json!({
                        "extension": e.iter().copied().collect::<Vec<_>>(),
                        "supported_by": w,
                    })
                })
                .collect();
            obj.insert("witnesses".to_string(), Value::Array(witnesses));
        }
        if let Some(c) = &self.counterexample {
            obj.insert(
                "counterexample_extension".to_string(),
                json!(c.iter().copied().collect::<Vec<_>>()),
            );
        }
        out
    }

    /// Human-readable report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("query: {} {}\n", self.goal_label, self.goal));
        out.push_str(&format!("mode: {}\n", self.mode));
        out.push_str(&format!("verdict: {}\n", self.verdict));

        if let Some(t) = &self.tableau {
            let leaves = t.leaves().count();
            out.push_str(&format!(
                "proof: refutation tableau closed strongly on all {} branch(es) ({} nodes)\n",
                leaves,
                t.nodes().len()
            ));
        }
        if let Some(af) = &self.framework {
            if af.is_empty() {
                out.push_str("arguments: none (the goal has no supporting argument)\n");
            } else {
                out.push_str("arguments:\n");
                for (i, arg) in af.arguments().iter().enumerate() {
                    out.push_str(&format!("  A{i} = {arg}\n"));
                }
            }
            if !af.attacks().is_empty() {
                let rendered: Vec<String> =
                    af.attacks().iter().map(|(i, j)| format!("A{i} -> A{j}")).collect();
                out.push_str(&format!("attacks: {}\n", rendered.join(", ")));
            }
            out.push_str("stable extensions:\n");
            for (pos, e) in self.stable_extensions.iter().enumerate() {
                let members: Vec<String> = e.iter().map(|i| format!("A{i}")).collect();
                let support = if self.verdict == Verdict::EntailedConflictMinimal {
                    format!("supported by A{}", self.witnesses[pos])
                } else if e.iter().any(|&i| {
                    matches!(
                        &af.arguments()[i].conclusion,
                        Conclusion::Supports(l, p) if *l == self.goal_label && *p == self.goal
                    )
                }) {
                    "supported".to_string()
                } else {
                    "unsupported".to_string()
                };
                out.push_str(&format!("  {{{}}}: {}\n", members.join(", "), support));
            }
        }
        if let Some(c) = &self.counterexample {
            let members: Vec<String> = c.iter().map(|i| format!("A{i}")).collect();
            out.push_str(&format!("counterexample: {{{}}}\n", members.join(", ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_kb, parse_proposition};

    const MODE: SubsumptionMode = SubsumptionMode::Material;

    fn decide(kb: &str, goal: &str) -> Decision {
        let kb = parse_kb(kb).unwrap();
        let goal = parse_proposition(goal).unwrap();
        decide_lpm(&kb, GoalLabel::T, &goal, MODE, &Limits::default()).unwrap()
    }

    fn lp(kb: &str, goal: &str) -> bool {
        let kb = parse_kb(kb).unwrap();
        let goal = parse_proposition(goal).unwrap();
        decide_lp(&kb, GoalLabel::T, &goal, MODE, &Limits::default()).unwrap()
    }

    fn ext(indices: &[usize]) -> BTreeSet<usize> {
        indices.iter().copied().collect()
    }

    #[test]
    fn conflict_minimal_entailment_extends_the_monotone_one() {
        // The disjunctive syllogism fails in every-model reasoning (the
        // conflicting interpretation of a : C is a countermodel) but holds
        // over the conflict-minimal models.
        let kb = "a : ~C. a : C | D.";
        assert!(!lp(kb, "a : D"));

        let d = decide(kb, "a : D");
        assert_eq!(d.verdict, Verdict::EntailedConflictMinimal);
        assert!(d.verdict.is_entailed());
        assert!(d.tableau.is_none());
        assert_eq!(d.stable_extensions, vec![ext(&[0])]);
        assert_eq!(d.witnesses, vec![0]);
        assert!(d.counterexample.is_none());
    }

    #[test]
    fn asserted_facts_are_entailed_monotonically() {
        let d = decide("a : C.", "a : C");
        assert_eq!(d.verdict, Verdict::EntailedMonotone);
        assert!(d.tableau.is_some(), "monotone decisions carry their proof");
        assert!(d.framework.is_none());
        assert!(lp("a : C.", "a : C"));
    }

    #[test]
    fn added_information_can_retract_conclusions() {
        // Non-monotonicity: asserting ~D turns the previously entailed a : D
        // into a defeated conclusion.
        let grown = "a : ~C. a : C | D. a : ~D.";
        let d = decide(grown, "a : D");
        assert_eq!(d.verdict, Verdict::NotEntailed);
        assert!(!d.verdict.is_entailed());
        assert!(d.counterexample.is_some());
    }

    #[test]
    fn three_way_conflict_defeats_the_goal() {
        let d = decide("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");
        assert_eq!(d.verdict, Verdict::NotEntailed);
        assert_eq!(d.stable_extensions, vec![ext(&[0, 2]), ext(&[0, 3]), ext(&[1])]);
        // {A1} concludes only a conflict on a : C; nothing supports a : D.
        assert_eq!(d.counterexample, Some(ext(&[1])));
        assert!(d.witnesses.is_empty());
    }

    #[test]
    fn independent_supports_cover_all_extensions() {
        let d = decide("a : ~C. a : C | D. a : ~D. a : C | E. a : D | E.", "a : E");
        assert_eq!(d.verdict, Verdict::EntailedConflictMinimal);
        assert_eq!(d.stable_extensions, vec![ext(&[0, 3]), ext(&[1, 2])]);
        // Different extensions are carried by different supporting
        // arguments.
        assert_eq!(d.witnesses, vec![0, 1]);
    }

    #[test]
    fn contradictions_stay_contained() {
        // A direct contradiction does not spill into unrelated conclusions,
        // under either notion of entailment.
        let kb = "a : C. a : ~C.";
        assert!(!lp(kb, "a : D"));
        let d = decide(kb, "a : D");
        assert_eq!(d.verdict, Verdict::NotEntailed);
        assert_eq!(d.counterexample, Some(ext(&[1])));

        // The contradicted assertion itself still follows monotonically.
        let d = decide(kb, "a : C");
        assert_eq!(d.verdict, Verdict::EntailedMonotone);
    }

    #[test]
    fn falsity_goals_are_decided_through_the_same_pipeline() {
        let kb = parse_kb("a : ~C. a : C | D.").unwrap();
        let goal = parse_proposition("a : C").unwrap();
        let d = decide_lpm(&kb, GoalLabel::F, &goal, MODE, &Limits::default()).unwrap();
        // Every model makes a : C at least false (asserted via ~C).
        assert_eq!(d.verdict, Verdict::EntailedMonotone);
    }

    #[test]
    fn json_report_carries_the_evidence() {
        let d = decide("a : ~C. a : C | D. a : ~D. a : C | E. a : D | E.", "a : E");
        let report = d.to_json();
        assert_eq!(report["verdict"], "entailed-conflict-minimal");
        assert_eq!(report["entailed"], true);
        assert_eq!(report["query"], "a : E");
        assert_eq!(report["mode"], "material");
        assert_eq!(report["af"]["arguments"].as_array().unwrap().len(), 4);
        assert_eq!(report["stable_extensions"].as_array().unwrap().len(), 2);
        assert_eq!(report["witnesses"].as_array().unwrap().len(), 2);
        assert_eq!(report["witnesses"][0]["supported_by"], 0);
        assert!(report.get("counterexample_extension").is_none());

        let d = decide("a : ~C. a : C | D. a : ~D.", "a : D");
        let report = d.to_json();
        assert_eq!(report["verdict"], "not-entailed");
        assert_eq!(report["entailed"], false);
        assert!(report.get("witnesses").is_none());
        assert!(report["counterexample_extension"].is_array());

        let d = decide("a : C.", "a : C");
        let report = d.to_json();
        assert_eq!(report["verdict"], "entailed-monotone");
        assert!(report["tableau"]["summary"]["node_count"].is_number());
        assert!(report.get("af").is_none());
    }

    #[test]
    fn text_report_names_arguments_and_extensions() {
        let d = decide("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");
        let text = d.to_text();
        assert!(text.contains("verdict: not entailed"));
        assert!(text.contains("A0 = ({a : C} => T a : D)"));
        assert!(text.contains("stable extensions:"));
        assert!(text.contains("{A1}: unsupported"));
        assert!(text.contains("counterexample: {A1}"));

        let d = decide("a : C.", "a : C");
        let text = d.to_text();
        assert!(text.contains("verdict: entailed (monotone)"));
        assert!(text.contains("closed strongly"));
    }
}
