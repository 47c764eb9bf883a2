use super::export::{af_to_dot, af_to_json};
use super::*;
use crate::syntax::{parse_kb, parse_proposition};
use crate::tableaux::GoalLabel;
use crate::{Limits, SubsumptionMode};

const MODE: SubsumptionMode = SubsumptionMode::Material;

fn limits() -> Limits {
    Limits::default()
}

fn assertion(individual: &str, concept: &str) -> AtomicAssertion {
    AtomicAssertion::new(individual, concept)
}

fn assumptions(pairs: &[(&str, &str)]) -> BTreeSet<AtomicAssertion> {
    pairs.iter().map(|(i, c)| assertion(i, c)).collect()
}

fn af_for(kb: &str, goal: &str) -> ArgumentationFramework {
    let kb = parse_kb(kb).unwrap();
    let goal = parse_proposition(goal).unwrap();
    complete_af(&kb, GoalLabel::T, &goal, MODE, &limits()).unwrap()
}

fn indices(af: &ArgumentationFramework, sets: &[&[usize]]) -> Vec<BTreeSet<usize>> {
    let _ = af;
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

#[test]
fn counter_arguments_need_both_conflict_halves() {
    // Only ~T a : C closes against this knowledge base; the ~F side stays
    // open, so a : C has no counter-argument at all.
    let kb = parse_kb("a : ~C. a : C | D.").unwrap();
    let counters = counter_arguments(&kb, &assertion("a", "C"), MODE, &limits()).unwrap();
    assert!(counters.is_empty(), "got {counters:?}");

    // With enough pressure from both sides the conflict is derivable.
    let kb = parse_kb("a : C. a : ~C.").unwrap();
    let counters = counter_arguments(&kb, &assertion("a", "C"), MODE, &limits()).unwrap();
    assert_eq!(counters.len(), 1);
    assert!(counters[0].assumptions.is_empty());
    assert_eq!(counters[0].conclusion, Conclusion::Conflict(assertion("a", "C")));
}

#[test]
fn counter_assumptions_combine_both_tableaux() {
    // Proving T a : C needs no assumptions (asserted), proving F a : C
    // walks through the disjunction and assumes a : D conflict-free.
    let kb = parse_kb("a : C. a : ~C | ~D. a : D.").unwrap();
    let counters = counter_arguments(&kb, &assertion("a", "C"), MODE, &limits()).unwrap();
    assert_eq!(counters.len(), 1);
    assert_eq!(counters[0].assumptions, assumptions(&[("a", "D")]));
}

#[test]
fn rotation_trades_the_conflict_with_each_assumption() {
    let arg = Argument::new(
        [assertion("a", "D"), assertion("a", "E")],
        Conclusion::Conflict(assertion("a", "C")),
    );
    let rotated = rotate(&arg);
    assert_eq!(
        rotated,
        vec![
            Argument::new(
                [assertion("a", "C"), assertion("a", "E")],
                Conclusion::Conflict(assertion("a", "D")),
            ),
            Argument::new(
                [assertion("a", "C"), assertion("a", "D")],
                Conclusion::Conflict(assertion("a", "E")),
            ),
        ]
    );

    // Supporting arguments do not rotate; assumption-free conflicts rotate
    // to nothing.
    let support = Argument::new(
        [assertion("a", "C")],
        Conclusion::Supports(GoalLabel::T, parse_proposition("a : D").unwrap()),
    );
    assert!(rotate(&support).is_empty());
    let bare = Argument::new([], Conclusion::Conflict(assertion("a", "C")));
    assert!(rotate(&bare).is_empty());
}

#[test]
fn lone_supporting_argument_forms_a_singleton_framework() {
    // No counter-argument exists against a : C here, so the framework stays
    // a single undisputed argument and its only stable extension.
    let af = af_for("a : ~C. a : C | D.", "a : D");
    assert_eq!(af.len(), 1);
    assert_eq!(af.arguments()[0].assumptions, assumptions(&[("a", "C")]));
    assert!(af.attacks().is_empty());
    assert_eq!(af.stable_extensions(), indices(&af, &[&[0]]));
}

#[test]
fn three_way_conflict_framework_matches_the_expected_structure() {
    // One supporting argument and a three-cycle of conflict arguments, each
    // pair of which trades blame for the same underlying inconsistency.
    let af = af_for("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");
    let args = af.arguments();
    assert_eq!(args.len(), 4);

    assert_eq!(args[0].assumptions, assumptions(&[("a", "C")]));
    assert_eq!(
        args[0].conclusion,
        Conclusion::Supports(GoalLabel::T, parse_proposition("a : D").unwrap())
    );
    assert_eq!(args[1].assumptions, assumptions(&[("a", "D"), ("a", "E")]));
    assert_eq!(args[1].conclusion, Conclusion::Conflict(assertion("a", "C")));
    assert_eq!(args[2].assumptions, assumptions(&[("a", "C"), ("a", "E")]));
    assert_eq!(args[2].conclusion, Conclusion::Conflict(assertion("a", "D")));
    assert_eq!(args[3].assumptions, assumptions(&[("a", "C"), ("a", "D")]));
    assert_eq!(args[3].conclusion, Conclusion::Conflict(assertion("a", "E")));

    let mut attacks = af.attacks().to_vec();
    attacks.sort_unstable();
    assert_eq!(attacks, vec![(1, 0), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]);

    assert_eq!(af.stable_extensions(), indices(&af, &[&[0, 2], &[0, 3], &[1]]));
}

#[test]
fn mutual_conflict_framework_has_two_stable_extensions() {
    let af = af_for("a : ~C. a : C | D. a : ~D. a : C | E. a : D | E.", "a : E");
    let args = af.arguments();
    assert_eq!(args.len(), 4);

    assert_eq!(args[0].assumptions, assumptions(&[("a", "C")]));
    assert_eq!(args[1].assumptions, assumptions(&[("a", "D")]));
    for arg in &args[0..2] {
        assert_eq!(
            arg.conclusion,
            Conclusion::Supports(GoalLabel::T, parse_proposition("a : E").unwrap())
        );
    }
    assert_eq!(args[2].assumptions, assumptions(&[("a", "D")]));
    assert_eq!(args[2].conclusion, Conclusion::Conflict(assertion("a", "C")));
    assert_eq!(args[3].assumptions, assumptions(&[("a", "C")]));
    assert_eq!(args[3].conclusion, Conclusion::Conflict(assertion("a", "D")));

    let mut attacks = af.attacks().to_vec();
    attacks.sort_unstable();
    assert_eq!(attacks, vec![(2, 0), (2, 3), (3, 1), (3, 2)]);

    // Either side of the conflict survives; both keep the goal supported.
    assert_eq!(af.stable_extensions(), indices(&af, &[&[0, 3], &[1, 2]]));
}

#[test]
fn extension_semantics_agree_on_small_frameworks() {
    let af = af_for("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");

    // Grounded is empty: everything is attacked and nothing defended from
    // the outside in a three-cycle.
    assert!(af.grounded_extension().is_empty());

    // Preferred and stable coincide here.
    let mut preferred = af.preferred_extensions();
    preferred.sort();
    let mut stable = af.stable_extensions();
    stable.sort();
    assert_eq!(preferred, stable);

    for e in &stable {
        assert!(af.conflict_free(e));
        assert!(e.iter().all(|&i| af.defends(e, i)));
    }
}

#[test]
fn stable_search_and_mask_enumeration_agree() {
    // Force the backtracking path by checking it directly against the mask
    // enumeration on the same frameworks.
    let kbs = [
        ("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D"),
        ("a : ~C. a : C | D. a : ~D. a : C | E. a : D | E.", "a : E"),
        ("a : ~C. a : C | D.", "a : D"),
    ];
    for (kb, goal) in kbs {
        let af = af_for(kb, goal);
        let mut via_mask = af.stable_by_mask();
        via_mask.sort();
        let mut via_search = Vec::new();
        let mut choice = vec![None; af.len()];
        af.stable_search(0, &mut choice, &mut via_search);
        via_search.sort();
        assert_eq!(via_mask, via_search, "kb: {kb}");
    }
}

#[test]
fn allowed_assumptions_exclude_denied_conflicts() {
    let af = af_for("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");
    // Extension {A1} concludes a conflict on a : C, leaving a : D and a : E
    // allowed.
    let omega = af.allowed_assumptions(&[1usize].into_iter().collect());
    assert_eq!(omega, assumptions(&[("a", "D"), ("a", "E")]));

    // Extension {A0, A2} denies a : D only.
    let omega = af.allowed_assumptions(&[0usize, 2].into_iter().collect());
    assert_eq!(omega, assumptions(&[("a", "C"), ("a", "E")]));
}

#[test]
fn empty_framework_has_the_empty_stable_extension() {
    // The goal has no supporting argument, so saturation seeds nothing.
    let af = af_for("a : C.", "a : D");
    assert!(af.is_empty());
    assert_eq!(af.stable_extensions(), vec![BTreeSet::new()]);
    assert_eq!(af.preferred_extensions(), vec![BTreeSet::new()]);
    assert!(af.grounded_extension().is_empty());
}

#[test]
fn paraconsistent_support_is_defeated_by_the_contradiction() {
    // {a : C, a : ~C} supports a : D only by exploding the conflict on
    // a : C; the assumption-free conflict argument defeats it.
    let af = af_for("a : C. a : ~C.", "a : D");
    assert_eq!(af.len(), 2);
    assert_eq!(af.arguments()[0].assumptions, assumptions(&[("a", "C")]));
    assert_eq!(af.arguments()[1].conclusion, Conclusion::Conflict(assertion("a", "C")));
    assert!(af.arguments()[1].assumptions.is_empty());
    assert_eq!(af.attacks(), &[(1, 0)]);
    assert_eq!(af.stable_extensions(), indices(&af, &[&[1]]));
}

#[test]
fn argument_budget_is_enforced() {
    let kb = parse_kb("a : ~C. a : C | D. a : ~D | E. a : ~E.").unwrap();
    let goal = parse_proposition("a : D").unwrap();
    let tight = Limits { max_arguments: 2, ..Limits::default() };
    let err = complete_af(&kb, GoalLabel::T, &goal, MODE, &tight).unwrap_err();
    assert!(matches!(err, crate::Error::ArgumentBudgetExceeded { limit: 2 }), "got {err:?}");
}

#[test]
fn exports_render_arguments_and_attacks() {
    let af = af_for("a : ~C. a : C | D. a : ~D | E. a : ~E.", "a : D");

    let json = af_to_json(&af);
    assert_eq!(json["arguments"].as_array().unwrap().len(), 4);
    assert_eq!(json["attacks"].as_array().unwrap().len(), 7);
    assert_eq!(json["stable_extensions"].as_array().unwrap().len(), 3);
    assert_eq!(json["arguments"][0]["conclusion"]["kind"], "supports");
    assert_eq!(json["arguments"][1]["conclusion"]["kind"], "conflict");

    let dot = af_to_dot(&af);
    assert!(dot.starts_with("digraph argumentation {"));
    assert!(dot.contains("A0:"));
    assert!(dot.contains("a1 -> a0;"));
}

#[test]
fn framework_construction_derives_attacks_structurally() {
    let support = Argument::new(
        [assertion("a", "C")],
        Conclusion::Supports(GoalLabel::T, parse_proposition("a : D").unwrap()),
    );
    let counter = Argument::new([], Conclusion::Conflict(assertion("a", "C")));
    let unrelated = Argument::new([], Conclusion::Conflict(assertion("b", "C")));
    let af = ArgumentationFramework::new(vec![support, counter, unrelated]);
    assert_eq!(af.attacks(), &[(1, 0)]);
    assert!(af.defends(&BTreeSet::new(), 1));
    assert!(!af.defends(&BTreeSet::new(), 0));
    assert!(af.conflict_free(&[1usize, 2].into_iter().collect()));
    assert!(!af.conflict_free(&[0usize, 1].into_iter().collect()));
}
