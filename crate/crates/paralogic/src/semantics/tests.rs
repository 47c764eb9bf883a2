use super::*;
use crate::syntax::{parse_concept, parse_kb, parse_proposition};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn set(objs: &[Object]) -> BTreeSet<Object> {
    objs.iter().copied().collect()
}

/// Two objects, one role edge 0 -> 1:
/// C = ⟨{0}, {1}⟩, D = ⟨{1}, {0,1}⟩, R = {(0,1)}.
fn two_object_interp() -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new(2);
    i.set_individual("a", 0).unwrap();
    i.set_individual("b", 1).unwrap();
    i.set_concept("C", set(&[0]), set(&[1])).unwrap();
    i.set_concept("D", set(&[1]), set(&[0, 1])).unwrap();
    i.add_role_pair("R", 0, 1).unwrap();
    i
}

#[test]
fn constructor_clauses() {
    let i = two_object_interp();
    let ext = |text: &str| i.eval_concept(&parse_concept(text).unwrap()).unwrap();

    assert_eq!(ext("~C"), Extension { positive: set(&[1]), negative: set(&[0]) });
    assert_eq!(ext("C & D"), Extension { positive: set(&[]), negative: set(&[0, 1]) });
    assert_eq!(ext("C | D"), Extension { positive: set(&[0, 1]), negative: set(&[1]) });
    // 0 has the single successor 1: positively in D, negatively in D.
    // 1 has no successors, so the universal clauses hold vacuously.
    assert_eq!(ext("exists R. D"), Extension { positive: set(&[0]), negative: set(&[0, 1]) });
    assert_eq!(ext("forall R. C"), Extension { positive: set(&[1]), negative: set(&[0]) });
    assert_eq!(ext("exists R. C"), Extension { positive: set(&[]), negative: set(&[0, 1]) });
}

#[test]
fn top_and_bottom_take_free_extensions() {
    let mut i = two_object_interp();
    assert_eq!(
        i.eval_concept(&ConceptExpr::Top).unwrap(),
        Extension { positive: set(&[0, 1]), negative: set(&[]) }
    );
    assert_eq!(
        i.eval_concept(&ConceptExpr::Bottom).unwrap(),
        Extension { positive: set(&[]), negative: set(&[0, 1]) }
    );
    i.set_top_negatives(set(&[0])).unwrap();
    i.set_bottom_positives(set(&[1])).unwrap();
    assert_eq!(
        i.eval_concept(&ConceptExpr::Top).unwrap(),
        Extension { positive: set(&[0, 1]), negative: set(&[0]) }
    );
    assert_eq!(
        i.eval_prop(&parse_proposition("a : top").unwrap(), SubsumptionMode::Material).unwrap(),
        TruthSet::Conflict
    );
    assert_eq!(
        i.eval_prop(&parse_proposition("b : bot").unwrap(), SubsumptionMode::Material).unwrap(),
        TruthSet::Conflict
    );
}

#[test]
fn coverage_gap_is_rejected() {
    let mut i = FiniteInterpretation::new(2);
    assert!(i.set_concept("C", set(&[0]), set(&[])).is_err());
    assert!(i.set_concept("C", set(&[0]), set(&[1])).is_ok());
    assert!(i.set_concept("C", set(&[0, 1]), set(&[1])).is_ok());
}

#[test]
fn assertion_and_role_truth() {
    let i = two_object_interp();
    let tv = |text: &str| {
        i.eval_prop(&parse_proposition(text).unwrap(), SubsumptionMode::Material).unwrap()
    };
    assert_eq!(tv("a : C"), TruthSet::True);
    assert_eq!(tv("b : C"), TruthSet::False);
    assert_eq!(tv("b : D"), TruthSet::Conflict);
    assert_eq!(tv("(a, b) : R"), TruthSet::True);
    assert_eq!(tv("(b, a) : R"), TruthSet::False);
}

#[test]
fn subsumption_modes_differ() {
    // E = ⟨{0}, {0,1}⟩, G = ⟨{0,1}, {1}⟩: both readings accept E <= G.
    let mut i = FiniteInterpretation::new(2);
    i.set_concept("E", set(&[0]), set(&[0, 1])).unwrap();
    i.set_concept("G", set(&[0, 1]), set(&[1])).unwrap();
    let sub = parse_proposition("E <= G").unwrap();
    assert_eq!(i.eval_prop(&sub, SubsumptionMode::Internal).unwrap(), TruthSet::True);
    assert_eq!(i.eval_prop(&sub, SubsumptionMode::Material).unwrap(), TruthSet::True);

    // H = ⟨{0,1}, {1}⟩, K = ⟨{1}, {0,1}⟩: positive containment fails, but
    // every object is in H's negative or K's positive extension... object 0
    // is in neither, so both readings reject H <= K.
    i.set_concept("H", set(&[0, 1]), set(&[1])).unwrap();
    i.set_concept("K", set(&[1]), set(&[0, 1])).unwrap();
    let sub = parse_proposition("H <= K").unwrap();
    assert_eq!(i.eval_prop(&sub, SubsumptionMode::Internal).unwrap(), TruthSet::False);
    assert_eq!(i.eval_prop(&sub, SubsumptionMode::Material).unwrap(), TruthSet::False);

    // L = ⟨{0}, {0,1}⟩, M = ⟨{0}, {0}⟩ on a single object... use domain 1:
    // internal fails (N_M ⊄ N_L is fine, but check a case where they split).
    let mut j = FiniteInterpretation::new(1);
    j.set_concept("L", set(&[0]), set(&[0])).unwrap();
    j.set_concept("M", set(&[0]), set(&[])).unwrap();
    let sub = parse_proposition("M <= L").unwrap();
    // Internal: P_M ⊆ P_L and N_L ⊆ N_M fails (0 ∈ N_L, 0 ∉ N_M).
    assert_eq!(j.eval_prop(&sub, SubsumptionMode::Internal).unwrap(), TruthSet::False);
    // Material: 0 ∈ P_L, so the pointwise reading accepts.
    assert_eq!(j.eval_prop(&sub, SubsumptionMode::Material).unwrap(), TruthSet::True);
}

#[test]
fn equality_modes() {
    let mut i = FiniteInterpretation::new(1);
    i.set_concept("C", set(&[0]), set(&[0])).unwrap();
    i.set_concept("D", set(&[0]), set(&[0])).unwrap();
    i.set_concept("E", set(&[0]), set(&[])).unwrap();
    let eq = |a: &str, b: &str| parse_proposition(&format!("{a} == {b}")).unwrap();
    assert_eq!(i.eval_prop(&eq("C", "D"), SubsumptionMode::Internal).unwrap(), TruthSet::True);
    assert_eq!(i.eval_prop(&eq("C", "E"), SubsumptionMode::Internal).unwrap(), TruthSet::False);
    // Material equality is the conjunction of both material subsumptions:
    // C and E both put 0 positively, so each direction holds pointwise.
    assert_eq!(i.eval_prop(&eq("C", "E"), SubsumptionMode::Material).unwrap(), TruthSet::True);
}

/// The five models of {a : ~C. a : C | D.} over one object, as truth-value
/// pairs for (a:C, a:D).
const EXAMPLE_KB: &str = "a : ~C. a : C | D.";

fn example_models() -> Vec<(TruthSet, TruthSet)> {
    let kb = parse_kb(EXAMPLE_KB).unwrap();
    let sig = crate::syntax::signature_with(&kb, [&parse_proposition("a : D").unwrap()]);
    enumerate_models(&kb, &sig, SubsumptionMode::Material)
        .unwrap()
        .map(|m| {
            let c = m.eval_prop(&parse_proposition("a : C").unwrap(), SubsumptionMode::Material);
            let d = m.eval_prop(&parse_proposition("a : D").unwrap(), SubsumptionMode::Material);
            (c.unwrap(), d.unwrap())
        })
        .collect()
}

#[test]
fn example_kb_has_exactly_five_models() {
    use TruthSet::{Conflict as X, False as F, True as T};
    let got: BTreeSet<(TruthSet, TruthSet)> = example_models().into_iter().collect();
    let want: BTreeSet<(TruthSet, TruthSet)> =
        [(F, T), (F, X), (X, T), (X, F), (X, X)].into_iter().collect();
    assert_eq!(got, want);
}

#[test]
fn conflict_ordering_on_example_models() {
    let kb = parse_kb(EXAMPLE_KB).unwrap();
    let sig = crate::syntax::signature_of(&kb);
    let models: Vec<FiniteInterpretation> =
        enumerate_models(&kb, &sig, SubsumptionMode::Material).unwrap().collect();
    let conflicts: Vec<ConflictSet> =
        models.iter().map(|m| m.conflict_set(&sig).unwrap()).collect();

    let empty: Vec<_> = conflicts.iter().filter(|c| c.is_empty()).collect();
    assert_eq!(empty.len(), 1, "exactly one conflict-free model");

    // The conflict-free model sits strictly below every other.
    let min = conflicts.iter().find(|c| c.is_empty()).unwrap();
    for c in conflicts.iter().filter(|c| !c.is_empty()) {
        assert!(less_conflicts(min, c));
        assert!(!less_conflicts(c, min));
        assert!(!less_conflicts(c, c), "ordering is strict");
    }

    // {a:C} and {a:D} are incomparable singletons.
    let c_only: ConflictSet = [AtomicAssertion::new("a", "C")].into_iter().collect();
    let d_only: ConflictSet = [AtomicAssertion::new("a", "D")].into_iter().collect();
    assert!(!less_conflicts(&c_only, &d_only));
    assert!(!less_conflicts(&d_only, &c_only));
}

#[test]
fn lp_rejects_and_lpm_accepts_the_example_query() {
    let kb = parse_kb(EXAMPLE_KB).unwrap();
    let q = parse_proposition("a : D").unwrap();
    for mode in [SubsumptionMode::Material, SubsumptionMode::Internal] {
        assert!(!oracle_lp_entails(&kb, &q, mode).unwrap());
        assert!(oracle_lpm_entails(&kb, &q, mode).unwrap());
    }
}

#[test]
fn lpm_is_nonmonotone_on_the_example() {
    let kb = parse_kb("a : ~C. a : C | D. a : ~D.").unwrap();
    let q = parse_proposition("a : D").unwrap();
    assert!(!oracle_lpm_entails(&kb, &q, SubsumptionMode::Material).unwrap());
}

#[test]
fn contradictions_do_not_explode() {
    let kb = parse_kb("a : C. a : ~C.").unwrap();
    let q = parse_proposition("a : D").unwrap();
    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Material).unwrap());
    assert!(!oracle_lpm_entails(&kb, &q, SubsumptionMode::Material).unwrap());
    // The contradiction itself is still entailed.
    let q = parse_proposition("a : C").unwrap();
    assert!(oracle_lp_entails(&kb, &q, SubsumptionMode::Material).unwrap());
}

#[test]
fn three_disjunction_kb_minimal_models() {
    // {a:~C, a:C|D, a:~D|E, a:~E} has three incomparable single-conflict
    // model classes; a:D fails in the class conflicting only on a:C.
    let kb = parse_kb("a : ~C. a : C | D. a : ~D | E. a : ~E.").unwrap();
    let sig = crate::syntax::signature_of(&kb);
    let q = parse_proposition("a : D").unwrap();

    let minimal = conflict_minimal_models(&kb, &sig, SubsumptionMode::Material).unwrap();
    let conflicts: BTreeSet<ConflictSet> =
        minimal.iter().map(|m| m.conflict_set(&sig).unwrap()).collect();
    let want: BTreeSet<ConflictSet> = ["C", "D", "E"]
        .into_iter()
        .map(|c| [AtomicAssertion::new("a", c)].into_iter().collect())
        .collect();
    assert_eq!(conflicts, want);
    assert_eq!(minimal.len(), 3);

    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Material).unwrap());
    assert!(!oracle_lpm_entails(&kb, &q, SubsumptionMode::Material).unwrap());
}

#[test]
fn five_proposition_kb_has_two_minimal_models() {
    let kb = parse_kb("a : ~C. a : C | D. a : ~D. a : C | E. a : D | E.").unwrap();
    let sig = crate::syntax::signature_of(&kb);
    let minimal = conflict_minimal_models(&kb, &sig, SubsumptionMode::Material).unwrap();
    assert_eq!(minimal.len(), 2);

    let tv = |m: &FiniteInterpretation, text: &str| {
        m.eval_prop(&parse_proposition(text).unwrap(), SubsumptionMode::Material).unwrap()
    };
    let profiles: BTreeSet<(TruthSet, TruthSet, TruthSet)> =
        minimal.iter().map(|m| (tv(m, "a : C"), tv(m, "a : D"), tv(m, "a : E"))).collect();
    use TruthSet::{Conflict as X, False as F, True as T};
    let want: BTreeSet<_> = [(F, X, T), (X, F, T)].into_iter().collect();
    assert_eq!(profiles, want);

    let q = parse_proposition("a : E").unwrap();
    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Material).unwrap());
    assert!(oracle_lpm_entails(&kb, &q, SubsumptionMode::Material).unwrap());
}

#[test]
fn axiom_queries_use_a_witness_object() {
    // Over the named object alone, {a:D, a:~C} would force C <= D under the
    // containment reading; an unconstrained witness object refutes it.
    let kb = parse_kb("a : D. a : ~C.").unwrap();
    let q = parse_proposition("C <= D").unwrap();
    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Internal).unwrap());
    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Material).unwrap());

    // Reflexivity survives the witness object.
    let q = parse_proposition("C <= C").unwrap();
    assert!(oracle_lp_entails(&kb, &q, SubsumptionMode::Internal).unwrap());

    // A TBox-only knowledge base entails its own axiom.
    let kb = parse_kb("C <= D.").unwrap();
    let q = parse_proposition("C <= D").unwrap();
    assert!(oracle_lp_entails(&kb, &q, SubsumptionMode::Internal).unwrap());
    let q = parse_proposition("D <= C").unwrap();
    assert!(!oracle_lp_entails(&kb, &q, SubsumptionMode::Internal).unwrap());
}

#[test]
fn oracle_refuses_quantifiers_and_empty_domains() {
    let kb = parse_kb("a : exists R. C.").unwrap();
    let q = parse_proposition("a : C").unwrap();
    assert!(matches!(
        oracle_lp_entails(&kb, &q, SubsumptionMode::Material),
        Err(crate::Error::OracleInapplicable(_))
    ));

    let kb = parse_kb("C <= D.").unwrap();
    let sig = crate::syntax::signature_of(&kb);
    assert!(matches!(
        enumerate_models(&kb, &sig, SubsumptionMode::Material),
        Err(crate::Error::OracleInapplicable(_))
    ));
}

#[test]
fn model_counts_include_role_configurations() {
    let kb = parse_kb("(a, a) : R.").unwrap();
    let sig = crate::syntax::signature_with(&kb, [&parse_proposition("a : C").unwrap()]);
    // One (a, C) trit times one forced role edge: 3 of the 6 assignments
    // satisfy the knowledge base.
    let models: Vec<_> = enumerate_models(&kb, &sig, SubsumptionMode::Material).unwrap().collect();
    assert_eq!(models.len(), 3);
    let empty = parse_kb("").unwrap();
    let models: Vec<_> =
        enumerate_models(&empty, &sig, SubsumptionMode::Material).unwrap().collect();
    assert_eq!(models.len(), 6);
}

fn tiny_interp_strategy() -> impl Strategy<Value = FiniteInterpretation> {
    // Domain of 2, concepts C and D with random covering extensions, role R
    // with a random edge set.
    let trit = prop_oneof![Just((true, false)), Just((false, true)), Just((true, true))];
    (proptest::collection::vec(trit, 4), proptest::collection::vec(any::<bool>(), 4)).prop_map(
        |(trits, edges)| {
            let mut i = FiniteInterpretation::new(2);
            i.set_individual("a", 0).unwrap();
            i.set_individual("b", 1).unwrap();
            for (ci, name) in ["C", "D"].into_iter().enumerate() {
                let mut pos = BTreeSet::new();
                let mut neg = BTreeSet::new();
                for o in 0..2usize {
                    let (t, f) = trits[ci * 2 + o];
                    if t {
                        pos.insert(o);
                    }
                    if f {
                        neg.insert(o);
                    }
                }
                i.set_concept(name, pos, neg).unwrap();
            }
            i.declare_role("R");
            for (k, &present) in edges.iter().enumerate() {
                if present {
                    i.add_role_pair("R", k / 2, k % 2).unwrap();
                }
            }
            i
        },
    )
}

fn small_concept_strategy() -> impl Strategy<Value = ConceptExpr> {
    let leaf = prop_oneof![
        Just(ConceptExpr::Top),
        Just(ConceptExpr::Bottom),
        Just(ConceptExpr::atomic("C")),
        Just(ConceptExpr::atomic("D")),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|c| ConceptExpr::Not(Box::new(c))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ConceptExpr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ConceptExpr::Or(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|c| ConceptExpr::Exists("R".into(), Box::new(c))),
            inner.prop_map(|c| ConceptExpr::Forall("R".into(), Box::new(c))),
        ]
    })
}

proptest! {
    #[test]
    fn evaluation_covers_the_domain(i in tiny_interp_strategy(), c in small_concept_strategy()) {
        let ext = i.eval_concept(&c).unwrap();
        for o in i.objects() {
            prop_assert!(ext.positive.contains(&o) || ext.negative.contains(&o));
        }
    }

    #[test]
    fn de_morgan_holds_pointwise(
        i in tiny_interp_strategy(),
        a in small_concept_strategy(),
        b in small_concept_strategy(),
    ) {
        let lhs = i.eval_concept(&ConceptExpr::not(ConceptExpr::and(a.clone(), b.clone()))).unwrap();
        let rhs = i
            .eval_concept(&ConceptExpr::or(ConceptExpr::not(a.clone()), ConceptExpr::not(b.clone())))
            .unwrap();
        prop_assert_eq!(&lhs, &rhs);

        let lhs = i.eval_concept(&ConceptExpr::not(ConceptExpr::or(a.clone(), b.clone()))).unwrap();
        let rhs = i
            .eval_concept(&ConceptExpr::and(ConceptExpr::not(a), ConceptExpr::not(b)))
            .unwrap();
        prop_assert_eq!(&lhs, &rhs);
    }

    #[test]
    fn double_negation_is_identity(i in tiny_interp_strategy(), c in small_concept_strategy()) {
        let plain = i.eval_concept(&c).unwrap();
        let doubled = i.eval_concept(&ConceptExpr::not(ConceptExpr::not(c))).unwrap();
        prop_assert_eq!(plain, doubled);
    }
}
