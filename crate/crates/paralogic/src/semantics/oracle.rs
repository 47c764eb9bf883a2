//! Brute-force reference decisions over the quantifier-free fragment.
//!
//! The search space fixes one domain object per named individual (distinct
//! objects, in sorted name order) and enumerates every assignment of
//! {T, F, TF} to each (object, atomic concept) pair plus every role-edge
//! subset. `top`/`bot` are pinned to ⟨O, ∅⟩ / ⟨∅, O⟩ here, so entailment
//! answers involving them are relative to that choice.
//!
//! For subsumption and equality queries the named objects alone are not
//! enough: an axiom can fail only on an object no assertion constrains. A
//! single extra anonymous object restores completeness (any countermodel
//! can be shrunk to the named objects plus one witness, and conflict sets
//! only ever range over named individuals), so one is added exactly when
//! the query is an axiom or there are no individuals at all.

use super::{FiniteInterpretation, TruthSet};
use crate::syntax::{signature_with, ConceptExpr, KnowledgeBase, Proposition, Signature};
use crate::{Error, Result, SubsumptionMode};
use std::collections::BTreeSet;
use std::collections::HashMap;

/// Cap on enumerated assignments; beyond this the oracle refuses instead of
/// stalling.
const MAX_ASSIGNMENTS: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Trit {
    True,
    False,
    Both,
}

impl Trit {
    fn flags(self) -> (bool, bool) {
        match self {
            Trit::True => (true, false),
            Trit::False => (false, true),
            Trit::Both => (true, true),
        }
    }
}

#[derive(Debug, Clone)]
struct Assignment {
    trits: Vec<Trit>,
    edges: Vec<bool>,
}

struct Space {
    individuals: Vec<String>,
    concepts: Vec<String>,
    roles: Vec<String>,
    /// Total objects; equals `individuals.len()` plus one when an anonymous
    /// witness object is included.
    objects: usize,
    mode: SubsumptionMode,
}

impl Space {
    fn new(sig: &Signature, with_anon: bool, mode: SubsumptionMode) -> Result<Space> {
        let individuals: Vec<String> = sig.individuals.iter().cloned().collect();
        let concepts: Vec<String> = sig.atomic_concepts.iter().cloned().collect();
        let roles: Vec<String> = sig.roles.iter().cloned().collect();
        let objects = individuals.len() + usize::from(with_anon);

        let trit_cells = objects * concepts.len();
        let edge_cells = roles.len() * individuals.len() * individuals.len();
        let trit_combos = 3u128.checked_pow(u32::try_from(trit_cells).unwrap_or(u32::MAX));
        let edge_combos = 2u128.checked_pow(u32::try_from(edge_cells).unwrap_or(u32::MAX));
        let combos = trit_combos.zip(edge_combos).and_then(|(t, e)| t.checked_mul(e));
        match combos {
            Some(n) if n <= MAX_ASSIGNMENTS => {}
            _ => {
                return Err(Error::OracleInapplicable(format!(
                    "search space of {trit_cells} truth cells and {edge_cells} role cells \
                     exceeds {MAX_ASSIGNMENTS} assignments"
                )))
            }
        }
        if individuals.len() * concepts.len() > 64 {
            return Err(Error::OracleInapplicable(
                "more than 64 (individual, concept) pairs".into(),
            ));
        }
        Ok(Space { individuals, concepts, roles, objects, mode })
    }

    fn first(&self) -> Assignment {
        Assignment {
            trits: vec![Trit::True; self.objects * self.concepts.len()],
            edges: vec![false; self.roles.len() * self.individuals.len() * self.individuals.len()],
        }
    }

    /// Base-3 odometer over the trits, then base-2 over the edges. Returns
    /// false once the space is exhausted.
    fn advance(&self, asg: &mut Assignment) -> bool {
        for t in &mut asg.trits {
            match *t {
                Trit::True => {
                    *t = Trit::False;
                    return true;
                }
                Trit::False => {
                    *t = Trit::Both;
                    return true;
                }
                Trit::Both => *t = Trit::True,
            }
        }
        for e in &mut asg.edges {
            if *e {
                *e = false;
            } else {
                *e = true;
                return true;
            }
        }
        false
    }

    fn concept_idx(&self, name: &str) -> usize {
        self.concepts.binary_search_by(|c| c.as_str().cmp(name)).expect("concept in signature")
    }

    fn individual_idx(&self, name: &str) -> usize {
        self.individuals
            .binary_search_by(|c| c.as_str().cmp(name))
            .expect("individual in signature")
    }

    fn edge_idx(&self, role: &str, from: usize, to: usize) -> usize {
        let r = self.roles.binary_search_by(|c| c.as_str().cmp(role)).expect("role in signature");
        let n = self.individuals.len();
        r * n * n + from * n + to
    }

    fn concept_flags(&self, asg: &Assignment, obj: usize, c: &ConceptExpr) -> (bool, bool) {
        match c {
            ConceptExpr::Top => (true, false),
            ConceptExpr::Bottom => (false, true),
            ConceptExpr::Atomic(name) => {
                asg.trits[obj * self.concepts.len() + self.concept_idx(name)].flags()
            }
            ConceptExpr::Not(inner) => {
                let (t, f) = self.concept_flags(asg, obj, inner);
                (f, t)
            }
            ConceptExpr::And(a, b) => {
                let (ta, fa) = self.concept_flags(asg, obj, a);
                let (tb, fb) = self.concept_flags(asg, obj, b);
                (ta && tb, fa || fb)
            }
            ConceptExpr::Or(a, b) => {
                let (ta, fa) = self.concept_flags(asg, obj, a);
                let (tb, fb) = self.concept_flags(asg, obj, b);
                (ta || tb, fa && fb)
            }
            ConceptExpr::Exists(_, _) | ConceptExpr::Forall(_, _) => {
                unreachable!("oracle scope is quantifier-free")
            }
        }
    }

    fn prop_truth(&self, asg: &Assignment, prop: &Proposition) -> TruthSet {
        match prop {
            Proposition::ConceptAssertion(a, c) => {
                let (t, f) = self.concept_flags(asg, self.individual_idx(a), c);
                TruthSet::from_flags(t, f)
            }
            Proposition::RoleAssertion(a, b, r) => {
                let idx = self.edge_idx(r, self.individual_idx(a), self.individual_idx(b));
                if asg.edges[idx] {
                    TruthSet::True
                } else {
                    TruthSet::False
                }
            }
            Proposition::Subsumption(c, d) => {
                let holds = match self.mode {
                    SubsumptionMode::Internal => (0..self.objects).all(|o| {
                        let (tc, fc) = self.concept_flags(asg, o, c);
                        let (td, fd) = self.concept_flags(asg, o, d);
                        (!tc || td) && (!fd || fc)
                    }),
                    SubsumptionMode::Material => (0..self.objects).all(|o| {
                        let (_, fc) = self.concept_flags(asg, o, c);
                        let (td, _) = self.concept_flags(asg, o, d);
                        fc || td
                    }),
                };
                if holds {
                    TruthSet::True
                } else {
                    TruthSet::False
                }
            }
            Proposition::Equality(c, d) => {
                let holds = match self.mode {
                    SubsumptionMode::Internal => (0..self.objects)
                        .all(|o| self.concept_flags(asg, o, c) == self.concept_flags(asg, o, d)),
                    SubsumptionMode::Material => (0..self.objects).all(|o| {
                        let (tc, fc) = self.concept_flags(asg, o, c);
                        let (td, fd) = self.concept_flags(asg, o, d);
                        (fc || td) && (fd || tc)
                    }),
                };
                if holds {
                    TruthSet::True
                } else {
                    TruthSet::False
                }
            }
        }
    }

    fn satisfies_kb(&self, asg: &Assignment, kb: &KnowledgeBase) -> bool {
        kb.propositions().all(|p| self.prop_truth(asg, p).contains_true())
    }

    /// Bitmask of conflicting (named individual, concept) pairs.
    fn conflict_mask(&self, asg: &Assignment) -> u64 {
        let mut mask = 0u64;
        let n_concepts = self.concepts.len();
        for ind in 0..self.individuals.len() {
            for c in 0..n_concepts {
                if asg.trits[ind * n_concepts + c] == Trit::Both {
                    mask |= 1 << (ind * n_concepts + c);
                }
            }
        }
        mask
    }

    fn to_interpretation(&self, asg: &Assignment) -> FiniteInterpretation {
        let mut interp = FiniteInterpretation::new(self.objects);
        for (i, name) in self.individuals.iter().enumerate() {
            interp.set_individual(name, i).expect("object in range");
        }
        for (c, name) in self.concepts.iter().enumerate() {
            let mut positive = BTreeSet::new();
            let mut negative = BTreeSet::new();
            for o in 0..self.objects {
                let (t, f) = asg.trits[o * self.concepts.len() + c].flags();
                if t {
                    positive.insert(o);
                }
                if f {
                    negative.insert(o);
                }
            }
            interp.set_concept(name, positive, negative).expect("coverage holds");
        }
        for role in &self.roles {
            interp.declare_role(role);
            let n = self.individuals.len();
            for from in 0..n {
                for to in 0..n {
                    if asg.edges[self.edge_idx(role, from, to)] {
                        interp.add_role_pair(role, from, to).expect("object in range");
                    }
                }
            }
        }
        interp
    }
}

fn check_scope(kb: &KnowledgeBase, props: &[&Proposition]) -> Result<()> {
    let offender = kb.propositions().chain(props.iter().copied()).find(|p| !p.is_quantifier_free());
    match offender {
        Some(p) => Err(Error::OracleInapplicable(format!(
            "`{p}` contains a quantified concept; the oracle covers only the quantifier-free fragment"
        ))),
        None => Ok(()),
    }
}

/// Streaming iterator over every model of `kb` with one domain object per
/// named individual of `sig`.
pub struct ModelIter {
    space: Space,
    kb: KnowledgeBase,
    state: Option<Assignment>,
}

impl Iterator for ModelIter {
    type Item = FiniteInterpretation;

    fn next(&mut self) -> Option<FiniteInterpretation> {
        loop {
            let asg = self.state.as_ref()?;
            let interp =
                self.space.satisfies_kb(asg, &self.kb).then(|| self.space.to_interpretation(asg));
            if !self.space.advance(self.state.as_mut().expect("state checked above")) {
                self.state = None;
            }
            if let Some(interp) = interp {
                return Some(interp);
            }
        }
    }
}

/// Enumerates every model of `kb` over the fixed named-individual domain.
/// `sig` must cover `kb` and contain at least one individual.
pub fn enumerate_models(
    kb: &KnowledgeBase,
    sig: &Signature,
    mode: SubsumptionMode,
) -> Result<ModelIter> {
    check_scope(kb, &[])?;
    if sig.individuals.is_empty() {
        return Err(Error::OracleInapplicable(
            "no named individuals: the fixed domain would be empty".into(),
        ));
    }
    let space = Space::new(sig, false, mode)?;
    let state = Some(space.first());
    Ok(ModelIter { space, kb: kb.clone(), state })
}

fn query_space(kb: &KnowledgeBase, query: &Proposition, mode: SubsumptionMode) -> Result<Space> {
    check_scope(kb, &[query])?;
    let sig = signature_with(kb, [query]);
    let with_anon = query.is_axiom() || sig.individuals.is_empty();
    Space::new(&sig, with_anon, mode)
}

/// True when every model of `kb` makes `query` at least true.
pub fn oracle_lp_entails(
    kb: &KnowledgeBase,
    query: &Proposition,
    mode: SubsumptionMode,
) -> Result<bool> {
    let space = query_space(kb, query, mode)?;
    let mut asg = space.first();
    loop {
        if space.satisfies_kb(&asg, kb) && !space.prop_truth(&asg, query).contains_true() {
            return Ok(false);
        }
        if !space.advance(&mut asg) {
            return Ok(true);
        }
    }
}

/// True when every conflict-minimal model of `kb` makes `query` at least
/// true. Minimality compares conflict sets over named individuals by strict
/// inclusion.
pub fn oracle_lpm_entails(
    kb: &KnowledgeBase,
    query: &Proposition,
    mode: SubsumptionMode,
) -> Result<bool> {
    let space = query_space(kb, query, mode)?;
    // For each conflict set reached by some model, whether the query held in
    // all models with exactly that conflict set.
    let mut by_mask: HashMap<u64, bool> = HashMap::new();
    let mut asg = space.first();
    loop {
        if space.satisfies_kb(&asg, kb) {
            let verdict = space.prop_truth(&asg, query).contains_true();
            by_mask
                .entry(space.conflict_mask(&asg))
                .and_modify(|v| *v &= verdict)
                .or_insert(verdict);
        }
        if !space.advance(&mut asg) {
            break;
        }
    }
    let minimal = minimal_masks(by_mask.keys().copied());
    Ok(minimal.into_iter().all(|m| by_mask[&m]))
}

fn minimal_masks(masks: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let all: Vec<u64> = {
        let set: BTreeSet<u64> = masks.into_iter().collect();
        set.into_iter().collect()
    };
    all.iter()
        .copied()
        .filter(|&m| !all.iter().any(|&other| other != m && other & m == other))
        .collect()
}

/// The conflict-minimal models of `kb` over the named-individual domain of
/// `sig`, in enumeration order.
pub fn conflict_minimal_models(
    kb: &KnowledgeBase,
    sig: &Signature,
    mode: SubsumptionMode,
) -> Result<Vec<FiniteInterpretation>> {
    check_scope(kb, &[])?;
    if sig.individuals.is_empty() {
        return Err(Error::OracleInapplicable(
            "no named individuals: the fixed domain would be empty".into(),
        ));
    }
    let space = Space::new(sig, false, mode)?;

    let mut masks = BTreeSet::new();
    let mut asg = space.first();
    loop {
        if space.satisfies_kb(&asg, kb) {
            masks.insert(space.conflict_mask(&asg));
        }
        if !space.advance(&mut asg) {
            break;
        }
    }
    let minimal = minimal_masks(masks);

    let mut out = Vec::new();
    let mut asg = space.first();
    loop {
        if space.satisfies_kb(&asg, kb) && minimal.contains(&space.conflict_mask(&asg)) {
            out.push(space.to_interpretation(&asg));
        }
        if !space.advance(&mut asg) {
            break;
        }
    }
    Ok(out)
}
