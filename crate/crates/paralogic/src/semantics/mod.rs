//! Three-valued interpretations and their evaluation.
//!
//! An interpretation assigns every atomic concept a pair of extensions
//! ⟨positive, negative⟩ whose union covers the whole domain; overlap is a
//! truth-value conflict, an empty gap is ruled out. Concept constructors
//! evaluate pointwise on such pairs; an assertion is at-least-true when the
//! individual sits in the positive extension and at-least-false when it sits
//! in the negative one. Role membership stays two-valued.

mod oracle;

pub use oracle::{
    conflict_minimal_models, enumerate_models, oracle_lp_entails, oracle_lpm_entails, ModelIter,
};

use crate::syntax::{AtomicAssertion, ConceptExpr, KnowledgeBase, Proposition, Signature};
use crate::{Error, Result, SubsumptionMode};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Truth value of a proposition: at least true, at least false, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthSet {
    True,
    False,
    Conflict,
}

impl TruthSet {
    pub fn contains_true(self) -> bool {
        matches!(self, TruthSet::True | TruthSet::Conflict)
    }

    pub fn contains_false(self) -> bool {
        matches!(self, TruthSet::False | TruthSet::Conflict)
    }

    /// Builds from membership flags. At least one flag must hold; extension
    /// coverage guarantees that for every well-formed interpretation.
    pub fn from_flags(t: bool, f: bool) -> TruthSet {
        match (t, f) {
            (true, true) => TruthSet::Conflict,
            (true, false) => TruthSet::True,
            (false, true) => TruthSet::False,
            (false, false) => panic!("truth-value gap: extension coverage violated"),
        }
    }
}

impl fmt::Display for TruthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthSet::True => write!(f, "T"),
            TruthSet::False => write!(f, "F"),
            TruthSet::Conflict => write!(f, "TF"),
        }
    }
}

/// Domain objects are dense indices `0..domain_size`.
pub type Object = usize;

/// A concept's pair of extensions. `positive ∪ negative` must cover the
/// domain; the intersection holds the conflicting objects.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extension {
    pub positive: BTreeSet<Object>,
    pub negative: BTreeSet<Object>,
}

/// The atomic assertions with a conflicting truth value, one entry per
/// (named individual, atomic concept) pair.
pub type ConflictSet = BTreeSet<AtomicAssertion>;

/// Strict conflict ordering: `a` has strictly fewer conflicts than `b`.
pub fn less_conflicts(a: &ConflictSet, b: &ConflictSet) -> bool {
    a.len() < b.len() && a.is_subset(b)
}

/// An explicit interpretation over a finite domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterpretation {
    domain_size: usize,
    concepts: BTreeMap<String, Extension>,
    individuals: BTreeMap<String, Object>,
    roles: BTreeMap<String, BTreeSet<(Object, Object)>>,
    /// Negative extension chosen for `top` (its positive extension is the
    /// whole domain).
    top_negatives: BTreeSet<Object>,
    /// Positive extension chosen for `bot` (its negative extension is the
    /// whole domain).
    bottom_positives: BTreeSet<Object>,
}

impl FiniteInterpretation {
    pub fn new(domain_size: usize) -> Self {
        FiniteInterpretation {
            domain_size,
            concepts: BTreeMap::new(),
            individuals: BTreeMap::new(),
            roles: BTreeMap::new(),
            top_negatives: BTreeSet::new(),
            bottom_positives: BTreeSet::new(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn objects(&self) -> impl Iterator<Item = Object> {
        0..self.domain_size
    }

    pub fn individuals(&self) -> &BTreeMap<String, Object> {
        &self.individuals
    }

    fn check_object(&self, o: Object) -> Result<()> {
        if o < self.domain_size {
            Ok(())
        } else {
            Err(Error::InvalidInterpretation(format!(
                "object {o} is outside the domain 0..{}",
                self.domain_size
            )))
        }
    }

    pub fn set_individual(&mut self, name: &str, o: Object) -> Result<()> {
        self.check_object(o)?;
        self.individuals.insert(name.to_string(), o);
        Ok(())
    }

    /// Sets an atomic concept's extensions. Fails unless the two sets
    /// jointly cover the domain.
    pub fn set_concept(
        &mut self,
        name: &str,
        positive: BTreeSet<Object>,
        negative: BTreeSet<Object>,
    ) -> Result<()> {
        for &o in positive.iter().chain(negative.iter()) {
            self.check_object(o)?;
        }
        if (0..self.domain_size).any(|o| !positive.contains(&o) && !negative.contains(&o)) {
            return Err(Error::InvalidInterpretation(format!(
                "extensions of `{name}` leave a truth-value gap"
            )));
        }
        self.concepts.insert(name.to_string(), Extension { positive, negative });
        Ok(())
    }

    /// Declares a role (possibly with no pairs).
    pub fn declare_role(&mut self, name: &str) {
        self.roles.entry(name.to_string()).or_default();
    }

    pub fn add_role_pair(&mut self, name: &str, from: Object, to: Object) -> Result<()> {
        self.check_object(from)?;
        self.check_object(to)?;
        self.roles.entry(name.to_string()).or_default().insert((from, to));
        Ok(())
    }

    pub fn set_top_negatives(&mut self, objs: BTreeSet<Object>) -> Result<()> {
        for &o in &objs {
            self.check_object(o)?;
        }
        self.top_negatives = objs;
        Ok(())
    }

    pub fn set_bottom_positives(&mut self, objs: BTreeSet<Object>) -> Result<()> {
        for &o in &objs {
            self.check_object(o)?;
        }
        self.bottom_positives = objs;
        Ok(())
    }

    fn all_objects(&self) -> BTreeSet<Object> {
        (0..self.domain_size).collect()
    }

    /// Evaluates a concept to its extension pair, one constructor at a time.
    pub fn eval_concept(&self, c: &ConceptExpr) -> Result<Extension> {
        match c {
            ConceptExpr::Top => {
                Ok(Extension { positive: self.all_objects(), negative: self.top_negatives.clone() })
            }
            ConceptExpr::Bottom => Ok(Extension {
                positive: self.bottom_positives.clone(),
                negative: self.all_objects(),
            }),
            ConceptExpr::Atomic(name) => self.concepts.get(name).cloned().ok_or_else(|| {
                Error::UnknownIdentifier { kind: "atomic concept", name: name.clone() }
            }),
            ConceptExpr::Not(inner) => {
                let ext = self.eval_concept(inner)?;
                Ok(Extension { positive: ext.negative, negative: ext.positive })
            }
            ConceptExpr::And(a, b) => {
                let (ea, eb) = (self.eval_concept(a)?, self.eval_concept(b)?);
                Ok(Extension {
                    positive: ea.positive.intersection(&eb.positive).copied().collect(),
                    negative: ea.negative.union(&eb.negative).copied().collect(),
                })
            }
            ConceptExpr::Or(a, b) => {
                let (ea, eb) = (self.eval_concept(a)?, self.eval_concept(b)?);
                Ok(Extension {
                    positive: ea.positive.union(&eb.positive).copied().collect(),
                    negative: ea.negative.intersection(&eb.negative).copied().collect(),
                })
            }
            ConceptExpr::Exists(role, inner) => {
                let ext = self.eval_concept(inner)?;
                let pairs = self.role_pairs(role)?;
                let positive = self
                    .objects()
                    .filter(|&x| pairs.iter().any(|&(f, t)| f == x && ext.positive.contains(&t)))
                    .collect();
                let negative = self
                    .objects()
                    .filter(|&x| {
                        pairs
                            .iter()
                            .filter(|&&(f, _)| f == x)
                            .all(|&(_, t)| ext.negative.contains(&t))
                    })
                    .collect();
                Ok(Extension { positive, negative })
            }
            ConceptExpr::Forall(role, inner) => {
                let ext = self.eval_concept(inner)?;
                let pairs = self.role_pairs(role)?;
                let positive = self
                    .objects()
                    .filter(|&x| {
                        pairs
                            .iter()
                            .filter(|&&(f, _)| f == x)
                            .all(|&(_, t)| ext.positive.contains(&t))
                    })
                    .collect();
                let negative = self
                    .objects()
                    .filter(|&x| pairs.iter().any(|&(f, t)| f == x && ext.negative.contains(&t)))
                    .collect();
                Ok(Extension { positive, negative })
            }
        }
    }

    fn role_pairs(&self, role: &str) -> Result<&BTreeSet<(Object, Object)>> {
        self.roles
            .get(role)
            .ok_or_else(|| Error::UnknownIdentifier { kind: "role", name: role.to_string() })
    }

    fn individual(&self, name: &str) -> Result<Object> {
        self.individuals
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownIdentifier { kind: "individual", name: name.to_string() })
    }

    /// Truth value of a proposition. Axioms are two-valued (never
    /// `Conflict`); assertions inherit conflicts from the extensions.
    pub fn eval_prop(&self, prop: &Proposition, mode: SubsumptionMode) -> Result<TruthSet> {
        match prop {
            Proposition::ConceptAssertion(a, c) => {
                let obj = self.individual(a)?;
                let ext = self.eval_concept(c)?;
                Ok(TruthSet::from_flags(ext.positive.contains(&obj), ext.negative.contains(&obj)))
            }
            Proposition::RoleAssertion(a, b, r) => {
                let (oa, ob) = (self.individual(a)?, self.individual(b)?);
                let present = self.role_pairs(r)?.contains(&(oa, ob));
                Ok(if present { TruthSet::True } else { TruthSet::False })
            }
            Proposition::Subsumption(c, d) => {
                let (ec, ed) = (self.eval_concept(c)?, self.eval_concept(d)?);
                let holds = match mode {
                    SubsumptionMode::Internal => {
                        ec.positive.is_subset(&ed.positive) && ed.negative.is_subset(&ec.negative)
                    }
                    SubsumptionMode::Material => {
                        self.objects().all(|o| ec.negative.contains(&o) || ed.positive.contains(&o))
                    }
                };
                Ok(if holds { TruthSet::True } else { TruthSet::False })
            }
            Proposition::Equality(c, d) => {
                let holds = match mode {
                    SubsumptionMode::Internal => {
                        let (ec, ed) = (self.eval_concept(c)?, self.eval_concept(d)?);
                        ec == ed
                    }
                    SubsumptionMode::Material => {
                        let fwd = Proposition::Subsumption(c.clone(), d.clone());
                        let bwd = Proposition::Subsumption(d.clone(), c.clone());
                        self.eval_prop(&fwd, mode)?.contains_true()
                            && self.eval_prop(&bwd, mode)?.contains_true()
                    }
                };
                Ok(if holds { TruthSet::True } else { TruthSet::False })
            }
        }
    }

    /// True when every proposition of `kb` is at least true.
    pub fn satisfies(&self, kb: &KnowledgeBase, mode: SubsumptionMode) -> Result<bool> {
        for prop in kb.propositions() {
            if !self.eval_prop(prop, mode)?.contains_true() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Conflicting atomic assertions over the signature's named individuals.
    pub fn conflict_set(&self, sig: &Signature) -> Result<ConflictSet> {
        let mut out = ConflictSet::new();
        for ind in &sig.individuals {
            let obj = self.individual(ind)?;
            for concept in &sig.atomic_concepts {
                let ext = self.concepts.get(concept).ok_or_else(|| Error::UnknownIdentifier {
                    kind: "atomic concept",
                    name: concept.clone(),
                })?;
                if ext.positive.contains(&obj) && ext.negative.contains(&obj) {
                    out.insert(AtomicAssertion::new(ind, concept));
                }
            }
        }
        Ok(out)
    }
}

/// Canonical one-line rendering of a model: `individual:Concept=V` pairs
/// (V one of `T`, `F`, `TF`), sorted, single-space separated.
pub fn model_line(interp: &FiniteInterpretation, sig: &Signature) -> Result<String> {
    let mut pairs = Vec::new();
    for ind in &sig.individuals {
        let obj = interp.individual(ind)?;
        for concept in &sig.atomic_concepts {
            let ext = interp.eval_concept(&ConceptExpr::Atomic(concept.clone()))?;
            let value =
                TruthSet::from_flags(ext.positive.contains(&obj), ext.negative.contains(&obj));
            pairs.push(format!("{ind}:{concept}={value}"));
        }
    }
    Ok(pairs.join(" "))
}

#[cfg(test)]
mod tests;
