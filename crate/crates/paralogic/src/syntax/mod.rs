//! Concept and proposition syntax: AST, parser, serializer, signature.
//!
//! Concrete syntax (ASCII): `top`, `bot`, `~C`, `(C & D)`, `(C | D)`,
//! `exists R. C`, `forall R. C`. Statements are axioms `C <= D` / `C == D`
//! or assertions `a : C` / `(a, b) : R`, each terminated by `.`.
//! Parentheses around a binary concept are mandatory except at the top
//! level of a statement or query.

mod lexer;
mod parser;

pub use parser::{parse_concept, parse_kb, parse_proposition};

use std::collections::BTreeSet;
use std::fmt;

/// A concept expression over atomic concept names and role names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptExpr {
    Top,
    Bottom,
    Atomic(String),
    Not(Box<ConceptExpr>),
    And(Box<ConceptExpr>, Box<ConceptExpr>),
    Or(Box<ConceptExpr>, Box<ConceptExpr>),
    /// `exists R. C`
    Exists(String, Box<ConceptExpr>),
    /// `forall R. C`
    Forall(String, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn atomic(name: &str) -> Self {
        ConceptExpr::Atomic(name.to_string())
    }

    // Constructor named after the variant, not the `!` operator.
    #[allow(clippy::should_implement_trait)]
    pub fn not(c: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(c))
    }

    pub fn and(a: ConceptExpr, b: ConceptExpr) -> Self {
        ConceptExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ConceptExpr, b: ConceptExpr) -> Self {
        ConceptExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(role: &str, c: ConceptExpr) -> Self {
        ConceptExpr::Exists(role.to_string(), Box::new(c))
    }

    pub fn forall(role: &str, c: ConceptExpr) -> Self {
        ConceptExpr::Forall(role.to_string(), Box::new(c))
    }

    /// True when the expression contains no `exists`/`forall`.
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Atomic(_) => true,
            ConceptExpr::Not(c) => c.is_quantifier_free(),
            ConceptExpr::And(a, b) | ConceptExpr::Or(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            ConceptExpr::Exists(_, _) | ConceptExpr::Forall(_, _) => false,
        }
    }

    /// True when the expression mentions `top` or `bot`.
    pub fn mentions_constants(&self) -> bool {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom => true,
            ConceptExpr::Atomic(_) => false,
            ConceptExpr::Not(c) => c.mentions_constants(),
            ConceptExpr::And(a, b) | ConceptExpr::Or(a, b) => {
                a.mentions_constants() || b.mentions_constants()
            }
            ConceptExpr::Exists(_, c) | ConceptExpr::Forall(_, c) => c.mentions_constants(),
        }
    }
}

impl fmt::Display for ConceptExpr {
    /// Serializes with full parentheses around every binary operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpr::Top => write!(f, "top"),
            ConceptExpr::Bottom => write!(f, "bot"),
            ConceptExpr::Atomic(name) => write!(f, "{name}"),
            ConceptExpr::Not(c) => write!(f, "~{c}"),
            ConceptExpr::And(a, b) => write!(f, "({a} & {b})"),
            ConceptExpr::Or(a, b) => write!(f, "({a} | {b})"),
            ConceptExpr::Exists(r, c) => write!(f, "exists {r}. {c}"),
            ConceptExpr::Forall(r, c) => write!(f, "forall {r}. {c}"),
        }
    }
}

/// A TBox axiom or ABox assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Proposition {
    /// `C <= D`
    Subsumption(ConceptExpr, ConceptExpr),
    /// `C == D`
    Equality(ConceptExpr, ConceptExpr),
    /// `a : C`
    ConceptAssertion(String, ConceptExpr),
    /// `(a, b) : R`
    RoleAssertion(String, String, String),
}

impl Proposition {
    pub fn is_axiom(&self) -> bool {
        matches!(self, Proposition::Subsumption(_, _) | Proposition::Equality(_, _))
    }

    pub fn is_assertion(&self) -> bool {
        !self.is_axiom()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Proposition::Subsumption(c, d) | Proposition::Equality(c, d) => {
                c.is_quantifier_free() && d.is_quantifier_free()
            }
            Proposition::ConceptAssertion(_, c) => c.is_quantifier_free(),
            Proposition::RoleAssertion(_, _, _) => true,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proposition::Subsumption(c, d) => write!(f, "{c} <= {d}"),
            Proposition::Equality(c, d) => write!(f, "{c} == {d}"),
            Proposition::ConceptAssertion(a, c) => write!(f, "{a} : {c}"),
            Proposition::RoleAssertion(a, b, r) => write!(f, "({a}, {b}) : {r}"),
        }
    }
}

/// An assertion `a : A` with `A` an atomic concept name. These are the
/// propositions that can carry a truth-value conflict: they show up as
/// conflict-set members, as tableau assumptions ("no conflict on a : A"),
/// and as conflict conclusions of arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicAssertion {
    pub individual: String,
    pub concept: String,
}

impl AtomicAssertion {
    pub fn new(individual: &str, concept: &str) -> Self {
        AtomicAssertion { individual: individual.to_string(), concept: concept.to_string() }
    }

    pub fn to_proposition(&self) -> Proposition {
        Proposition::ConceptAssertion(
            self.individual.clone(),
            ConceptExpr::Atomic(self.concept.clone()),
        )
    }
}

impl fmt::Display for AtomicAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.individual, self.concept)
    }
}

/// A finite set of axioms and assertions with set semantics and stable
/// insertion order. Axioms and assertions are kept apart; `add` routes
/// each proposition to the right box and drops duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    tbox: Vec<Proposition>,
    abox: Vec<Proposition>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a proposition, keeping duplicates out. Returns true when
    /// the proposition was new.
    pub fn add(&mut self, prop: Proposition) -> bool {
        let bucket = if prop.is_axiom() { &mut self.tbox } else { &mut self.abox };
        if bucket.contains(&prop) {
            false
        } else {
            bucket.push(prop);
            true
        }
    }

    pub fn tbox(&self) -> &[Proposition] {
        &self.tbox
    }

    pub fn abox(&self) -> &[Proposition] {
        &self.abox
    }

    /// All propositions, axioms first, each box in insertion order.
    pub fn propositions(&self) -> impl Iterator<Item = &Proposition> {
        self.tbox.iter().chain(self.abox.iter())
    }

    pub fn len(&self) -> usize {
        self.tbox.len() + self.abox.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tbox.is_empty() && self.abox.is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.propositions().all(Proposition::is_quantifier_free)
    }

    /// One statement per line, axioms before assertions.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for prop in self.propositions() {
            writeln!(f, "{prop}.")?;
        }
        Ok(())
    }
}

impl FromIterator<Proposition> for KnowledgeBase {
    fn from_iter<I: IntoIterator<Item = Proposition>>(iter: I) -> Self {
        let mut kb = KnowledgeBase::new();
        for p in iter {
            kb.add(p);
        }
        kb
    }
}

/// The identifiers occurring in a knowledge base or query, split by
/// syntactic position. The three namespaces are disjoint: the same name
/// may appear as an individual, a role, and an atomic concept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub individuals: BTreeSet<String>,
    pub atomic_concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    fn extend_with_concept(&mut self, c: &ConceptExpr) {
        match c {
            ConceptExpr::Top | ConceptExpr::Bottom => {}
            ConceptExpr::Atomic(name) => {
                self.atomic_concepts.insert(name.clone());
            }
            ConceptExpr::Not(inner) => self.extend_with_concept(inner),
            ConceptExpr::And(a, b) | ConceptExpr::Or(a, b) => {
                self.extend_with_concept(a);
                self.extend_with_concept(b);
            }
            ConceptExpr::Exists(r, inner) | ConceptExpr::Forall(r, inner) => {
                self.roles.insert(r.clone());
                self.extend_with_concept(inner);
            }
        }
    }

    pub fn extend_with(&mut self, prop: &Proposition) {
        match prop {
            Proposition::Subsumption(c, d) | Proposition::Equality(c, d) => {
                self.extend_with_concept(c);
                self.extend_with_concept(d);
            }
            Proposition::ConceptAssertion(a, c) => {
                self.individuals.insert(a.clone());
                self.extend_with_concept(c);
            }
            Proposition::RoleAssertion(a, b, r) => {
                self.individuals.insert(a.clone());
                self.individuals.insert(b.clone());
                self.roles.insert(r.clone());
            }
        }
    }
}

pub fn signature_of(kb: &KnowledgeBase) -> Signature {
    let mut sig = Signature::default();
    for prop in kb.propositions() {
        sig.extend_with(prop);
    }
    sig
}

/// Signature of `kb` together with extra propositions (typically the query).
pub fn signature_with<'a>(
    kb: &KnowledgeBase,
    extra: impl IntoIterator<Item = &'a Proposition>,
) -> Signature {
    let mut sig = signature_of(kb);
    for prop in extra {
        sig.extend_with(prop);
    }
    sig
}

/// Parse error with source position and the token set that would have
/// been accepted at that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected {}, found {}",
            self.line,
            self.col,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}
