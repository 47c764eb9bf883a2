//! Signed tableaux for four-label proof search.
//!
//! Labels: `T` (at least true), `F` (at least false), `~T` (not at least
//! true), `~F` (not at least false). To prove that a knowledge base forces a
//! goal `L φ`, the root takes every knowledge-base proposition with label `T`
//! together with the goal's complement (`~T φ` or `~F φ`) and is saturated.
//!
//! A branch closes *strongly* on `{T α, ~T α}`, `{F α, ~F α}`, or
//! `{~T α, ~F α}` (and on `~T a : top` or `~F a : bot` alone): no
//! interpretation survives. A branch holding both `T α` and `F α` for an
//! atomic assertion α on a named individual closes only *weakly*: an
//! interpretation survives by making α conflicting, so the closure is
//! conditional on the assumption "no conflict on α". Conflicts on generated
//! individuals close nothing: no named assumption could rule them out.
//!
//! Rule order is deterministic: non-branching rules (including the
//! role-propagation rules) first, then branching rules, then the rules that
//! generate fresh individuals, always on the oldest eligible premise.
//! Generated individuals are subject to ancestor blocking; a blocked
//! individual stops generating successors but still receives propagated and
//! decomposed formulas, otherwise a blocked branch could miss a closure and
//! report a model that does not exist.

pub mod export;


use crate::syntax::{AtomicAssertion, ConceptExpr, KnowledgeBase, Proposition};
use crate::{Error, Limits, Result, SubsumptionMode};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Signed-formula label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// At least true: `t ∈ π(φ)`.
    T,
    /// At least false: `f ∈ π(φ)`.
    F,
    /// Not at least true: `t ∉ π(φ)`.
    TBar,
    /// Not at least false: `f ∉ π(φ)`.
    FBar,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::T => write!(f, "T"),
            Label::F => write!(f, "F"),
            Label::TBar => write!(f, "~T"),
            Label::FBar => write!(f, "~F"),
        }
    }
}

/// Provable goal polarity. Only `T` and `F` goals exist; the barred labels
/// appear in roots as complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GoalLabel {
    T,
    F,
}

impl GoalLabel {
    pub fn label(self) -> Label {
        match self {
            GoalLabel::T => Label::T,
            GoalLabel::F => Label::F,
        }
    }

    /// The root label refuting the goal.
    pub fn complement(self) -> Label {
        match self {
            GoalLabel::T => Label::TBar,
            GoalLabel::F => Label::FBar,
        }
    }
}

impl fmt::Display for GoalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalLabel::T => write!(f, "T"),
            GoalLabel::F => write!(f, "F"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedProposition {
    pub label: Label,
    pub prop: Proposition,
}

impl SignedProposition {
    pub fn new(label: Label, prop: Proposition) -> Self {
        SignedProposition { label, prop }
    }
}

impl fmt::Display for SignedProposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label, self.prop)
    }
}

/// Final state of a saturated branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchStatus {
    /// Saturated with no closure: the branch describes a model.
    Open,
    /// Contains a complementary pair; closed unconditionally.
    StronglyClosed,
    /// Closed only by conflict pairs; each option is an atomic assertion
    /// whose no-conflict assumption would close the branch.
    WeaklyClosed(BTreeSet<AtomicAssertion>),
}

/// A generated individual blocked by an ancestor whose formula set covers
/// its own.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockedEntry {
    pub individual: String,
    pub blocker: String,
}

#[derive(Debug, Clone)]
pub struct Node {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Rule that produced this node; `None` on the root.
    pub rule: Option<&'static str>,
    /// Formulas this node adds to its branch.
    pub added: Vec<SignedProposition>,
    /// Set on saturated leaves.
    pub status: Option<BranchStatus>,
    /// Blocking pairs observed on this leaf's branch at saturation.
    pub blocked: Vec<BlockedEntry>,
}

#[derive(Debug, Clone)]
pub struct Tableau {
    mode: SubsumptionMode,
    nodes: Vec<Node>,
    fresh_individuals: Vec<String>,
}

impl Tableau {
    pub fn mode(&self) -> SubsumptionMode {
        self.mode
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn fresh_individuals(&self) -> &[String] {
        &self.fresh_individuals
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_empty())
    }

    /// Branch formulas from the root down to `leaf`, in insertion order.
    pub fn branch_props(&self, leaf: usize) -> Vec<&SignedProposition> {
        let mut chain = Vec::new();
        let mut cursor = Some(leaf);
        while let Some(i) = cursor {
            chain.push(i);
            cursor = self.nodes[i].parent;
        }
        chain.reverse();
        chain.into_iter().flat_map(|i| self.nodes[i].added.iter()).collect()
    }

    pub fn status(&self, leaf: usize) -> &BranchStatus {
        self.nodes[leaf].status.as_ref().expect("leaf is saturated")
    }

    /// True when every leaf closed strongly.
    pub fn is_proof(&self) -> bool {
        self.leaves().all(|l| matches!(self.status(l), BranchStatus::StronglyClosed))
    }
}

/// Result of a proof attempt.
#[derive(Debug, Clone)]
pub enum ProofResult {
    /// Every branch closed strongly; the goal holds in every model.
    Proved { tableau: Tableau },
    /// Every branch closed, some only weakly; the goal holds in every model
    /// respecting any one of the assumption sets (each set is ⊆-minimal).
    ProvedUnderAssumptions { tableau: Tableau, assumption_sets: Vec<BTreeSet<AtomicAssertion>> },
    /// Some branch saturated open.
    NotProvable { tableau: Tableau },
}

impl ProofResult {
    pub fn tableau(&self) -> &Tableau {
        match self {
            ProofResult::Proved { tableau }
            | ProofResult::ProvedUnderAssumptions { tableau, .. }
            | ProofResult::NotProvable { tableau } => tableau,
        }
    }

    /// The assumption-set family: `[]` when not provable, `[{}]` for an
    /// unconditional proof.
    pub fn assumption_sets(&self) -> Vec<BTreeSet<AtomicAssertion>> {
        match self {
            ProofResult::Proved { .. } => vec![BTreeSet::new()],
            ProofResult::ProvedUnderAssumptions { assumption_sets, .. } => assumption_sets.clone(),
            ProofResult::NotProvable { .. } => vec![],
        }
    }
}

/// Saturates a tableau from the given root formulas.
pub fn expand(
    root: &[SignedProposition],
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<Tableau> {
    Engine::new(mode, *limits).run(root)
}

/// Attempts to prove `kb ⊨ goal_label goal` by refuting the complement.
pub fn prove(
    kb: &KnowledgeBase,
    goal_label: GoalLabel,
    goal: &Proposition,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<ProofResult> {
    let mut root: Vec<SignedProposition> =
        kb.propositions().map(|p| SignedProposition::new(Label::T, p.clone())).collect();
    root.push(SignedProposition::new(goal_label.complement(), goal.clone()));
    let tableau = expand(&root, mode, limits)?;
    let sets = minimal_assumption_sets(&tableau);
    if sets.is_empty() {
        Ok(ProofResult::NotProvable { tableau })
    } else if sets.len() == 1 && sets[0].is_empty() {
        Ok(ProofResult::Proved { tableau })
    } else {
        Ok(ProofResult::ProvedUnderAssumptions { tableau, assumption_sets: sets })
    }
}

/// The ⊆-minimal assumption sets closing every leaf: pick one closing option
/// per weakly closed leaf (strongly closed leaves need none), union the
/// picks, and keep the minimal unions. Empty family when some leaf is open;
/// the single empty set when every leaf closed strongly.
pub fn minimal_assumption_sets(tableau: &Tableau) -> Vec<BTreeSet<AtomicAssertion>> {
    let mut families: Vec<&BTreeSet<AtomicAssertion>> = Vec::new();
    for leaf in tableau.leaves() {
        match tableau.status(leaf) {
            BranchStatus::Open => return vec![],
            BranchStatus::StronglyClosed => {}
            BranchStatus::WeaklyClosed(options) => families.push(options),
        }
    }
    let mut sets: Vec<BTreeSet<AtomicAssertion>> = vec![BTreeSet::new()];
    for options in families {
        let mut next: Vec<BTreeSet<AtomicAssertion>> = Vec::new();
        for s in &sets {
            if options.iter().any(|o| s.contains(o)) {
                push_unique(&mut next, s.clone());
            } else {
                for option in options {
                    let mut grown = s.clone();
                    grown.insert(option.clone());
                    push_unique(&mut next, grown);
                }
            }
        }
        sets = prune_minimal(next);
    }
    sets
}

fn push_unique(sets: &mut Vec<BTreeSet<AtomicAssertion>>, set: BTreeSet<AtomicAssertion>) {
    if !sets.contains(&set) {
        sets.push(set);
    }
}

/// Keeps the inclusion-minimal sets, sorted by size then contents.
pub(crate) fn prune_minimal(
    mut sets: Vec<BTreeSet<AtomicAssertion>>,
) -> Vec<BTreeSet<AtomicAssertion>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<BTreeSet<AtomicAssertion>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// How a rule rewrites a branch.
enum RuleApp {
    /// Add formulas to the current branch.
    Extend { rule: &'static str, adds: Vec<SignedProposition> },
    /// Split the branch in two.
    Split { rule: &'static str, left: Vec<SignedProposition>, right: Vec<SignedProposition> },
    /// Introduce a fresh individual from this premise (consumes it).
    Generate { rule: &'static str, premise: SignedProposition },
}

#[derive(Clone)]
struct BranchState {
    leaf: usize,
    props: Vec<SignedProposition>,
    present: BTreeSet<SignedProposition>,
    /// Generator premises already expanded on this branch.
    fired: BTreeSet<SignedProposition>,
    strong: bool,
}

impl BranchState {
    fn has(&self, sp: &SignedProposition) -> bool {
        self.present.contains(sp)
    }

    /// Individuals in first-occurrence order.
    fn individuals(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for sp in &self.props {
            let mut push = |name: &String| {
                if seen.insert(name.clone()) {
                    out.push(name.clone());
                }
            };
            match &sp.prop {
                Proposition::ConceptAssertion(a, _) => push(a),
                Proposition::RoleAssertion(a, b, _) => {
                    push(a);
                    push(b);
                }
                _ => {}
            }
        }
        out
    }

    /// Role successors `(a, b)` of `role` in branch order.
    fn successors(&self, a: &str, role: &str) -> Vec<String> {
        self.props
            .iter()
            .filter_map(|sp| match &sp.prop {
                Proposition::RoleAssertion(x, y, r)
                    if sp.label == Label::T && x == a && r == role =>
                {
                    Some(y.clone())
                }
                _ => None,
            })
            .collect()
    }
}

struct Engine {
    mode: SubsumptionMode,
    limits: Limits,
    nodes: Vec<Node>,
    named: BTreeSet<String>,
    fresh: Vec<String>,
    fresh_counter: usize,
}

impl Engine {
    fn new(mode: SubsumptionMode, limits: Limits) -> Self {
        Engine {
            mode,
            limits,
            nodes: Vec::new(),
            named: BTreeSet::new(),
            fresh: Vec::new(),
            fresh_counter: 0,
        }
    }

    fn run(mut self, root: &[SignedProposition]) -> Result<Tableau> {
        for sp in root {
            if let Proposition::ConceptAssertion(a, _) = &sp.prop {
                self.named.insert(a.clone());
            }
            if let Proposition::RoleAssertion(a, b, _) = &sp.prop {
                self.named.insert(a.clone());
                self.named.insert(b.clone());
            }
        }

        let root_idx = self.new_node(None, None)?;
        let mut state = BranchState {
            leaf: root_idx,
            props: Vec::new(),
            present: BTreeSet::new(),
            fired: BTreeSet::new(),
            strong: false,
        };
        for sp in root {
            self.add_prop(&mut state, root_idx, sp.clone());
        }

        let mut work = vec![state];
        while let Some(mut branch) = work.pop() {
            loop {
                if branch.strong {
                    self.finish_leaf(&branch, BranchStatus::StronglyClosed);
                    break;
                }
                let Some(app) = self.find_rule(&branch) else {
                    let status = self.saturated_status(&branch);
                    self.finish_leaf(&branch, status);
                    break;
                };
                match app {
                    RuleApp::Extend { rule, adds } => {
                        let node = self.new_node(Some(branch.leaf), Some(rule))?;
                        branch.leaf = node;
                        for sp in adds {
                            self.add_prop(&mut branch, node, sp);
                        }
                    }
                    RuleApp::Split { rule, left, right } => {
                        let l = self.new_node(Some(branch.leaf), Some(rule))?;
                        let r = self.new_node(Some(branch.leaf), Some(rule))?;
                        let mut right_state = branch.clone();
                        right_state.leaf = r;
                        for sp in right {
                            self.add_prop(&mut right_state, r, sp);
                        }
                        work.push(right_state);
                        branch.leaf = l;
                        for sp in left {
                            self.add_prop(&mut branch, l, sp);
                        }
                    }
                    RuleApp::Generate { rule, premise } => {
                        branch.fired.insert(premise.clone());
                        match self.generate(&premise) {
                            Generated::Extend(adds) => {
                                let node = self.new_node(Some(branch.leaf), Some(rule))?;
                                branch.leaf = node;
                                for sp in adds {
                                    self.add_prop(&mut branch, node, sp);
                                }
                            }
                            Generated::Split(left, right) => {
                                let l = self.new_node(Some(branch.leaf), Some(rule))?;
                                let r = self.new_node(Some(branch.leaf), Some(rule))?;
                                let mut right_state = branch.clone();
                                right_state.leaf = r;
                                for sp in right {
                                    self.add_prop(&mut right_state, r, sp);
                                }
                                work.push(right_state);
                                branch.leaf = l;
                                for sp in left {
                                    self.add_prop(&mut branch, l, sp);
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(Tableau { mode: self.mode, nodes: self.nodes, fresh_individuals: self.fresh })
    }

    fn new_node(&mut self, parent: Option<usize>, rule: Option<&'static str>) -> Result<usize> {
        if self.nodes.len() >= self.limits.max_nodes {
            return Err(Error::NodeBudgetExceeded { limit: self.limits.max_nodes });
        }
        let idx = self.nodes.len();
        self.nodes.push(Node {
            parent,
            children: Vec::new(),
            rule,
            added: Vec::new(),
            status: None,
            blocked: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(idx);
        }
        Ok(idx)
    }

    /// Adds a formula to a branch (skipping duplicates) and tracks strong
    /// closure.
    fn add_prop(&mut self, branch: &mut BranchState, node: usize, sp: SignedProposition) {
        if branch.present.contains(&sp) {
            return;
        }
        if self.closes_strongly(branch, &sp) {
            branch.strong = true;
        }
        self.nodes[node].added.push(sp.clone());
        branch.props.push(sp.clone());
        branch.present.insert(sp);
    }

    fn closes_strongly(&self, branch: &BranchState, sp: &SignedProposition) -> bool {
        let partners: &[Label] = match sp.label {
            Label::T => &[Label::TBar],
            Label::F => &[Label::FBar],
            Label::TBar => &[Label::T, Label::FBar],
            Label::FBar => &[Label::F, Label::TBar],
        };
        if partners.iter().any(|&l| branch.has(&SignedProposition::new(l, sp.prop.clone()))) {
            return true;
        }
        // `top` is positively universal and `bot` negatively universal, so
        // these two labels are unsatisfiable on their own.
        matches!(
            (&sp.label, &sp.prop),
            (Label::TBar, Proposition::ConceptAssertion(_, ConceptExpr::Top))
                | (Label::FBar, Proposition::ConceptAssertion(_, ConceptExpr::Bottom))
        )
    }

    fn finish_leaf(&mut self, branch: &BranchState, status: BranchStatus) {
        let leaf = branch.leaf;
        self.nodes[leaf].blocked = self
            .blocked_individuals(branch)
            .into_iter()
            .map(|(individual, blocker)| BlockedEntry { individual, blocker })
            .collect();
        self.nodes[leaf].status = Some(status);
    }

    fn saturated_status(&self, branch: &BranchState) -> BranchStatus {
        let mut flags: BTreeMap<AtomicAssertion, (bool, bool)> = BTreeMap::new();
        for sp in &branch.props {
            if let Proposition::ConceptAssertion(a, ConceptExpr::Atomic(c)) = &sp.prop {
                if !self.named.contains(a) {
                    continue;
                }
                let entry = flags.entry(AtomicAssertion::new(a, c)).or_insert((false, false));
                match sp.label {
                    Label::T => entry.0 = true,
                    Label::F => entry.1 = true,
                    _ => {}
                }
            }
        }
        let options: BTreeSet<AtomicAssertion> =
            flags.into_iter().filter(|(_, (t, f))| *t && *f).map(|(a, _)| a).collect();
        if options.is_empty() {
            BranchStatus::Open
        } else {
            BranchStatus::WeaklyClosed(options)
        }
    }

    fn fresh_name(&mut self) -> String {
        self.fresh_counter += 1;
        let name = format!("_x{}", self.fresh_counter);
        self.fresh.push(name.clone());
        name
    }

    /// Blocking relation on the branch: a generated individual is blocked
    /// by the nearest role ancestor whose formula set covers its own, and
    /// successors of blocked individuals are blocked in turn.
    fn blocked_individuals(&self, branch: &BranchState) -> BTreeMap<String, String> {
        let mut gamma: BTreeMap<&str, BTreeSet<(Label, &ConceptExpr)>> = BTreeMap::new();
        let mut edges: Vec<(&str, &str)> = Vec::new();
        for sp in &branch.props {
            match &sp.prop {
                Proposition::ConceptAssertion(a, c) => {
                    gamma.entry(a).or_default().insert((sp.label, c));
                }
                Proposition::RoleAssertion(a, b, _) if sp.label == Label::T => {
                    edges.push((a, b));
                }
                _ => {}
            }
        }
        let parents_of = |y: &str| -> Vec<&str> {
            edges.iter().filter(|(_, b)| *b == y).map(|(a, _)| *a).collect()
        };

        let mut blocked: BTreeMap<String, String> = BTreeMap::new();
        for y in &self.fresh {
            if blocked.contains_key(y) {
                continue;
            }
            let Some(gy) = gamma.get(y.as_str()) else { continue };
            // Walk ancestors breadth-first so the nearest blocker wins.
            let mut queue: VecDeque<&str> = parents_of(y).into();
            let mut seen: BTreeSet<&str> = queue.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                let covers = gamma.get(x).map(|gx| gy.is_subset(gx)).unwrap_or(false);
                if covers {
                    blocked.insert(y.clone(), x.to_string());
                    break;
                }
                for p in parents_of(x) {
                    if seen.insert(p) {
                        queue.push_back(p);
                    }
                }
            }
        }
        // Successors of blocked individuals are blocked as well.
        loop {
            let mut grew = false;
            for (a, b) in &edges {
                if blocked.contains_key(*a)
                    && self.fresh.iter().any(|f| f == b)
                    && !blocked.contains_key(*b)
                {
                    blocked.insert((*b).to_string(), (*a).to_string());
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        blocked
    }

    fn find_rule(&self, branch: &BranchState) -> Option<RuleApp> {
        self.find_non_branching(branch)
            .or_else(|| self.find_branching(branch))
            .or_else(|| self.find_generating(branch))
    }

    fn extend_if_new(
        &self,
        branch: &BranchState,
        rule: &'static str,
        adds: Vec<SignedProposition>,
    ) -> Option<RuleApp> {
        if adds.iter().any(|sp| !branch.has(sp)) {
            Some(RuleApp::Extend { rule, adds })
        } else {
            None
        }
    }

    fn split_if_open(
        &self,
        branch: &BranchState,
        rule: &'static str,
        left: Vec<SignedProposition>,
        right: Vec<SignedProposition>,
    ) -> Option<RuleApp> {
        let satisfied = |side: &[SignedProposition]| side.iter().all(|sp| branch.has(sp));
        if satisfied(&left) || satisfied(&right) {
            None
        } else {
            Some(RuleApp::Split { rule, left, right })
        }
    }

    fn find_non_branching(&self, branch: &BranchState) -> Option<RuleApp> {
        use ConceptExpr as C;
        use Label as L;
        use Proposition as P;

        for sp in &branch.props {
            let assert = |label: Label, ind: &str, c: &C| {
                SignedProposition::new(label, P::ConceptAssertion(ind.to_string(), c.clone()))
            };
            let found = match (&sp.label, &sp.prop) {
                (L::T, P::ConceptAssertion(a, C::Not(c))) => {
                    self.extend_if_new(branch, "neg-t", vec![assert(L::F, a, c)])
                }
                (L::TBar, P::ConceptAssertion(a, C::Not(c))) => {
                    self.extend_if_new(branch, "neg-tbar", vec![assert(L::FBar, a, c)])
                }
                (L::F, P::ConceptAssertion(a, C::Not(c))) => {
                    self.extend_if_new(branch, "neg-f", vec![assert(L::T, a, c)])
                }
                (L::FBar, P::ConceptAssertion(a, C::Not(c))) => {
                    self.extend_if_new(branch, "neg-fbar", vec![assert(L::TBar, a, c)])
                }
                (L::T, P::ConceptAssertion(a, C::And(c, d))) => self.extend_if_new(
                    branch,
                    "and-t",
                    vec![assert(L::T, a, c), assert(L::T, a, d)],
                ),
                (L::FBar, P::ConceptAssertion(a, C::And(c, d))) => self.extend_if_new(
                    branch,
                    "and-fbar",
                    vec![assert(L::FBar, a, c), assert(L::FBar, a, d)],
                ),
                (L::TBar, P::ConceptAssertion(a, C::Or(c, d))) => self.extend_if_new(
                    branch,
                    "or-tbar",
                    vec![assert(L::TBar, a, c), assert(L::TBar, a, d)],
                ),
                (L::F, P::ConceptAssertion(a, C::Or(c, d))) => {
                    self.extend_if_new(branch, "or-f", vec![assert(L::F, a, c), assert(L::F, a, d)])
                }
                // Propagation along asserted role edges.
                (L::TBar, P::ConceptAssertion(a, C::Exists(r, c))) => {
                    branch.successors(a, r).into_iter().find_map(|b| {
                        self.extend_if_new(branch, "exists-tbar", vec![assert(L::TBar, &b, c)])
                    })
                }
                (L::F, P::ConceptAssertion(a, C::Exists(r, c))) => {
                    branch.successors(a, r).into_iter().find_map(|b| {
                        self.extend_if_new(branch, "exists-f", vec![assert(L::F, &b, c)])
                    })
                }
                (L::T, P::ConceptAssertion(a, C::Forall(r, c))) => {
                    branch.successors(a, r).into_iter().find_map(|b| {
                        self.extend_if_new(branch, "forall-t", vec![assert(L::T, &b, c)])
                    })
                }
                (L::FBar, P::ConceptAssertion(a, C::Forall(r, c))) => {
                    branch.successors(a, r).into_iter().find_map(|b| {
                        self.extend_if_new(branch, "forall-fbar", vec![assert(L::FBar, &b, c)])
                    })
                }
                // Axiom labels are two-valued: F and ~F flip to the dual.
                (L::F, P::Subsumption(_, _) | P::Equality(_, _)) => self.extend_if_new(
                    branch,
                    "axiom-f",
                    vec![SignedProposition::new(L::TBar, sp.prop.clone())],
                ),
                (L::FBar, P::Subsumption(_, _) | P::Equality(_, _)) => self.extend_if_new(
                    branch,
                    "axiom-fbar",
                    vec![SignedProposition::new(L::T, sp.prop.clone())],
                ),
                (L::T, P::Equality(c, d)) => self.extend_if_new(
                    branch,
                    "eq-t",
                    vec![
                        SignedProposition::new(L::T, P::Subsumption(c.clone(), d.clone())),
                        SignedProposition::new(L::T, P::Subsumption(d.clone(), c.clone())),
                    ],
                ),
                _ => None,
            };
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn find_branching(&self, branch: &BranchState) -> Option<RuleApp> {
        use ConceptExpr as C;
        use Label as L;
        use Proposition as P;

        for sp in &branch.props {
            let assert = |label: Label, ind: &str, c: &C| {
                SignedProposition::new(label, P::ConceptAssertion(ind.to_string(), c.clone()))
            };
            let found = match (&sp.label, &sp.prop) {
                (L::TBar, P::ConceptAssertion(a, C::And(c, d))) => self.split_if_open(
                    branch,
                    "and-tbar",
                    vec![assert(L::TBar, a, c)],
                    vec![assert(L::TBar, a, d)],
                ),
                (L::F, P::ConceptAssertion(a, C::And(c, d))) => self.split_if_open(
                    branch,
                    "and-f",
                    vec![assert(L::F, a, c)],
                    vec![assert(L::F, a, d)],
                ),
                (L::T, P::ConceptAssertion(a, C::Or(c, d))) => self.split_if_open(
                    branch,
                    "or-t",
                    vec![assert(L::T, a, c)],
                    vec![assert(L::T, a, d)],
                ),
                (L::FBar, P::ConceptAssertion(a, C::Or(c, d))) => self.split_if_open(
                    branch,
                    "or-fbar",
                    vec![assert(L::FBar, a, c)],
                    vec![assert(L::FBar, a, d)],
                ),
                (L::TBar, P::Equality(c, d)) => self.split_if_open(
                    branch,
                    "eq-tbar",
                    vec![SignedProposition::new(L::TBar, P::Subsumption(c.clone(), d.clone()))],
                    vec![SignedProposition::new(L::TBar, P::Subsumption(d.clone(), c.clone()))],
                ),
                (L::T, P::Subsumption(c, d)) => {
                    // Instantiated on every individual of the branch.
                    branch.individuals().into_iter().find_map(|i| match self.mode {
                        SubsumptionMode::Material => self.split_if_open(
                            branch,
                            "sub-t",
                            vec![assert(L::F, &i, c)],
                            vec![assert(L::T, &i, d)],
                        ),
                        SubsumptionMode::Internal => self
                            .split_if_open(
                                branch,
                                "sub-t-pos",
                                vec![assert(L::TBar, &i, c)],
                                vec![assert(L::T, &i, d)],
                            )
                            .or_else(|| {
                                self.split_if_open(
                                    branch,
                                    "sub-t-neg",
                                    vec![assert(L::FBar, &i, d)],
                                    vec![assert(L::F, &i, c)],
                                )
                            }),
                    })
                }
                _ => None,
            };
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn find_generating(&self, branch: &BranchState) -> Option<RuleApp> {
        use ConceptExpr as C;
        use Label as L;
        use Proposition as P;

        let blocked = self.blocked_individuals(branch);
        for sp in &branch.props {
            if branch.fired.contains(sp) {
                continue;
            }
            let rule = match (&sp.label, &sp.prop) {
                (L::T, P::ConceptAssertion(a, C::Exists(_, _))) if !blocked.contains_key(a) => {
                    Some("exists-t")
                }
                (L::FBar, P::ConceptAssertion(a, C::Exists(_, _))) if !blocked.contains_key(a) => {
                    Some("exists-fbar")
                }
                (L::TBar, P::ConceptAssertion(a, C::Forall(_, _))) if !blocked.contains_key(a) => {
                    Some("forall-tbar")
                }
                (L::F, P::ConceptAssertion(a, C::Forall(_, _))) if !blocked.contains_key(a) => {
                    Some("forall-f")
                }
                (L::TBar, P::Subsumption(_, _)) => Some("sub-tbar"),
                _ => None,
            };
            if let Some(rule) = rule {
                return Some(RuleApp::Generate { rule, premise: sp.clone() });
            }
        }
        None
    }

    fn generate(&mut self, premise: &SignedProposition) -> Generated {
        use ConceptExpr as C;
        use Label as L;
        use Proposition as P;

        let x = self.fresh_name();
        let assert = |label: Label, ind: &str, c: &C| {
            SignedProposition::new(label, P::ConceptAssertion(ind.to_string(), c.clone()))
        };
        let edge = |a: &str, x: &str, r: &str| {
            SignedProposition::new(
                L::T,
                P::RoleAssertion(a.to_string(), x.to_string(), r.to_string()),
            )
        };
        match (&premise.label, &premise.prop) {
            (L::T, P::ConceptAssertion(a, C::Exists(r, c))) => {
                Generated::Extend(vec![edge(a, &x, r), assert(L::T, &x, c)])
            }
            (L::FBar, P::ConceptAssertion(a, C::Exists(r, c))) => {
                Generated::Extend(vec![edge(a, &x, r), assert(L::FBar, &x, c)])
            }
            (L::TBar, P::ConceptAssertion(a, C::Forall(r, c))) => {
                Generated::Extend(vec![edge(a, &x, r), assert(L::TBar, &x, c)])
            }
            (L::F, P::ConceptAssertion(a, C::Forall(r, c))) => {
                Generated::Extend(vec![edge(a, &x, r), assert(L::F, &x, c)])
            }
            (L::TBar, P::Subsumption(c, d)) => match self.mode {
                // Witness object failing the containment reading, one side
                // per containment half.
                SubsumptionMode::Internal => Generated::Split(
                    vec![assert(L::T, &x, c), assert(L::TBar, &x, d)],
                    vec![assert(L::F, &x, d), assert(L::FBar, &x, c)],
                ),
                // Witness object outside both N_C and P_D.
                SubsumptionMode::Material => {
                    Generated::Extend(vec![assert(L::FBar, &x, c), assert(L::TBar, &x, d)])
                }
            },
            _ => unreachable!("generator premises are checked in find_generating"),
        }
    }
}

enum Generated {
    Extend(Vec<SignedProposition>),
    Split(Vec<SignedProposition>, Vec<SignedProposition>),
}
