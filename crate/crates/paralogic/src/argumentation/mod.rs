//! Assumption-based argumentation over tableau proofs.
//!
//! A weakly closed tableau proves its goal only under no-conflict
//! assumptions on atomic assertions. Each minimal assumption set becomes a
//! *supporting argument* for the goal. An assumption α is challenged by
//! *counter-arguments* concluding that α is in fact conflicting: α is
//! conflicting exactly when it is both at least true and at least false, so
//! a counter-argument needs the knowledge base to force both halves, i.e.
//! both refutation tableaux (against `~T α` and against `~F α`) must close.
//! Counter-arguments carry assumptions of their own, which can be rotated:
//! if assuming α₁…αₖ conflict-free forces a conflict on α₀, then assuming
//! conflict-freeness everywhere but αᵢ forces the conflict onto αᵢ.
//!
//! Saturating supporting arguments, counter-arguments, and rotations yields
//! a finite argumentation framework in which argument `A` attacks `B`
//! whenever `A` concludes a conflict on one of `B`'s assumptions. Stable
//! extensions of that framework correspond to the conflict-minimal models of
//! the knowledge base, which is what makes the non-monotonic entailment
//! check syntactic.

pub mod export;

#[cfg(test)]
mod tests;

use crate::syntax::{AtomicAssertion, KnowledgeBase, Proposition};
use crate::tableaux::{
    expand, minimal_assumption_sets, prove, prune_minimal, GoalLabel, Label, SignedProposition,
};
use crate::{Error, Limits, Result, SubsumptionMode};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// What an argument establishes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Conclusion {
    /// The goal proposition holds with this polarity.
    Supports(GoalLabel, Proposition),
    /// The atomic assertion is conflicting (both at least true and at least
    /// false).
    Conflict(AtomicAssertion),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Supports(label, prop) => write!(f, "{label} {prop}"),
            Conclusion::Conflict(a) => write!(f, "conflict({a})"),
        }
    }
}

/// A conclusion defeasibly derived from no-conflict assumptions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Argument {
    /// Atomic assertions assumed conflict-free.
    pub assumptions: BTreeSet<AtomicAssertion>,
    pub conclusion: Conclusion,
}

impl Argument {
    pub fn new(
        assumptions: impl IntoIterator<Item = AtomicAssertion>,
        conclusion: Conclusion,
    ) -> Self {
        Argument { assumptions: assumptions.into_iter().collect(), conclusion }
    }

    /// The assertion this argument declares conflicting, if any.
    pub fn conflict_target(&self) -> Option<&AtomicAssertion> {
        match &self.conclusion {
            Conclusion::Conflict(a) => Some(a),
            Conclusion::Supports(_, _) => None,
        }
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (i, a) in self.assumptions.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}} => {})", self.conclusion)
    }
}

/// Supporting arguments for `goal_label goal`: one per minimal assumption
/// set of the refutation tableau. Empty when the tableau stays open.
pub fn derive_arguments(
    kb: &KnowledgeBase,
    goal_label: GoalLabel,
    goal: &Proposition,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<Vec<Argument>> {
    let result = prove(kb, goal_label, goal, mode, limits)?;
    Ok(result
        .assumption_sets()
        .into_iter()
        .map(|assumptions| Argument {
            assumptions,
            conclusion: Conclusion::Supports(goal_label, goal.clone()),
        })
        .collect())
}

/// Arguments concluding that α is conflicting. Both barred tableaux must
/// close: one proves `T α` (under assumptions), the other proves `F α`.
/// The returned assumption sets are the minimal unions of one set from each
/// side; α itself can never occur among them, because a branch containing
/// the barred label closes strongly before α could form a conflict pair.
pub fn counter_arguments(
    kb: &KnowledgeBase,
    alpha: &AtomicAssertion,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<Vec<Argument>> {
    let mut sides = Vec::with_capacity(2);
    for bar in [Label::TBar, Label::FBar] {
        let mut root: Vec<SignedProposition> =
            kb.propositions().map(|p| SignedProposition::new(Label::T, p.clone())).collect();
        root.push(SignedProposition::new(bar, alpha.to_proposition()));
        let tableau = expand(&root, mode, limits)?;
        let sets = minimal_assumption_sets(&tableau);
        if sets.is_empty() {
            return Ok(vec![]);
        }
        sides.push(sets);
    }
    let mut unions = Vec::new();
    for s in &sides[0] {
        for t in &sides[1] {
            unions.push(s.union(t).cloned().collect::<BTreeSet<_>>());
        }
    }
    Ok(prune_minimal(unions)
        .into_iter()
        .map(|assumptions| {
            debug_assert!(!assumptions.contains(alpha));
            Argument { assumptions, conclusion: Conclusion::Conflict(alpha.clone()) }
        })
        .collect())
}

/// Rotations of a conflict argument: the concluded conflict trades places
/// with each assumption in turn. Supporting arguments do not rotate.
pub fn rotate(arg: &Argument) -> Vec<Argument> {
    let Some(target) = arg.conflict_target() else {
        return vec![];
    };
    arg.assumptions
        .iter()
        .map(|alpha| {
            let mut assumptions = arg.assumptions.clone();
            assumptions.remove(alpha);
            assumptions.insert(target.clone());
            Argument { assumptions, conclusion: Conclusion::Conflict(alpha.clone()) }
        })
        .collect()
}

/// A finite argumentation framework with the derived attack relation.
#[derive(Debug, Clone)]
pub struct ArgumentationFramework {
    args: Vec<Argument>,
    attacks: Vec<(usize, usize)>,
}

impl ArgumentationFramework {
    /// Builds the framework; attacks are derived, not supplied. `A` attacks
    /// `B` when `A` concludes a conflict on one of `B`'s assumptions.
    pub fn new(args: Vec<Argument>) -> Self {
        let mut attacks = Vec::new();
        for (i, a) in args.iter().enumerate() {
            if let Some(target) = a.conflict_target() {
                for (j, b) in args.iter().enumerate() {
                    if b.assumptions.contains(target) {
                        debug_assert!(i != j, "no argument attacks itself");
                        attacks.push((i, j));
                    }
                }
            }
        }
        ArgumentationFramework { args, attacks }
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.args
    }

    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    fn attacks_set(&self, attacker: usize, target: usize) -> bool {
        self.attacks.contains(&(attacker, target))
    }

    /// No member attacks another member.
    pub fn conflict_free(&self, set: &BTreeSet<usize>) -> bool {
        self.attacks.iter().all(|(i, j)| !(set.contains(i) && set.contains(j)))
    }

    /// Every attacker of `target` is attacked by some member of `set`.
    pub fn defends(&self, set: &BTreeSet<usize>, target: usize) -> bool {
        self.attacks
            .iter()
            .filter(|(_, j)| *j == target)
            .all(|(attacker, _)| set.iter().any(|&k| self.attacks_set(k, *attacker)))
    }

    pub fn admissible(&self, set: &BTreeSet<usize>) -> bool {
        self.conflict_free(set) && set.iter().all(|&i| self.defends(set, i))
    }

    /// Conflict-free sets attacking every outside argument. The empty
    /// framework has the single stable extension `{}`.
    pub fn stable_extensions(&self) -> Vec<BTreeSet<usize>> {
        let n = self.args.len();
        let mut found = if n <= 20 {
            self.stable_by_mask()
        } else {
            let mut found = Vec::new();
            let mut choice = vec![None; n];
            self.stable_search(0, &mut choice, &mut found);
            found
        };
        found.sort();
        found
    }

    fn stable_by_mask(&self) -> Vec<BTreeSet<usize>> {
        let n = self.args.len();
        let mut attacks_from = vec![0u32; n];
        for &(i, j) in &self.attacks {
            attacks_from[i] |= 1 << j;
        }
        let full = (1u32 << n) - 1;
        let mut out = Vec::new();
        for mask in 0..=full {
            let mut attacked = 0u32;
            let mut free = true;
            for (i, &sources) in attacks_from.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if sources & mask != 0 {
                        free = false;
                        break;
                    }
                    attacked |= sources;
                }
            }
            if free && attacked == full & !mask {
                out.push((0..n).filter(|&i| mask & (1 << i) != 0).collect());
            }
        }
        out
    }

    fn stable_search(
        &self,
        idx: usize,
        choice: &mut Vec<Option<bool>>,
        found: &mut Vec<BTreeSet<usize>>,
    ) {
        let n = self.args.len();
        if idx == n {
            let set: BTreeSet<usize> = (0..n).filter(|&i| choice[i] == Some(true)).collect();
            let stable =
                (0..n).all(|i| set.contains(&i) != set.iter().any(|&k| self.attacks_set(k, i)));
            if stable && self.conflict_free(&set) {
                found.push(set);
            }
            return;
        }
        // Try membership first so extensions come out largest-first per
        // prefix; order is normalized by the BTreeSet collection anyway.
        let conflicts = (0..idx).any(|j| {
            choice[j] == Some(true) && (self.attacks_set(j, idx) || self.attacks_set(idx, j))
        });
        if !conflicts {
            choice[idx] = Some(true);
            self.stable_search(idx + 1, choice, found);
        }
        choice[idx] = Some(false);
        // An excluded argument must be attacked from inside. We decide in
        // index order, so once every attacker has a smaller index and none
        // of them is in, the branch is dead.
        let attackers: Vec<usize> =
            self.attacks.iter().filter(|(_, j)| *j == idx).map(|(i, _)| *i).collect();
        let viable = attackers.iter().any(|&a| a > idx)
            || attackers.iter().any(|&a| a < idx && choice[a] == Some(true));
        if viable {
            self.stable_search(idx + 1, choice, found);
        }
        choice[idx] = None;
    }

    /// Inclusion-maximal admissible sets.
    pub fn preferred_extensions(&self) -> Vec<BTreeSet<usize>> {
        let n = self.args.len();
        let mut admissible: Vec<BTreeSet<usize>> = Vec::new();
        if n <= 20 {
            let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
            for mask in 0..=full {
                let set: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                if self.admissible(&set) {
                    admissible.push(set);
                }
            }
        } else {
            let mut choice = vec![None; n];
            self.admissible_search(0, &mut choice, &mut admissible);
        }
        let mut maximal: Vec<BTreeSet<usize>> = Vec::new();
        for s in &admissible {
            if !admissible.iter().any(|t| s.is_subset(t) && s != t) {
                maximal.push(s.clone());
            }
        }
        maximal.sort();
        maximal
    }

    fn admissible_search(
        &self,
        idx: usize,
        choice: &mut Vec<Option<bool>>,
        found: &mut Vec<BTreeSet<usize>>,
    ) {
        let n = self.args.len();
        if idx == n {
            let set: BTreeSet<usize> = (0..n).filter(|&i| choice[i] == Some(true)).collect();
            if self.admissible(&set) {
                found.push(set);
            }
            return;
        }
        let conflicts = (0..idx).any(|j| {
            choice[j] == Some(true) && (self.attacks_set(j, idx) || self.attacks_set(idx, j))
        });
        if !conflicts {
            choice[idx] = Some(true);
            self.admissible_search(idx + 1, choice, found);
        }
        choice[idx] = Some(false);
        self.admissible_search(idx + 1, choice, found);
        choice[idx] = None;
    }

    /// Least fixpoint of the defense operator, seeded by the unattacked
    /// arguments.
    pub fn grounded_extension(&self) -> BTreeSet<usize> {
        let n = self.args.len();
        let mut current: BTreeSet<usize> = BTreeSet::new();
        loop {
            let next: BTreeSet<usize> = (0..n).filter(|&i| self.defends(&current, i)).collect();
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Assumptions not declared conflicting by any member of `extension`:
    /// the conflict-free frontier that extension commits to.
    pub fn allowed_assumptions(&self, extension: &BTreeSet<usize>) -> BTreeSet<AtomicAssertion> {
        let mut universe: BTreeSet<AtomicAssertion> = BTreeSet::new();
        for arg in &self.args {
            universe.extend(arg.assumptions.iter().cloned());
            if let Some(t) = arg.conflict_target() {
                universe.insert(t.clone());
            }
        }
        let denied: BTreeSet<&AtomicAssertion> =
            extension.iter().filter_map(|&i| self.args[i].conflict_target()).collect();
        universe.into_iter().filter(|a| !denied.contains(a)).collect()
    }
}

/// Saturates the framework for a goal: supporting arguments, then
/// counter-arguments against every assumption in sight, plus their
/// rotations, until nothing new appears. Counter-argument search per
/// assertion is memoized; arguments are deduplicated structurally and kept
/// in insertion order.
pub fn complete_af(
    kb: &KnowledgeBase,
    goal_label: GoalLabel,
    goal: &Proposition,
    mode: SubsumptionMode,
    limits: &Limits,
) -> Result<ArgumentationFramework> {
    let mut args: Vec<Argument> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut memo: BTreeMap<AtomicAssertion, Vec<Argument>> = BTreeMap::new();

    let push =
        |args: &mut Vec<Argument>, queue: &mut VecDeque<usize>, arg: Argument| -> Result<()> {
            if !args.contains(&arg) {
                if args.len() >= limits.max_arguments {
                    return Err(Error::ArgumentBudgetExceeded { limit: limits.max_arguments });
                }
                args.push(arg);
                queue.push_back(args.len() - 1);
            }
            Ok(())
        };

    for seed in derive_arguments(kb, goal_label, goal, mode, limits)? {
        push(&mut args, &mut queue, seed)?;
    }

    while let Some(idx) = queue.pop_front() {
        let assumptions: Vec<AtomicAssertion> = args[idx].assumptions.iter().cloned().collect();
        for alpha in assumptions {
            if !memo.contains_key(&alpha) {
                let counters = counter_arguments(kb, &alpha, mode, limits)?;
                memo.insert(alpha.clone(), counters);
            }
            let counters = memo[&alpha].clone();
            for counter in counters {
                let rotations = rotate(&counter);
                push(&mut args, &mut queue, counter)?;
                for rotated in rotations {
                    push(&mut args, &mut queue, rotated)?;
                }
            }
        }
    }

    Ok(ArgumentationFramework::new(args))
}
