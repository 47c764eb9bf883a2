//! A reasoner for the description logic ALC under a paraconsistent
//! three-valued semantics. Assertions can be true, false, or both; the
//! library decides monotone entailment with a signed tableau calculus and
//! conflict-minimal entailment by building an argumentation framework over
//! tableau assumptions and inspecting its stable extensions. A brute-force
//! model enumerator over the quantifier-free fragment serves as an
//! independent check.

pub mod argumentation;
pub mod entailment;
pub mod semantics;
pub mod syntax;
pub mod tableaux;

use std::fmt;
use std::str::FromStr;

/// How `C <= D` is interpreted and expanded.
///
/// `Material` reads the axiom pointwise: every object is in `C`'s negative
/// extension or in `D`'s positive extension. `Internal` reads it as the
/// pair of containments `P_C ⊆ P_D` and `N_D ⊆ N_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsumptionMode {
    #[default]
    Material,
    Internal,
}

impl fmt::Display for SubsumptionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsumptionMode::Material => write!(f, "material"),
            SubsumptionMode::Internal => write!(f, "internal"),
        }
    }
}

impl FromStr for SubsumptionMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "material" => Ok(SubsumptionMode::Material),
            "internal" => Ok(SubsumptionMode::Internal),
            other => Err(format!(
                "unknown subsumption mode `{other}` (expected `material` or `internal`)"
            )),
        }
    }
}

/// Resource caps for proof search and framework construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of tableau nodes per tableau.
    pub max_nodes: usize,
    /// Maximum number of arguments in a framework.
    pub max_arguments: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: 100_000, max_arguments: 1_000 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),

    #[error("unknown {kind} `{name}`: not covered by the interpretation")]
    UnknownIdentifier { kind: &'static str, name: String },

    #[error("ill-formed interpretation: {0}")]
    InvalidInterpretation(String),

    #[error("oracle inapplicable: {0}")]
    OracleInapplicable(String),

    #[error("node budget exhausted: tableau grew past {limit} nodes")]
    NodeBudgetExceeded { limit: usize },

    #[error("argument budget exhausted: framework grew past {limit} arguments")]
    ArgumentBudgetExceeded { limit: usize },

    #[error("the argumentation framework has no stable extension, so conflict-minimal entailment is undecided for this query")]
    NoStableExtensions,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
