//! Brute-force oracles for the standalone counting lemmas: solution counts of
//! `n·α(n) = t`, invariant inverse-closed sets of twisted maps on index-2
//! subgroups, the intersection-size trichotomy for pairs of permutations, and
//! the common-neighbour counts `σ` and `Ψ`.

mod alpha;
mod dichotomy;
mod intersection;
mod sigma;
mod sweep;

pub use alpha::{
    alpha_invariant_count_aux1, alpha_invariant_count_aux2, alpha_invariant_count_aux3, alpha_map,
    order16_presentation_group, Restriction, Twist, AUX_MAX_C,
};
pub use dichotomy::{gelato_count, icecream_count};
pub use intersection::{detect_antisymmetry, intersection_trichotomy, Antisymmetry, TRICHOTOMY_MAX_SIZE};
pub use sigma::{psi_count, psi_intersection, sigma, sigma_direct, SigmaContext, IODD_CONSTANT};
pub use sweep::{
    aux_sweep, dichotomy_sweep, psi_sweep, sigma_pairs, sigma_sweep, trichotomy_sweep, LemmaId, SweepRow,
    SweepSummary,
};

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    BoundHolds,
    Exceptional,
    /// Neither the bound nor any exceptional clause: a counterexample.
    Violation,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::BoundHolds => "BOUND_HOLDS",
            CaseTag::Exceptional => "EXCEPTIONAL",
            CaseTag::Violation => "VIOLATION",
        })
    }
}

/// Either an exact rational `num/den` or `2^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundValue {
    Rational { num: u64, den: u64 },
    PowerOfTwo { exponent: f64 },
}

impl BoundValue {
    pub fn admits(&self, count: u64) -> bool {
        match *self {
            BoundValue::Rational { num, den } => (count as u128) * (den as u128) <= num as u128,
            BoundValue::PowerOfTwo { exponent } => count == 0 || (count as f64).log2() <= exponent + 1e-9,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Rational { num, den } => write!(f, "{num}/{den}"),
            BoundValue::PowerOfTwo { exponent } => write!(f, "2^{exponent:.6}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalWitness {
    /// Clause number in the lemma's conclusion list (the bound is clause 1).
    pub clause: u8,
    pub description: String,
    /// Elements or points certifying the clause, when there are any.
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrichotomyOutcome {
    pub case: CaseTag,
    pub count: u64,
    pub bound: BoundValue,
    /// Whether `count` is within `bound`, independently of `case`.
    pub within_bound: bool,
    pub witness: Option<ExceptionalWitness>,
    /// A second reading of the bound, reported but not used for `case`.
    pub alt_bound: Option<BoundValue>,
    pub alt_within_bound: Option<bool>,
}

impl TrichotomyOutcome {
    pub(crate) fn decide(count: u64, bound: BoundValue, witness: Option<ExceptionalWitness>) -> Self {
        let within = bound.admits(count);
        let case = match (&witness, within) {
            (Some(_), _) => CaseTag::Exceptional,
            (None, true) => CaseTag::BoundHolds,
            (None, false) => CaseTag::Violation,
        };
        TrichotomyOutcome {
            case,
            count,
            bound,
            within_bound: within,
            witness,
            alt_bound: None,
            alt_within_bound: None,
        }
    }

    pub fn clause(&self) -> Option<u8> {
        self.witness.as_ref().map(|w| w.clause)
    }
}

pub(crate) fn witness(clause: u8, description: impl Into<String>, support: Vec<usize>) -> ExceptionalWitness {
    ExceptionalWitness { clause, description: description.into(), support }
}
