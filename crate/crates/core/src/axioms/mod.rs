//! Executable forms of the constraints and assumptions on C-rules, with
//! instance generators and a seeded counterexample search.
//!
//! Every check returns an [`AxiomVerdict`]. A failed verdict carries a
//! [`Witness`] that reproduces the failure when re-checked on its own.

mod checks;
mod generator;
mod search;
mod shrink;

use std::fmt;
use std::str::FromStr;

use crate::combination::{CRule, MultipleSourceStructure, ProductElement, Tuple};
use crate::conditioning::ProductSubset;
use crate::error::{Error, Result};
use crate::rational::{render, Rational};

pub use checks::{
    build_b_instance, check_assumption_a, check_assumption_a_general, check_assumption_b,
    check_respects_contradictions, check_respects_zero_probabilities, ratio_invariance_check,
    run_check,
};
pub use generator::{random_mss, random_product_subset, trial_rng, GeneratorConfig};
pub use search::{
    b_instance_family, search_counterexamples, search_counterexamples_with, BInstanceSpec, BShape,
    SearchOptions, SearchReport, Tally,
};
pub use shrink::shrink_failure;

/// The properties a C-rule can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    Contradictions,
    ZeroProbabilities,
    AssumptionA,
    AssumptionAGeneral,
    AssumptionB,
    RatioInvariance,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 6] = [
        AxiomKind::Contradictions,
        AxiomKind::ZeroProbabilities,
        AxiomKind::AssumptionA,
        AxiomKind::AssumptionAGeneral,
        AxiomKind::AssumptionB,
        AxiomKind::RatioInvariance,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomKind::Contradictions => "contradictions",
            AxiomKind::ZeroProbabilities => "zero-probabilities",
            AxiomKind::AssumptionA => "assumption-A",
            AxiomKind::AssumptionAGeneral => "assumption-A-general",
            AxiomKind::AssumptionB => "assumption-B",
            AxiomKind::RatioInvariance => "ratio-invariance",
        }
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomKind::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom {s:?}")))
    }
}

/// What a check conditioned on, or which cylinder it looked at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conditioning {
    None,
    /// E_k^l (assumption B) or ¬E_k^l (assumption A).
    Cylinder {
        k: u32,
        l: u32,
    },
    Product(ProductSubset),
    /// The partner ω' of a ratio comparison.
    Pair(ProductElement),
}

/// A reproducible failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub structure: MultipleSourceStructure,
    pub conditioning: Conditioning,
    /// The product element where the discrepancy shows, if there is one.
    pub element: Option<ProductElement>,
    pub expected: Option<Rational>,
    pub actual: Option<Rational>,
    pub note: String,
}

impl Witness {
    /// Re-runs `axiom` for `rule` on this witness alone.
    pub fn recheck<R: CRule + ?Sized>(&self, axiom: AxiomKind, rule: &R) -> Result<AxiomVerdict> {
        run_check(axiom, rule, &self.structure, &self.conditioning)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Box<Witness>),
    /// The check's own guard excluded the instance (π^s(Δ) = 0).
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: AxiomKind,
    pub rule: String,
    pub outcome: Outcome,
}

impl AxiomVerdict {
    pub(crate) fn pass(axiom: AxiomKind, rule: &(impl CRule + ?Sized)) -> Self {
        AxiomVerdict {
            axiom,
            rule: rule.name(),
            outcome: Outcome::Pass,
        }
    }

    pub(crate) fn skip(axiom: AxiomKind, rule: &(impl CRule + ?Sized), why: String) -> Self {
        AxiomVerdict {
            axiom,
            rule: rule.name(),
            outcome: Outcome::Skip(why),
        }
    }

    pub(crate) fn fail(axiom: AxiomKind, rule: &(impl CRule + ?Sized), w: Witness) -> Self {
        AxiomVerdict {
            axiom,
            rule: rule.name(),
            outcome: Outcome::Fail(Box::new(w)),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }

    pub fn skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skip(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fail(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {} ({})", self.axiom, self.rule),
            Outcome::Skip(why) => write!(f, "SKIP {} ({}): {why}", self.axiom, self.rule),
            Outcome::Fail(w) => {
                write!(f, "FAIL {} ({}): {}", self.axiom, self.rule, w.note)?;
                if let Some(e) = &w.element {
                    write!(f, " at {}", e.describe(&w.structure))?;
                }
                if let (Some(exp), Some(act)) = (&w.expected, &w.actual) {
                    write!(f, "; expected {}, got {}", render(exp), render(act))?;
                }
                Ok(())
            }
        }
    }
}

/// Rules that deliberately break a constraint, kept to show the checks
/// can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrokenRule {
    /// π ∝ ∏ P_i(ω_i) everywhere, contradictory tuples included.
    PureProduct,
    /// Equal weight on every non-contradictory tuple, zero factors ignored.
    IgnoreWeights,
}

impl CRule for BrokenRule {
    fn name(&self) -> String {
        match self {
            BrokenRule::PureProduct => "broken-pure-product".into(),
            BrokenRule::IgnoreWeights => "broken-ignore-weights".into(),
        }
    }

    fn raw_weight(&self, t: &Tuple) -> Rational {
        use num::{One, Zero};
        match self {
            BrokenRule::PureProduct => t.product(),
            BrokenRule::IgnoreWeights => {
                if t.is_contradictory() {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            }
        }
    }
}
