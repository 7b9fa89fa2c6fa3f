//! Mass functions and the belief functions they induce.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::rational::{render, Rational};

/// A mass assignment over subsets of a frame of interest.
///
/// Only subsets with non-zero mass are stored, so two mass functions are
/// equal exactly when they assign the same masses. A mass function is
/// normalized when the empty set carries no mass; only the non-normalised
/// combination produces mass functions that are not.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MassFunction {
    theta: Frame,
    masses: BTreeMap<Subset, Rational>,
}

impl MassFunction {
    /// Accumulates `entries` (repeated subsets add up), drops zero totals and
    /// checks the result sums to one.
    pub fn new(
        theta: Frame,
        entries: impl IntoIterator<Item = (Subset, Rational)>,
    ) -> Result<Self> {
        let m = Self::accumulate(theta, entries)?;
        let total: Rational = m.masses.values().sum();
        if !total.is_one() {
            return Err(Error::Invalid(format!(
                "masses sum to {}, not 1",
                render(&total)
            )));
        }
        Ok(m)
    }

    pub(crate) fn accumulate(
        theta: Frame,
        entries: impl IntoIterator<Item = (Subset, Rational)>,
    ) -> Result<Self> {
        let mut masses: BTreeMap<Subset, Rational> = BTreeMap::new();
        for (set, mass) in entries {
            theta.check_subset(&set)?;
            if mass.is_negative() {
                return Err(Error::Invalid(format!(
                    "negative mass {} on {set}",
                    render(&mass)
                )));
            }
            *masses.entry(set).or_insert_with(Rational::zero) += mass;
        }
        masses.retain(|_, m| !m.is_zero());
        Ok(MassFunction { theta, masses })
    }

    /// m(Θ) = 1.
    pub fn vacuous(theta: Frame) -> Self {
        let full = theta.full();
        MassFunction {
            theta,
            masses: BTreeMap::from([(full, Rational::one())]),
        }
    }

    /// All mass on a single subset.
    pub fn certain(theta: Frame, set: Subset) -> Result<Self> {
        MassFunction::new(theta, [(set, Rational::one())])
    }

    pub fn theta(&self) -> &Frame {
        &self.theta
    }

    pub fn mass(&self, set: &Subset) -> Rational {
        self.masses.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    /// Focal elements with their masses, in canonical subset order.
    pub fn iter(&self) -> impl Iterator<Item = (&Subset, &Rational)> + '_ {
        self.masses.iter()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        !self.masses.contains_key(&Subset::empty())
    }

    pub fn total(&self) -> Rational {
        self.masses.values().sum()
    }

    /// The subsets carrying non-zero mass, in canonical order.
    pub fn focal_elements(&self) -> Vec<Subset> {
        self.masses.keys().cloned().collect()
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "mass function puts {} on the empty set",
                render(&self.mass(&Subset::empty()))
            )))
        }
    }

    /// Bel(X): the total mass of non-empty focal elements contained in `x`.
    pub fn belief(&self, x: &Subset) -> Result<Rational> {
        self.require_normalized()?;
        self.theta.check_subset(x)?;
        Ok(self
            .masses
            .iter()
            .filter(|(a, _)| !a.is_empty() && a.is_subset(x))
            .map(|(_, m)| m)
            .sum())
    }
}

/// Free-function form of [`MassFunction::belief`].
pub fn belief_from_mass(m: &MassFunction, x: &Subset) -> Result<Rational> {
    m.belief(x)
}

/// Free-function form of [`MassFunction::focal_elements`].
pub fn focal_elements(m: &MassFunction) -> Vec<Subset> {
    m.focal_elements()
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (set, m) in &self.masses {
            writeln!(f, "{set}: {}", render(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MassFunction{")?;
        for (i, (set, m)) in self.masses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{set}↦{}", render(m))?;
        }
        f.write_str("}")
    }
}
