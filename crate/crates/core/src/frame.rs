//! Frames and their subsets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite, non-empty set of natural numbers naming mutually exclusive and
/// exhaustive possibilities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    elements: Vec<u32>,
}

impl Frame {
    /// Builds a frame from any collection of elements; order is irrelevant
    /// but duplicates are rejected.
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        elements.sort_unstable();
        if elements.is_empty() {
            return Err(Error::Invalid("a frame must be non-empty".into()));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!(
                "duplicate frame element in {elements:?}"
            )));
        }
        Ok(Frame { elements })
    }

    /// `{0, 1, .., n-1}`.
    pub fn range(n: u32) -> Result<Self> {
        Frame::new(0..n)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// The whole frame as a subset of itself.
    pub fn full(&self) -> Subset {
        Subset::from_iter(self.elements.iter().copied())
    }

    pub fn contains_subset(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.contains(x))
    }

    pub fn check_subset(&self, s: &Subset) -> Result<()> {
        if self.contains_subset(s) {
            Ok(())
        } else {
            Err(Error::FrameMismatch(format!(
                "{s} is not a subset of {}",
                self.full()
            )))
        }
    }

    /// Every subset, in canonical order (cardinality, then lexicographic).
    ///
    /// Only sensible for small frames.
    pub fn powerset(&self) -> Vec<Subset> {
        let n = self.elements.len();
        assert!(n < 32, "powerset of a frame with {n} elements");
        let mut all: Vec<Subset> = (0u32..(1u32 << n))
            .map(|mask| {
                Subset::from_iter(
                    (0..n)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| self.elements[b]),
                )
            })
            .collect();
        all.sort();
        all
    }
}

/// A subset of some frame, possibly empty.
///
/// Subsets order by cardinality first, then lexicographically on their
/// sorted members, which is the canonical order used for every report.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Subset(BTreeSet<u32>);

impl Subset {
    pub fn empty() -> Self {
        Subset(BTreeSet::new())
    }

    pub fn singleton(x: u32) -> Self {
        Subset(BTreeSet::from([x]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.contains(&x)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn members(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn without(&self, x: u32) -> Subset {
        let mut s = self.0.clone();
        s.remove(&x);
        Subset(s)
    }
}

impl FromIterator<u32> for Subset {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        Subset(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[u32; N]> for Subset {
    fn from(a: [u32; N]) -> Self {
        a.into_iter().collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
