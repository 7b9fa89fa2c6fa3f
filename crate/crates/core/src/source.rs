//! Source structures: an underlying frame Ω with a probability function P
//! and a compatibility function I mapping each ω to a subset of the frame
//! of interest Θ.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::probability::PointProbability;
use crate::rational::{render, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SourceStructure {
    theta: Frame,
    p: PointProbability,
    // aligned with p.frame().elements()
    compat: Vec<Subset>,
    // display labels, aligned likewise; never used for identity
    labels: Vec<String>,
}

/// A failed [`validate_source`] check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Underlying elements with an empty image but non-zero probability.
    pub offending: Vec<u32>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl SourceStructure {
    /// Structural construction only: I must be total on Ω and map into Θ.
    /// The contradiction invariant is not enforced; see [`validate_source`].
    pub fn from_parts(theta: Frame, p: PointProbability, compat: Vec<Subset>) -> Result<Self> {
        let labels = p.frame().elements().iter().map(|x| x.to_string()).collect();
        Self::from_parts_labelled(theta, p, compat, labels)
    }

    pub fn from_parts_labelled(
        theta: Frame,
        p: PointProbability,
        compat: Vec<Subset>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = p.frame().len();
        if compat.len() != n || labels.len() != n {
            return Err(Error::Invalid(format!(
                "underlying frame has {n} elements but {} images and {} labels were given",
                compat.len(),
                labels.len()
            )));
        }
        for img in &compat {
            theta.check_subset(img)?;
        }
        Ok(SourceStructure {
            theta,
            p,
            compat,
            labels,
        })
    }

    /// Structural construction followed by [`validate_source`].
    pub fn new(theta: Frame, p: PointProbability, compat: Vec<Subset>) -> Result<Self> {
        let s = Self::from_parts(theta, p, compat)?;
        s.validated()
    }

    pub fn new_labelled(
        theta: Frame,
        p: PointProbability,
        compat: Vec<Subset>,
        labels: Vec<String>,
    ) -> Result<Self> {
        Self::from_parts_labelled(theta, p, compat, labels)?.validated()
    }

    /// Convenience: `(ω, P(ω), I(ω))` triples.
    pub fn from_triples(
        theta: Frame,
        triples: impl IntoIterator<Item = (u32, Rational, Subset)>,
    ) -> Result<Self> {
        let mut triples: Vec<_> = triples.into_iter().collect();
        triples.sort_by_key(|t| t.0);
        let compat = triples.iter().map(|t| t.2.clone()).collect();
        let p = PointProbability::from_pairs(triples.into_iter().map(|t| (t.0, t.1)))?;
        Self::new(theta, p, compat)
    }

    /// The certain source: one underlying element mapped to `set`.
    pub fn certain(theta: Frame, set: Subset) -> Result<Self> {
        Self::from_triples(theta, [(0, Rational::one(), set)])
    }

    /// The vacuous source: one underlying element mapped to Θ.
    pub fn vacuous(theta: Frame) -> Self {
        let full = theta.full();
        Self::certain(theta, full).expect("vacuous source is always valid")
    }

    pub(crate) fn validated(self) -> Result<Self> {
        match validate_source(&self) {
            Ok(()) => Ok(self),
            Err(v) => Err(Error::Invalid(v.message)),
        }
    }

    pub fn theta(&self) -> &Frame {
        &self.theta
    }

    pub fn omega(&self) -> &Frame {
        self.p.frame()
    }

    pub fn probability(&self) -> &PointProbability {
        &self.p
    }

    pub fn compat_images(&self) -> &[Subset] {
        &self.compat
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, omega: u32) -> Option<&str> {
        self.omega()
            .position(omega)
            .map(|j| self.labels[j].as_str())
    }

    /// I(ω).
    pub fn image(&self, omega: u32) -> Option<&Subset> {
        self.omega().position(omega).map(|j| &self.compat[j])
    }

    /// P(ω).
    pub fn weight(&self, omega: u32) -> Rational {
        self.p.weight(omega)
    }

    /// `(ω, P(ω), I(ω))` in underlying-frame order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational, &Subset)> + '_ {
        self.p
            .iter()
            .zip(self.compat.iter())
            .map(|((x, w), i)| (x, w, i))
    }

    /// The induced mass function m(X) = Σ { P(ω) : I(ω) = X }.
    pub fn mass(&self) -> Result<MassFunction> {
        mass_of_source(self)
    }

    /// Subsets I(ω) with P(ω) ≠ 0.
    pub fn focal_elements(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = self
            .iter()
            .filter(|(_, w, _)| !w.is_zero())
            .map(|(_, _, i)| i.clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Checks that every ω with an empty image has zero probability.
pub fn validate_source(s: &SourceStructure) -> std::result::Result<(), Violation> {
    let offending: Vec<u32> = s
        .iter()
        .filter(|(_, w, i)| i.is_empty() && !w.is_zero())
        .map(|(x, _, _)| x)
        .collect();
    if offending.is_empty() {
        return Ok(());
    }
    let shown: Vec<String> = offending
        .iter()
        .map(|&x| format!("{} (P={})", s.label(x).unwrap_or("?"), render(&s.weight(x))))
        .collect();
    Err(Violation {
        message: format!(
            "underlying element(s) {} map to the empty set with non-zero probability",
            shown.join(", ")
        ),
        offending,
    })
}

/// m(X) = Σ_{ω : I(ω) = X} P(ω).
pub fn mass_of_source(s: &SourceStructure) -> Result<MassFunction> {
    validate_source(s).map_err(|v| Error::Invalid(v.message))?;
    MassFunction::new(
        s.theta.clone(),
        s.iter().map(|(_, w, i)| (i.clone(), w.clone())),
    )
}

/// Canonical source for a normalized mass function: Ω = {0..k-1} paired with
/// the focal elements in canonical subset order.
pub fn source_from_mass(m: &MassFunction) -> Result<SourceStructure> {
    m.require_normalized()?;
    let triples = m
        .iter()
        .enumerate()
        .map(|(j, (set, w))| (j as u32, w.clone(), set.clone()));
    SourceStructure::from_triples(m.theta().clone(), triples)
}

impl fmt::Debug for SourceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Source{")?;
        for (j, (_, w, i)) in self.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}→{}", self.labels[j], render(w), i)?;
        }
        write!(f, " over {}}}", self.theta.full())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn theta12() -> Frame {
        Frame::new([1, 2]).unwrap()
    }

    fn raw(triples: &[(u32, Rational, Subset)]) -> SourceStructure {
        let p = PointProbability::from_pairs(triples.iter().map(|t| (t.0, t.1.clone()))).unwrap();
        SourceStructure::from_parts(theta12(), p, triples.iter().map(|t| t.2.clone()).collect())
            .unwrap()
    }

    #[test]
    fn validate_examples() {
        let certain = raw(&[(0, frac(1, 1), Subset::from([1]))]);
        assert!(validate_source(&certain).is_ok());

        let bad = raw(&[
            (0, frac(1, 2), Subset::empty()),
            (1, frac(1, 2), Subset::from([1])),
        ]);
        let v = validate_source(&bad).unwrap_err();
        assert_eq!(v.offending, vec![0]);
        assert!(
            SourceStructure::new(bad.theta.clone(), bad.p.clone(), bad.compat.clone()).is_err()
        );

        let zero_ok = raw(&[
            (0, frac(0, 1), Subset::empty()),
            (1, frac(1, 1), Subset::from([1])),
        ]);
        assert!(validate_source(&zero_ok).is_ok());
    }

    #[test]
    fn mass_of_source_examples() {
        let s = raw(&[
            (0, frac(3, 5), Subset::from([1])),
            (1, frac(2, 5), Subset::from([1, 2])),
        ]);
        let m = mass_of_source(&s).unwrap();
        assert_eq!(m.mass(&Subset::from([1])), frac(3, 5));
        assert_eq!(m.mass(&Subset::from([1, 2])), frac(2, 5));
        assert_eq!(m.len(), 2);

        let same = raw(&[
            (0, frac(1, 2), Subset::from([1])),
            (1, frac(1, 2), Subset::from([1])),
        ]);
        assert_eq!(
            mass_of_source(&same).unwrap().mass(&Subset::from([1])),
            frac(1, 1)
        );

        let vac = SourceStructure::vacuous(theta12());
        assert_eq!(
            mass_of_source(&vac).unwrap(),
            MassFunction::vacuous(theta12())
        );
    }

    #[test]
    fn mass_of_source_rejects_invalid() {
        let bad = raw(&[
            (0, frac(1, 2), Subset::empty()),
            (1, frac(1, 2), Subset::from([1])),
        ]);
        assert!(mass_of_source(&bad).is_err());
    }

    #[test]
    fn zero_weight_images_are_not_focal() {
        let s = raw(&[
            (0, frac(0, 1), Subset::from([2])),
            (1, frac(1, 1), Subset::from([1])),
        ]);
        assert_eq!(
            mass_of_source(&s).unwrap().focal_elements(),
            vec![Subset::from([1])]
        );
        assert_eq!(s.focal_elements(), vec![Subset::from([1])]);
    }

    #[test]
    fn canonical_source_ordering() {
        let m = MassFunction::new(
            theta12(),
            [
                (Subset::from([1]), frac(1, 2)),
                (Subset::from([1, 2]), frac(1, 2)),
            ],
        )
        .unwrap();
        let s = source_from_mass(&m).unwrap();
        assert_eq!(s.omega().elements(), &[0, 1]);
        assert_eq!(s.image(0), Some(&Subset::from([1])));
        assert_eq!(s.image(1), Some(&Subset::from([1, 2])));
        assert_eq!(s.weight(0), frac(1, 2));

        let m = MassFunction::new(
            theta12(),
            [
                (Subset::from([2]), frac(1, 3)),
                (Subset::from([1]), frac(2, 3)),
            ],
        )
        .unwrap();
        let s = source_from_mass(&m).unwrap();
        assert_eq!(s.image(0), Some(&Subset::from([1])));
        assert_eq!(s.image(1), Some(&Subset::from([2])));
        assert_eq!(mass_of_source(&s).unwrap(), m);

        let vac = source_from_mass(&MassFunction::vacuous(theta12())).unwrap();
        assert_eq!(vac.omega().len(), 1);
        assert_eq!(vac.image(0), Some(&theta12().full()));
    }
}
