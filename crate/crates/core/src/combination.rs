//! Combining several source structures over a common frame.
//!
//! The product underlying frame Ω^s and the intersected compatibility
//! function I^s are fixed; what varies between combination rules is the
//! probability put on Ω^s, the job of a [`CRule`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::probability::PointProbability;
use crate::rational::{render, Rational};
use crate::source::{validate_source, SourceStructure};

/// Default bound on |Ω^s| for anything that enumerates the product frame.
pub const DEFAULT_PRODUCT_CAP: u128 = 1_000_000;

/// A finite indexed family of source structures over one frame of interest.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultipleSourceStructure {
    theta: Frame,
    sources: BTreeMap<u32, SourceStructure>,
}

impl MultipleSourceStructure {
    pub fn new(sources: impl IntoIterator<Item = (u32, SourceStructure)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, s) in sources {
            if map.insert(i, s).is_some() {
                return Err(Error::Invalid(format!("source index {i} given twice")));
            }
        }
        let theta = match map.values().next() {
            Some(s) => s.theta().clone(),
            None => {
                return Err(Error::Invalid(
                    "a multiple source structure needs a source".into(),
                ))
            }
        };
        for (i, s) in &map {
            if s.theta() != &theta {
                return Err(Error::FrameMismatch(format!(
                    "source {i} is over {}, expected {}",
                    s.theta().full(),
                    theta.full()
                )));
            }
            validate_source(s).map_err(|v| Error::Invalid(format!("source {i}: {v}")))?;
        }
        Ok(MultipleSourceStructure {
            theta,
            sources: map,
        })
    }

    /// Sources indexed 0, 1, .. in the given order.
    pub fn from_sources(sources: impl IntoIterator<Item = SourceStructure>) -> Result<Self> {
        Self::new(sources.into_iter().enumerate().map(|(i, s)| (i as u32, s)))
    }

    /// Canonical sources of each mass function, indexed 0, 1, ...
    pub fn from_masses(masses: &[MassFunction]) -> Result<Self> {
        let sources: Result<Vec<_>> = masses.iter().map(crate::source::source_from_mass).collect();
        Self::from_sources(sources?)
    }

    pub fn theta(&self) -> &Frame {
        &self.theta
    }

    /// ψ^s, ascending.
    pub fn indices(&self) -> Vec<u32> {
        self.sources.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn source(&self, i: u32) -> Option<&SourceStructure> {
        self.sources.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &SourceStructure)> + '_ {
        self.sources.iter().map(|(i, s)| (*i, s))
    }

    pub fn sources(&self) -> impl Iterator<Item = &SourceStructure> + '_ {
        self.sources.values()
    }

    /// Position of index `i` within ψ^s; this is the coordinate position in
    /// every [`ProductElement`] over this structure.
    pub fn position(&self, i: u32) -> Option<usize> {
        self.sources.keys().position(|&k| k == i)
    }

    /// |Ω^s|.
    pub fn product_cardinality(&self) -> u128 {
        self.sources
            .values()
            .map(|s| s.omega().len() as u128)
            .product()
    }

    pub fn masses(&self) -> Result<Vec<MassFunction>> {
        self.sources.values().map(|s| s.mass()).collect()
    }

    /// Same structure with the source at `i` replaced.
    pub fn with_source(&self, i: u32, s: SourceStructure) -> Result<Self> {
        let mut sources = self.sources.clone();
        sources.insert(i, s);
        Self::new(sources)
    }

    /// Same structure without the source at `i`.
    pub fn without_source(&self, i: u32) -> Result<Self> {
        let mut sources = self.sources.clone();
        sources.remove(&i);
        Self::new(sources)
    }
}

impl fmt::Debug for MultipleSourceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.sources.iter()).finish()
    }
}

/// An element ω of Ω^s.
///
/// `coords()[j]` is ω_i for the j-th index i of ψ^s in ascending order.
/// Product elements order lexicographically, which is also enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductElement {
    coords: Vec<u32>,
}

impl ProductElement {
    pub fn new(coords: Vec<u32>) -> Self {
        ProductElement { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// ω_i for the index at coordinate position `pos`.
    pub fn coord(&self, pos: usize) -> u32 {
        self.coords[pos]
    }

    /// Number of coordinates in which `self` and `other` differ.
    pub fn hamming(&self, other: &ProductElement) -> usize {
        self.coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Validates the element against `s` and pairs each coordinate with its index.
    pub fn indexed(&self, s: &MultipleSourceStructure) -> Result<Vec<(u32, u32)>> {
        if self.coords.len() != s.len() {
            return Err(Error::BadIndex(format!(
                "product element has {} coordinates, structure has {} sources",
                self.coords.len(),
                s.len()
            )));
        }
        s.iter()
            .zip(&self.coords)
            .map(|((i, src), &w)| {
                if src.omega().contains(w) {
                    Ok((i, w))
                } else {
                    Err(Error::BadIndex(format!(
                        "{w} is not in the underlying frame of source {i}"
                    )))
                }
            })
            .collect()
    }

    /// Provenance label `(i:label,...)`.
    pub fn describe(&self, s: &MultipleSourceStructure) -> String {
        let parts: Vec<String> = s
            .iter()
            .zip(&self.coords)
            .map(|((i, src), &w)| format!("{i}:{}", src.label(w).unwrap_or("?")))
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_cap(s: &MultipleSourceStructure, cap: u128) -> Result<()> {
    let n = s.product_cardinality();
    if n > cap {
        Err(Error::ProductTooLarge {
            cardinality: n,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Odometer over Ω^s in lexicographic order; no allocation beyond the
/// current tuple.
struct ProductIter<'a> {
    frames: Vec<&'a [u32]>,
    cursor: Vec<usize>,
    done: bool,
}

impl<'a> ProductIter<'a> {
    fn new(s: &'a MultipleSourceStructure) -> Self {
        let frames: Vec<&[u32]> = s.sources().map(|src| src.omega().elements()).collect();
        let cursor = vec![0; frames.len()];
        ProductIter {
            frames,
            cursor,
            done: false,
        }
    }
}

impl Iterator for ProductIter<'_> {
    type Item = ProductElement;

    fn next(&mut self) -> Option<ProductElement> {
        if self.done {
            return None;
        }
        let item = ProductElement::new(
            self.cursor
                .iter()
                .zip(&self.frames)
                .map(|(&c, f)| f[c])
                .collect(),
        );
        let mut pos = self.cursor.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.cursor[pos] += 1;
            if self.cursor[pos] < self.frames[pos].len() {
                break;
            }
            self.cursor[pos] = 0;
        }
        Some(item)
    }
}

/// Ω^s in lexicographic order, refusing products larger than `cap`.
pub fn enumerate_product_capped(
    s: &MultipleSourceStructure,
    cap: u128,
) -> Result<Vec<ProductElement>> {
    check_cap(s, cap)?;
    Ok(ProductIter::new(s).collect())
}

/// Ω^s in lexicographic order under [`DEFAULT_PRODUCT_CAP`].
pub fn enumerate_product(s: &MultipleSourceStructure) -> Result<Vec<ProductElement>> {
    enumerate_product_capped(s, DEFAULT_PRODUCT_CAP)
}

fn intersect_images(s: &MultipleSourceStructure, w: &ProductElement) -> Subset {
    let mut images = s
        .sources()
        .zip(w.coords())
        .map(|(src, &x)| src.image(x).expect("checked"));
    let first = images.next().expect("non-empty structure").clone();
    images.fold(first, |acc, img| acc.intersection(img))
}

/// I^s(ω) = ⋂_i I_i(ω_i).
pub fn combined_compatibility(s: &MultipleSourceStructure, w: &ProductElement) -> Result<Subset> {
    w.indexed(s)?;
    Ok(intersect_images(s, w))
}

fn factors(s: &MultipleSourceStructure, w: &ProductElement) -> Vec<Rational> {
    s.sources()
        .zip(w.coords())
        .map(|(src, &x)| src.weight(x))
        .collect()
}

/// True iff some ω has every P_i(ω_i) ≠ 0 and I^s(ω) ≠ ∅.
///
/// Walks the product lazily, skipping zero-weight elements, so it needs no cap.
pub fn is_combinable(s: &MultipleSourceStructure) -> bool {
    let live: Vec<Vec<&Subset>> = s
        .sources()
        .map(|src| {
            src.iter()
                .filter(|(_, w, _)| !w.is_zero())
                .map(|(_, _, i)| i)
                .collect()
        })
        .collect();
    fn search(live: &[Vec<&Subset>], acc: &Subset) -> bool {
        match live.split_first() {
            None => !acc.is_empty(),
            Some((first, rest)) => first.iter().any(|img| {
                let next = acc.intersection(img);
                !next.is_empty() && search(rest, &next)
            }),
        }
    }
    search(&live, &s.theta().full())
}

/// One element of Ω^s with everything a C-rule may look at.
#[derive(Debug, Clone)]
pub struct Tuple {
    pub element: ProductElement,
    /// I^s(ω).
    pub image: Subset,
    /// P_i(ω_i) for each coordinate.
    pub factors: Vec<Rational>,
}

impl Tuple {
    pub fn is_contradictory(&self) -> bool {
        self.image.is_empty()
    }

    pub fn has_zero_factor(&self) -> bool {
        self.factors.iter().any(|f| f.is_zero())
    }

    pub fn product(&self) -> Rational {
        self.factors.iter().product()
    }
}

pub fn product_table(s: &MultipleSourceStructure, cap: u128) -> Result<Vec<Tuple>> {
    check_cap(s, cap)?;
    Ok(ProductIter::new(s)
        .map(|element| Tuple {
            image: intersect_images(s, &element),
            factors: factors(s, &element),
            element,
        })
        .collect())
}

/// A probability function over Ω^s, stored in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDistribution {
    elements: Vec<ProductElement>,
    weights: Vec<Rational>,
}

impl ProductDistribution {
    /// `elements` must be strictly increasing and `weights` must sum to one.
    pub fn new(elements: Vec<ProductElement>, weights: Vec<Rational>) -> Result<Self> {
        if elements.len() != weights.len() || elements.is_empty() {
            return Err(Error::Invalid(
                "distribution needs one weight per element".into(),
            ));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "distribution elements must be strictly increasing".into(),
            ));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::Invalid(format!(
                "distribution sums to {}",
                render(&total)
            )));
        }
        Ok(ProductDistribution { elements, weights })
    }

    pub fn elements(&self) -> &[ProductElement] {
        &self.elements
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProductElement, &Rational)> + '_ {
        self.elements.iter().zip(&self.weights)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// π(ω), zero for elements outside the domain.
    pub fn get(&self, w: &ProductElement) -> Rational {
        self.elements
            .binary_search(w)
            .map(|j| self.weights[j].clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// π of the set of elements satisfying `pred`.
    pub fn prob_where(&self, mut pred: impl FnMut(&ProductElement) -> bool) -> Rational {
        self.iter().filter(|(e, _)| pred(e)).map(|(_, w)| w).sum()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Elements with non-zero weight.
    pub fn support(&self) -> Vec<&ProductElement> {
        self.iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(e, _)| e)
            .collect()
    }

    /// Relabels Ω^s as {0..N-1} in enumeration order.
    pub fn to_point_probability(&self) -> PointProbability {
        PointProbability::new(
            Frame::range(self.elements.len() as u32).expect("non-empty"),
            self.weights.clone(),
        )
        .expect("distribution sums to one")
    }
}

/// The probabilistic component of a combination rule: maps a combinable
/// multiple source structure to a probability function on Ω^s.
///
/// Implementors give an unnormalized weight per tuple; [`apply_c_rule`]
/// normalizes.
pub trait CRule: Sync {
    fn name(&self) -> String;

    fn raw_weight(&self, tuple: &Tuple) -> Rational;
}

/// The registered combination rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CRuleId {
    /// π ∝ ∏ P_i(ω_i) on non-contradictory tuples.
    Dempster,
    /// Equal weight on every non-contradictory tuple with no zero factor.
    Uniform,
    /// π ∝ ∏ P_i(ω_i)² on non-contradictory tuples.
    Squared,
}

impl CRuleId {
    pub const ALL: [CRuleId; 3] = [CRuleId::Dempster, CRuleId::Uniform, CRuleId::Squared];

    pub fn as_str(&self) -> &'static str {
        match self {
            CRuleId::Dempster => "dempster",
            CRuleId::Uniform => "uniform",
            CRuleId::Squared => "squared",
        }
    }
}

impl fmt::Display for CRuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CRuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dempster" => Ok(CRuleId::Dempster),
            "uniform" => Ok(CRuleId::Uniform),
            "squared" => Ok(CRuleId::Squared),
            other => Err(Error::Parse(format!(
                "unknown rule {other:?} (expected dempster, uniform or squared)"
            ))),
        }
    }
}

impl CRule for CRuleId {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn raw_weight(&self, t: &Tuple) -> Rational {
        if t.is_contradictory() {
            return Rational::zero();
        }
        match self {
            CRuleId::Dempster => t.product(),
            CRuleId::Uniform => {
                if t.has_zero_factor() {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            }
            CRuleId::Squared => {
                let p = t.product();
                &p * &p
            }
        }
    }
}

/// π^s for `rule`, with Ω^s bounded by `cap`.
pub fn apply_c_rule_capped<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    cap: u128,
) -> Result<ProductDistribution> {
    if !is_combinable(s) {
        return Err(Error::NotCombinable(
            "every product element with non-zero factors has an empty combined image".into(),
        ));
    }
    let table = product_table(s, cap)?;
    let raw: Vec<Rational> = table.iter().map(|t| rule.raw_weight(t)).collect();
    let total: Rational = raw.iter().sum();
    if total.is_zero() {
        return Err(Error::NotCombinable(format!(
            "rule {} puts no weight anywhere",
            rule.name()
        )));
    }
    let weights = raw.into_iter().map(|w| w / &total).collect();
    let elements = table.into_iter().map(|t| t.element).collect();
    ProductDistribution::new(elements, weights)
}

/// π^s for `rule` under [`DEFAULT_PRODUCT_CAP`].
pub fn apply_c_rule<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
) -> Result<ProductDistribution> {
    apply_c_rule_capped(rule, s, DEFAULT_PRODUCT_CAP)
}

/// The combination rule for any C-rule: (Ω^s relabelled 0..N-1, π^s, I^s).
pub fn combine_with<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    cap: u128,
) -> Result<SourceStructure> {
    let pi = apply_c_rule_capped(rule, s, cap)?;
    let compat = pi
        .elements()
        .iter()
        .map(|w| intersect_images(s, w))
        .collect();
    let labels = pi.elements().iter().map(|w| w.describe(s)).collect();
    SourceStructure::new_labelled(s.theta().clone(), pi.to_point_probability(), compat, labels)
}

/// Dempster's combination rule on source structures.
pub fn dempster_combine(s: &MultipleSourceStructure) -> Result<SourceStructure> {
    combine_with(&CRuleId::Dempster, s, DEFAULT_PRODUCT_CAP)
}

fn check_common_frame(ms: &[MassFunction]) -> Result<&Frame> {
    let first = ms
        .first()
        .ok_or_else(|| Error::Invalid("nothing to combine".into()))?;
    for (j, m) in ms.iter().enumerate() {
        if m.theta() != first.theta() {
            return Err(Error::FrameMismatch(format!(
                "mass function {j} is over {}, expected {}",
                m.theta().full(),
                first.theta().full()
            )));
        }
        m.require_normalized()
            .map_err(|e| Error::Invalid(format!("mass function {j}: {e}")))?;
    }
    Ok(first.theta())
}

/// Σ over focal tuples (A_1..A_n) of ∏ m_j(A_j), bucketed by ⋂ A_j.
fn conjunctive_sum(theta: &Frame, ms: &[MassFunction]) -> BTreeMap<Subset, Rational> {
    let mut acc: BTreeMap<Subset, Rational> = BTreeMap::from([(theta.full(), Rational::one())]);
    for m in ms {
        let mut next: BTreeMap<Subset, Rational> = BTreeMap::new();
        for (a, wa) in &acc {
            for (b, wb) in m.iter() {
                *next.entry(a.intersection(b)).or_insert_with(Rational::zero) += wa * wb;
            }
        }
        acc = next;
    }
    acc
}

/// Dempster's rule at the mass level: the conjunctive sum with the empty
/// set's share removed and the rest rescaled.
pub fn dempster_combine_masses(ms: &[MassFunction]) -> Result<MassFunction> {
    let theta = check_common_frame(ms)?.clone();
    let mut sum = conjunctive_sum(&theta, ms);
    let conflict = sum.remove(&Subset::empty()).unwrap_or_else(Rational::zero);
    let agreement = Rational::one() - &conflict;
    if agreement.is_zero() {
        return Err(Error::NotCombinable(
            "total conflict: every focal intersection is empty".into(),
        ));
    }
    MassFunction::new(theta, sum.into_iter().map(|(x, w)| (x, w / &agreement)))
}

/// The non-normalised rule: the conjunctive sum as is, empty set included.
pub fn unnormalized_combine_masses(ms: &[MassFunction]) -> Result<MassFunction> {
    let theta = check_common_frame(ms)?.clone();
    let sum = conjunctive_sum(&theta, ms);
    MassFunction::new(theta, sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn theta12() -> Frame {
        Frame::new([1, 2]).unwrap()
    }

    /// source 1: a↦{1}, b↦{1,2}; source 2: c↦{2}, d↦{1,2}; all weights 1/2.
    fn one_third() -> MultipleSourceStructure {
        let s1 = SourceStructure::from_triples(
            theta12(),
            [
                (0, frac(1, 2), Subset::from([1])),
                (1, frac(1, 2), Subset::from([1, 2])),
            ],
        )
        .unwrap();
        let s2 = SourceStructure::from_triples(
            theta12(),
            [
                (0, frac(1, 2), Subset::from([2])),
                (1, frac(1, 2), Subset::from([1, 2])),
            ],
        )
        .unwrap();
        MultipleSourceStructure::from_sources([s1, s2]).unwrap()
    }

    fn uniform_source(theta: &Frame, n: u32) -> SourceStructure {
        SourceStructure::from_triples(
            theta.clone(),
            (0..n).map(|j| (j, frac(1, n as i64), theta.full())),
        )
        .unwrap()
    }

    #[test]
    fn product_enumeration_order_and_size() {
        let s = one_third();
        let p = enumerate_product(&s).unwrap();
        let shown: Vec<String> = p.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);

        let t = theta12();
        let single = MultipleSourceStructure::from_sources([uniform_source(&t, 3)]).unwrap();
        assert_eq!(enumerate_product(&single).unwrap().len(), 3);

        let three = MultipleSourceStructure::from_sources([
            uniform_source(&t, 2),
            uniform_source(&t, 1),
            uniform_source(&t, 3),
        ])
        .unwrap();
        let p = enumerate_product(&three).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(p[5].coords(), &[1, 0, 2]);
    }

    #[test]
    fn product_cap_is_enforced() {
        let s = one_third();
        assert_eq!(
            enumerate_product_capped(&s, 3),
            Err(Error::ProductTooLarge {
                cardinality: 4,
                cap: 3
            })
        );
    }

    #[test]
    fn combined_compatibility_examples() {
        let s = one_third();
        let cc = |a, b| combined_compatibility(&s, &ProductElement::new(vec![a, b])).unwrap();
        assert_eq!(cc(0, 0), Subset::empty());
        assert_eq!(cc(1, 1), Subset::from([1, 2]));
        assert_eq!(cc(0, 1), Subset::from([1]));
        assert!(combined_compatibility(&s, &ProductElement::new(vec![0])).is_err());
        assert!(combined_compatibility(&s, &ProductElement::new(vec![0, 5])).is_err());
    }

    #[test]
    fn combinability_examples() {
        assert!(is_combinable(&one_third()));
        let t = theta12();
        let single = MultipleSourceStructure::from_sources([uniform_source(&t, 1)]).unwrap();
        assert!(is_combinable(&single));
        let clash = MultipleSourceStructure::from_sources([
            SourceStructure::certain(t.clone(), Subset::from([1])).unwrap(),
            SourceStructure::certain(t.clone(), Subset::from([2])).unwrap(),
        ])
        .unwrap();
        assert!(!is_combinable(&clash));
        assert!(matches!(
            apply_c_rule(&CRuleId::Dempster, &clash),
            Err(Error::NotCombinable(_))
        ));
        assert!(matches!(
            dempster_combine(&clash),
            Err(Error::NotCombinable(_))
        ));
    }

    #[test]
    fn zero_weight_tuples_do_not_make_a_structure_combinable() {
        let t = theta12();
        let s1 = SourceStructure::from_triples(
            t.clone(),
            [
                (0, frac(1, 1), Subset::from([1])),
                (1, frac(0, 1), Subset::from([2])),
            ],
        )
        .unwrap();
        let s2 = SourceStructure::certain(t, Subset::from([2])).unwrap();
        assert!(!is_combinable(
            &MultipleSourceStructure::from_sources([s1, s2]).unwrap()
        ));
    }

    #[test]
    fn c_rule_examples() {
        let s = one_third();
        let dempster = apply_c_rule(&CRuleId::Dempster, &s).unwrap();
        assert_eq!(
            dempster.weights(),
            &[frac(0, 1), frac(1, 3), frac(1, 3), frac(1, 3)]
        );
        let uniform = apply_c_rule(&CRuleId::Uniform, &s).unwrap();
        assert_eq!(
            uniform.weights(),
            &[frac(0, 1), frac(1, 3), frac(1, 3), frac(1, 3)]
        );

        let certain = MultipleSourceStructure::from_sources([SourceStructure::certain(
            theta12(),
            Subset::from([1]),
        )
        .unwrap()])
        .unwrap();
        assert_eq!(
            apply_c_rule(&CRuleId::Dempster, &certain)
                .unwrap()
                .weights(),
            &[frac(1, 1)]
        );
    }

    #[test]
    fn rule_ids_parse() {
        for r in CRuleId::ALL {
            assert_eq!(r.as_str().parse::<CRuleId>().unwrap(), r);
        }
        assert!("yager".parse::<CRuleId>().is_err());
    }

    #[test]
    fn dempster_combine_examples() {
        let s = one_third();
        let c = dempster_combine(&s).unwrap();
        assert_eq!(c.omega().len(), 4);
        assert_eq!(c.labels()[1], "(0:0,1:1)");
        let m = c.mass().unwrap();
        for x in [Subset::from([1]), Subset::from([2]), Subset::from([1, 2])] {
            assert_eq!(m.mass(&x), frac(1, 3));
        }

        let single = MultipleSourceStructure::from_sources([s.source(0).unwrap().clone()]).unwrap();
        let c = dempster_combine(&single).unwrap();
        assert_eq!(c.mass().unwrap(), s.source(0).unwrap().mass().unwrap());
    }

    #[test]
    fn extra_vacuous_source_is_neutral() {
        let s = one_third();
        let base = dempster_combine(&s).unwrap().mass().unwrap();
        let with_vac = s
            .with_source(7, SourceStructure::vacuous(theta12()))
            .unwrap();
        assert_eq!(dempster_combine(&with_vac).unwrap().mass().unwrap(), base);
    }

    fn m(theta: &Frame, entries: &[(&[u32], Rational)]) -> MassFunction {
        MassFunction::new(
            theta.clone(),
            entries
                .iter()
                .map(|(s, w)| (s.iter().copied().collect(), w.clone())),
        )
        .unwrap()
    }

    #[test]
    fn mass_level_examples() {
        let t = theta12();
        let m1 = m(&t, &[(&[1], frac(1, 2)), (&[1, 2], frac(1, 2))]);
        let m2 = m(&t, &[(&[2], frac(1, 2)), (&[1, 2], frac(1, 2))]);
        let c = dempster_combine_masses(&[m1.clone(), m2.clone()]).unwrap();
        assert_eq!(
            c,
            m(
                &t,
                &[
                    (&[1], frac(1, 3)),
                    (&[2], frac(1, 3)),
                    (&[1, 2], frac(1, 3))
                ]
            )
        );

        assert_eq!(
            dempster_combine_masses(&[m1.clone(), MassFunction::vacuous(t.clone())]).unwrap(),
            m1
        );

        let t3 = Frame::new([1, 2, 3]).unwrap();
        let a = m(&t3, &[(&[1], frac(99, 100)), (&[3], frac(1, 100))]);
        let b = m(&t3, &[(&[2], frac(99, 100)), (&[3], frac(1, 100))]);
        assert_eq!(
            dempster_combine_masses(&[a, b]).unwrap(),
            m(&t3, &[(&[3], frac(1, 1))])
        );
    }

    #[test]
    fn unnormalized_examples() {
        let t = theta12();
        let m1 = m(&t, &[(&[1], frac(1, 2)), (&[1, 2], frac(1, 2))]);
        let m2 = m(&t, &[(&[2], frac(1, 2)), (&[1, 2], frac(1, 2))]);
        let u = unnormalized_combine_masses(&[m1.clone(), m2]).unwrap();
        assert!(!u.is_normalized());
        for x in [
            Subset::empty(),
            Subset::from([1]),
            Subset::from([2]),
            Subset::from([1, 2]),
        ] {
            assert_eq!(u.mass(&x), frac(1, 4));
        }

        let v = m(&t, &[(&[1, 2], frac(1, 3)), (&[1], frac(2, 3))]);
        assert_eq!(
            unnormalized_combine_masses(&[m1.clone(), v.clone()]).unwrap(),
            dempster_combine_masses(&[m1, v]).unwrap()
        );

        let a = MassFunction::certain(t.clone(), Subset::from([1])).unwrap();
        let b = MassFunction::certain(t.clone(), Subset::from([2])).unwrap();
        assert_eq!(
            unnormalized_combine_masses(&[a.clone(), b.clone()]).unwrap(),
            MassFunction::certain(t, Subset::empty()).unwrap()
        );
        assert!(matches!(
            dempster_combine_masses(&[a, b]),
            Err(Error::NotCombinable(_))
        ));
    }

    #[test]
    fn mass_combination_rejects_mixed_frames() {
        let a = MassFunction::vacuous(theta12());
        let b = MassFunction::vacuous(Frame::new([1, 2, 3]).unwrap());
        assert!(matches!(
            dempster_combine_masses(&[a, b]),
            Err(Error::FrameMismatch(_))
        ));
        assert!(dempster_combine_masses(&[]).is_err());
    }
}
