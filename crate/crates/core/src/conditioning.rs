//! Bayesian conditioning on certain evidence about underlying frames,
//! geometric conditioning, cylinder sets and discounting.
//!
//! Conditioning never relabels: the conditioned underlying frame is the
//! conditioning set itself and I is literally restricted, so product
//! elements before and after conditioning can be compared coordinate by
//! coordinate.

use num::{One, Signed, Zero};

use crate::combination::{
    enumerate_product, MultipleSourceStructure, ProductDistribution, ProductElement,
};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::probability::PointProbability;
use crate::rational::{render, Rational};
use crate::source::SourceStructure;

/// P_Δ(γ) = P(γ) / P(Δ) for γ ∈ Δ.
pub fn condition_probability(p: &PointProbability, delta: &Subset) -> Result<PointProbability> {
    p.frame().check_subset(delta)?;
    let mass = p.prob_of(delta.iter());
    if mass.is_zero() {
        return Err(Error::NullConditioning(format!("P({delta}) = 0")));
    }
    let frame = Frame::new(delta.iter())?;
    let weights = delta.iter().map(|x| p.weight(x) / &mass).collect();
    PointProbability::new(frame, weights)
}

/// S_Δ = (Δ, P_Δ, I restricted to Δ).
pub fn condition_source(s: &SourceStructure, delta: &Subset) -> Result<SourceStructure> {
    let p = condition_probability(s.probability(), delta)?;
    let compat = delta
        .iter()
        .map(|x| s.image(x).expect("checked").clone())
        .collect();
    let labels = delta
        .iter()
        .map(|x| s.label(x).expect("checked").to_string())
        .collect();
    SourceStructure::new_labelled(s.theta().clone(), p, compat, labels)
}

/// Conditioning on Δ = {ω : I(ω) ⊆ A}; the induced masses become
/// m(X)/Bel(A) for X ⊆ A.
pub fn geometric_condition(s: &SourceStructure, a: &Subset) -> Result<SourceStructure> {
    s.theta().check_subset(a)?;
    let delta: Subset = s
        .iter()
        .filter(|(_, _, i)| i.is_subset(a))
        .map(|(x, _, _)| x)
        .collect();
    condition_source(s, &delta).map_err(|e| match e {
        Error::NullConditioning(_) => Error::NullConditioning(format!("Bel({a}) = 0")),
        other => other,
    })
}

/// A product subset Δ = ∏_i Δ_i of Ω^s, every Δ_i non-empty.
///
/// `parts()[j]` is Δ_i for the j-th index of ψ^s in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSubset {
    parts: Vec<Subset>,
}

impl ProductSubset {
    pub fn new(s: &MultipleSourceStructure, parts: Vec<Subset>) -> Result<Self> {
        if parts.len() != s.len() {
            return Err(Error::BadIndex(format!(
                "{} parts for a structure with {} sources",
                parts.len(),
                s.len()
            )));
        }
        for ((i, src), part) in s.iter().zip(&parts) {
            if part.is_empty() {
                return Err(Error::Invalid(format!("part for source {i} is empty")));
            }
            if !src.omega().contains_subset(part) {
                return Err(Error::BadIndex(format!(
                    "part {part} is not within the underlying frame of source {i}"
                )));
            }
        }
        Ok(ProductSubset { parts })
    }

    /// Ω^s itself.
    pub fn full(s: &MultipleSourceStructure) -> Self {
        ProductSubset {
            parts: s.sources().map(|src| src.omega().full()).collect(),
        }
    }

    /// ¬E_k^l as a product subset: Δ_k = Ω_k \ {l}, every other part whole.
    ///
    /// Fails when Ω_k = {l}, since ¬E_k^l is then empty.
    pub fn negated_cylinder(s: &MultipleSourceStructure, k: u32, l: u32) -> Result<Self> {
        let pos = cylinder_position(s, k, l)?;
        let mut parts: Vec<Subset> = s.sources().map(|src| src.omega().full()).collect();
        parts[pos] = parts[pos].without(l);
        if parts[pos].is_empty() {
            return Err(Error::Invalid(format!(
                "source {k} has only the element {l}; its negated cylinder is empty"
            )));
        }
        Ok(ProductSubset { parts })
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn contains(&self, w: &ProductElement) -> bool {
        self.parts
            .iter()
            .zip(w.coords())
            .all(|(part, &x)| part.contains(x))
    }

    /// |Δ|.
    pub fn cardinality(&self) -> u128 {
        self.parts.iter().map(|p| p.len() as u128).product()
    }
}

fn cylinder_position(s: &MultipleSourceStructure, k: u32, l: u32) -> Result<usize> {
    let pos = s
        .position(k)
        .ok_or_else(|| Error::BadIndex(format!("no source with index {k}")))?;
    let src = s.source(k).expect("position found");
    if !src.omega().contains(l) {
        return Err(Error::BadIndex(format!(
            "{l} is not in the underlying frame of source {k}"
        )));
    }
    Ok(pos)
}

/// (E_k^l, ¬E_k^l): product elements whose k-th coordinate is, or is not, `l`.
pub fn cylinder(
    s: &MultipleSourceStructure,
    k: u32,
    l: u32,
) -> Result<(Vec<ProductElement>, Vec<ProductElement>)> {
    let pos = cylinder_position(s, k, l)?;
    Ok(enumerate_product(s)?
        .into_iter()
        .partition(|w| w.coord(pos) == l))
}

/// s_Δ: each source conditioned on its part of Δ.
pub fn condition_mss(
    s: &MultipleSourceStructure,
    delta: &ProductSubset,
) -> Result<MultipleSourceStructure> {
    if delta.parts.len() != s.len() {
        return Err(Error::BadIndex(
            "product subset does not match the structure".into(),
        ));
    }
    let sources = s
        .iter()
        .zip(&delta.parts)
        .map(|((i, src), part)| {
            condition_source(src, part)
                .map(|c| (i, c))
                .map_err(|e| match e {
                    Error::NullConditioning(msg) => {
                        Error::NullConditioning(format!("source {i}: {msg}"))
                    }
                    other => other,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    MultipleSourceStructure::new(sources)
}

/// (π)_Δ: a product distribution conditioned on the elements of Δ.
pub fn condition_distribution(
    pi: &ProductDistribution,
    delta: &ProductSubset,
) -> Result<ProductDistribution> {
    let mass = pi.prob_where(|w| delta.contains(w));
    if mass.is_zero() {
        return Err(Error::NullConditioning("π(Δ) = 0".into()));
    }
    let (elements, weights) = pi
        .iter()
        .filter(|(w, _)| delta.contains(w))
        .map(|(w, p)| (w.clone(), p / &mass))
        .unzip();
    ProductDistribution::new(elements, weights)
}

fn check_discount_rate(eps: &Rational) -> Result<()> {
    if eps.is_negative() || *eps >= Rational::one() {
        return Err(Error::Invalid(format!(
            "discount rate {} is outside [0, 1)",
            render(eps)
        )));
    }
    Ok(())
}

/// m'(X) = (1-ε)·m(X) for X ≠ Θ and m'(Θ) = (1-ε)·m(Θ) + ε.
pub fn discount_mass(m: &MassFunction, eps: &Rational) -> Result<MassFunction> {
    check_discount_rate(eps)?;
    m.require_normalized()?;
    let keep = Rational::one() - eps;
    let scaled = m.iter().map(|(x, w)| (x.clone(), w * &keep));
    let entries: Vec<_> = scaled.chain([(m.theta().full(), eps.clone())]).collect();
    MassFunction::new(m.theta().clone(), entries)
}

/// Source-level discounting: every weight scaled by 1-ε and one new
/// underlying element mapped to Θ with weight ε. Rates of zero return
/// the source unchanged.
pub fn discount_source(s: &SourceStructure, eps: &Rational) -> Result<SourceStructure> {
    check_discount_rate(eps)?;
    if eps.is_zero() {
        return Ok(s.clone());
    }
    let keep = Rational::one() - eps;
    let fresh = s.omega().elements().last().copied().unwrap_or(0) + 1;
    let mut pairs: Vec<(u32, Rational)> = s.iter().map(|(x, w, _)| (x, w * &keep)).collect();
    pairs.push((fresh, eps.clone()));
    let mut compat: Vec<Subset> = s.compat_images().to_vec();
    compat.push(s.theta().full());
    let mut labels: Vec<String> = s.labels().to_vec();
    labels.push(format!("discount{fresh}"));
    let p = PointProbability::from_pairs(pairs)?;
    SourceStructure::new_labelled(s.theta().clone(), p, compat, labels)
}
