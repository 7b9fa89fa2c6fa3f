use num::Zero;

use super::{AxiomKind, AxiomVerdict, Conditioning, Witness};
use crate::combination::{
    apply_c_rule, product_table, CRule, CRuleId, MultipleSourceStructure, DEFAULT_PRODUCT_CAP,
};
use crate::conditioning::{condition_distribution, condition_mss, ProductSubset};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::probability::PointProbability;
use crate::rational::{render, Rational};
use crate::source::SourceStructure;

/// π(ω) = 0 whenever I^s(ω) = ∅.
pub fn check_respects_contradictions<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
) -> Result<AxiomVerdict> {
    check_zero_on(
        rule,
        s,
        AxiomKind::Contradictions,
        |t| t.is_contradictory(),
        "I^s(ω) = ∅",
    )
}

/// π(ω) = 0 whenever some P_i(ω_i) = 0.
pub fn check_respects_zero_probabilities<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
) -> Result<AxiomVerdict> {
    check_zero_on(
        rule,
        s,
        AxiomKind::ZeroProbabilities,
        |t| t.has_zero_factor(),
        "some P_i(ω_i) = 0",
    )
}

fn check_zero_on<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    axiom: AxiomKind,
    must_vanish: impl Fn(&crate::combination::Tuple) -> bool,
    why: &str,
) -> Result<AxiomVerdict> {
    let pi = apply_c_rule(rule, s)?;
    let table = product_table(s, DEFAULT_PRODUCT_CAP)?;
    for (t, w) in table.iter().zip(pi.weights()) {
        if must_vanish(t) && !w.is_zero() {
            return Ok(AxiomVerdict::fail(
                axiom,
                rule,
                Witness {
                    structure: s.clone(),
                    conditioning: Conditioning::None,
                    element: Some(t.element.clone()),
                    expected: Some(Rational::zero()),
                    actual: Some(w.clone()),
                    note: format!("π(ω) ≠ 0 although {why}"),
                },
            ));
        }
    }
    Ok(AxiomVerdict::pass(axiom, rule))
}

/// (π^s)_Δ = π^{s_Δ} for Δ = ¬E_k^l.
pub fn check_assumption_a<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    k: u32,
    l: u32,
) -> Result<AxiomVerdict> {
    let src = s
        .source(k)
        .ok_or_else(|| Error::BadIndex(format!("no source with index {k}")))?;
    if !src.omega().contains(l) {
        return Err(Error::BadIndex(format!(
            "{l} is not in the underlying frame of source {k}"
        )));
    }
    if src.omega().len() == 1 {
        return Ok(AxiomVerdict::skip(
            AxiomKind::AssumptionA,
            rule,
            format!("¬E_{k}^{l} is empty, so π^s(Δ) = 0"),
        ));
    }
    let delta = ProductSubset::negated_cylinder(s, k, l)?;
    compare_conditionings(
        rule,
        s,
        &delta,
        AxiomKind::AssumptionA,
        Conditioning::Cylinder { k, l },
    )
}

/// (π^s)_Δ = π^{s_Δ} for an arbitrary product subset Δ.
pub fn check_assumption_a_general<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    delta: &ProductSubset,
) -> Result<AxiomVerdict> {
    compare_conditionings(
        rule,
        s,
        delta,
        AxiomKind::AssumptionAGeneral,
        Conditioning::Product(delta.clone()),
    )
}

fn compare_conditionings<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
    delta: &ProductSubset,
    axiom: AxiomKind,
    conditioning: Conditioning,
) -> Result<AxiomVerdict> {
    let pi = apply_c_rule(rule, s)?;
    let before = match condition_distribution(&pi, delta) {
        Ok(d) => d,
        Err(Error::NullConditioning(_)) => {
            return Ok(AxiomVerdict::skip(axiom, rule, "π^s(Δ) = 0".into()))
        }
        Err(e) => return Err(e),
    };
    let witness = |element, expected, actual, note: String| Witness {
        structure: s.clone(),
        conditioning: conditioning.clone(),
        element,
        expected,
        actual,
        note,
    };
    let conditioned = match condition_mss(s, delta) {
        Ok(c) => c,
        Err(Error::NullConditioning(msg)) => {
            return Ok(AxiomVerdict::fail(
                axiom,
                rule,
                witness(
                    None,
                    None,
                    None,
                    format!("π^s(Δ) ≠ 0 but s_Δ is undefined ({msg})"),
                ),
            ))
        }
        Err(e) => return Err(e),
    };
    let after = match apply_c_rule(rule, &conditioned) {
        Ok(d) => d,
        Err(Error::NotCombinable(msg)) => {
            return Ok(AxiomVerdict::fail(
                axiom,
                rule,
                witness(
                    None,
                    None,
                    None,
                    format!("π^s(Δ) ≠ 0 but s_Δ is not combinable ({msg})"),
                ),
            ))
        }
        Err(e) => return Err(e),
    };
    // Both sides live on the elements of Δ in enumeration order.
    debug_assert_eq!(before.elements(), after.elements());
    for ((w, lhs), rhs) in before.iter().zip(after.weights()) {
        if lhs != rhs {
            return Ok(AxiomVerdict::fail(
                axiom,
                rule,
                witness(
                    Some(w.clone()),
                    Some(lhs.clone()),
                    Some(rhs.clone()),
                    "(π^s)_Δ(ω) ≠ π^{s_Δ}(ω)".into(),
                ),
            ));
        }
    }
    Ok(AxiomVerdict::pass(axiom, rule))
}

/// Source `k` has two underlying elements mapped to `focals_k`, weighted by
/// `pk`; each subsequent source is certain on one of `certain_focals`.
/// Source `k` gets index 0 and the certain sources 1, 2, ...
pub fn build_b_instance(
    theta: &Frame,
    pk: &PointProbability,
    focals_k: [&Subset; 2],
    certain_focals: &[Subset],
) -> Result<MultipleSourceStructure> {
    if pk.frame().len() != 2 {
        return Err(Error::InvalidInstance(format!(
            "the two-element source needs exactly two underlying elements, got {}",
            pk.frame().len()
        )));
    }
    for f in focals_k.iter().copied().chain(certain_focals) {
        if f.is_empty() {
            return Err(Error::InvalidInstance(
                "focal elements must be non-empty".into(),
            ));
        }
        theta.check_subset(f)?;
    }
    let common = certain_focals
        .iter()
        .fold(theta.full(), |acc, f| acc.intersection(f));
    for f in focals_k {
        if f.is_disjoint(&common) {
            return Err(Error::InvalidInstance(format!(
                "focal element {f} conflicts with the certain sources (their intersection is {common})"
            )));
        }
    }
    let k_source = SourceStructure::new(
        theta.clone(),
        pk.clone(),
        vec![focals_k[0].clone(), focals_k[1].clone()],
    )?;
    let mut sources = vec![k_source];
    for f in certain_focals {
        sources.push(SourceStructure::certain(theta.clone(), f.clone())?);
    }
    MultipleSourceStructure::from_sources(sources)
}

/// π^s(E_k^l) = P_k(l) on a structure with one two-element source k, every
/// other source single-element, and no empty I^s(ω).
pub fn check_assumption_b<R: CRule + ?Sized>(
    rule: &R,
    inst: &MultipleSourceStructure,
) -> Result<AxiomVerdict> {
    let twos: Vec<u32> = inst
        .iter()
        .filter(|(_, src)| src.omega().len() == 2)
        .map(|(i, _)| i)
        .collect();
    let shaped = inst.sources().all(|src| matches!(src.omega().len(), 1 | 2));
    if twos.len() != 1 || !shaped {
        return Err(Error::InvalidInstance(
            "need exactly one two-element source and single-element others".into(),
        ));
    }
    let k = twos[0];
    let pos = inst.position(k).expect("index present");
    let table = product_table(inst, DEFAULT_PRODUCT_CAP)?;
    if let Some(t) = table.iter().find(|t| t.is_contradictory()) {
        return Err(Error::InvalidInstance(format!(
            "I^s is empty at {}; the instance has conflict",
            t.element.describe(inst)
        )));
    }
    let pi = apply_c_rule(rule, inst)?;
    let src = inst.source(k).expect("index present");
    for l in src.omega().elements().iter().copied() {
        let expected = src.weight(l);
        let actual = pi.prob_where(|w| w.coord(pos) == l);
        if actual != expected {
            return Ok(AxiomVerdict::fail(
                AxiomKind::AssumptionB,
                rule,
                Witness {
                    structure: inst.clone(),
                    conditioning: Conditioning::Cylinder { k, l },
                    element: None,
                    note: format!(
                        "π(E_{k}^{l}) = {} but P_{k}({l}) = {}",
                        render(&actual),
                        render(&expected)
                    ),
                    expected: Some(expected),
                    actual: Some(actual),
                },
            ));
        }
    }
    Ok(AxiomVerdict::pass(AxiomKind::AssumptionB, rule))
}

/// For every pair ω, ω' differing in exactly one coordinate with π_DS
/// non-zero at both, π(ω)/π_DS(ω) = π(ω')/π_DS(ω').
pub fn ratio_invariance_check<R: CRule + ?Sized>(
    rule: &R,
    s: &MultipleSourceStructure,
) -> Result<AxiomVerdict> {
    let pi = apply_c_rule(rule, s)?;
    let ds = apply_c_rule(&CRuleId::Dempster, s)?;
    let ratios: Vec<Option<Rational>> = pi
        .weights()
        .iter()
        .zip(ds.weights())
        .map(|(p, d)| if d.is_zero() { None } else { Some(p / d) })
        .collect();
    let elements = pi.elements();
    for a in 0..elements.len() {
        let Some(ra) = &ratios[a] else { continue };
        for b in (a + 1)..elements.len() {
            let Some(rb) = &ratios[b] else { continue };
            if elements[a].hamming(&elements[b]) == 1 && ra != rb {
                return Ok(AxiomVerdict::fail(
                    AxiomKind::RatioInvariance,
                    rule,
                    Witness {
                        structure: s.clone(),
                        conditioning: Conditioning::Pair(elements[b].clone()),
                        element: Some(elements[a].clone()),
                        expected: Some(rb.clone()),
                        actual: Some(ra.clone()),
                        note: format!(
                            "π/π_DS differs between ω and ω' = {}",
                            elements[b].describe(s)
                        ),
                    },
                ));
            }
        }
    }
    Ok(AxiomVerdict::pass(AxiomKind::RatioInvariance, rule))
}

/// Runs one named check. `conditioning` supplies the (k, l) or Δ that the
/// assumption-A forms need; the other checks ignore it.
pub fn run_check<R: CRule + ?Sized>(
    axiom: AxiomKind,
    rule: &R,
    s: &MultipleSourceStructure,
    conditioning: &Conditioning,
) -> Result<AxiomVerdict> {
    match axiom {
        AxiomKind::Contradictions => check_respects_contradictions(rule, s),
        AxiomKind::ZeroProbabilities => check_respects_zero_probabilities(rule, s),
        AxiomKind::RatioInvariance => ratio_invariance_check(rule, s),
        AxiomKind::AssumptionB => check_assumption_b(rule, s),
        AxiomKind::AssumptionA => match conditioning {
            Conditioning::Cylinder { k, l } => check_assumption_a(rule, s, *k, *l),
            _ => Err(Error::Invalid(
                "assumption-A needs a cylinder (k, l)".into(),
            )),
        },
        AxiomKind::AssumptionAGeneral => match conditioning {
            Conditioning::Product(delta) => check_assumption_a_general(rule, s, delta),
            Conditioning::Cylinder { k, l } => {
                let delta = ProductSubset::negated_cylinder(s, *k, *l)?;
                check_assumption_a_general(rule, s, &delta)
            }
            _ => Err(Error::Invalid(
                "assumption-A-general needs a product subset".into(),
            )),
        },
    }
}
