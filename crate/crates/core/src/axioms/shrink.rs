//! Greedy, deterministic shrinking of failing witnesses.
//!
//! Candidates are tried in a fixed order: drop a source, drop an underlying
//! element (renormalizing the rest), then simpler weights. The first
//! candidate that still fails is adopted and the search restarts. Every
//! adopted candidate is strictly smaller under [`size`], so shrinking stops.

use num::{BigInt, One, Zero};

use super::{run_check, AxiomVerdict, Conditioning, Witness};
use crate::combination::{CRule, MultipleSourceStructure};
use crate::conditioning::{condition_source, ProductSubset};
use crate::probability::PointProbability;
use crate::rational::{frac, Rational};
use crate::source::SourceStructure;

fn max_denominator(src: &SourceStructure) -> BigInt {
    src.probability()
        .weights()
        .iter()
        .map(|w| w.denom().clone())
        .max()
        .unwrap_or_else(BigInt::one)
}

/// (sources, total underlying elements, sum of per-source max denominators)
fn size(s: &MultipleSourceStructure) -> (usize, usize, BigInt) {
    (
        s.len(),
        s.sources().map(|src| src.omega().len()).sum(),
        s.sources().map(max_denominator).sum(),
    )
}

fn reweighted(src: &SourceStructure, weights: Vec<Rational>) -> Option<SourceStructure> {
    let p = PointProbability::new(src.omega().clone(), weights).ok()?;
    SourceStructure::new_labelled(
        src.theta().clone(),
        p,
        src.compat_images().to_vec(),
        src.labels().to_vec(),
    )
    .ok()
}

/// Simpler weightings for one source: uniform on its support, then for a
/// two-point support every split a/d with d below the current largest
/// denominator.
fn simpler_weights(src: &SourceStructure) -> Vec<SourceStructure> {
    let weights = src.probability().weights();
    let support: Vec<usize> = (0..weights.len())
        .filter(|&j| !weights[j].is_zero())
        .collect();
    let mut out = Vec::new();
    let n = support.len() as i64;
    let uniform: Vec<Rational> = weights
        .iter()
        .map(|w| {
            if w.is_zero() {
                Rational::zero()
            } else {
                frac(1, n)
            }
        })
        .collect();
    if uniform != weights {
        out.extend(reweighted(src, uniform));
    }
    if support.len() == 2 {
        let bound = max_denominator(src);
        let mut d = 2i64;
        while BigInt::from(d) < bound {
            for a in 1..d {
                let mut w = vec![Rational::zero(); weights.len()];
                w[support[0]] = frac(a, d);
                w[support[1]] = frac(d - a, d);
                if w != weights {
                    out.extend(reweighted(src, w));
                }
            }
            d += 1;
        }
    }
    out
}

fn candidates(w: &Witness) -> Vec<(MultipleSourceStructure, Conditioning)> {
    let s = &w.structure;
    let conditioning = match &w.conditioning {
        Conditioning::Pair(_) => Conditioning::None,
        other => other.clone(),
    };
    let mut out = Vec::new();

    if s.len() > 1 {
        for (pos, i) in s.indices().into_iter().enumerate() {
            let cond = match &conditioning {
                Conditioning::Cylinder { k, .. } if *k == i => continue,
                Conditioning::Product(delta) => {
                    let mut parts = delta.parts().to_vec();
                    parts.remove(pos);
                    Some(parts)
                }
                _ => None,
            };
            let Ok(smaller) = s.without_source(i) else {
                continue;
            };
            let cond = match cond {
                Some(parts) => match ProductSubset::new(&smaller, parts) {
                    Ok(d) => Conditioning::Product(d),
                    Err(_) => continue,
                },
                None => conditioning.clone(),
            };
            out.push((smaller, cond));
        }
    }

    for (pos, (i, src)) in s.iter().enumerate() {
        if src.omega().len() < 2 {
            continue;
        }
        for &x in src.omega().elements() {
            if let Conditioning::Cylinder { k, l } = &conditioning {
                if *k == i && *l == x {
                    continue;
                }
            }
            let keep = src.omega().full().without(x);
            let Ok(reduced) = condition_source(src, &keep) else {
                continue;
            };
            let Ok(smaller) = s.with_source(i, reduced) else {
                continue;
            };
            let cond = match &conditioning {
                Conditioning::Product(delta) => {
                    let mut parts = delta.parts().to_vec();
                    parts[pos] = parts[pos].without(x);
                    if parts[pos].is_empty() {
                        continue;
                    }
                    match ProductSubset::new(&smaller, parts) {
                        Ok(d) => Conditioning::Product(d),
                        Err(_) => continue,
                    }
                }
                other => other.clone(),
            };
            out.push((smaller, cond));
        }
    }

    for (i, src) in s.iter() {
        for simpler in simpler_weights(src) {
            if let Ok(smaller) = s.with_source(i, simpler) {
                out.push((smaller, conditioning.clone()));
            }
        }
    }
    out
}

/// Shrinks a failed verdict while the same axiom keeps failing for `rule`.
/// Passing and skipped verdicts are returned unchanged.
pub fn shrink_failure<R: CRule + ?Sized>(rule: &R, verdict: &AxiomVerdict) -> AxiomVerdict {
    let mut best = verdict.clone();
    loop {
        let Some(w) = best.witness() else { return best };
        let current = size(&w.structure);
        let next = candidates(w).into_iter().find_map(|(s, cond)| {
            if size(&s) >= current {
                return None;
            }
            match run_check(best.axiom, rule, &s, &cond) {
                Ok(v) if v.failed() => Some(v),
                _ => None,
            }
        });
        match next {
            Some(v) => best = v,
            None => return best,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{
        build_b_instance, check_assumption_b, check_respects_contradictions,
        ratio_invariance_check, BrokenRule,
    };
    use crate::combination::CRuleId;
    use crate::frame::{Frame, Subset};

    fn theta(n: u32) -> Frame {
        Frame::new(1..=n).unwrap()
    }

    #[test]
    fn shrinks_b_failure_and_keeps_it_failing() {
        let pk = PointProbability::from_pairs([(0, frac(7, 19)), (1, frac(12, 19))]).unwrap();
        let inst = build_b_instance(
            &theta(3),
            &pk,
            [&Subset::from([1]), &Subset::from([1, 2])],
            &[
                Subset::from([1, 2]),
                Subset::from([1, 2, 3]),
                Subset::from([1, 3]),
            ],
        )
        .unwrap();
        let v = check_assumption_b(&CRuleId::Uniform, &inst).unwrap();
        assert!(v.failed());
        let small = shrink_failure(&CRuleId::Uniform, &v);
        let w = small.witness().unwrap();
        assert!(w.structure.len() < inst.len());
        assert!(size(&w.structure) < size(&inst));
        assert!(w.recheck(small.axiom, &CRuleId::Uniform).unwrap().failed());
        // weights simplified below the original denominator
        assert!(max_denominator(w.structure.source(0).unwrap()) < BigInt::from(19));
    }

    #[test]
    fn shrinks_contradiction_failure_to_two_sources() {
        let t = theta(2);
        let a = SourceStructure::from_triples(
            t.clone(),
            [
                (0, frac(1, 3), Subset::from([1])),
                (1, frac(2, 3), Subset::from([1, 2])),
            ],
        )
        .unwrap();
        let b = SourceStructure::from_triples(
            t.clone(),
            [
                (0, frac(1, 2), Subset::from([2])),
                (1, frac(1, 2), Subset::from([1, 2])),
            ],
        )
        .unwrap();
        let s = MultipleSourceStructure::from_sources([a, b, SourceStructure::vacuous(t)]).unwrap();
        let v = check_respects_contradictions(&BrokenRule::PureProduct, &s).unwrap();
        let small = shrink_failure(&BrokenRule::PureProduct, &v);
        let w = small.witness().unwrap();
        assert_eq!(w.structure.len(), 2);
        // a contradiction needs two disjoint images plus a compatible tuple
        assert_eq!(size(&w.structure).1, 3);
    }

    #[test]
    fn passing_verdicts_are_untouched() {
        let t = theta(2);
        let s = MultipleSourceStructure::from_sources([SourceStructure::vacuous(t)]).unwrap();
        let v = ratio_invariance_check(&CRuleId::Dempster, &s).unwrap();
        assert_eq!(shrink_failure(&CRuleId::Dempster, &v), v);
    }
}
