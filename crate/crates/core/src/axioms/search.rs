use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{
    build_b_instance, check_assumption_a, check_assumption_a_general, check_assumption_b,
    check_respects_contradictions, check_respects_zero_probabilities, random_mss,
    random_product_subset, ratio_invariance_check, shrink_failure, trial_rng, AxiomKind,
    AxiomVerdict, GeneratorConfig,
};
use crate::combination::CRule;
use crate::error::Result;
use crate::frame::{Frame, Subset};
use crate::probability::PointProbability;
use crate::rational::{frac, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Also check the product-subset form of assumption A, one random Δ per trial.
    pub general_a: bool,
    /// Run assumption B over the exhaustive instance family.
    pub b_family: bool,
    pub b_max_denominator: u32,
    pub b_max_theta: u32,
    pub b_max_certain: usize,
    /// Greedily shrink the first failure found for each axiom.
    pub shrink: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            general_a: true,
            b_family: true,
            b_max_denominator: 20,
            b_max_theta: 3,
            b_max_certain: 4,
            shrink: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

impl Tally {
    fn record(&mut self, v: &AxiomVerdict) {
        if v.passed() {
            self.pass += 1;
        } else if v.failed() {
            self.fail += 1;
        } else {
            self.skip += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub rule: String,
    pub seed: u64,
    pub trials: u64,
    pub b_instances: u64,
    pub tallies: BTreeMap<AxiomKind, Tally>,
    /// First failure per axiom, shrunk when requested.
    pub failures: BTreeMap<AxiomKind, AxiomVerdict>,
}

impl SearchReport {
    pub fn failure_count(&self) -> u64 {
        self.tallies.values().map(|t| t.fail).sum()
    }

    pub fn clean(&self) -> bool {
        self.failure_count() == 0
    }

    fn absorb(&mut self, verdicts: Vec<AxiomVerdict>) {
        for v in verdicts {
            self.tallies.entry(v.axiom).or_default().record(&v);
            if v.failed() {
                self.failures.entry(v.axiom).or_insert(v);
            }
        }
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rule: {}", self.rule)?;
        writeln!(f, "trials: {} (seed {})", self.trials, self.seed)?;
        writeln!(f, "b-instances: {}", self.b_instances)?;
        for (axiom, t) in &self.tallies {
            writeln!(
                f,
                "{:<22} pass={} fail={} skip={}",
                axiom.as_str(),
                t.pass,
                t.fail,
                t.skip
            )?;
        }
        for v in self.failures.values() {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Every check on one generated structure.
fn trial_verdicts<R: CRule + ?Sized>(
    rule: &R,
    cfg: &GeneratorConfig,
    opts: &SearchOptions,
    trial: u64,
) -> Result<Vec<AxiomVerdict>> {
    let s = random_mss(cfg, trial)?;
    let mut out = vec![
        check_respects_contradictions(rule, &s)?,
        check_respects_zero_probabilities(rule, &s)?,
    ];
    for (k, src) in s.iter() {
        for &l in src.omega().elements() {
            out.push(check_assumption_a(rule, &s, k, l)?);
        }
    }
    if opts.general_a {
        let mut rng = trial_rng(cfg.seed, trial, 1);
        let delta = random_product_subset(&mut rng, &s);
        out.push(check_assumption_a_general(rule, &s, &delta)?);
    }
    out.push(ratio_invariance_check(rule, &s)?);
    Ok(out)
}

/// One member of the exhaustive assumption-B family, before construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BInstanceSpec {
    pub theta: Frame,
    pub focals: [Subset; 2],
    pub certain: Vec<Subset>,
    /// P_k of the first underlying element; the second gets the rest.
    pub p_first: Rational,
}

impl BInstanceSpec {
    pub fn build(&self) -> Result<crate::combination::MultipleSourceStructure> {
        let pk = PointProbability::from_pairs([
            (0, self.p_first.clone()),
            (1, Rational::from_integer(1.into()) - &self.p_first),
        ])?;
        build_b_instance(
            &self.theta,
            &pk,
            [&self.focals[0], &self.focals[1]],
            &self.certain,
        )
    }
}

fn multisets(
    items: &[Subset],
    size: usize,
    start: usize,
    acc: &mut Vec<Subset>,
    out: &mut Vec<Vec<Subset>>,
) {
    if acc.len() == size {
        out.push(acc.clone());
        return;
    }
    for j in start..items.len() {
        acc.push(items[j].clone());
        multisets(items, size, j, acc, out);
        acc.pop();
    }
}

/// Θ, the two-element source's focal pair, and the certain sources' focal sets.
pub type BShape = (Frame, [Subset; 2], Vec<Subset>);

/// Conflict-free (Θ, focal pair, certain sources) combinations paired with
/// every P_k(first) = a/d, d ≤ `max_denominator`.
///
/// Focal pairs are unordered (the probability sweep covers both orders) and
/// the certain sources form a multiset of at most `max_certain` non-empty
/// subsets. Order: Θ size, focal pair, certain count, certain sets, P_k.
pub fn b_instance_family(
    max_denominator: u32,
    max_theta: u32,
    max_certain: usize,
) -> (Vec<BShape>, Vec<Rational>) {
    let mut values: Vec<Rational> = (1..=max_denominator as i64)
        .flat_map(|d| (0..=d).map(move |a| frac(a, d)))
        .collect();
    values.sort();
    values.dedup();

    let mut shapes = Vec::new();
    for t in 1..=max_theta {
        let theta = Frame::new(1..=t).expect("non-empty");
        let subsets: Vec<Subset> = theta
            .powerset()
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        for a in 0..subsets.len() {
            for b in a..subsets.len() {
                for n in 0..=max_certain {
                    let mut combos = Vec::new();
                    multisets(&subsets, n, 0, &mut Vec::new(), &mut combos);
                    for certain in combos {
                        let common = certain
                            .iter()
                            .fold(theta.full(), |acc, f| acc.intersection(f));
                        if subsets[a].is_disjoint(&common) || subsets[b].is_disjoint(&common) {
                            continue;
                        }
                        shapes.push((
                            theta.clone(),
                            [subsets[a].clone(), subsets[b].clone()],
                            certain,
                        ));
                    }
                }
            }
        }
    }
    (shapes, values)
}

/// [`search_counterexamples_with`] under default options.
pub fn search_counterexamples<R: CRule + ?Sized>(
    rule: &R,
    cfg: &GeneratorConfig,
) -> Result<SearchReport> {
    search_counterexamples_with(rule, cfg, &SearchOptions::default())
}

/// Runs every check across `cfg.trials` generated structures and, when
/// enabled, assumption B across its exhaustive instance family.
///
/// Trials run in parallel but are reported in trial order, so the report
/// depends only on `rule`, `cfg` and `opts`.
pub fn search_counterexamples_with<R: CRule + ?Sized>(
    rule: &R,
    cfg: &GeneratorConfig,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    cfg.validate()?;
    let mut report = SearchReport {
        rule: rule.name(),
        seed: cfg.seed,
        trials: cfg.trials,
        b_instances: 0,
        tallies: BTreeMap::new(),
        failures: BTreeMap::new(),
    };
    let per_trial: Vec<Vec<AxiomVerdict>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| trial_verdicts(rule, cfg, opts, t))
        .collect::<Result<_>>()?;
    for v in per_trial {
        report.absorb(v);
    }

    if opts.b_family {
        let (shapes, values) =
            b_instance_family(opts.b_max_denominator, opts.b_max_theta, opts.b_max_certain);
        let per_shape: Vec<Vec<AxiomVerdict>> = shapes
            .par_iter()
            .map(|(theta, focals, certain)| {
                values
                    .iter()
                    .map(|p| {
                        let spec = BInstanceSpec {
                            theta: theta.clone(),
                            focals: focals.clone(),
                            certain: certain.clone(),
                            p_first: p.clone(),
                        };
                        check_assumption_b(rule, &spec.build()?)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for v in per_shape {
            report.b_instances += v.len() as u64;
            report.absorb(v);
        }
    }

    if opts.shrink {
        for v in report.failures.values_mut() {
            *v = shrink_failure(rule, v);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_family_is_conflict_free_and_sized() {
        let (shapes, values) = b_instance_family(20, 3, 4);
        assert_eq!(values.len(), 129);
        assert_eq!(shapes.len() * values.len(), 285_735);
        for (theta, focals, certain) in shapes.iter().take(500) {
            let spec = BInstanceSpec {
                theta: theta.clone(),
                focals: focals.clone(),
                certain: certain.clone(),
                p_first: frac(1, 3),
            };
            assert!(spec.build().is_ok());
        }
    }

    #[test]
    fn small_search_is_deterministic() {
        let cfg = GeneratorConfig {
            trials: 50,
            seed: 9,
            ..Default::default()
        };
        let opts = SearchOptions {
            b_family: false,
            ..Default::default()
        };
        let a = search_counterexamples_with(&crate::CRuleId::Squared, &cfg, &opts).unwrap();
        let b = search_counterexamples_with(&crate::CRuleId::Squared, &cfg, &opts).unwrap();
        assert_eq!(a.tallies, b.tallies);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.to_string(), b.to_string());
    }
}
