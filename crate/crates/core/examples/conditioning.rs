//! Bayesian conditioning of a source, geometric conditioning on a subset
//! of Θ, and conditioning a combined distribution on a product subset.
//!
//! Run with `cargo run --example conditioning`.

use evidential::{
    apply_c_rule, condition_distribution, condition_mss, condition_source, frac,
    geometric_condition, CRuleId, Frame, MultipleSourceStructure, PointProbability, ProductSubset,
    SourceStructure, Subset,
};

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2, 3])?;
    let p = PointProbability::from_pairs([(0, frac(1, 2)), (1, frac(1, 4)), (2, frac(1, 4))])?;
    let s = SourceStructure::new(
        theta.clone(),
        p,
        vec![Subset::from([1]), Subset::from([1, 2]), Subset::from([3])],
    )?;

    let given = condition_source(&s, &Subset::from([0, 1]))?;
    println!("conditioned on ω ∈ {{0,1}}:\n{}", given.mass()?);

    let a = Subset::from([1, 2]);
    println!("Bel(A) = {} for A = {a}", s.mass()?.belief(&a)?);
    println!(
        "geometric conditioning on A:\n{}",
        geometric_condition(&s, &a)?.mass()?
    );

    // (π^s)_Δ against π^{s_Δ}: the two agree for Dempster's rule.
    let other = SourceStructure::from_triples(
        theta.clone(),
        [
            (0, frac(2, 3), Subset::from([1, 3])),
            (1, frac(1, 3), theta.full()),
        ],
    )?;
    let ms = MultipleSourceStructure::from_sources([s, other])?;
    let delta = ProductSubset::new(&ms, vec![Subset::from([0, 2]), Subset::from([0, 1])])?;
    let outer = condition_distribution(&apply_c_rule(&CRuleId::Dempster, &ms)?, &delta)?;
    let inner = apply_c_rule(&CRuleId::Dempster, &condition_mss(&ms, &delta)?)?;
    for (w, p) in outer.iter() {
        println!(
            "{} (π)_Δ = {p:<5} π^(s_Δ) = {}",
            w.describe(&ms),
            inner.get(w)
        );
    }
    Ok(())
}
