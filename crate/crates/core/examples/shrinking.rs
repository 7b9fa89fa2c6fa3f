//! A failing assumption-B instance for the uniform rule, shrunk to a
//! smaller structure that still fails, then saved as a witness file.
//!
//! Run with `cargo run --example shrinking`.

use evidential::axioms::{build_b_instance, check_assumption_b, shrink_failure};
use evidential::evidence::EvidenceDocument;
use evidential::{frac, CRuleId, Frame, PointProbability, Subset};

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2, 3])?;
    let pk = PointProbability::from_pairs([(0, frac(7, 19)), (1, frac(12, 19))])?;
    let s = build_b_instance(
        &theta,
        &pk,
        [&Subset::from([1]), &Subset::from([1, 2])],
        &[Subset::from([1, 2]), theta.full(), Subset::from([1, 3])],
    )?;

    let v = check_assumption_b(&CRuleId::Uniform, &s)?;
    println!("original ({} sources): {v}", s.len());

    let small = shrink_failure(&CRuleId::Uniform, &v);
    let w = small.witness().expect("shrinking keeps the failure");
    println!("shrunk ({} sources): {small}", w.structure.len());
    println!("re-checked: {}", w.recheck(small.axiom, &CRuleId::Uniform)?);

    let doc = EvidenceDocument::from_verdict(&small, CRuleId::Uniform).expect("failed verdict");
    print!("{}", doc.to_json());
    Ok(())
}
