//! The probability a C-rule puts on the product frame Ω^s, for the
//! registered rules and for a rule defined outside the crate.
//!
//! Run with `cargo run --example c_rules`.

use evidential::combination::Tuple;
use evidential::{
    apply_c_rule, combined_compatibility, frac, CRule, CRuleId, Frame, MultipleSourceStructure,
    Rational, SourceStructure, Subset,
};

/// Dempster's weights with every tuple's weight cubed.
struct Cubed;

impl CRule for Cubed {
    fn name(&self) -> String {
        "cubed".into()
    }

    fn raw_weight(&self, t: &Tuple) -> Rational {
        if t.is_contradictory() {
            return Rational::from_integer(0.into());
        }
        let p = t.product();
        &p * &p * &p
    }
}

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2])?;
    let a = SourceStructure::from_triples(
        theta.clone(),
        [
            (0, frac(1, 2), Subset::from([1])),
            (1, frac(1, 2), theta.full()),
        ],
    )?;
    let b = SourceStructure::from_triples(
        theta.clone(),
        [
            (0, frac(3, 10), Subset::from([2])),
            (1, frac(7, 10), theta.full()),
        ],
    )?;
    let s = MultipleSourceStructure::from_sources([a, b])?;

    let rules: Vec<Box<dyn CRule>> = vec![
        Box::new(CRuleId::Dempster),
        Box::new(CRuleId::Uniform),
        Box::new(CRuleId::Squared),
        Box::new(Cubed),
    ];
    for rule in &rules {
        let pi = apply_c_rule(rule.as_ref(), &s)?;
        println!("{}:", rule.name());
        for (w, p) in pi.iter() {
            println!(
                "  {} I^s = {:<6} π = {p}",
                w.describe(&s),
                combined_compatibility(&s, w)?.to_string()
            );
        }
    }
    Ok(())
}
