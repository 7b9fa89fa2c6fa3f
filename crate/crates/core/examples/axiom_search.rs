//! A seeded counterexample search of every registered rule against the
//! constraints and assumptions. Dempster's rule comes out clean.
//!
//! Run with `cargo run --release --example axiom_search [TRIALS] [SEED]`.

use evidential::axioms::{search_counterexamples_with, GeneratorConfig, SearchOptions};
use evidential::CRuleId;

fn main() -> evidential::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args
        .next()
        .map_or(500, |a| a.parse().expect("TRIALS is a number"));
    let seed = args
        .next()
        .map_or(0, |a| a.parse().expect("SEED is a number"));

    let cfg = GeneratorConfig {
        trials,
        seed,
        ..Default::default()
    };
    // A smaller B family keeps a debug build quick.
    let opts = SearchOptions {
        b_max_denominator: 10,
        b_max_certain: 2,
        ..Default::default()
    };
    for rule in CRuleId::ALL {
        let report = search_counterexamples_with(&rule, &cfg, &opts)?;
        println!("{report}");
    }
    Ok(())
}
