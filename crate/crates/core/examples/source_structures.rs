//! A source structure (Ω, P, I) and the mass and belief functions it induces.
//!
//! Run with `cargo run --example source_structures`.

use evidential::{frac, Frame, PointProbability, SourceStructure, Subset};

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2, 3])?;
    // A witness who is reliable 80% of the time and says "1".
    let p = PointProbability::from_pairs([(0, frac(4, 5)), (1, frac(1, 5))])?;
    let s = SourceStructure::new_labelled(
        theta.clone(),
        p,
        vec![Subset::from([1]), theta.full()],
        vec!["reliable".into(), "unreliable".into()],
    )?;

    for (x, w, image) in s.iter() {
        println!("{:<10} P = {:<4} I = {image}", s.label(x).unwrap(), w);
    }

    let m = s.mass()?;
    println!("\nmass function:\n{m}");

    println!("{:<9} Bel", "X");
    for x in theta.powerset() {
        println!("{:<9} {}", x.to_string(), m.belief(&x)?);
    }
    Ok(())
}
