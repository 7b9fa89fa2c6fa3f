//! Dempster's rule on mass functions, its unnormalized counterpart, and
//! what happens when the evidence contradicts itself completely.
//!
//! Run with `cargo run --example combine_masses`.

use evidential::{
    dempster_combine_masses, frac, unnormalized_combine_masses, Error, Frame, MassFunction, Subset,
};

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2])?;
    let m1 = MassFunction::new(
        theta.clone(),
        [(Subset::from([1]), frac(1, 2)), (theta.full(), frac(1, 2))],
    )?;
    let m2 = MassFunction::new(
        theta.clone(),
        [(Subset::from([2]), frac(1, 2)), (theta.full(), frac(1, 2))],
    )?;
    println!(
        "m1 ⊕ m2:\n{}",
        dempster_combine_masses(&[m1.clone(), m2.clone()])?
    );
    println!("unnormalized:\n{}", unnormalized_combine_masses(&[m1, m2])?);

    // Two almost certain, incompatible reports that agree only on a long shot.
    let t3 = Frame::new([1, 2, 3])?;
    let a = MassFunction::new(
        t3.clone(),
        [
            (Subset::from([1]), frac(99, 100)),
            (Subset::from([3]), frac(1, 100)),
        ],
    )?;
    let b = MassFunction::new(
        t3.clone(),
        [
            (Subset::from([2]), frac(99, 100)),
            (Subset::from([3]), frac(1, 100)),
        ],
    )?;
    println!("high conflict:\n{}", dempster_combine_masses(&[a, b])?);

    let yes = MassFunction::certain(theta.clone(), Subset::from([1]))?;
    let no = MassFunction::certain(theta, Subset::from([2]))?;
    match dempster_combine_masses(&[yes, no]) {
        Err(e @ Error::NotCombinable(_)) => println!("certain and contradictory: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
