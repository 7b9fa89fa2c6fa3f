//! Discounting a mass function and a source: a fraction ε of belief moves
//! onto Θ, so that Θ becomes a focal element.
//!
//! Run with `cargo run --example discounting`.

use evidential::{
    dempster_combine_masses, discount_mass, discount_source, frac, Frame, MassFunction,
    SourceStructure, Subset,
};

fn main() -> evidential::Result<()> {
    let theta = Frame::new([1, 2])?;
    let yes = MassFunction::certain(theta.clone(), Subset::from([1]))?;
    let no = MassFunction::certain(theta.clone(), Subset::from([2]))?;
    println!(
        "combining the raw reports: {}",
        dempster_combine_masses(&[yes.clone(), no.clone()]).unwrap_err()
    );

    let eps = frac(1, 10);
    let (yes, no) = (discount_mass(&yes, &eps)?, discount_mass(&no, &eps)?);
    println!("discounted by {eps}:\n{yes}\n{no}");
    println!("combined:\n{}", dempster_combine_masses(&[yes, no])?);

    let s = SourceStructure::from_triples(
        theta.clone(),
        [
            (0, frac(1, 3), Subset::from([1])),
            (1, frac(2, 3), Subset::from([2])),
        ],
    )?;
    let d = discount_source(&s, &frac(1, 4))?;
    for (x, w, image) in d.iter() {
        println!("{:<10} P = {:<4} I = {image}", d.label(x).unwrap(), w);
    }
    Ok(())
}
