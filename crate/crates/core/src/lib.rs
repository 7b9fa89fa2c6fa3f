//! Exact-arithmetic Dempster-Shafer evidence combination built on source
//! structures, and a harness that checks combination rules against the
//! constraints and assumptions that single out Dempster's rule.
//!
//! A [`SourceStructure`] `(Ω, P, I)` carries a probability function `P` on an
//! underlying frame `Ω` and a compatibility function `I : Ω → 2^Θ`. It
//! induces a [`MassFunction`] and belief function on the frame of interest
//! `Θ`. Several sources form a [`MultipleSourceStructure`]; combining them
//! means choosing a probability function on the product `Ω^s`, which is the
//! job of a [`CRule`]. [`CRuleId::Dempster`] is Dempster's rule;
//! [`CRuleId::Uniform`] and [`CRuleId::Squared`] are alternatives that the
//! [`axioms`] module refutes.
//!
//! All arithmetic is exact ([`Rational`] is an arbitrary-precision fraction)
//! and every check compares values for literal equality.
//!
//! ```
//! use evidential::{dempster_combine_masses, frac, Frame, MassFunction, Subset};
//!
//! let theta = Frame::new([1, 2]).unwrap();
//! let m1 = MassFunction::new(theta.clone(), [
//!     (Subset::from([1]), frac(1, 2)),
//!     (Subset::from([1, 2]), frac(1, 2)),
//! ]).unwrap();
//! let m2 = MassFunction::new(theta.clone(), [
//!     (Subset::from([2]), frac(1, 2)),
//!     (Subset::from([1, 2]), frac(1, 2)),
//! ]).unwrap();
//! let m = dempster_combine_masses(&[m1, m2]).unwrap();
//! assert_eq!(m.mass(&Subset::from([1])), frac(1, 3));
//! assert_eq!(m.belief(&Subset::from([1])).unwrap(), frac(1, 3));
//! ```

pub mod axioms;
pub mod cli;
pub mod combination;
pub mod conditioning;
pub mod error;
pub mod evidence;
pub mod frame;
pub mod mass;
pub mod probability;
pub mod rational;
pub mod source;

pub use combination::{
    apply_c_rule, apply_c_rule_capped, combined_compatibility, dempster_combine,
    dempster_combine_masses, enumerate_product, enumerate_product_capped, is_combinable,
    unnormalized_combine_masses, CRule, CRuleId, MultipleSourceStructure, ProductDistribution,
    ProductElement, DEFAULT_PRODUCT_CAP,
};
pub use conditioning::{
    condition_distribution, condition_mss, condition_probability, condition_source, cylinder,
    discount_mass, discount_source, geometric_condition, ProductSubset,
};
pub use error::{Error, Result};
pub use frame::{Frame, Subset};
pub use mass::{belief_from_mass, focal_elements, MassFunction};
pub use probability::PointProbability;
pub use rational::{frac, int, parse_rational, Rational};
pub use source::{mass_of_source, source_from_mass, validate_source, SourceStructure, Violation};
