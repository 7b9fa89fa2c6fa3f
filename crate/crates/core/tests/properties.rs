mod oracle;

use evidential::evidence::{Entry, EntryBody, EvidenceDocument};
use evidential::{
    dempster_combine_masses, discount_mass, frac, mass_of_source, parse_rational, source_from_mass,
    Error, Frame, MassFunction, Rational, Subset,
};
use num::Zero;
use proptest::prelude::*;

fn subset_of_mask(theta: &Frame, bits: u32) -> Subset {
    theta
        .elements()
        .iter()
        .enumerate()
        .filter(|(b, _)| bits & (1 << b) != 0)
        .map(|(_, x)| *x)
        .collect()
}

/// A normalized mass function on Θ = {1..n}, n ≤ 4, with up to four
/// focal elements and small denominators.
fn mass_on(n: u32) -> impl Strategy<Value = MassFunction> {
    prop::collection::vec((1u32..(1 << n), 1i64..12), 1..=4).prop_map(move |raw| {
        let theta = Frame::new(1..=n).unwrap();
        let total: i64 = raw.iter().map(|(_, w)| w).sum();
        let entries: Vec<_> = raw
            .into_iter()
            .map(|(bits, w)| (subset_of_mask(&theta, bits), frac(w, total)))
            .collect();
        MassFunction::new(theta, entries).unwrap()
    })
}

fn mass() -> impl Strategy<Value = MassFunction> {
    (1u32..=4).prop_flat_map(mass_on)
}

fn masses(k: usize) -> impl Strategy<Value = Vec<MassFunction>> {
    (1u32..=4).prop_flat_map(move |n| prop::collection::vec(mass_on(n), k))
}

proptest! {
    #[test]
    fn belief_is_monotone_and_bounded(m in mass()) {
        let theta = m.theta().clone();
        prop_assert_eq!(m.belief(&Subset::empty()).unwrap(), Rational::zero());
        prop_assert_eq!(m.belief(&theta.full()).unwrap(), frac(1, 1));
        let all = theta.powerset();
        for x in &all {
            for y in all.iter().filter(|y| x.is_subset(y)) {
                prop_assert!(m.belief(x).unwrap() <= m.belief(y).unwrap());
            }
        }
    }

    #[test]
    fn canonical_source_round_trip(m in mass()) {
        prop_assert_eq!(mass_of_source(&source_from_mass(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn combination_is_commutative_and_matches_oracle(ms in masses(2)) {
        let ab = dempster_combine_masses(&ms);
        let ba = dempster_combine_masses(&[ms[1].clone(), ms[0].clone()]);
        prop_assert_eq!(&ab, &ba);
        let oracle = oracle::dempster(&ms.iter().map(oracle::masses_of).collect::<Vec<_>>());
        match ab {
            Ok(m) => prop_assert_eq!(Some(oracle::masses_of(&m)), oracle),
            Err(Error::NotCombinable(_)) => prop_assert!(oracle.is_none()),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn combination_is_associative(ms in masses(3)) {
        let flat = dempster_combine_masses(&ms);
        let left = dempster_combine_masses(&ms[..2])
            .and_then(|ab| dempster_combine_masses(&[ab, ms[2].clone()]));
        let right = dempster_combine_masses(&ms[1..])
            .and_then(|bc| dempster_combine_masses(&[ms[0].clone(), bc]));
        if let Ok(m) = &flat {
            prop_assert_eq!(left.as_ref().ok(), Some(m));
            prop_assert_eq!(right.as_ref().ok(), Some(m));
        }
    }

    #[test]
    fn vacuous_is_identity(m in mass()) {
        let v = MassFunction::vacuous(m.theta().clone());
        prop_assert_eq!(dempster_combine_masses(&[m.clone(), v.clone()]).unwrap(), m.clone());
        prop_assert_eq!(dempster_combine_masses(&[v, m.clone()]).unwrap(), m);
    }

    #[test]
    fn discounting_moves_eps_to_theta(m in mass(), d in 2i64..20) {
        let eps = frac(1, d);
        let out = discount_mass(&m, &eps).unwrap();
        let full = m.theta().full();
        prop_assert_eq!(out.mass(&full), m.mass(&full) * (frac(1, 1) - &eps) + &eps);
        for (x, w) in m.iter().filter(|(x, _)| **x != full) {
            prop_assert_eq!(out.mass(x), w * (frac(1, 1) - &eps));
        }
    }

    #[test]
    fn rationals_render_and_parse(n in -1000i64..1000, d in 1i64..1000) {
        let r = frac(n, d);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn evidence_documents_round_trip(ms in masses(3)) {
        let theta = ms[0].theta().clone();
        let entries = ms
            .iter()
            .enumerate()
            .map(|(j, m)| Entry {
                name: format!("e{j}"),
                body: if j % 2 == 0 {
                    EntryBody::Mass(m.clone())
                } else {
                    EntryBody::Source(source_from_mass(m).unwrap())
                },
            })
            .collect();
        let doc = EvidenceDocument { theta, entries, witness: None };
        let text = doc.to_json();
        let again = EvidenceDocument::parse(&text).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_json(), text);
    }
}
