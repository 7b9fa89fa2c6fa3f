//! Brute-force reference implementations that share no code with the
//! library beyond reading raw source data. Sets are bitmasks over Θ's
//! element values.

#![allow(dead_code)]

use std::collections::BTreeMap;

use evidential::{MassFunction, MultipleSourceStructure, Rational, SourceStructure, Subset};
use num::{One, Zero};

pub type Mask = u64;
pub type Masses = BTreeMap<Mask, Rational>;

pub fn mask(s: &Subset) -> Mask {
    s.iter().fold(0, |m, x| m | (1 << x))
}

pub fn masses_of(m: &MassFunction) -> Masses {
    m.iter().map(|(s, w)| (mask(s), w.clone())).collect()
}

pub fn source_masses(s: &SourceStructure) -> Masses {
    let mut out = Masses::new();
    for (_, w, image) in s.iter() {
        if !w.is_zero() {
            *out.entry(mask(image)).or_insert_with(Rational::zero) += w;
        }
    }
    out
}

/// Conjunctive sum of all `ms`, mass on the empty set kept.
pub fn conjunctive(ms: &[Masses]) -> Masses {
    let mut acc: Masses = [(Mask::MAX, Rational::one())].into();
    for m in ms {
        let mut next = Masses::new();
        for (a, wa) in &acc {
            for (b, wb) in m {
                *next.entry(a & b).or_insert_with(Rational::zero) += wa * wb;
            }
        }
        acc = next;
    }
    acc.retain(|_, w| !w.is_zero());
    acc
}

/// Dempster's rule: conjunctive sum with ∅ dropped and renormalized; None
/// under total conflict.
pub fn dempster(ms: &[Masses]) -> Option<Masses> {
    let mut m = conjunctive(ms);
    m.remove(&0);
    let k: Rational = m.values().sum();
    if k.is_zero() {
        return None;
    }
    Some(m.into_iter().map(|(x, w)| (x, w / &k)).collect())
}

pub fn belief(m: &Masses, x: Mask) -> Rational {
    m.iter()
        .filter(|(a, _)| **a != 0 && *a & !x == 0)
        .map(|(_, w)| w)
        .sum()
}

/// One product element: its coordinates, factors P_i(ω_i) and combined image.
pub struct Cell {
    pub coords: Vec<u32>,
    pub factors: Vec<Rational>,
    pub image: Mask,
}

/// Ω^s in lexicographic order, by recursion rather than an odometer.
pub fn cells(s: &MultipleSourceStructure) -> Vec<Cell> {
    fn go(srcs: &[&SourceStructure], at: Cell, out: &mut Vec<Cell>) {
        let Some((first, rest)) = srcs.split_first() else {
            out.push(at);
            return;
        };
        for (x, w, image) in first.iter() {
            let mut coords = at.coords.clone();
            coords.push(x);
            let mut factors = at.factors.clone();
            factors.push(w.clone());
            go(
                rest,
                Cell {
                    coords,
                    factors,
                    image: at.image & mask(image),
                },
                out,
            );
        }
    }
    let srcs: Vec<&SourceStructure> = s.sources().collect();
    let mut out = Vec::new();
    go(
        &srcs,
        Cell {
            coords: vec![],
            factors: vec![],
            image: Mask::MAX,
        },
        &mut out,
    );
    out
}

/// π over `cells(s)` for a raw weight; None when every weight is zero.
pub fn pi_with(
    s: &MultipleSourceStructure,
    raw: impl Fn(&Cell) -> Rational,
) -> Option<Vec<Rational>> {
    let raws: Vec<Rational> = cells(s).iter().map(raw).collect();
    let total: Rational = raws.iter().sum();
    if total.is_zero() {
        return None;
    }
    Some(raws.into_iter().map(|w| w / &total).collect())
}

pub fn product(c: &Cell) -> Rational {
    c.factors.iter().product()
}

pub fn dempster_pi(s: &MultipleSourceStructure) -> Option<Vec<Rational>> {
    pi_with(s, |c| {
        if c.image == 0 {
            Rational::zero()
        } else {
            product(c)
        }
    })
}

pub fn uniform_pi(s: &MultipleSourceStructure) -> Option<Vec<Rational>> {
    pi_with(s, |c| {
        if c.image == 0 || c.factors.iter().any(Zero::is_zero) {
            Rational::zero()
        } else {
            Rational::one()
        }
    })
}

pub fn squared_pi(s: &MultipleSourceStructure) -> Option<Vec<Rational>> {
    pi_with(s, |c| {
        if c.image == 0 {
            Rational::zero()
        } else {
            product(c) * product(c)
        }
    })
}

/// Some tuple of positive-probability elements has a non-empty combined image.
pub fn combinable(s: &MultipleSourceStructure) -> bool {
    cells(s)
        .iter()
        .any(|c| c.image != 0 && c.factors.iter().all(|w| !w.is_zero()))
}
