use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combination::{is_combinable, MultipleSourceStructure};
use crate::conditioning::{discount_source, ProductSubset};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::rational::frac;
use crate::source::SourceStructure;

const MAX_RETRIES: u32 = 256;

/// Bounds and seeding for random multiple source structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub max_sources: u32,
    pub max_omega_size: u32,
    pub max_theta_size: u32,
    /// Largest denominator a generated weight may have (before discounting).
    pub denominator_bound: u32,
    pub seed: u64,
    pub trials: u64,
    /// Discount every source by a random ε > 0, making Θ focal everywhere.
    pub discounted: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_sources: 3,
            max_omega_size: 3,
            max_theta_size: 4,
            denominator_bound: 12,
            seed: 0,
            trials: 10_000,
            discounted: false,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("max_sources", self.max_sources),
            ("max_omega_size", self.max_omega_size),
            ("max_theta_size", self.max_theta_size),
            ("denominator_bound", self.denominator_bound),
        ];
        for (name, v) in bounds {
            if v < 1 {
                return Err(Error::Invalid(format!("{name} must be at least 1")));
            }
        }
        if self.max_theta_size > 16 {
            return Err(Error::Invalid(
                "max_theta_size above 16 is not supported".into(),
            ));
        }
        Ok(())
    }
}

/// The random stream for one trial. `salt` separates independent uses
/// within a trial.
pub fn trial_rng(seed: u64, trial: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(trial);
    rng
}

fn random_nonempty_subset(rng: &mut impl Rng, theta: &Frame) -> Subset {
    let n = theta.len();
    let mask: u32 = rng.gen_range(1..(1u32 << n));
    (0..n)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| theta.elements()[b])
        .collect()
}

/// `d` split into `parts` non-negative integers, each split equally likely
/// to land anywhere.
fn random_composition(rng: &mut impl Rng, d: u32, parts: usize) -> Vec<u32> {
    let mut cuts: Vec<u32> = (0..parts - 1).map(|_| rng.gen_range(0..=d)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(d - prev);
    out
}

fn random_source(
    rng: &mut impl Rng,
    cfg: &GeneratorConfig,
    theta: &Frame,
) -> Result<SourceStructure> {
    let size = rng.gen_range(1..=cfg.max_omega_size) as usize;
    let d = rng.gen_range(1..=cfg.denominator_bound);
    let counts = random_composition(rng, d, size);
    let mut triples = Vec::with_capacity(size);
    for (j, c) in counts.into_iter().enumerate() {
        let image = if c == 0 && rng.gen_bool(0.25) {
            Subset::empty()
        } else {
            random_nonempty_subset(rng, theta)
        };
        triples.push((j as u32, frac(c as i64, d as i64), image));
    }
    SourceStructure::from_triples(theta.clone(), triples)
}

/// A combinable multiple source structure determined by `(cfg.seed, trial)`.
///
/// Non-combinable draws are discarded and redrawn from the same stream.
pub fn random_mss(cfg: &GeneratorConfig, trial: u64) -> Result<MultipleSourceStructure> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial, 0);
    for _ in 0..MAX_RETRIES {
        let theta = Frame::new(1..=rng.gen_range(1..=cfg.max_theta_size))?;
        let n = rng.gen_range(1..=cfg.max_sources);
        let mut sources = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let mut s = random_source(&mut rng, cfg, &theta)?;
            if cfg.discounted {
                let eps = frac(1, rng.gen_range(2..=cfg.denominator_bound.max(2)) as i64);
                s = discount_source(&s, &eps)?;
            }
            sources.push(s);
        }
        let s = MultipleSourceStructure::from_sources(sources)?;
        if is_combinable(&s) {
            return Ok(s);
        }
    }
    Err(Error::GeneratorExhausted {
        trial,
        retries: MAX_RETRIES,
    })
}

/// A random product subset of Ω^s: each part a random non-empty subset of Ω_i.
pub fn random_product_subset(rng: &mut impl Rng, s: &MultipleSourceStructure) -> ProductSubset {
    let parts = s
        .sources()
        .map(|src| random_nonempty_subset(rng, src.omega()))
        .collect();
    ProductSubset::new(s, parts).expect("parts drawn from each underlying frame")
}
