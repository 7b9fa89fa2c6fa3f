use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::rational::{render, Rational};

/// An additive probability function over a frame, given by its point weights.
///
/// Set-level probabilities are sums of point weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointProbability {
    frame: Frame,
    // aligned with frame.elements()
    weights: Vec<Rational>,
}

impl PointProbability {
    /// `weights[j]` is the weight of the j-th element of `frame` in sorted order.
    pub fn new(frame: Frame, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != frame.len() {
            return Err(Error::Invalid(format!(
                "{} weights for a frame of {} elements",
                weights.len(),
                frame.len()
            )));
        }
        if let Some((j, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::Invalid(format!(
                "negative weight {} on element {}",
                render(w),
                frame.elements()[j]
            )));
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::Invalid(format!(
                "weights sum to {}, not 1",
                render(&total)
            )));
        }
        Ok(PointProbability { frame, weights })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let mut pairs: Vec<(u32, Rational)> = pairs.into_iter().collect();
        pairs.sort_by_key(|(x, _)| *x);
        let frame = Frame::new(pairs.iter().map(|(x, _)| *x))?;
        PointProbability::new(frame, pairs.into_iter().map(|(_, w)| w).collect())
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Weight of `x`, zero when `x` is outside the frame.
    pub fn weight(&self, x: u32) -> Rational {
        self.frame
            .position(x)
            .map(|j| self.weights[j].clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.frame
            .elements()
            .iter()
            .copied()
            .zip(self.weights.iter())
    }

    /// P(A) for a set of elements given as an iterator.
    pub fn prob_of(&self, set: impl IntoIterator<Item = u32>) -> Rational {
        set.into_iter().map(|x| self.weight(x)).sum()
    }
}
