//! Comparison policies: ε-greedy, SoftMax (Boltzmann) and Median Elimination.
//!
//! The two sample-average policies start with one forced pull per arm, the
//! same initialization the fractional-moment agent uses.

mod epsilon_greedy;
mod median_elimination;
mod softmax;

pub use epsilon_greedy::{epsilon_greedy_select, EpsilonGreedy};
pub use median_elimination::{mea_run, mea_schedule, MeaOutcome, MeaPhase, MedianElimination};
pub use softmax::{softmax_probabilities, softmax_select, Softmax};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub epsilon_greedy_eps: f64,
    pub softmax_tau: f64,
    pub mea_eps: f64,
    pub mea_delta: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            epsilon_greedy_eps: 0.1,
            softmax_tau: 0.24,
            mea_eps: 0.95,
            mea_delta: 0.95,
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        check_eps(self.epsilon_greedy_eps)?;
        check_tau(self.softmax_tau)?;
        check_open_unit("mea_eps", self.mea_eps)?;
        check_open_unit("mea_delta", self.mea_delta)
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::param("epsilon", format!("must lie in [0, 1], got {eps}")))
    }
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::param("tau", format!("must be finite and > 0, got {tau}")))
    }
}

pub(crate) fn check_open_unit(name: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must lie in (0, 1), got {x}")))
    }
}

/// Running sample means with a one-pull-per-arm warm-up.
#[derive(Debug, Clone)]
pub(crate) struct SampleMeans {
    means: Vec<f64>,
    counts: Vec<u64>,
}

impl SampleMeans {
    pub(crate) fn new(n_arms: usize) -> Result<Self> {
        if n_arms == 0 {
            return Err(Error::TooFewArms { required: 1, got: 0 });
        }
        Ok(Self {
            means: vec![0.0; n_arms],
            counts: vec![0; n_arms],
        })
    }

    pub(crate) fn n_arms(&self) -> usize {
        self.means.len()
    }

    /// First arm that has never been pulled.
    pub(crate) fn next_unpulled(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c == 0)
    }

    pub(crate) fn means(&self) -> &[f64] {
        &self.means
    }

    pub(crate) fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub(crate) fn record(&mut self, arm: usize, reward: f64) -> Result<()> {
        if arm >= self.means.len() {
            return Err(Error::ArmOutOfRange {
                index: arm,
                n_arms: self.means.len(),
            });
        }
        if !reward.is_finite() {
            return Err(Error::NonFiniteReward(reward));
        }
        self.counts[arm] += 1;
        self.means[arm] += (reward - self.means[arm]) / self.counts[arm] as f64;
        Ok(())
    }
}
